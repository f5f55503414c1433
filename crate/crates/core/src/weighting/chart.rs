use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::{is_identifier, Degree, Polynomial};

/// Reserved name of the Rees / path parameter.
pub const T_VAR: &str = "_t";
/// Reserved name of the zoom parameter.
pub const ZOOM_VAR: &str = "_lam";

/// Name of the symbolic path coefficient attached to the `a`-th coordinate.
pub fn path_coefficient(a: usize) -> String {
    format!("_lam{}", a + 1)
}

/// Barred (normal-bundle) coordinate attached to a chart coordinate.
pub fn barred(name: &str) -> String {
    format!("{name}_bar")
}

/// Non-negative coordinate weights together with an order `r ≥ max w_a`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightVector {
    weights: Vec<u32>,
    order: u32,
}

impl WeightVector {
    pub fn new(weights: Vec<u32>) -> Self {
        let order = weights.iter().copied().max().unwrap_or(0);
        WeightVector { weights, order }
    }

    pub fn with_order(weights: Vec<u32>, order: u32) -> Result<Self> {
        let max = weights.iter().copied().max().unwrap_or(0);
        if order < max {
            return Err(Error::InvalidChart(format!(
                "order {order} is smaller than the largest weight {max}"
            )));
        }
        Ok(WeightVector { weights, order })
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn order(&self) -> u32 {
        self.order
    }
}

/// Named coordinates with weights. The chart is weighted along the
/// coordinate subspace `N = {x_a = 0 : w_a ≥ 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedChart {
    names: Vec<String>,
    weights: WeightVector,
}

impl WeightedChart {
    /// A user-facing chart. Names must be distinct identifiers and may not
    /// use the reserved `_` prefix or the jet separator `__`.
    pub fn new<S: AsRef<str>>(names: &[S], weights: WeightVector) -> Result<Self> {
        for n in names {
            let n = n.as_ref();
            if !is_identifier(n) {
                return Err(Error::InvalidChart(format!("`{n}` is not an identifier")));
            }
            if n.starts_with('_') || n.contains("__") {
                return Err(Error::InvalidChart(format!(
                    "coordinate `{n}` uses a reserved name (leading `_` or `__`)"
                )));
            }
        }
        Self::internal(names, weights)
    }

    /// Chart constructor without the reserved-name check, for generated
    /// charts (barred coordinates, jets).
    pub fn internal<S: AsRef<str>>(names: &[S], weights: WeightVector) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        if names.len() != weights.weights.len() {
            return Err(Error::InvalidChart(format!(
                "{} coordinates but {} weights",
                names.len(),
                weights.weights.len()
            )));
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() {
            return Err(Error::InvalidChart(format!("duplicate coordinate in {names:?}")));
        }
        Ok(WeightedChart { names, weights })
    }

    /// Convenience constructor with order `max w_a`.
    pub fn from_pairs(pairs: &[(&str, u32)]) -> Result<Self> {
        let names: Vec<&str> = pairs.iter().map(|(n, _)| *n).collect();
        let weights = WeightVector::new(pairs.iter().map(|(_, w)| *w).collect());
        Self::new(&names, weights)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        self.weights.weights()
    }

    pub fn weight_vector(&self) -> &WeightVector {
        &self.weights
    }

    pub fn order(&self) -> u32 {
        self.weights.order()
    }

    pub fn weight(&self, a: usize) -> i64 {
        i64::from(self.weights.weights[a])
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn weight_of(&self, name: &str) -> Option<i64> {
        self.index_of(name).map(|a| self.weight(a))
    }

    pub fn with_order(&self, order: u32) -> Result<Self> {
        Ok(WeightedChart {
            names: self.names.clone(),
            weights: WeightVector::with_order(self.weights.weights.clone(), order)?,
        })
    }

    /// Coordinates with positive weight; `N` is their common zero set.
    pub fn normal_coordinates(&self) -> Vec<String> {
        self.names
            .iter()
            .zip(self.weights())
            .filter(|(_, &w)| w > 0)
            .map(|(n, _)| n.clone())
            .collect()
    }

    pub fn coordinate(&self, a: usize) -> Polynomial {
        Polynomial::var(&self.names[a])
    }

    /// The same weights on barred coordinates `x_bar`.
    pub fn barred(&self) -> WeightedChart {
        let names: Vec<String> = self.names.iter().map(|n| barred(n)).collect();
        WeightedChart {
            names,
            weights: self.weights.clone(),
        }
    }

    pub fn bar_map(&self) -> BTreeMap<String, String> {
        self.names.iter().map(|n| (n.clone(), barred(n))).collect()
    }

    pub fn unbar_map(&self) -> BTreeMap<String, String> {
        self.names.iter().map(|n| (barred(n), n.clone())).collect()
    }

    /// Errors if `f` mentions a variable that is not a chart coordinate.
    pub fn check_vars(&self, f: &Polynomial) -> Result<()> {
        for v in f.used_vars() {
            if self.index_of(&v).is_none() {
                return Err(Error::ForeignVariable {
                    variable: v,
                    allowed: self.names.join(", "),
                });
            }
        }
        Ok(())
    }

    /// Whether a rational point lies on `N`.
    pub fn on_submanifold(&self, point: &[crate::poly::Rational]) -> bool {
        use num_traits::Zero;
        point
            .iter()
            .zip(self.weights())
            .all(|(x, &w)| w == 0 || x.is_zero())
    }

    pub fn point_map(
        &self,
        point: &[crate::poly::Rational],
    ) -> Result<BTreeMap<String, crate::poly::Rational>> {
        if point.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "point has {} entries, chart has {} coordinates",
                point.len(),
                self.dim()
            )));
        }
        Ok(self.names.iter().cloned().zip(point.iter().cloned()).collect())
    }

    pub fn degree(&self, f: &Polynomial) -> Result<Degree> {
        super::filtration_degree(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_validation() {
        assert!(WeightedChart::from_pairs(&[("x", 1), ("y", 3)]).is_ok());
        assert!(WeightedChart::from_pairs(&[("x", 1), ("x", 3)]).is_err());
        assert!(WeightedChart::from_pairs(&[("_x", 1)]).is_err());
        assert!(WeightedChart::from_pairs(&[("x__1", 1)]).is_err());
        assert!(WeightVector::with_order(vec![1, 3], 2).is_err());
        let c = WeightedChart::from_pairs(&[("x", 1), ("y", 3), ("z", 0)]).unwrap();
        assert_eq!(c.order(), 3);
        assert_eq!(c.normal_coordinates(), vec!["x", "y"]);
    }
}
