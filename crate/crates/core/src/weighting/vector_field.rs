use super::{filtration_degree, FiltrationDegree, WeightedChart};
use crate::error::{Error, Result};
use crate::poly::{Degree, Polynomial};

/// `X = Σ f_a ∂/∂x_a` with polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyVectorField {
    chart: WeightedChart,
    coefficients: Vec<Polynomial>,
}

impl PolyVectorField {
    pub fn new(chart: WeightedChart, coefficients: Vec<Polynomial>) -> Result<Self> {
        if coefficients.len() != chart.dim() {
            return Err(Error::Dimension(format!(
                "vector field has {} coefficients, chart has {} coordinates",
                coefficients.len(),
                chart.dim()
            )));
        }
        for c in &coefficients {
            chart.check_vars(c)?;
        }
        Ok(PolyVectorField {
            chart,
            coefficients,
        })
    }

    /// Like `new`, but coefficients may mention parameters outside the chart
    /// (e.g. the Rees parameter).
    pub fn with_parameters(chart: WeightedChart, coefficients: Vec<Polynomial>) -> Result<Self> {
        if coefficients.len() != chart.dim() {
            return Err(Error::Dimension(format!(
                "vector field has {} coefficients, chart has {} coordinates",
                coefficients.len(),
                chart.dim()
            )));
        }
        Ok(PolyVectorField {
            chart,
            coefficients,
        })
    }

    pub fn zero(chart: &WeightedChart) -> Self {
        PolyVectorField {
            chart: chart.clone(),
            coefficients: vec![Polynomial::zero(); chart.dim()],
        }
    }

    /// `∂/∂x_a`.
    pub fn coordinate(chart: &WeightedChart, a: usize) -> Self {
        let mut x = Self::zero(chart);
        x.coefficients[a] = Polynomial::one();
        x
    }

    /// `Σ x_a ∂/∂x_a`.
    pub fn euler(chart: &WeightedChart) -> Self {
        PolyVectorField {
            chart: chart.clone(),
            coefficients: (0..chart.dim()).map(|a| chart.coordinate(a)).collect(),
        }
    }

    pub fn chart(&self) -> &WeightedChart {
        &self.chart
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Polynomial::is_zero)
    }

    /// `X f = Σ f_a ∂f/∂x_a`.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        self.chart
            .names()
            .iter()
            .zip(&self.coefficients)
            .filter(|(_, c)| !c.is_zero())
            .map(|(name, c)| c * f.derivative(name))
            .sum()
    }

    /// `[X, Y]_a = X(Y_a) − Y(X_a)`.
    pub fn bracket(&self, other: &PolyVectorField) -> Result<PolyVectorField> {
        self.same_chart(other)?;
        let coefficients = self
            .coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(xa, ya)| self.apply(ya) - other.apply(xa))
            .collect();
        Ok(PolyVectorField {
            chart: self.chart.clone(),
            coefficients,
        })
    }

    pub fn add(&self, other: &PolyVectorField) -> Result<PolyVectorField> {
        self.same_chart(other)?;
        Ok(PolyVectorField {
            chart: self.chart.clone(),
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, f: &Polynomial) -> PolyVectorField {
        PolyVectorField {
            chart: self.chart.clone(),
            coefficients: self.coefficients.iter().map(|c| f * c).collect(),
        }
    }

    /// Values of the coefficients at a rational point (parameters must be
    /// absent).
    pub fn at_point(&self, point: &[crate::poly::Rational]) -> Result<Vec<crate::poly::Rational>> {
        let at = self.chart.point_map(point)?;
        Ok(self
            .coefficients
            .iter()
            .map(|c| c.evaluate(&at).constant_term())
            .collect())
    }

    fn same_chart(&self, other: &PolyVectorField) -> Result<()> {
        if self.chart.names() != other.chart.names() {
            return Err(Error::Dimension(format!(
                "vector fields live on different charts ({} vs {})",
                self.chart.names().join(", "),
                other.chart.names().join(", ")
            )));
        }
        Ok(())
    }
}

/// `min_a (deg f_a − w_a)`; `+∞` for the zero field.
pub fn vector_field_degree(field: &PolyVectorField) -> Result<FiltrationDegree> {
    let chart = field.chart();
    let degrees = field
        .coefficients()
        .iter()
        .enumerate()
        .map(|(a, f)| Ok(filtration_degree(chart, f)?.shift(-chart.weight(a))))
        .collect::<Result<Vec<Degree>>>()?;
    Ok(Degree::min_of(degrees))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn plane13() -> WeightedChart {
        WeightedChart::from_pairs(&[("x", 1), ("y", 3)]).unwrap()
    }

    fn field(a: &str, b: &str) -> PolyVectorField {
        PolyVectorField::new(plane13(), vec![parse(a).unwrap(), parse(b).unwrap()]).unwrap()
    }

    #[test]
    fn degree_examples() {
        assert_eq!(vector_field_degree(&field("0", "x")).unwrap(), Degree::Finite(-2));
        assert_eq!(vector_field_degree(&field("y", "0")).unwrap(), Degree::Finite(2));
        assert_eq!(
            vector_field_degree(&PolyVectorField::euler(&plane13())).unwrap(),
            Degree::Finite(0)
        );
        assert_eq!(vector_field_degree(&field("0", "0")).unwrap(), Degree::Infinite);
    }

    #[test]
    fn bracket_of_coordinate_fields() {
        let x_dy = field("0", "x");
        let dx = field("1", "0");
        assert_eq!(dx.bracket(&x_dy).unwrap(), field("0", "1"));
        assert_eq!(x_dy.apply(&parse("y^2").unwrap()), parse("2*x*y").unwrap());
    }
}
