use std::collections::BTreeMap;
use std::fmt;

use super::{filtration_degree, FiltrationDegree, WeightVector, WeightedChart};
use crate::error::{Error, Result};
use crate::poly::{Degree, Polynomial};

/// A polynomial map between charts: one component per target coordinate,
/// written in the source coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolynomialMap {
    source: WeightedChart,
    target: WeightedChart,
    components: Vec<Polynomial>,
}

impl PolynomialMap {
    pub fn new(
        source: WeightedChart,
        target: WeightedChart,
        components: Vec<Polynomial>,
    ) -> Result<Self> {
        if components.len() != target.dim() {
            return Err(Error::Dimension(format!(
                "map has {} components, target chart has {} coordinates",
                components.len(),
                target.dim()
            )));
        }
        for c in &components {
            source.check_vars(c)?;
        }
        Ok(PolynomialMap {
            source,
            target,
            components,
        })
    }

    pub fn identity(chart: &WeightedChart) -> Self {
        PolynomialMap {
            source: chart.clone(),
            target: chart.clone(),
            components: (0..chart.dim()).map(|a| chart.coordinate(a)).collect(),
        }
    }

    pub fn source(&self) -> &WeightedChart {
        &self.source
    }

    pub fn target(&self) -> &WeightedChart {
        &self.target
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    fn bindings(&self) -> BTreeMap<String, Polynomial> {
        self.target
            .names()
            .iter()
            .cloned()
            .zip(self.components.iter().cloned())
            .collect()
    }

    /// `F*g` for a polynomial `g` on the target chart.
    pub fn pullback(&self, g: &Polynomial) -> Result<Polynomial> {
        self.target.check_vars(g)?;
        Ok(g.compose(&self.bindings()).with_vars(self.source.names()))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &PolynomialMap) -> Result<PolynomialMap> {
        if next.source.names() != self.target.names() {
            return Err(Error::Dimension(format!(
                "cannot compose: target ({}) differs from source ({})",
                self.target.names().join(", "),
                next.source.names().join(", ")
            )));
        }
        let components = next
            .components
            .iter()
            .map(|c| self.pullback(c))
            .collect::<Result<Vec<_>>>()?;
        PolynomialMap::new(self.source.clone(), next.target.clone(), components)
    }

    /// Evaluates the map at a rational point of the source.
    pub fn apply(&self, point: &[crate::poly::Rational]) -> Result<Vec<crate::poly::Rational>> {
        let at = self.source.point_map(point)?;
        Ok(self
            .components
            .iter()
            .map(|c| c.evaluate(&at).constant_term())
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismWitness {
    pub coordinate: String,
    pub degree: FiltrationDegree,
    pub required: i64,
}

impl fmt::Display for MorphismWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: degree {} < {}", self.coordinate, self.degree, self.required)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismReport {
    /// Pullback degree of each target coordinate.
    pub degrees: Vec<(String, FiltrationDegree, i64)>,
    pub failures: Vec<MorphismWitness>,
}

impl MorphismReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `F` is weighted iff `deg F*y_b ≥ w'_b` for every target coordinate.
pub fn check_weighted_morphism(map: &PolynomialMap) -> Result<MorphismReport> {
    let mut degrees = Vec::new();
    let mut failures = Vec::new();
    for (b, name) in map.target.names().iter().enumerate() {
        let degree = filtration_degree(&map.source, &map.components[b])?;
        let required = map.target.weight(b);
        if !degree.at_least(required) {
            failures.push(MorphismWitness {
                coordinate: name.clone(),
                degree,
                required,
            });
        }
        degrees.push((name.clone(), degree, required));
    }
    Ok(MorphismReport { degrees, failures })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentFiltrationReport {
    /// First pair `(target b, source a)` with `w'_b > w_a` whose derivative
    /// does not vanish on `N`, with that restricted derivative.
    pub witness: Option<(String, String, Polynomial)>,
}

impl TangentFiltrationReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks that `TF|_N` is filtration preserving: `∂(F*y_b)/∂x_a` vanishes on
/// `N` whenever `w'_b > w_a`. Requires `F(N) ⊆ N'`.
pub fn check_tangent_filtration(map: &PolynomialMap) -> Result<TangentFiltrationReport> {
    let on_n = map.source.normal_coordinates();
    for (b, name) in map.target.names().iter().enumerate() {
        if map.target.weight(b) > 0 {
            let restricted = map.components[b].restrict_zero(&on_n);
            if !restricted.is_zero() {
                return Err(Error::DoesNotPreserveSubmanifold {
                    coordinate: name.clone(),
                    restriction: restricted.to_string(),
                });
            }
        }
    }
    for (b, target_name) in map.target.names().iter().enumerate() {
        for (a, source_name) in map.source.names().iter().enumerate() {
            if map.target.weight(b) <= map.source.weight(a) {
                continue;
            }
            let d = map.components[b]
                .derivative(source_name)
                .restrict_zero(&on_n);
            if !d.is_zero() {
                return Ok(TangentFiltrationReport {
                    witness: Some((target_name.clone(), source_name.clone(), d)),
                });
            }
        }
    }
    Ok(TangentFiltrationReport { witness: None })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphCoordinate {
    /// Target coordinate name in the product chart.
    pub target: String,
    /// `y_b − F*y_b` in product coordinates.
    pub polynomial: Polynomial,
    pub degree: FiltrationDegree,
}

/// Product chart `(y, x)` with the graph of `F` cut out by the `ỹ_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphChart {
    pub chart: WeightedChart,
    pub cut_out: Vec<GraphCoordinate>,
}

fn product_chart(map: &PolynomialMap) -> Result<(WeightedChart, Vec<String>)> {
    let target_names: Vec<String> = map
        .target
        .names()
        .iter()
        .map(|n| {
            if map.source.index_of(n).is_some() {
                format!("{n}_tgt")
            } else {
                n.clone()
            }
        })
        .collect();
    let names: Vec<String> = target_names
        .iter()
        .chain(map.source.names())
        .cloned()
        .collect();
    let weights: Vec<u32> = map
        .target
        .weights()
        .iter()
        .chain(map.source.weights())
        .copied()
        .collect();
    let order = map.target.order().max(map.source.order());
    let chart = WeightedChart::internal(&names, WeightVector::with_order(weights, order)?)?;
    Ok((chart, target_names))
}

/// Degrees of the graph coordinates `ỹ_b = y_b − F*y_b` in the product
/// weighting, without requiring `F` to be weighted.
pub fn graph_coordinate_degrees(map: &PolynomialMap) -> Result<Vec<GraphCoordinate>> {
    let (chart, target_names) = product_chart(map)?;
    target_names
        .iter()
        .zip(&map.components)
        .map(|(name, component)| {
            let polynomial = Polynomial::var(name) - component;
            let degree = filtration_degree(&chart, &polynomial)?;
            Ok(GraphCoordinate {
                target: name.clone(),
                polynomial,
                degree,
            })
        })
        .collect()
}

/// Weighted submanifold coordinates for the graph of a weighted morphism.
pub fn graph_submanifold_chart(map: &PolynomialMap) -> Result<GraphChart> {
    let report = check_weighted_morphism(map)?;
    if let Some(w) = report.failures.first() {
        return Err(Error::NotWeightedMorphism(w.to_string()));
    }
    let (chart, _) = product_chart(map)?;
    let cut_out = graph_coordinate_degrees(map)?;
    // ỹ_b must reach exactly the target weight
    for (b, c) in cut_out.iter().enumerate() {
        if c.degree != Degree::Finite(map.target.weight(b)) {
            return Err(Error::NotWeightedMorphism(format!(
                "graph coordinate for `{}` has degree {}",
                c.target, c.degree
            )));
        }
    }
    Ok(GraphChart { chart, cut_out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn p(s: &str) -> Polynomial {
        parse(s).unwrap()
    }

    fn line() -> WeightedChart {
        WeightedChart::from_pairs(&[("u", 1)]).unwrap()
    }

    fn plane13() -> WeightedChart {
        WeightedChart::from_pairs(&[("x", 1), ("y", 3)]).unwrap()
    }

    fn curve(second: &str) -> PolynomialMap {
        PolynomialMap::new(line(), plane13(), vec![p("u"), p(second)]).unwrap()
    }

    #[test]
    fn parabola_is_rejected_with_witness() {
        let report = check_weighted_morphism(&curve("u^2")).unwrap();
        assert!(!report.holds());
        assert_eq!(report.failures[0].to_string(), "y: degree 2 < 3");
    }

    #[test]
    fn cubic_and_identity_pass() {
        assert!(check_weighted_morphism(&curve("u^3")).unwrap().holds());
        assert!(check_weighted_morphism(&PolynomialMap::identity(&plane13()))
            .unwrap()
            .holds());
    }

    #[test]
    fn tangent_filtration_examples() {
        assert!(check_tangent_filtration(&PolynomialMap::identity(&plane13()))
            .unwrap()
            .holds());
        let flat = WeightedChart::from_pairs(&[("x", 1), ("y", 1)]).unwrap();
        let id = PolynomialMap::new(flat, plane13(), vec![p("x"), p("y")]).unwrap();
        let report = check_tangent_filtration(&id).unwrap();
        let (b, a, d) = report.witness.unwrap();
        assert_eq!((b.as_str(), a.as_str()), ("y", "y"));
        assert_eq!(d, p("1"));
        assert!(check_tangent_filtration(&curve("u^3")).unwrap().holds());
        // the parabola still has a filtration preserving tangent map
        assert!(check_tangent_filtration(&curve("u^2")).unwrap().holds());
    }

    #[test]
    fn tangent_filtration_requires_n_to_n() {
        let m = PolynomialMap::new(line(), plane13(), vec![p("u + 1"), p("u^3")]).unwrap();
        assert!(matches!(
            check_tangent_filtration(&m),
            Err(Error::DoesNotPreserveSubmanifold { .. })
        ));
    }

    #[test]
    fn graph_chart_examples() {
        let g = graph_submanifold_chart(&PolynomialMap::identity(&plane13())).unwrap();
        assert_eq!(g.cut_out[0].polynomial, p("x_tgt - x"));
        assert_eq!(g.cut_out[1].polynomial, p("y_tgt - y"));
        assert_eq!(g.cut_out[0].degree, Degree::Finite(1));
        assert_eq!(g.cut_out[1].degree, Degree::Finite(3));

        let target = WeightedChart::from_pairs(&[("y1", 1), ("y2", 3)]).unwrap();
        let f = PolynomialMap::new(line(), target.clone(), vec![p("u"), p("u^3")]).unwrap();
        let g = graph_submanifold_chart(&f).unwrap();
        assert_eq!(g.cut_out[0].polynomial, p("y1 - u"));
        assert_eq!(g.cut_out[1].polynomial, p("y2 - u^3"));
        assert_eq!(g.cut_out[1].degree, Degree::Finite(3));
        assert_eq!(g.chart.names(), &["y1", "y2", "u"]);

        let constant = PolynomialMap::new(line(), target, vec![p("0"), p("0")]).unwrap();
        let g = graph_submanifold_chart(&constant).unwrap();
        assert_eq!(g.cut_out[0].polynomial, p("y1"));

        assert!(matches!(
            graph_submanifold_chart(&curve("u^2")),
            Err(Error::NotWeightedMorphism(_))
        ));
    }

    #[test]
    fn composition_and_pullback() {
        let sq = PolynomialMap::new(line(), line(), vec![p("u^2")]).unwrap();
        let cube = sq.then(&curve("u^3")).unwrap();
        assert_eq!(cube.components()[1], p("u^6"));
        assert_eq!(cube.components()[0], p("u^2"));
    }
}
