//! The fixed example objects shared by the suites, the CLI corpus and the
//! acceptance tests.

use crate::liealg::{entry, AlgebroidData};
use crate::poly::{parse, Polynomial};
use crate::weighting::{PolyVectorField, PolynomialMap, WeightedChart};

fn p(s: &str) -> Polynomial {
    parse(s).expect("example polynomial")
}

/// `ℝ²` with `wt(x) = 1`, `wt(y) = 3`.
pub fn plane13() -> WeightedChart {
    WeightedChart::from_pairs(&[("x", 1), ("y", 3)]).expect("valid chart")
}

/// The line `u` weighted along the origin.
pub fn line1() -> WeightedChart {
    WeightedChart::from_pairs(&[("u", 1)]).expect("valid chart")
}

/// `u ↦ (u, u²)`, not a weighted morphism into `plane13`.
pub fn parabola() -> PolynomialMap {
    PolynomialMap::new(line1(), plane13(), vec![p("u"), p("u^2")]).expect("valid map")
}

/// `u ↦ (u, u³)`.
pub fn cubic() -> PolynomialMap {
    PolynomialMap::new(line1(), plane13(), vec![p("u"), p("u^3")]).expect("valid map")
}

/// Frame `e1, e2, e3` with `[e1, e2] = e3`.
pub fn heisenberg(vertical: Vec<i64>) -> AlgebroidData {
    AlgebroidData::lie_algebra(&["e1", "e2", "e3"], vertical, vec![entry(0, 1, 2, p("1"))])
        .expect("valid algebra")
}

/// Frame `h, e, f` with `[h, e] = 2e`, `[h, f] = −2f`, `[e, f] = h`.
pub fn sl2(vertical: Vec<i64>) -> AlgebroidData {
    AlgebroidData::lie_algebra(
        &["h", "e", "f"],
        vertical,
        vec![
            entry(0, 1, 1, p("2")),
            entry(0, 2, 2, p("-2")),
            entry(1, 2, 0, p("1")),
        ],
    )
    .expect("valid algebra")
}

/// `sl₂` weighted along the Borel subalgebra spanned by `h, e`.
pub fn sl2_borel() -> AlgebroidData {
    sl2(vec![0, 0, -1])
}

/// Free step-3 nilpotent algebra on two generators, truncated:
/// `[e1, e2] = e3`, `[e1, e3] = e4`, `[e2, e3] = e5`.
pub fn engel_like() -> AlgebroidData {
    AlgebroidData::lie_algebra(
        &["e1", "e2", "e3", "e4", "e5"],
        vec![-1, -1, -2, -3, -3],
        vec![
            entry(0, 1, 2, p("1")),
            entry(0, 2, 3, p("1")),
            entry(1, 2, 4, p("1")),
        ],
    )
    .expect("valid algebra")
}

/// Free step-2 nilpotent algebra on three generators.
pub fn free_step_two() -> AlgebroidData {
    AlgebroidData::lie_algebra(
        &["a1", "a2", "a3", "b12", "b13", "b23"],
        vec![-1, -1, -1, -2, -2, -2],
        vec![
            entry(0, 1, 3, p("1")),
            entry(0, 2, 4, p("1")),
            entry(1, 2, 5, p("1")),
        ],
    )
    .expect("valid algebra")
}

/// `ℝ³` with `wt(x) = wt(y) = 1`, `wt(z) = 2`, the contact-type weighting
/// of the Heisenberg group at the origin.
pub fn contact_chart() -> WeightedChart {
    WeightedChart::from_pairs(&[("x", 1), ("y", 1), ("z", 2)]).expect("valid chart")
}

/// Left-invariant frame `X = ∂x − y/2 ∂z`, `Y = ∂y + x/2 ∂z`, `Z = ∂z`
/// as an algebroid over the contact chart, weights `(−1, −1, −2)`.
pub fn contact_algebroid() -> AlgebroidData {
    use crate::linweight::WeightedBundleChart;
    let bundle = WeightedBundleChart::with_fibre(
        contact_chart(),
        &["X", "Y", "Z"],
        &["pX", "pY", "pZ"],
        vec![-1, -1, -2],
    )
    .expect("valid bundle");
    AlgebroidData::new(
        bundle,
        vec![
            vec![p("1"), p("0"), p("-1/2*y")],
            vec![p("0"), p("1"), p("1/2*x")],
            vec![p("0"), p("0"), p("1")],
        ],
        vec![entry(0, 1, 2, p("1"))],
    )
    .expect("valid algebroid")
}

/// The unweighted plane `(x, y)` and the generators `x∂x`, `∂y`.
pub fn clean_distribution() -> (WeightedChart, Vec<PolyVectorField>) {
    let chart = WeightedChart::from_pairs(&[("x", 0), ("y", 0)]).expect("valid chart");
    let d = vec![
        PolyVectorField::new(chart.clone(), vec![p("x"), p("0")]).expect("valid field"),
        PolyVectorField::new(chart.clone(), vec![p("0"), p("1")]).expect("valid field"),
    ];
    (chart, d)
}
