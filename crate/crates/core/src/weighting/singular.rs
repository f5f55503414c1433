use std::collections::HashMap;

use super::PolyVectorField;
use crate::error::{Error, Result};
use crate::poly::{linalg, Polynomial, Rational};

/// Membership `f ∈ C_(i)` for the filtration induced by a singular Lie
/// filtration: `C_(1) = I(N)` and, for `i > 1`, `f ∈ C_(i)` iff `f ∈ I(N)`
/// and `X f ∈ C_(i−j)` for every generator `X` of level `−j`, `0 < j < i`.
///
/// `levels[j - 1]` lists the generators of level `−j`; `N` is the common
/// zero set of `vanishing`.
pub fn induced_weighting_degree(
    levels: &[Vec<PolyVectorField>],
    vanishing: &[String],
    f: &Polynomial,
    i: i64,
) -> bool {
    let mut memo = HashMap::new();
    induced_member(levels, vanishing, f, i, &mut memo)
}

fn induced_member(
    levels: &[Vec<PolyVectorField>],
    vanishing: &[String],
    f: &Polynomial,
    i: i64,
    memo: &mut HashMap<(String, i64), bool>,
) -> bool {
    if i <= 0 || f.is_zero() {
        return true;
    }
    let key = (f.to_string(), i);
    if let Some(&known) = memo.get(&key) {
        return known;
    }
    let mut member = f.restrict_zero(vanishing).is_zero();
    if member {
        'levels: for (idx, generators) in levels.iter().enumerate() {
            let j = idx as i64 + 1;
            if j >= i {
                break;
            }
            for x in generators {
                if !induced_member(levels, vanishing, &x.apply(f), i - j, memo) {
                    member = false;
                    break 'levels;
                }
            }
        }
    }
    memo.insert(key, member);
    member
}

/// Largest `i ≤ cap` with `f ∈ C_(i)` for the induced filtration.
pub fn induced_degree_up_to(
    levels: &[Vec<PolyVectorField>],
    vanishing: &[String],
    f: &Polynomial,
    cap: i64,
) -> i64 {
    let mut memo = HashMap::new();
    let mut i = 0;
    while i < cap && induced_member(levels, vanishing, f, i + 1, &mut memo) {
        i += 1;
    }
    i
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CleanReport {
    /// `dim(𝒟_p + T_p N)` at each sample point, in order.
    pub dimensions: Vec<usize>,
}

impl CleanReport {
    /// Constant dimension across the samples. This is a sampled necessary
    /// condition for cleanness, not a proof.
    pub fn holds(&self) -> bool {
        self.dimensions.windows(2).all(|w| w[0] == w[1])
    }
}

/// Sampled cleanness check of `N = {cut_out = 0}` for the distribution
/// spanned by `generators`.
pub fn check_clean_distribution(
    generators: &[PolyVectorField],
    chart: &super::WeightedChart,
    cut_out: &[String],
    samples: &[Vec<Rational>],
) -> Result<CleanReport> {
    use num_traits::{One, Zero};
    let cut_idx = cut_out
        .iter()
        .map(|n| chart.index_of(n).ok_or_else(|| Error::UnknownVariable(n.clone())))
        .collect::<Result<Vec<_>>>()?;
    let mut dimensions = Vec::new();
    for point in samples {
        chart.point_map(point)?;
        if let Some(&a) = cut_idx.iter().find(|&&a| !point[a].is_zero()) {
            return Err(Error::PointOffSubmanifold(format!(
                "sample has {} = {}",
                chart.names()[a],
                point[a]
            )));
        }
        let mut rows = Vec::new();
        for x in generators {
            rows.push(x.at_point(point)?);
        }
        for a in (0..chart.dim()).filter(|a| !cut_idx.contains(a)) {
            let mut e = vec![Rational::zero(); chart.dim()];
            e[a] = Rational::one();
            rows.push(e);
        }
        dimensions.push(linalg::rank(&rows));
    }
    Ok(CleanReport { dimensions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, parse};
    use crate::weighting::WeightedChart;

    fn chart() -> WeightedChart {
        WeightedChart::from_pairs(&[("x", 0), ("y", 0)]).unwrap()
    }

    fn field(a: &str, b: &str) -> PolyVectorField {
        PolyVectorField::new(chart(), vec![parse(a).unwrap(), parse(b).unwrap()]).unwrap()
    }

    fn levels_13() -> Vec<Vec<PolyVectorField>> {
        vec![
            vec![field("1", "0")],
            vec![],
            vec![field("1", "0"), field("0", "1")],
        ]
    }

    #[test]
    fn induced_degree_matches_weights_13() {
        let n = vec!["x".to_string(), "y".to_string()];
        let y = parse("y").unwrap();
        assert!(induced_weighting_degree(&levels_13(), &n, &y, 3));
        assert!(!induced_weighting_degree(&levels_13(), &n, &y, 4));
        assert!(induced_weighting_degree(&levels_13(), &n, &parse("1").unwrap(), 0));
        assert_eq!(induced_degree_up_to(&levels_13(), &n, &parse("x").unwrap(), 10), 1);
        assert_eq!(induced_degree_up_to(&levels_13(), &n, &parse("x*y + x^4").unwrap(), 10), 4);
    }

    #[test]
    fn x_axis_is_clean() {
        let d = [field("x", "0"), field("0", "1")];
        let samples = vec![vec![int(0), int(0)], vec![int(1), int(0)], vec![int(2), int(0)]];
        let report = check_clean_distribution(&d, &chart(), &["y".into()], &samples).unwrap();
        assert_eq!(report.dimensions, vec![2, 2, 2]);
        assert!(report.holds());
    }

    #[test]
    fn y_axis_dimensions() {
        // x∂x vanishes on the whole y-axis, so only ∂y and T N = span ∂y remain.
        let d = [field("x", "0"), field("0", "1")];
        let samples = vec![vec![int(0), int(0)], vec![int(0), int(1)]];
        let report = check_clean_distribution(&d, &chart(), &["x".into()], &samples).unwrap();
        assert_eq!(report.dimensions, vec![1, 1]);
    }

    #[test]
    fn full_tangent_distribution_is_clean() {
        let d = [field("1", "0"), field("0", "1")];
        let samples = vec![vec![int(0), int(0)], vec![int(3), int(0)]];
        let report = check_clean_distribution(&d, &chart(), &["y".into()], &samples).unwrap();
        assert!(report.holds());
        assert_eq!(report.dimensions, vec![2, 2]);
    }

    #[test]
    fn samples_must_lie_on_n() {
        let d = [field("1", "0")];
        let samples = vec![vec![int(0), int(1)]];
        assert!(matches!(
            check_clean_distribution(&d, &chart(), &["y".into()], &samples),
            Err(Error::PointOffSubmanifold(_))
        ));
    }
}
