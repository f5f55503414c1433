use std::collections::BTreeSet;

use super::PolynomialMap;
use crate::error::{Error, Result};
use crate::poly::{linalg, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransverseReport {
    /// `(i, rank of the combined image in gr_i, dim gr_i)` for each target weight.
    pub table: Vec<(u32, usize, usize)>,
}

impl TransverseReport {
    pub fn holds(&self) -> bool {
        self.table.iter().all(|(_, rank, dim)| rank == dim)
    }

    pub fn first_failure(&self) -> Option<u32> {
        self.table
            .iter()
            .find(|(_, rank, dim)| rank != dim)
            .map(|(i, _, _)| *i)
    }
}

fn jacobian_block(map: &PolynomialMap, point: &[Rational], i: u32) -> Vec<Vec<Rational>> {
    let at = map.source().point_map(point).expect("checked length");
    let rows: Vec<usize> = (0..map.target().dim())
        .filter(|&b| map.target().weights()[b] == i)
        .collect();
    map.source()
        .names()
        .iter()
        .zip(map.source().weights())
        .filter(|(_, &w)| w == i)
        .map(|(name, _)| {
            rows.iter()
                .map(|&b| {
                    map.components()[b]
                        .derivative(name)
                        .evaluate(&at)
                        .constant_term()
                })
                .collect()
        })
        .collect()
}

/// Pointwise weighted transversality of `F: M → M''` and `G: M' → M''` at
/// `p ∈ N`, `q ∈ N'` with `F(p) = G(q)`: for each weight `i` of `M''` the
/// graded pieces `gr_i(T_pF)` and `gr_i(T_qG)` must jointly span
/// `gr_i(T M'') = span{∂/∂z_c : w''_c = i}`.
pub fn check_weighted_transverse_at_point(
    f: &PolynomialMap,
    g: &PolynomialMap,
    p: &[Rational],
    q: &[Rational],
) -> Result<TransverseReport> {
    if f.target() != g.target() {
        return Err(Error::Dimension(
            "transversality needs maps into the same chart".into(),
        ));
    }
    for (chart, point, label) in [(f.source(), p, "p"), (g.source(), q, "q")] {
        chart.point_map(point)?;
        if !chart.on_submanifold(point) {
            return Err(Error::PointOffSubmanifold(format!(
                "{label} has a nonzero positively weighted coordinate"
            )));
        }
    }
    let fp = f.apply(p)?;
    let gq = g.apply(q)?;
    if fp != gq {
        let show = |v: &[Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        return Err(Error::ImagesDiffer(format!("F(p) = ({}), G(q) = ({})", show(&fp), show(&gq))));
    }
    if !f.target().on_submanifold(&fp) {
        return Err(Error::PointOffSubmanifold(
            "common image is not on N''".into(),
        ));
    }
    let weights: BTreeSet<u32> = f.target().weights().iter().copied().collect();
    let table = weights
        .into_iter()
        .map(|i| {
            let dim = f.target().weights().iter().filter(|&&w| w == i).count();
            let mut rows = jacobian_block(f, p, i);
            rows.extend(jacobian_block(g, q, i));
            (i, linalg::rank(&rows), dim)
        })
        .collect();
    Ok(TransverseReport { table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, parse};
    use crate::weighting::WeightedChart;

    fn plane13() -> WeightedChart {
        WeightedChart::from_pairs(&[("x", 1), ("y", 3)]).unwrap()
    }

    #[test]
    fn identities_are_transverse() {
        let id = PolynomialMap::identity(&plane13());
        let origin = [int(0), int(0)];
        assert!(check_weighted_transverse_at_point(&id, &id, &origin, &origin)
            .unwrap()
            .holds());
    }

    #[test]
    fn points_are_not_transverse() {
        let point = WeightedChart::from_pairs(&[]).unwrap();
        let f = PolynomialMap::new(point.clone(), plane13(), vec![parse("0").unwrap(); 2]).unwrap();
        let report = check_weighted_transverse_at_point(&f, &f, &[], &[]).unwrap();
        assert!(!report.holds());
        assert_eq!(report.first_failure(), Some(1));
        assert_eq!(report.table, vec![(1, 0, 1), (3, 0, 1)]);
    }

    #[test]
    fn projection_is_transverse_to_anything() {
        let line = WeightedChart::from_pairs(&[("x", 1)]).unwrap();
        let proj = PolynomialMap::new(plane13(), line.clone(), vec![parse("x").unwrap()]).unwrap();
        let other_source = WeightedChart::from_pairs(&[("s", 1), ("r", 0)]).unwrap();
        let g = PolynomialMap::new(other_source, line, vec![parse("s*r + s^2").unwrap()]).unwrap();
        let report =
            check_weighted_transverse_at_point(&proj, &g, &[int(0), int(0)], &[int(0), int(5)])
                .unwrap();
        assert!(report.holds());
    }

    #[test]
    fn mismatched_images_are_an_error() {
        let line = WeightedChart::from_pairs(&[("x", 0)]).unwrap();
        let f = PolynomialMap::new(line.clone(), line.clone(), vec![parse("x").unwrap()]).unwrap();
        let g = PolynomialMap::new(line.clone(), line, vec![parse("x + 1").unwrap()]).unwrap();
        assert!(matches!(
            check_weighted_transverse_at_point(&f, &g, &[int(0)], &[int(0)]),
            Err(Error::ImagesDiffer(_))
        ));
    }
}
