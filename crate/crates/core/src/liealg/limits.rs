use super::{check_im_weighting, AlgebroidData, StructureEntry};
use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::weighting::{homogeneous_approximation, rees_interpolation, WeightedChart};

fn require_im(algebroid: &AlgebroidData) -> Result<()> {
    let report = check_im_weighting(algebroid)?;
    match report.failures.first() {
        None => Ok(()),
        Some(w) => Err(Error::Precondition(format!(
            "weighting is not infinitesimally multiplicative: {w}"
        ))),
    }
}

fn transform<F>(algebroid: &AlgebroidData, op: F) -> Result<AlgebroidData>
where
    F: Fn(&WeightedChart, &Polynomial, i64) -> Result<Polynomial>,
{
    require_im(algebroid)?;
    let base = algebroid.base();
    let v = algebroid.bundle().vertical();
    let anchor = (0..algebroid.rank())
        .map(|a| {
            (0..base.dim())
                .map(|j| op(base, &algebroid.anchor()[a][j], v[a] + base.weight(j)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let entries = algebroid
        .structure_entries()
        .into_iter()
        .map(|StructureEntry { a, b, c, value }| {
            Ok(StructureEntry {
                a,
                b,
                c,
                value: op(base, &value, v[a] + v[b] - v[c])?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    AlgebroidData::with_parameters(algebroid.bundle().graded(), anchor, entries)
}

/// Leading parts `(Γ^c_ab)^{[v_a+v_b−v_c]}` and `(a_aj)^{[v_a+w_j]}` on the
/// graded frame over barred coordinates.
pub fn graded_normal_algebroid(algebroid: &AlgebroidData) -> Result<AlgebroidData> {
    transform(algebroid, homogeneous_approximation)
}

/// Rees interpolations of the structure functions and anchor, i.e. the
/// algebroid in the rescaled frame `σ̃_a = t^{−v_a} σ_a`.
pub fn rees_deformation_algebroid(algebroid: &AlgebroidData) -> Result<AlgebroidData> {
    transform(algebroid, rees_interpolation)
}
