use super::{jet_chart, jet_name, lift_all, lift_vector_field, PolyVectorField};
use crate::error::{Error, Result};
use crate::linweight::SectionElement;
use crate::poly::Polynomial;
use crate::weighting::{PolynomialMap, WeightedChart};

/// The graded subbundle `Q ⊆ T_r U` of a weighting, cut out by
/// `x_a^{(j)} = 0` for `j < w_a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QModel {
    chart: WeightedChart,
    order: usize,
    cut_out: Vec<String>,
    free: Vec<String>,
}

pub fn q_model(chart: &WeightedChart, r: usize) -> Result<QModel> {
    if (chart.order() as usize) > r {
        return Err(Error::OrderOutOfRange(format!(
            "order {r} is below the chart order {}",
            chart.order()
        )));
    }
    let mut cut_out = Vec::new();
    let mut free = Vec::new();
    for (a, name) in chart.names().iter().enumerate() {
        for j in 0..=r {
            if (j as i64) < chart.weight(a) {
                cut_out.push(jet_name(name, j));
            } else {
                free.push(jet_name(name, j));
            }
        }
    }
    Ok(QModel {
        chart: chart.clone(),
        order: r,
        cut_out,
        free,
    })
}

impl QModel {
    pub fn chart(&self) -> &WeightedChart {
        &self.chart
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Jet variables set to zero on `Q`.
    pub fn cut_out(&self) -> &[String] {
        &self.cut_out
    }

    pub fn free(&self) -> &[String] {
        &self.free
    }

    /// Restriction of a jet polynomial to `Q`.
    pub fn restrict(&self, f: &Polynomial) -> Polynomial {
        f.restrict_zero(&self.cut_out)
    }

    /// The cut-out equations as text, `x__0 = 0`.
    pub fn equations(&self) -> Vec<String> {
        self.cut_out.iter().map(|v| format!("{v} = 0")).collect()
    }
}

/// Degree recovered from `Q`: exact below `r + 1`, otherwise only the cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QDegree {
    Exact(i64),
    AtLeast(i64),
}

impl QDegree {
    pub fn value(self) -> i64 {
        match self {
            QDegree::Exact(d) | QDegree::AtLeast(d) => d,
        }
    }
}

impl std::fmt::Display for QDegree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            QDegree::Exact(d) => write!(f, "{d}"),
            QDegree::AtLeast(d) => write!(f, ">= {d}"),
        }
    }
}

/// Largest `i ≤ r + 1` with `f^{(j)}|_Q = 0` for all `j < i`.
pub fn degree_via_q(q: &QModel, f: &Polynomial) -> Result<QDegree> {
    q.chart.check_vars(f)?;
    for (j, lift) in lift_all(f, q.order).iter().enumerate() {
        if !q.restrict(lift).is_zero() {
            return Ok(QDegree::Exact(j as i64));
        }
    }
    Ok(QDegree::AtLeast(q.order as i64 + 1))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangencyReport {
    /// A cut-out jet variable whose derivative does not vanish on `Q`.
    pub failure: Option<(String, Polynomial)>,
}

impl TangencyReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

fn tangency_of(q: &QModel, lifted: &PolyVectorField) -> TangencyReport {
    let jets = lifted.chart();
    for u in &q.cut_out {
        let a = jets.index_of(u).expect("cut-out variable is a jet coordinate");
        let residual = q.restrict(&lifted.coefficients()[a]);
        if !residual.is_zero() {
            return TangencyReport {
                failure: Some((u.clone(), residual)),
            };
        }
    }
    TangencyReport { failure: None }
}

/// Whether `X^{(−i)}` is tangent to `Q`.
pub fn tangency_check(q: &QModel, field: &PolyVectorField, i: usize) -> Result<TangencyReport> {
    if field.chart().names() != q.chart.names() {
        return Err(Error::Dimension("vector field lives on another chart".into()));
    }
    let lifted = lift_vector_field(field, i, q.order)?;
    Ok(tangency_of(q, &lifted))
}

pub(crate) fn tangency_of_lifted(q: &QModel, lifted: &PolyVectorField) -> TangencyReport {
    tangency_of(q, lifted)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipReport {
    /// Index map used: `σ^{(i)} = σ^{(−k)}` with `k = −i`.
    pub lift_level: usize,
    /// `(fibre jet p_b^{(j)}, value on Q_M)` that should vanish.
    pub failure: Option<(String, Polynomial)>,
}

impl MembershipReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Whether `σ^{(i)}` restricts to a section of `Q_V` over `Q_M`.
///
/// For `i = −k ≤ 0` the lift `σ^{(−k)}` has fibre components
/// `p_b^{(j)} = f_b^{(j−k)}` (zero for `j < k`) and `Q_V` cuts out
/// `p_b^{(j)}` for `j < −v_b`.
pub fn section_lift_membership(
    section: &SectionElement,
    i: i64,
    r: usize,
) -> Result<MembershipReport> {
    let bundle = section.bundle();
    if let Some(b) = bundle.vertical().iter().position(|&v| v > 0) {
        return Err(Error::Precondition(format!(
            "weight of {} is positive; Q_V needs weights concentrated in non-positive degree",
            bundle.frame()[b]
        )));
    }
    if i > 0 || (-i) as usize > r {
        return Err(Error::OrderOutOfRange(format!(
            "section lifts σ^({i}) exist for -{r} <= i <= 0"
        )));
    }
    let max_fibre = bundle.vertical().iter().map(|v| (-v) as usize).max().unwrap_or(0);
    if max_fibre > r {
        return Err(Error::OrderOutOfRange(format!(
            "order {r} is below the fibre weight {max_fibre}"
        )));
    }
    let q = q_model(bundle.base(), r)?;
    let k = (-i) as usize;
    for (b, f) in section.coefficients().iter().enumerate() {
        let lifts = lift_all(f, r);
        let bound = (-bundle.vertical()[b]) as usize;
        for j in k..bound {
            let value = q.restrict(&lifts[j - k]);
            if !value.is_zero() {
                return Ok(MembershipReport {
                    lift_level: k,
                    failure: Some((jet_name(&bundle.fibre()[b], j), value)),
                });
            }
        }
    }
    Ok(MembershipReport {
        lift_level: k,
        failure: None,
    })
}

/// `T_r F(Q_M) ⊆ Q_{M'}`: every target cut-out jet pulls back to a
/// function vanishing on `Q_M`. Returns the first offending jet.
pub fn lift_preserves_q(map: &PolynomialMap, r: usize) -> Result<Option<(String, Polynomial)>> {
    let source_q = q_model(map.source(), r)?;
    let target_q = q_model(map.target(), r)?;
    let target_jets = jet_chart(map.target(), r);
    let lifted = super::lift_map(map, r)?;
    for u in target_q.cut_out() {
        let idx = target_jets.index_of(u).expect("jet coordinate");
        let value = source_q.restrict(&lifted.components()[idx]);
        if !value.is_zero() {
            return Ok(Some((u.clone(), value)));
        }
    }
    Ok(None)
}
