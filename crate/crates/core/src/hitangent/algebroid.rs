use super::q::tangency_of_lifted;
use super::{jet_chart, jet_name, lift_all, lift_vector_field, q_model};
use crate::error::{Error, Result};
use crate::liealg::{check_jacobi, AlgebroidData, StructureEntry};
use crate::linweight::WeightedBundleChart;
use crate::poly::Polynomial;

fn lifted_index(r: usize, a: usize, k: usize) -> usize {
    a * (r + 1) + k
}

/// `T_r A ⇒ T_r U` in the frame `σ_c^{(−k)}` (named `σ_c__k`), with
/// `[σ_a^{(−i)}, σ_b^{(−j)}] = Σ_c Σ_{k≥i+j} (Γ^c_ab)^{(k−i−j)} σ_c^{(−k)}`
/// and anchor `σ_a^{(−i)} ↦ a(σ_a)^{(−i)}`. Weights are trivial.
pub fn lift_algebroid(algebroid: &AlgebroidData, r: usize) -> Result<AlgebroidData> {
    let bundle = algebroid.bundle();
    let k = bundle.rank();
    let jets = jet_chart(algebroid.base(), r);
    let frame: Vec<String> = bundle
        .frame()
        .iter()
        .flat_map(|n| (0..=r).map(move |j| jet_name(n, j)))
        .collect();
    let fibre: Vec<String> = bundle
        .fibre()
        .iter()
        .flat_map(|n| (0..=r).map(move |j| jet_name(n, j)))
        .collect();
    let lifted_bundle =
        WeightedBundleChart::with_fibre(jets, &frame, &fibre, vec![0; frame.len()])?;
    let mut anchor = Vec::with_capacity(frame.len());
    for a in 0..k {
        for i in 0..=r {
            anchor.push(
                lift_vector_field(&algebroid.anchor_field(a), i, r)?
                    .coefficients()
                    .to_vec(),
            );
        }
    }
    let mut entries = Vec::new();
    for e in algebroid.structure_entries() {
        let lifts = lift_all(&e.value, r);
        for i in 0..=r {
            for j in 0..=r - i {
                for level in i + j..=r {
                    let value = lifts[level - i - j].clone();
                    if value.is_zero() {
                        continue;
                    }
                    entries.push(StructureEntry {
                        a: lifted_index(r, e.a, i),
                        b: lifted_index(r, e.b, j),
                        c: lifted_index(r, e.c, level),
                        value,
                    });
                }
            }
        }
    }
    AlgebroidData::with_parameters(lifted_bundle, anchor, entries)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiftedWitness {
    /// `[σ_a^{(−i)}, σ_b^{(−j)}]` has a component along the cut-out
    /// `σ_c^{(−k)}` that does not vanish on `Q_M`.
    Bracket {
        left: (usize, usize),
        right: (usize, usize),
        target: (usize, usize),
        value: Polynomial,
    },
    /// The anchor of `σ_a^{(−i)}` is not tangent to `Q_M`.
    Anchor {
        frame: (usize, usize),
        jet: String,
        value: Polynomial,
    },
}

impl std::fmt::Display for LiftedWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LiftedWitness::Bracket {
                left,
                right,
                target,
                value,
            } => write!(
                f,
                "[σ{}^(-{}), σ{}^(-{})] has σ{}^(-{}) component {} outside Q_A",
                left.0 + 1,
                left.1,
                right.0 + 1,
                right.1,
                target.0 + 1,
                target.1,
                value
            ),
            LiftedWitness::Anchor { frame, jet, value } => write!(
                f,
                "anchor of σ{}^(-{}) moves {} off Q: {}",
                frame.0 + 1,
                frame.1,
                jet,
                value
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedAlgebroidReport {
    pub failures: Vec<LiftedWitness>,
}

impl LiftedAlgebroidReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Whether `Q_A ⇒ Q_M` is a Lie subalgebroid of `T_r A`. `Q_A` is spanned
/// over `Q_M` by `σ_c^{(−k)}` with `k ≥ −v_c`; by the Leibniz rule it is
/// enough to check brackets of these generators and tangency of their
/// anchors.
pub fn lifted_algebroid_check(algebroid: &AlgebroidData, r: usize) -> Result<LiftedAlgebroidReport> {
    if let Some(w) = check_jacobi(algebroid) {
        return Err(Error::Precondition(format!("not a Lie algebroid: {w}")));
    }
    let v = algebroid.bundle().vertical();
    if let Some(a) = v.iter().position(|&x| x > 0) {
        return Err(Error::Precondition(format!(
            "weight of σ{} is positive; Q_A needs weights concentrated in non-positive degree",
            a + 1
        )));
    }
    let max_fibre = v.iter().map(|x| (-x) as usize).max().unwrap_or(0);
    if max_fibre > r {
        return Err(Error::OrderOutOfRange(format!(
            "order {r} is below the fibre weight {max_fibre}"
        )));
    }
    let q = q_model(algebroid.base(), r)?;
    let lifted = lift_algebroid(algebroid, r)?;
    let k = algebroid.rank();
    let in_q = |c: usize, level: usize| level as i64 >= -v[c];
    let generators: Vec<(usize, usize)> = (0..k)
        .flat_map(|a| (0..=r).map(move |i| (a, i)))
        .filter(|&(a, i)| in_q(a, i))
        .collect();
    let mut failures = Vec::new();
    for &(a, i) in &generators {
        let report = tangency_of_lifted(&q, &lifted.anchor_field(lifted_index(r, a, i)));
        if let Some((jet, value)) = report.failure {
            failures.push(LiftedWitness::Anchor {
                frame: (a, i),
                jet,
                value,
            });
        }
    }
    for (n, &(a, i)) in generators.iter().enumerate() {
        for &(b, j) in &generators[n + 1..] {
            let bracket = lifted.frame_bracket(lifted_index(r, a, i), lifted_index(r, b, j));
            'scan: for c in 0..k {
                for level in 0..=r {
                    if in_q(c, level) {
                        continue;
                    }
                    let value = q.restrict(&bracket[lifted_index(r, c, level)]);
                    if !value.is_zero() {
                        failures.push(LiftedWitness::Bracket {
                            left: (a, i),
                            right: (b, j),
                            target: (c, level),
                            value,
                        });
                        break 'scan;
                    }
                }
            }
        }
    }
    Ok(LiftedAlgebroidReport { failures })
}
