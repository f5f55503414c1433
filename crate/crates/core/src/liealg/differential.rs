use super::AlgebroidData;
use crate::error::Result;
use crate::linweight::{form_degree, FormElement};
use crate::poly::{Degree, Polynomial};
use crate::weighting::filtration_degree;

/// `d_A f = Σ_a (a(σ_a) f) τ_a`.
pub fn da_function(algebroid: &AlgebroidData, f: &Polynomial) -> FormElement {
    let terms = (0..algebroid.rank()).map(|a| (vec![a], algebroid.anchor_apply(a, f)));
    FormElement::from_terms(algebroid.bundle(), 1, terms).expect("indices in range")
}

/// `d_A τ_c = −Σ_{a<b} Γ^c_ab τ_a ∧ τ_b`.
pub fn da_dual_frame(algebroid: &AlgebroidData, c: usize) -> FormElement {
    let k = algebroid.rank();
    let terms = (0..k).flat_map(|a| {
        (a + 1..k).map(move |b| (vec![a, b], -algebroid.gamma(a, b, c)))
    });
    FormElement::from_terms(algebroid.bundle(), 2, terms).expect("indices in range")
}

/// `d_A` extended from functions and the dual frame as a degree +1
/// derivation.
pub fn da_apply(algebroid: &AlgebroidData, form: &FormElement) -> Result<FormElement> {
    let bundle = algebroid.bundle();
    let mut out = FormElement::zero(bundle, form.degree() + 1);
    for (indices, f) in form.coefficients() {
        let taus: Vec<FormElement> = indices
            .iter()
            .map(|&a| FormElement::dual_frame(bundle, a))
            .collect();
        let wedge_all = |parts: &[FormElement]| -> Result<FormElement> {
            let mut acc = FormElement::function(bundle, Polynomial::one());
            for p in parts {
                acc = acc.wedge(p)?;
            }
            Ok(acc)
        };
        out = out.add(&da_function(algebroid, f).wedge(&wedge_all(&taus)?)?)?;
        for (k, &c) in indices.iter().enumerate() {
            let mut parts = taus.clone();
            parts[k] = da_dual_frame(algebroid, c);
            let term = wedge_all(&parts)?;
            let sign = if k % 2 == 0 { f.clone() } else { -f.clone() };
            out = out.add(&term.scale(&sign))?;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DaWitness {
    /// `d_A x_j` has degree below `w_j`.
    Coordinate {
        coordinate: usize,
        required: i64,
        found: Degree,
    },
    /// `d_A τ_c` has degree below `−v_c`.
    DualFrame {
        c: usize,
        required: i64,
        found: Degree,
    },
    /// `d_A² ≠ 0` on a generator.
    NotSquareZero { generator: String },
}

impl std::fmt::Display for DaWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DaWitness::Coordinate {
                coordinate,
                required,
                found,
            } => write!(
                f,
                "d_A x{}: degree {} < {}",
                coordinate + 1,
                found,
                required
            ),
            DaWitness::DualFrame { c, required, found } => {
                write!(f, "d_A τ{}: degree {} < {}", c + 1, found, required)
            }
            DaWitness::NotSquareZero { generator } => write!(f, "d_A² {generator} ≠ 0"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DaReport {
    pub failures: Vec<DaWitness>,
}

impl DaReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn filtration_preserving(&self) -> bool {
        !self
            .failures
            .iter()
            .any(|w| !matches!(w, DaWitness::NotSquareZero { .. }))
    }
}

/// Checks `d_A² = 0` and that `d_A` does not lower the filtration degree,
/// both on the generators `x_j` and `τ_c`.
pub fn da_check(algebroid: &AlgebroidData) -> Result<DaReport> {
    let base = algebroid.base();
    let v = algebroid.bundle().vertical();
    let mut failures = Vec::new();
    for j in 0..base.dim() {
        let d = da_function(algebroid, &base.coordinate(j));
        let found = form_degree(&d)?;
        let required = filtration_degree(base, &base.coordinate(j))?
            .finite()
            .expect("coordinate");
        if !found.at_least(required) {
            failures.push(DaWitness::Coordinate {
                coordinate: j,
                required,
                found,
            });
        }
        if !da_apply(algebroid, &d)?.is_zero() {
            failures.push(DaWitness::NotSquareZero {
                generator: base.names()[j].clone(),
            });
        }
    }
    for c in 0..algebroid.rank() {
        let d = da_dual_frame(algebroid, c);
        let found = form_degree(&d)?;
        if !found.at_least(-v[c]) {
            failures.push(DaWitness::DualFrame {
                c,
                required: -v[c],
                found,
            });
        }
        if !da_apply(algebroid, &d)?.is_zero() {
            failures.push(DaWitness::NotSquareZero {
                generator: format!("τ{}", c + 1),
            });
        }
    }
    Ok(DaReport { failures })
}
