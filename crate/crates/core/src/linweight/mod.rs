//! Linear weightings of a trivialized vector bundle `V = U × ℝ^k` over a
//! weighted chart.
//!
//! A frame `σ_1, …, σ_k` with vertical weights `v_b` gives the local model
//! `Γ(V)_(i) = Σ_b C_(i−v_b) σ_b`. On the total space the fibre coordinate
//! `p_b` dual to `σ_b` has weight `−v_b`.

mod form;

pub use form::{form_degree, FormElement};

use crate::error::{Error, Result};
use crate::poly::{is_identifier, Degree, Polynomial};
use crate::weighting::{
    filtration_degree, homogeneous_approximation, rees_interpolation, FiltrationDegree,
    WeightedChart, T_VAR,
};

const DUAL_SUFFIX: &str = "_dual";

/// Integer weights of the frame elements, one per frame element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VerticalWeightVector(pub Vec<i64>);

impl VerticalWeightVector {
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn weights(&self) -> &[i64] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightedBundleChart {
    base: WeightedChart,
    frame: Vec<String>,
    fibre: Vec<String>,
    vertical: VerticalWeightVector,
}

fn dual_name(name: &str) -> String {
    match name.strip_suffix(DUAL_SUFFIX) {
        Some(stem) => stem.to_string(),
        None => format!("{name}{DUAL_SUFFIX}"),
    }
}

impl WeightedBundleChart {
    /// A weighted frame with fibre coordinates `p1, …, pk`.
    pub fn new<S: AsRef<str>>(base: WeightedChart, frame: &[S], vertical: Vec<i64>) -> Result<Self> {
        let fibre: Vec<String> = (1..=frame.len()).map(|b| format!("p{b}")).collect();
        Self::with_fibre(base, frame, &fibre, vertical)
    }

    pub fn with_fibre<S: AsRef<str>, T: AsRef<str>>(
        base: WeightedChart,
        frame: &[S],
        fibre: &[T],
        vertical: Vec<i64>,
    ) -> Result<Self> {
        let frame: Vec<String> = frame.iter().map(|s| s.as_ref().to_string()).collect();
        let fibre: Vec<String> = fibre.iter().map(|s| s.as_ref().to_string()).collect();
        if frame.len() != vertical.len() || fibre.len() != vertical.len() {
            return Err(Error::InvalidBundle(format!(
                "{} frame elements, {} fibre coordinates, {} vertical weights",
                frame.len(),
                fibre.len(),
                vertical.len()
            )));
        }
        for (kind, names) in [("frame element", &frame), ("fibre coordinate", &fibre)] {
            for (i, n) in names.iter().enumerate() {
                if !is_identifier(n) {
                    return Err(Error::InvalidBundle(format!("{kind} `{n}` is not an identifier")));
                }
                if base.index_of(n).is_some() {
                    return Err(Error::InvalidBundle(format!(
                        "{kind} `{n}` clashes with a base coordinate"
                    )));
                }
                if names[..i].contains(n) {
                    return Err(Error::InvalidBundle(format!("duplicate {kind} `{n}`")));
                }
            }
        }
        Ok(WeightedBundleChart {
            base,
            frame,
            fibre,
            vertical: VerticalWeightVector(vertical),
        })
    }

    pub fn base(&self) -> &WeightedChart {
        &self.base
    }

    pub fn frame(&self) -> &[String] {
        &self.frame
    }

    pub fn fibre(&self) -> &[String] {
        &self.fibre
    }

    pub fn vertical(&self) -> &[i64] {
        self.vertical.weights()
    }

    pub fn rank(&self) -> usize {
        self.frame.len()
    }

    pub fn frame_index(&self, name: &str) -> Option<usize> {
        self.frame.iter().position(|n| n == name)
    }

    /// Weight of a base or fibre variable on the total space.
    pub fn total_weight(&self, var: &str) -> Option<i64> {
        self.base.weight_of(var).or_else(|| {
            self.fibre
                .iter()
                .position(|n| n == var)
                .map(|b| -self.vertical.0[b])
        })
    }

    /// The same frame over the barred base, with frame `σ_b^{[v_b]}` named
    /// `{σ_b}_gr`. Sections of the weighted normal bundle live here.
    pub fn graded(&self) -> WeightedBundleChart {
        WeightedBundleChart {
            base: self.base.barred(),
            frame: self.frame.iter().map(|n| format!("{n}_gr")).collect(),
            fibre: self.fibre.iter().map(|n| format!("{n}_gr")).collect(),
            vertical: self.vertical.clone(),
        }
    }

    fn same_base(&self, other: &WeightedBundleChart) -> Result<()> {
        if self.base != other.base {
            return Err(Error::InvalidBundle(format!(
                "bundles live over different charts ({} vs {})",
                self.base.names().join(", "),
                other.base.names().join(", ")
            )));
        }
        Ok(())
    }
}

/// `σ = Σ f_a σ_a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionElement {
    bundle: WeightedBundleChart,
    coefficients: Vec<Polynomial>,
}

impl SectionElement {
    pub fn new(bundle: WeightedBundleChart, coefficients: Vec<Polynomial>) -> Result<Self> {
        for c in &coefficients {
            bundle.base.check_vars(c)?;
        }
        Self::with_parameters(bundle, coefficients)
    }

    /// Coefficients may mention variables outside the base (e.g. `_t`).
    pub fn with_parameters(bundle: WeightedBundleChart, coefficients: Vec<Polynomial>) -> Result<Self> {
        if coefficients.len() != bundle.rank() {
            return Err(Error::Dimension(format!(
                "section has {} coefficients, bundle has rank {}",
                coefficients.len(),
                bundle.rank()
            )));
        }
        Ok(SectionElement {
            bundle,
            coefficients,
        })
    }

    pub fn zero(bundle: &WeightedBundleChart) -> Self {
        SectionElement {
            bundle: bundle.clone(),
            coefficients: vec![Polynomial::zero(); bundle.rank()],
        }
    }

    pub fn frame_element(bundle: &WeightedBundleChart, b: usize) -> Self {
        let mut s = Self::zero(bundle);
        s.coefficients[b] = Polynomial::one();
        s
    }

    pub fn bundle(&self) -> &WeightedBundleChart {
        &self.bundle
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Polynomial::is_zero)
    }

    pub fn scale(&self, g: &Polynomial) -> SectionElement {
        SectionElement {
            bundle: self.bundle.clone(),
            coefficients: self.coefficients.iter().map(|c| g * c).collect(),
        }
    }

    pub fn add(&self, other: &SectionElement) -> Result<SectionElement> {
        if self.bundle != other.bundle {
            return Err(Error::InvalidBundle("sections of different bundles".into()));
        }
        Ok(SectionElement {
            bundle: self.bundle.clone(),
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// The same coefficients on an isomorphic bundle (e.g. after a shift).
    pub fn on_bundle(&self, bundle: &WeightedBundleChart) -> Result<SectionElement> {
        SectionElement::with_parameters(bundle.clone(), self.coefficients.clone())
    }

    /// `σ` as the fibre-linear function `Σ f_b p_b` on the dual total space.
    pub fn as_fibre_linear(&self, dual: &WeightedBundleChart) -> Polynomial {
        dual.fibre
            .iter()
            .zip(&self.coefficients)
            .map(|(p, f)| f * Polynomial::var(p))
            .sum()
    }

    /// Sets `t = value` and renames barred coordinates back.
    pub fn specialize_t(&self, base: &WeightedChart, value: i64) -> Vec<Polynomial> {
        self.coefficients
            .iter()
            .map(|c| crate::weighting::specialize_t(base, c, value))
            .collect()
    }
}

/// `min_a (deg f_a + v_a)`.
pub fn section_degree(section: &SectionElement) -> Result<FiltrationDegree> {
    let bundle = &section.bundle;
    let degrees = section
        .coefficients
        .iter()
        .zip(bundle.vertical())
        .map(|(f, &v)| Ok(filtration_degree(&bundle.base, f)?.shift(v)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Degree::min_of(degrees))
}

/// Degree of a polynomial on the total space, `p_b` having weight `−v_b`.
pub fn total_space_degree(bundle: &WeightedBundleChart, f: &Polynomial) -> Result<FiltrationDegree> {
    for v in f.used_vars() {
        if bundle.total_weight(&v).is_none() {
            let mut allowed = bundle.base.names().to_vec();
            allowed.extend(bundle.fibre.iter().cloned());
            return Err(Error::ForeignVariable {
                variable: v,
                allowed: allowed.join(", "),
            });
        }
    }
    f.weighted_degree(|v| bundle.total_weight(v))
}

/// `V*` with the dual frame and weights `−v`. Dualizing twice is the identity.
pub fn dual_bundle(bundle: &WeightedBundleChart) -> WeightedBundleChart {
    WeightedBundleChart {
        base: bundle.base.clone(),
        frame: bundle.frame.iter().map(|n| dual_name(n)).collect(),
        fibre: bundle.fibre.iter().map(|n| dual_name(n)).collect(),
        vertical: VerticalWeightVector(bundle.vertical.0.iter().map(|v| -v).collect()),
    }
}

/// `V[k]`, with `Γ(V[k])_(i) = Γ(V)_(i+k)`.
pub fn shift_bundle(bundle: &WeightedBundleChart, k: i64) -> WeightedBundleChart {
    WeightedBundleChart {
        vertical: VerticalWeightVector(bundle.vertical.0.iter().map(|v| v - k).collect()),
        ..bundle.clone()
    }
}

/// `V ⊗ W` with frame `σ_a ⊗ σ'_b` of weight `v_a + v'_b`, ordered with `a`
/// varying slowest.
pub fn tensor_bundle(b1: &WeightedBundleChart, b2: &WeightedBundleChart) -> Result<WeightedBundleChart> {
    b1.same_base(b2)?;
    let mut frame = Vec::new();
    let mut fibre = Vec::new();
    let mut vertical = Vec::new();
    for a in 0..b1.rank() {
        for b in 0..b2.rank() {
            frame.push(format!("{}_x_{}", b1.frame[a], b2.frame[b]));
            fibre.push(format!("{}_x_{}", b1.fibre[a], b2.fibre[b]));
            vertical.push(b1.vertical.0[a] + b2.vertical.0[b]);
        }
    }
    WeightedBundleChart::with_fibre(b1.base.clone(), &frame, &fibre, vertical)
}

/// `Hom(V, W) = V* ⊗ W`, weights `v'_b − v_a`.
pub fn hom_bundle(b1: &WeightedBundleChart, b2: &WeightedBundleChart) -> Result<WeightedBundleChart> {
    tensor_bundle(&dual_bundle(b1), b2)
}

/// The identity of `Hom(V, V)` as a section, `Σ_a τ_a ⊗ σ_a`.
pub fn identity_endomorphism(bundle: &WeightedBundleChart) -> Result<SectionElement> {
    let hom = hom_bundle(bundle, bundle)?;
    let k = bundle.rank();
    let coefficients = (0..k * k)
        .map(|ab| {
            if ab / k == ab % k {
                Polynomial::one()
            } else {
                Polynomial::zero()
            }
        })
        .collect();
    SectionElement::new(hom, coefficients)
}

/// `⟨τ, σ⟩ = Σ_a τ_a σ_a` for `τ ∈ Γ(V*)`, `σ ∈ Γ(V)`.
pub fn pairing(tau: &SectionElement, sigma: &SectionElement) -> Result<Polynomial> {
    if tau.bundle != dual_bundle(&sigma.bundle) {
        return Err(Error::InvalidBundle(
            "pairing needs a section of the dual bundle".into(),
        ));
    }
    Ok(tau
        .coefficients
        .iter()
        .zip(&sigma.coefficients)
        .map(|(a, b)| a * b)
        .sum())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionWitness {
    pub row: usize,
    pub column: usize,
    pub required: i64,
    pub found: Degree,
}

impl std::fmt::Display for TransitionWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "T[{}][{}]: degree {} < {}",
            self.row + 1,
            self.column + 1,
            self.found,
            self.required
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionReport {
    pub failures: Vec<TransitionWitness>,
}

impl TransitionReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn check_square(bundle: &WeightedBundleChart, t: &[Vec<Polynomial>]) -> Result<()> {
    let k = bundle.rank();
    if t.len() != k || t.iter().any(|row| row.len() != k) {
        return Err(Error::Dimension(format!("transition matrix must be {k}×{k}")));
    }
    Ok(())
}

/// The new frame `σ'_b = Σ_a T_ab σ_a` is weighted iff
/// `deg T_ab ≥ v_b − v_a` for all `a, b`.
pub fn check_transition_degrees(
    bundle: &WeightedBundleChart,
    t: &[Vec<Polynomial>],
) -> Result<TransitionReport> {
    check_square(bundle, t)?;
    let v = bundle.vertical();
    let mut failures = Vec::new();
    for (a, row) in t.iter().enumerate() {
        for (b, entry) in row.iter().enumerate() {
            let required = v[b] - v[a];
            let found = filtration_degree(&bundle.base, entry)?;
            if !found.at_least(required) {
                failures.push(TransitionWitness {
                    row: a,
                    column: b,
                    required,
                    found,
                });
            }
        }
    }
    Ok(TransitionReport { failures })
}

/// Coefficients in the old frame of the section with coefficients `g` in
/// the new frame: `f_a = Σ_b T_ab g_b`.
pub fn apply_transition(
    t: &[Vec<Polynomial>],
    section: &SectionElement,
) -> Result<SectionElement> {
    check_square(&section.bundle, t)?;
    let coefficients = t
        .iter()
        .map(|row| row.iter().zip(&section.coefficients).map(|(a, b)| a * b).sum())
        .collect();
    SectionElement::with_parameters(section.bundle.clone(), coefficients)
}

/// `[T_ab^{[v_b − v_a]}]`, in barred coordinates.
pub fn transition_leading_parts(
    bundle: &WeightedBundleChart,
    t: &[Vec<Polynomial>],
) -> Result<Vec<Vec<Polynomial>>> {
    check_square(bundle, t)?;
    let v = bundle.vertical();
    t.iter()
        .enumerate()
        .map(|(a, row)| {
            row.iter()
                .enumerate()
                .map(|(b, entry)| homogeneous_approximation(&bundle.base, entry, v[b] - v[a]))
                .collect()
        })
        .collect()
}

fn require_section_degree(section: &SectionElement, i: i64) -> Result<()> {
    let found = section_degree(section)?;
    if found.at_least(i) {
        return Ok(());
    }
    let (b, monomial) = section
        .coefficients
        .iter()
        .enumerate()
        .find_map(|(b, f)| {
            let d = filtration_degree(&section.bundle.base, f).ok()?;
            (d.shift(section.bundle.vertical()[b]) == found)
                .then(|| (b, f.leading_term_string().unwrap_or_default()))
        })
        .expect("some coefficient attains the minimum");
    Err(Error::DegreeTooLow {
        required: i,
        found,
        monomial: format!("({monomial})*{}", section.bundle.frame[b]),
    })
}

/// `σ^{[i]} = Σ_a f_a^{[i − v_a]} σ_a^{[v_a]}` on the graded frame.
pub fn section_homogeneous_approximation(
    section: &SectionElement,
    i: i64,
) -> Result<SectionElement> {
    require_section_degree(section, i)?;
    let bundle = &section.bundle;
    let coefficients = section
        .coefficients
        .iter()
        .zip(bundle.vertical())
        .map(|(f, &v)| homogeneous_approximation(&bundle.base, f, i - v))
        .collect::<Result<Vec<_>>>()?;
    SectionElement::with_parameters(bundle.graded(), coefficients)
}

/// `σ̃^{[i]} = Σ_a t^{−(i − v_a)} f_a(t^w x̄) σ_a^{[v_a]}`; `t = 1` gives back
/// `σ`, `t = 0` gives `σ^{[i]}`.
pub fn section_rees_interpolation(section: &SectionElement, i: i64) -> Result<SectionElement> {
    require_section_degree(section, i)?;
    let bundle = &section.bundle;
    let coefficients = section
        .coefficients
        .iter()
        .zip(bundle.vertical())
        .map(|(f, &v)| rees_interpolation(&bundle.base, f, i - v))
        .collect::<Result<Vec<_>>>()?;
    debug_assert!(coefficients.iter().all(|c| c.used_vars().iter().all(|v| {
        v == T_VAR || bundle.base.barred().index_of(v).is_some()
    })));
    SectionElement::with_parameters(bundle.graded(), coefficients)
}

/// The annihilator in `V*` of the subbundle spanned by `frame_subset`:
/// the dual frame elements outside the subset, weights `−v`.
pub fn annihilator_subbundle(
    bundle: &WeightedBundleChart,
    frame_subset: &[usize],
) -> Result<WeightedBundleChart> {
    if let Some(&b) = frame_subset.iter().find(|&&b| b >= bundle.rank()) {
        return Err(Error::InvalidBundle(format!(
            "frame index {} out of range (rank {})",
            b + 1,
            bundle.rank()
        )));
    }
    let dual = dual_bundle(bundle);
    let keep: Vec<usize> = (0..bundle.rank()).filter(|b| !frame_subset.contains(b)).collect();
    WeightedBundleChart::with_fibre(
        dual.base.clone(),
        &keep.iter().map(|&b| dual.frame[b].clone()).collect::<Vec<_>>(),
        &keep.iter().map(|&b| dual.fibre[b].clone()).collect::<Vec<_>>(),
        keep.iter().map(|&b| dual.vertical.0[b]).collect(),
    )
}
