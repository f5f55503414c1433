use rand::seq::SliceRandom;

use super::calculus::{ensure, err};
use super::examples::{heisenberg, sl2_borel};
use super::random::*;
use super::{run_indexed, SuiteConfig, SuiteOutcome};
use crate::hitangent::lifted_algebroid_check;
use crate::liealg::{
    check_im_weighting, check_jacobi, da_check, graded_normal_algebroid,
    rees_deformation_algebroid, AlgebroidData, PoissonModel,
};
use crate::poly::Polynomial;
use crate::weighting::{vector_field_degree, T_VAR};

pub const RANDOM_ALGEBROIDS: usize = 100;
pub const MUTATIONS: usize = 20;

/// The verdicts of the equivalent characterizations of IM weightings.
/// `lifted` is `None` when some weight is positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ImVerdicts {
    pub im: bool,
    pub da: bool,
    pub poisson: bool,
    pub lifted: Option<bool>,
}

impl ImVerdicts {
    pub fn agree(&self) -> bool {
        self.im == self.da && self.im == self.poisson && self.lifted.is_none_or(|l| l == self.im)
    }
}

pub fn im_verdicts(algebroid: &AlgebroidData) -> crate::error::Result<ImVerdicts> {
    let im = check_im_weighting(algebroid)?.holds();
    let da = da_check(algebroid)?.filtration_preserving();
    let poisson = PoissonModel::new(algebroid)?.degree_check()?.holds();
    let v = algebroid.bundle().vertical();
    let lifted = if v.iter().any(|&x| x > 0) {
        None
    } else {
        let fibre = v.iter().map(|&x| (-x) as usize).max().unwrap_or(0);
        let r = fibre.max(algebroid.base().order() as usize).max(1);
        Some(lifted_algebroid_check(algebroid, r)?.holds())
    };
    Ok(ImVerdicts {
        im,
        da,
        poisson,
        lifted,
    })
}

/// Frame elements whose weight enters a nonzero constraint from below:
/// a nonzero anchor, or a lower index of a nonzero structure function.
fn mutable_indices(algebroid: &AlgebroidData) -> Vec<usize> {
    let mut out: Vec<usize> = (0..algebroid.rank())
        .filter(|&a| algebroid.anchor()[a].iter().any(|f| !f.is_zero()))
        .collect();
    for e in algebroid.structure_entries() {
        out.extend([e.a, e.b]);
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Raises one weight of an IM algebroid until the IM property breaks.
fn mutate(rng: &mut SuiteRng) -> Result<(AlgebroidData, AlgebroidData), String> {
    for _ in 0..64 {
        let (_, algebroid) = random_algebroid(rng);
        if !check_im_weighting(&algebroid).map_err(err)?.holds() {
            continue;
        }
        let Some(&a) = mutable_indices(&algebroid).choose(rng) else {
            continue;
        };
        let mut v = algebroid.bundle().vertical().to_vec();
        for _ in 0..4 {
            v[a] += 1;
            let mutated = algebroid.reweighted(v.clone()).map_err(err)?;
            if !check_im_weighting(&mutated).map_err(err)?.holds() {
                return Ok((algebroid, mutated));
            }
        }
    }
    Err("no IM algebroid with a breakable weight found".into())
}

/// IM ⇔ `d_A` filtration preserving ⇔ linear Poisson bracket of degree 0,
/// and ⇔ `Q_A` is a subalgebroid of `T_r A` when all weights are ≤ 0.
pub fn im_equivalence(config: &SuiteConfig) -> SuiteOutcome {
    let results = run_indexed(RANDOM_ALGEBROIDS + MUTATIONS, config.execution, |n| {
        let mut rng = config.rng(5, n);
        let check = |a: &AlgebroidData| -> Result<ImVerdicts, String> {
            if let Some(w) = check_jacobi(a) {
                return Err(format!("generated data is not an algebroid: {w}"));
            }
            let verdicts = im_verdicts(a).map_err(err)?;
            ensure(verdicts.agree(), || format!("verdicts disagree: {verdicts:?}"))?;
            Ok(verdicts)
        };
        if (n as usize) < RANDOM_ALGEBROIDS {
            let (_, algebroid) = random_algebroid(&mut rng);
            check(&algebroid).map(|v| Some(v.im))
        } else {
            let (original, mutated) = mutate(&mut rng)?;
            ensure(check(&original)?.im, || "original is not IM".into())?;
            ensure(!check(&mutated)?.im, || "mutation did not break IM".into())?;
            Ok(None)
        }
    });
    let verdicts: Vec<bool> = results.iter().filter_map(|r| r.clone().ok().flatten()).collect();
    let mut outcome = SuiteOutcome::collect(
        "im-equivalence",
        results.into_iter().map(|r| r.map(|_| ())).collect(),
    );
    let passing = verdicts.iter().filter(|&&b| b).count();
    if passing == 0 || passing == verdicts.len() {
        outcome
            .failures
            .push(format!("degenerate sample: {passing}/{} IM", verdicts.len()));
    }
    outcome
}

/// Jacobi for `gr(A)` and the Rees deformation, and its endpoints.
pub fn check_limits(algebroid: &AlgebroidData) -> Result<(), String> {
    let gr = graded_normal_algebroid(algebroid).map_err(err)?;
    let rees = rees_deformation_algebroid(algebroid).map_err(err)?;
    if let Some(w) = check_jacobi(&gr) {
        return Err(format!("graded algebroid fails Jacobi: {w}"));
    }
    if let Some(w) = check_jacobi(&rees) {
        return Err(format!("Rees algebroid fails Jacobi: {w}"));
    }
    ensure(rees.specialize_t(1).relabel(algebroid.bundle()).map_err(err)? == *algebroid, || {
        "Rees algebroid at t = 1 differs from A".into()
    })?;
    ensure(rees.specialize_t(0) == gr, || "Rees algebroid at t = 0 differs from gr(A)".into())?;
    for a in 0..gr.rank() {
        let field = gr.anchor_field(a);
        ensure(
            field.is_zero()
                || vector_field_degree(&field).map_err(err)?.finite() == Some(gr.bundle().vertical()[a]),
            || format!("graded anchor of σ{} is not homogeneous", a + 1),
        )?;
    }
    Ok(())
}

/// The fixed limit examples: `sl₂` along the Borel subalgebra and the
/// graded Heisenberg algebra.
pub fn fixed_limit_examples() -> Result<(), String> {
    let borel = sl2_borel();
    let gr = graded_normal_algebroid(&borel).map_err(err)?;
    ensure(gr.gamma(1, 2, 0).is_zero(), || format!("graded [e, f] = {}", gr.gamma(1, 2, 0)))?;
    let rees = rees_deformation_algebroid(&borel).map_err(err)?;
    ensure(rees.gamma(1, 2, 0) == Polynomial::var(T_VAR), || {
        format!("deformed [e, f] has h-component {}", rees.gamma(1, 2, 0))
    })?;
    let h = heisenberg(vec![-1, -1, -2]);
    let gr = graded_normal_algebroid(&h).map_err(err)?;
    ensure(gr.relabel(h.bundle()).map_err(err)? == h, || "grading changes Heisenberg".into())?;
    check_limits(&borel)?;
    check_limits(&h)
}

pub fn limit_algebroids(config: &SuiteConfig) -> SuiteOutcome {
    let results = run_indexed(RANDOM_ALGEBROIDS + 1, config.execution, |n| {
        if n == 0 {
            return Ok(true);
        }
        let mut rng = config.rng(6, n);
        let (_, algebroid) = random_algebroid(&mut rng);
        if !check_im_weighting(&algebroid).map_err(err)?.holds() {
            return Ok(false);
        }
        check_limits(&algebroid).map(|_| true)
    });
    let used = results.iter().filter(|r| matches!(r, Ok(true))).count();
    let mut results: Vec<Result<(), String>> = results.into_iter().map(|r| r.map(|_| ())).collect();
    results[0] = fixed_limit_examples();
    let mut outcome = SuiteOutcome::collect("limit-algebroids", results);
    if used < 20 {
        outcome.failures.push(format!("only {used} IM algebroids sampled"));
    }
    outcome
}
