use super::calculus::{ensure, err};
use super::examples::*;
use super::{run_indexed, SuiteConfig, SuiteOutcome};
use crate::liealg::{
    bch_product, check_wide_integration_hypotheses, dilation_check, AlgebroidData,
    GradedNilpotentLie,
};
use crate::poly::{int, parse, Polynomial, Rational};
use crate::weighting::{
    check_clean_distribution, check_weighted_morphism, filtration_degree, filtration_generators,
};

type Check = fn() -> Result<(), String>;

fn run_checks(name: &'static str, config: &SuiteConfig, checks: &[Check]) -> SuiteOutcome {
    let results = run_indexed(checks.len(), config.execution, |n| checks[n as usize]());
    SuiteOutcome::collect(name, results)
}

fn p(s: &str) -> Polynomial {
    parse(s).expect("fixed polynomial")
}

fn consts(v: &[i64]) -> Vec<Polynomial> {
    v.iter().map(|&c| Polynomial::integer(c)).collect()
}

fn generator_chain() -> Result<(), String> {
    let chart = plane13();
    let expected: [&[&str]; 4] = [&["x", "y"], &["x^2", "y"], &["x^3", "y"], &["x^4", "x*y", "y^2"]];
    for (i, gens) in (1..).zip(expected) {
        let found: Vec<String> = filtration_generators(&chart, i).iter().map(|g| g.to_string()).collect();
        ensure(found == gens, || format!("C_({i}) generated by {found:?}, expected {gens:?}"))?;
    }
    let degrees = [("x^4", 4), ("x*y", 4), ("y^2", 6), ("x^4 + x*y", 4), ("x^3", 3)];
    for (f, d) in degrees {
        let found = filtration_degree(&chart, &p(f)).map_err(err)?;
        ensure(found.finite() == Some(d), || format!("deg {f} = {found}, expected {d}"))?;
    }
    Ok(())
}

fn morphism_examples() -> Result<(), String> {
    let report = check_weighted_morphism(&parabola()).map_err(err)?;
    let witnesses: Vec<String> = report.failures.iter().map(|w| w.to_string()).collect();
    ensure(witnesses == ["y: degree 2 < 3"], || format!("parabola witnesses {witnesses:?}"))?;
    ensure(check_weighted_morphism(&cubic()).map_err(err)?.holds(), || {
        "u ↦ (u, u³) rejected".into()
    })
}

pub fn worked_examples(config: &SuiteConfig) -> SuiteOutcome {
    run_checks("worked-examples", config, &[generator_chain, morphism_examples])
}

fn symbols(prefix: &str, k: usize) -> Vec<Polynomial> {
    (1..=k).map(|a| Polynomial::var(&format!("{prefix}{a}"))).collect()
}

/// Group axioms of the truncated BCH product with symbolic coordinates,
/// and the dilations as automorphisms.
pub fn group_law(algebra: AlgebroidData) -> Result<(), String> {
    let g = GradedNilpotentLie::new(algebra).map_err(err)?;
    let k = g.rank();
    let (x, y, z) = (symbols("X", k), symbols("Y", k), symbols("Z", k));
    let mul = |a: &[Polynomial], b: &[Polynomial]| bch_product(&g, a, b).map_err(err);
    ensure(mul(&mul(&x, &y)?, &z)? == mul(&x, &mul(&y, &z)?)?, || "not associative".into())?;
    let zero = vec![Polynomial::zero(); k];
    ensure(mul(&x, &zero)? == x && mul(&zero, &x)? == x, || "0 is not the identity".into())?;
    let minus: Vec<Polynomial> = x.iter().map(|c| -c.clone()).collect();
    ensure(mul(&x, &minus)? == zero && mul(&minus, &x)? == zero, || "−X is not the inverse".into())?;
    let report = dilation_check(&g).map_err(err)?;
    ensure(report.holds(), || format!("dilation fails: {:?}", report.failure))
}

fn heisenberg_product() -> Result<(), String> {
    let g = GradedNilpotentLie::new(heisenberg(vec![-1, -1, -2])).map_err(err)?;
    let xy = bch_product(&g, &consts(&[1, 0, 0]), &consts(&[0, 1, 0])).map_err(err)?;
    ensure(xy == [p("1"), p("1"), p("1/2")], || {
        format!("(1,0,0)·(0,1,0) = {}", xy.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "))
    })
}

pub fn nilpotent_fibres(config: &SuiteConfig) -> SuiteOutcome {
    run_checks(
        "nilpotent-fibres",
        config,
        &[
            heisenberg_product,
            || group_law(heisenberg(vec![-1, -1, -2])),
            || group_law(engel_like()),
            || group_law(free_step_two()),
            || {
                let abelian = AlgebroidData::lie_algebra(&["a", "b"], vec![-1, -2], vec![]).map_err(err)?;
                group_law(abelian)
            },
        ],
    )
}

fn point(x: i64, y: i64) -> Vec<Rational> {
    vec![int(x), int(y)]
}

/// `dim(𝒟_p + T_pN)` at the sample points for `N` the `x`-axis and the
/// `y`-axis.
pub fn clean_tables() -> Result<(Vec<usize>, Vec<usize>), String> {
    let (chart, d) = clean_distribution();
    let x_axis = check_clean_distribution(
        &d,
        &chart,
        &["y".to_string()],
        &[point(0, 0), point(1, 0), point(2, 0)],
    )
    .map_err(err)?;
    let y_axis = check_clean_distribution(&d, &chart, &["x".to_string()], &[point(0, 0), point(0, 1)])
        .map_err(err)?;
    Ok((x_axis.dimensions, y_axis.dimensions))
}

/// The rank computations behind the cleanness check: `x∂x` vanishes on the
/// `y`-axis, so both axes give constant tables.
fn clean_ranks() -> Result<(), String> {
    let (x_axis, y_axis) = clean_tables()?;
    ensure(x_axis == [2, 2, 2], || format!("x-axis table {x_axis:?}"))?;
    ensure(y_axis == [1, 1], || format!("y-axis table {y_axis:?}"))
}

fn clean_off_submanifold() -> Result<(), String> {
    let (chart, d) = clean_distribution();
    ensure(
        check_clean_distribution(&d, &chart, &["y".to_string()], &[point(0, 1)]).is_err(),
        || "sample off N accepted".into(),
    )
}

pub fn cleanness(config: &SuiteConfig) -> SuiteOutcome {
    run_checks("cleanness", config, &[clean_ranks, clean_off_submanifold])
}

/// `sl₂` with `B` the Borel subalgebra, and the Heisenberg algebra with
/// `B = span{e1}` against the level `span{e2}`.
pub fn wide_examples() -> Result<(), String> {
    let g = sl2_borel();
    let borel = vec![consts(&[1, 0, 0]), consts(&[0, 1, 0])];
    let report = check_wide_integration_hypotheses(&g, &[vec![0, 1, 2]], &borel, &[vec![]])
        .map_err(err)?;
    ensure(report.holds(), || format!("sl2 fails: {:?}", report.bracket_failures))?;
    let h = heisenberg(vec![-1, -1, -2]);
    let report = check_wide_integration_hypotheses(&h, &[vec![1]], &[consts(&[1, 0, 0])], &[vec![]])
        .map_err(err)?;
    let witness = report.bracket_failures.first().map(|w| w.to_string());
    ensure(witness.as_deref() == Some("level 1: [β1, σ2] has σ3 component 1"), || {
        format!("Heisenberg witness {witness:?}")
    })
}

pub fn wide_hypotheses(config: &SuiteConfig) -> SuiteOutcome {
    run_checks("wide-hypotheses", config, &[wide_examples])
}
