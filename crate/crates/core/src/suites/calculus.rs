use rand::Rng;

use super::random::*;
use super::{run_indexed, SuiteConfig, SuiteOutcome};
use crate::hitangent::{degree_via_q, lift_all, lift_map, lift_vector_field, q_model};
use crate::linweight::{
    dual_bundle, pairing, section_degree, section_homogeneous_approximation,
    section_rees_interpolation,
};
use crate::poly::{int, Polynomial};
use crate::weighting::{
    filtration_degree, homogeneous_approximation, rees_interpolation, specialize_t,
    weighted_path_valuation, zoom_weight, PolyVectorField, PolynomialMap, WeightVector,
    WeightedChart, T_VAR,
};

pub const ORACLE_CHARTS: usize = 5;
pub const ORACLE_POLYNOMIALS: usize = 500;
pub const GR_REES_INSTANCES: usize = 300;
pub const LINEAR_INSTANCES: usize = 300;
pub const LIFT_INSTANCES: usize = 500;

pub(super) fn ensure(cond: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

pub(super) fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Chart 0 is `wt = (1, 3)`; the others have up to four coordinates of
/// weight at most four.
fn oracle_chart(config: &SuiteConfig, c: usize) -> WeightedChart {
    if c == 0 {
        return WeightedChart::new(&["x1", "x2"], WeightVector::new(vec![1, 3])).expect("chart");
    }
    let mut rng = config.rng(1, u64::from(u32::MAX) - c as u64);
    let dim = rng.gen_range(1..=4);
    random_chart(&mut rng, dim, 4)
}

/// `deg f = path valuation = Q-degree` (the latter capped at `r + 1`).
pub fn degree_oracle(config: &SuiteConfig) -> SuiteOutcome {
    let charts: Vec<WeightedChart> = (0..ORACLE_CHARTS).map(|c| oracle_chart(config, c)).collect();
    let results = run_indexed(ORACLE_CHARTS * ORACLE_POLYNOMIALS, config.execution, |n| {
        let chart = &charts[n as usize / ORACLE_POLYNOMIALS];
        let mut rng = config.rng(1, n);
        let r = chart.order() as usize;
        let f = if rng.gen_bool(0.5) {
            random_polynomial(&mut rng, chart.names(), 4, 3)
        } else {
            let target = rng.gen_range(0..=r as i64 + 2);
            random_polynomial_of_degree(&mut rng, chart, target, 4, 3)
        };
        let degree = filtration_degree(chart, &f).map_err(err)?;
        let path = weighted_path_valuation(chart, &f).map_err(err)?;
        ensure(degree == path, || format!("{f}: degree {degree:?}, path valuation {path:?}"))?;
        let q = q_model(chart, r).map_err(err)?;
        let via_q = degree_via_q(&q, &f).map_err(err)?.value();
        let capped = degree.finite().map_or(r as i64 + 1, |d| d.min(r as i64 + 1));
        ensure(via_q == capped, || format!("{f}: degree {degree:?}, Q-degree {via_q}"))
    });
    SuiteOutcome::collect("degree-oracle", results)
}

/// Multiplicativity of `gr` and of the Rees map, the Rees endpoints, and
/// zoom homogeneity.
pub fn gr_rees_laws(config: &SuiteConfig) -> SuiteOutcome {
    let results = run_indexed(GR_REES_INSTANCES, config.execution, |n| {
        let mut rng = config.rng(2, n);
        let dim = rng.gen_range(1..=3);
        let chart = random_chart(&mut rng, dim, 3);
        let (i, j) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
        let f = random_polynomial_of_degree(&mut rng, &chart, i, 3, 3);
        let g = random_polynomial_of_degree(&mut rng, &chart, j, 3, 3);
        let fg = &f * &g;
        let homog = |h: &Polynomial, k| homogeneous_approximation(&chart, h, k).map_err(err);
        let rees = |h: &Polynomial, k| rees_interpolation(&chart, h, k).map_err(err);
        ensure(homog(&fg, i + j)? == &homog(&f, i)? * &homog(&g, j)?, || {
            format!("gr product fails for f = {f}, g = {g}, i = {i}, j = {j}")
        })?;
        ensure(rees(&fg, i + j)? == &rees(&f, i)? * &rees(&g, j)?, || {
            format!("Rees product fails for f = {f}, g = {g}, i = {i}, j = {j}")
        })?;
        let rf = rees(&f, i)?;
        ensure(specialize_t(&chart, &rf, 1) == f, || format!("t = 1 endpoint fails for {f}"))?;
        let leading = homog(&f, i)?.rename(&chart.unbar_map());
        ensure(specialize_t(&chart, &rf, 0) == leading, || {
            format!("t = 0 endpoint fails for {f} at degree {i}")
        })?;
        if !rf.is_zero() {
            let weight = zoom_weight(&chart, &rf).map_err(err)?;
            ensure(weight == i, || format!("zoom weight {weight} ≠ {i} for {rf}"))?;
        }
        Ok(())
    });
    SuiteOutcome::collect("gr-rees", results)
}

/// Section-level laws: pairing additivity, the module law of homogeneous
/// approximation, and the Rees endpoints for sections.
pub fn linear_weightings(config: &SuiteConfig) -> SuiteOutcome {
    let results = run_indexed(LINEAR_INSTANCES, config.execution, |n| {
        let mut rng = config.rng(3, n);
        let dim = rng.gen_range(1..=3);
        let base = random_chart(&mut rng, dim, 3);
        let rank = rng.gen_range(1..=3);
        let bundle = random_bundle(&mut rng, &base, rank, 3);
        let (i, j, k) = (rng.gen_range(-4..=4), rng.gen_range(-4..=4), rng.gen_range(0..=3));
        let dual = dual_bundle(&bundle);
        let tau = random_section_of_degree(&mut rng, &dual, i, 3, 2);
        let sigma = random_section_of_degree(&mut rng, &bundle, j, 3, 2);
        let pair = pairing(&tau, &sigma).map_err(err)?;
        ensure(filtration_degree(&base, &pair).map_err(err)?.at_least(i + j), || {
            format!("pairing of degrees {i}, {j} has lower degree: {pair}")
        })?;
        ensure(section_degree(&sigma).map_err(err)?.at_least(j), || {
            "random section below its degree".into()
        })?;
        let g = random_polynomial_of_degree(&mut rng, &base, k, 3, 2);
        let lhs = section_homogeneous_approximation(&sigma.scale(&g), j + k).map_err(err)?;
        let rhs = section_homogeneous_approximation(&sigma, j)
            .map_err(err)?
            .scale(&homogeneous_approximation(&base, &g, k).map_err(err)?);
        ensure(lhs == rhs, || format!("module law fails at degrees {j}, {k}"))?;
        let rees = section_rees_interpolation(&sigma, j).map_err(err)?;
        ensure(rees.specialize_t(&base, 1) == sigma.coefficients(), || {
            "section Rees t = 1 endpoint fails".into()
        })?;
        let at_zero: Vec<Polynomial> = rees
            .coefficients()
            .iter()
            .map(|c| c.evaluate(&[(T_VAR.to_string(), int(0))].into()))
            .collect();
        let leading = section_homogeneous_approximation(&sigma, j).map_err(err)?;
        ensure(at_zero == leading.coefficients(), || "section Rees t = 0 endpoint fails".into())
    });
    SuiteOutcome::collect("linear-weightings", results)
}

fn plain_chart(prefix: &str, dim: usize) -> WeightedChart {
    let names: Vec<String> = (1..=dim).map(|a| format!("{prefix}{a}")).collect();
    WeightedChart::new(&names, WeightVector::new(vec![0; dim])).expect("chart")
}

fn random_field(rng: &mut SuiteRng, chart: &WeightedChart) -> PolyVectorField {
    let cs = (0..chart.dim())
        .map(|_| random_polynomial(rng, chart.names(), 2, 2))
        .collect();
    PolyVectorField::new(chart.clone(), cs).expect("field on chart")
}

fn random_map(rng: &mut SuiteRng, source: &WeightedChart, target: &WeightedChart) -> PolynomialMap {
    let cs = (0..target.dim())
        .map(|_| random_polynomial(rng, source.names(), 2, 2))
        .collect();
    PolynomialMap::new(source.clone(), target.clone(), cs).expect("map between charts")
}

/// The defining identities of the lifts to `T_r`, `r ≤ 4`.
pub fn tangent_lifts(config: &SuiteConfig) -> SuiteOutcome {
    let results = run_indexed(LIFT_INSTANCES, config.execution, |n| {
        let mut rng = config.rng(4, n);
        let r = rng.gen_range(1..=4);
        let chart = plain_chart("x", rng.gen_range(1..=2));
        let names = chart.names().to_vec();
        let f = random_polynomial(&mut rng, &names, 3, 2);
        let g = random_polynomial(&mut rng, &names, 3, 2);
        let (lf, lg, lfg) = (lift_all(&f, r), lift_all(&g, r), lift_all(&(&f * &g), r));
        for k in 0..=r {
            let rhs: Polynomial = (0..=k).map(|j| &lf[j] * &lg[k - j]).sum();
            ensure(lfg[k] == rhs, || format!("product rule fails for {f}, {g} at level {k}"))?;
        }

        let (x, y) = (random_field(&mut rng, &chart), random_field(&mut rng, &chart));
        let i = rng.gen_range(0..=r);
        let j = rng.gen_range(0..=r - i);
        let xi = lift_vector_field(&x, i, r).map_err(err)?;
        let xf = lift_all(&x.apply(&f), r);
        for (k, lift) in lf.iter().enumerate() {
            let expected = if k >= i { xf[k - i].clone() } else { Polynomial::zero() };
            ensure(xi.apply(lift) == expected, || {
                format!("X^(-{i}) f^({k}) ≠ (Xf)^({k}-{i}) for f = {f}")
            })?;
        }
        let yj = lift_vector_field(&y, j, r).map_err(err)?;
        let bracket = lift_vector_field(&x.bracket(&y).map_err(err)?, i + j, r).map_err(err)?;
        ensure(xi.bracket(&yj).map_err(err)? == bracket, || {
            format!("[X^(-{i}), Y^(-{j})] ≠ [X, Y]^(-{})", i + j)
        })?;
        let mut expected = PolyVectorField::zero(xi.chart());
        for k in i..=r {
            let term = lift_vector_field(&x, k, r).map_err(err)?.scale(&lf[k - i]);
            expected = expected.add(&term).map_err(err)?;
        }
        ensure(lift_vector_field(&x.scale(&f), i, r).map_err(err)? == expected, || {
            format!("(fX)^(-{i}) module rule fails")
        })?;

        let middle = plain_chart("y", rng.gen_range(1..=2));
        let last = plain_chart("z", rng.gen_range(1..=2));
        let first = random_map(&mut rng, &chart, &middle);
        let second = random_map(&mut rng, &middle, &last);
        let composite = first.then(&second).map_err(err)?;
        let lifted = lift_map(&first, r)
            .and_then(|a| a.then(&lift_map(&second, r)?))
            .map_err(err)?;
        ensure(lifted == lift_map(&composite, r).map_err(err)?, || {
            "T_r(G ∘ F) ≠ T_r G ∘ T_r F".into()
        })
    });
    SuiteOutcome::collect("tangent-lifts", results)
}
