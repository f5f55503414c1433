//! Seeded generators of random exact data for the invariant suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linweight::{SectionElement, WeightedBundleChart};
use crate::poly::{rat, Polynomial, Rational};
use crate::liealg::AlgebroidData;
use crate::weighting::{WeightVector, WeightedChart};

pub type SuiteRng = ChaCha8Rng;

/// Independent stream for instance `index` of a run seeded with `seed`.
pub fn instance_rng(seed: u64, index: u64) -> SuiteRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_rational(rng: &mut impl Rng) -> Rational {
    let mut n = rng.gen_range(-4i64..=4);
    if n == 0 {
        n = 1;
    }
    rat(n, rng.gen_range(1..=3))
}

pub fn random_monomial(rng: &mut impl Rng, vars: &[String], max_exp: u32) -> Polynomial {
    let factors: Vec<(&str, u32)> = vars
        .iter()
        .map(|v| (v.as_str(), rng.gen_range(0..=max_exp)))
        .collect();
    Polynomial::monomial(random_rational(rng), &factors)
}

/// Up to `max_terms` random terms with exponents at most `max_exp`.
pub fn random_polynomial(
    rng: &mut impl Rng,
    vars: &[String],
    max_terms: usize,
    max_exp: u32,
) -> Polynomial {
    let n = rng.gen_range(0..=max_terms);
    (0..n).map(|_| random_monomial(rng, vars, max_exp)).sum()
}

/// A random polynomial in `C_(i)`: low-degree monomials are lifted by a
/// positively weighted coordinate until they reach degree `i`, or dropped if
/// the chart has none.
pub fn random_polynomial_of_degree(
    rng: &mut impl Rng,
    chart: &WeightedChart,
    i: i64,
    max_terms: usize,
    max_exp: u32,
) -> Polynomial {
    let normal: Vec<usize> = (0..chart.dim()).filter(|&a| chart.weight(a) > 0).collect();
    let n = rng.gen_range(0..=max_terms);
    let mut out = Polynomial::zero();
    for _ in 0..n {
        let mut exps: Vec<u32> = (0..chart.dim()).map(|_| rng.gen_range(0..=max_exp)).collect();
        let mut d: i64 = exps.iter().enumerate().map(|(a, &e)| chart.weight(a) * i64::from(e)).sum();
        if d < i {
            let Some(&a) = normal.choose(rng) else {
                continue;
            };
            while d < i {
                exps[a] += 1;
                d += chart.weight(a);
            }
        }
        let factors: Vec<(&str, u32)> = chart
            .names()
            .iter()
            .map(String::as_str)
            .zip(exps)
            .collect();
        out = out + Polynomial::monomial(random_rational(rng), &factors);
    }
    out
}

/// A chart `x1, …, x_dim` with weights in `0..=max_weight`, at least one
/// of them positive when `max_weight > 0`.
pub fn random_chart(rng: &mut impl Rng, dim: usize, max_weight: u32) -> WeightedChart {
    let names: Vec<String> = (1..=dim).map(|a| format!("x{a}")).collect();
    let mut weights: Vec<u32> = (0..dim).map(|_| rng.gen_range(0..=max_weight)).collect();
    if max_weight > 0 && dim > 0 && weights.iter().all(|&w| w == 0) {
        weights[rng.gen_range(0..dim)] = rng.gen_range(1..=max_weight);
    }
    WeightedChart::new(&names, WeightVector::new(weights)).expect("generated names are valid")
}

pub fn random_bundle(
    rng: &mut impl Rng,
    base: &WeightedChart,
    rank: usize,
    max_abs_weight: i64,
) -> WeightedBundleChart {
    let frame: Vec<String> = (1..=rank).map(|b| format!("sigma{b}")).collect();
    let vertical = (0..rank)
        .map(|_| rng.gen_range(-max_abs_weight..=max_abs_weight))
        .collect();
    WeightedBundleChart::new(base.clone(), &frame, vertical).expect("generated names are valid")
}

/// A random section of `Γ(V)_(i)`.
pub fn random_section_of_degree(
    rng: &mut impl Rng,
    bundle: &WeightedBundleChart,
    i: i64,
    max_terms: usize,
    max_exp: u32,
) -> SectionElement {
    let coefficients = bundle
        .vertical()
        .iter()
        .map(|&v| random_polynomial_of_degree(rng, bundle.base(), i - v, max_terms, max_exp))
        .collect();
    SectionElement::new(bundle.clone(), coefficients).expect("coefficients use base variables")
}

fn product(x: &[Vec<Polynomial>], y: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
    let k = x.len();
    (0..k)
        .map(|a| (0..k).map(|b| (0..k).map(|c| &x[a][c] * &y[c][b]).sum()).collect())
        .collect()
}

/// A random upper unitriangular polynomial matrix `T = 1 + N` and its
/// inverse `Σ (−N)^n`. With `weighted`, `deg T_ab ≥ v_b − v_a`.
pub fn random_unipotent(
    rng: &mut impl Rng,
    bundle: &WeightedBundleChart,
    weighted: bool,
) -> (Vec<Vec<Polynomial>>, Vec<Vec<Polynomial>>) {
    let k = bundle.rank();
    let v = bundle.vertical();
    let base = bundle.base();
    let mut nil = vec![vec![Polynomial::zero(); k]; k];
    for a in 0..k {
        for b in a + 1..k {
            nil[a][b] = if weighted {
                random_polynomial_of_degree(rng, base, v[b] - v[a], 2, 2)
            } else {
                random_polynomial(rng, base.names(), 2, 2)
            };
        }
    }
    let identity: Vec<Vec<Polynomial>> = (0..k)
        .map(|a| {
            (0..k)
                .map(|b| if a == b { Polynomial::one() } else { Polynomial::zero() })
                .collect()
        })
        .collect();
    let minus: Vec<Vec<Polynomial>> = nil
        .iter()
        .map(|row| row.iter().map(|f| -f.clone()).collect())
        .collect();
    let mut inverse = identity.clone();
    let mut power = identity.clone();
    for _ in 1..k {
        power = product(&power, &minus);
        for a in 0..k {
            for b in 0..k {
                inverse[a][b] = &inverse[a][b] + &power[a][b];
            }
        }
    }
    let t = (0..k)
        .map(|a| (0..k).map(|b| &identity[a][b] + &nil[a][b]).collect())
        .collect();
    (t, inverse)
}

/// The families the random algebroids are drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebroidFamily {
    Tangent,
    LieAlgebra,
    Action,
    Line,
}

fn random_vertical(rng: &mut impl Rng, rank: usize) -> Vec<i64> {
    (0..rank)
        .map(|_| if rng.gen_bool(0.08) { 1 } else { rng.gen_range(-2..=0) })
        .collect()
}

/// `(M^T x)·∂` for each matrix, the anchor of the linear action of a matrix
/// Lie algebra; `M ↦ X_{M^T}` is a Lie algebra morphism.
fn linear_anchor(chart: &WeightedChart, matrices: &[Vec<Vec<i64>>]) -> Vec<Vec<Polynomial>> {
    let n = chart.dim();
    matrices
        .iter()
        .map(|m| {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| chart.coordinate(j).scale(&crate::poly::int(m[j][i])))
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// A random small Lie algebroid. Weighted frame changes keep the IM
/// property, unweighted ones usually break it.
pub fn random_algebroid(rng: &mut impl Rng) -> (AlgebroidFamily, AlgebroidData) {
    use super::examples::{engel_like, heisenberg, sl2};
    use crate::liealg::{entry, AlgebroidData as A};
    let family = match rng.gen_range(0..4) {
        0 => AlgebroidFamily::Tangent,
        1 => AlgebroidFamily::LieAlgebra,
        2 => AlgebroidFamily::Action,
        _ => AlgebroidFamily::Line,
    };
    let algebroid = match family {
        AlgebroidFamily::Tangent => {
            let dim = rng.gen_range(1..=3);
            let chart = random_chart(rng, dim, 2);
            let tangent = A::tangent(&chart).expect("tangent algebroid");
            let weighted = rng.gen_bool(0.6);
            let (t, inv) = random_unipotent(rng, tangent.bundle(), weighted);
            tangent.change_frame(&t, &inv).expect("invertible frame change")
        }
        AlgebroidFamily::LieAlgebra => {
            let g = match rng.gen_range(0..4) {
                0 => heisenberg(vec![0; 3]),
                1 => sl2(vec![0; 3]),
                2 => engel_like(),
                _ => A::lie_algebra(&["a", "b"], vec![0, 0], vec![entry(0, 1, 1, Polynomial::one())])
                    .expect("affine algebra"),
            };
            let v = random_vertical(rng, g.rank());
            g.reweighted(v).expect("same rank")
        }
        AlgebroidFamily::Action => {
            let (frame, matrices, entries): (&[&str], Vec<Vec<Vec<i64>>>, _) =
                match rng.gen_range(0..3) {
                    0 => (
                        &["h", "e", "f"],
                        vec![
                            vec![vec![1, 0], vec![0, -1]],
                            vec![vec![0, 1], vec![0, 0]],
                            vec![vec![0, 0], vec![1, 0]],
                        ],
                        sl2(vec![0; 3]).structure_entries(),
                    ),
                    1 => (
                        &["h", "e"],
                        vec![vec![vec![1, 0], vec![0, -1]], vec![vec![0, 1], vec![0, 0]]],
                        vec![entry(0, 1, 1, Polynomial::integer(2))],
                    ),
                    _ => (
                        &["e1", "e2", "e3"],
                        vec![
                            vec![vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 0]],
                            vec![vec![0, 0, 0], vec![0, 0, 1], vec![0, 0, 0]],
                            vec![vec![0, 0, 1], vec![0, 0, 0], vec![0, 0, 0]],
                        ],
                        heisenberg(vec![0; 3]).structure_entries(),
                    ),
                };
            let chart = random_chart(rng, matrices[0].len(), 2);
            let v = random_vertical(rng, frame.len());
            let bundle = WeightedBundleChart::new(chart.clone(), frame, v).expect("valid bundle");
            A::new(bundle, linear_anchor(&chart, &matrices), entries).expect("valid algebroid")
        }
        AlgebroidFamily::Line => {
            let dim = rng.gen_range(1..=2);
            let chart = random_chart(rng, dim, 2);
            let v = random_vertical(rng, 1);
            let anchor = vec![(0..dim)
                .map(|_| random_polynomial(rng, chart.names(), 2, 2))
                .collect()];
            let bundle = WeightedBundleChart::new(chart, &["s"], v).expect("valid bundle");
            A::new(bundle, anchor, vec![]).expect("valid algebroid")
        }
    };
    (family, algebroid)
}
