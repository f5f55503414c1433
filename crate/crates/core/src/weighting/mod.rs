//! Weightings of a polynomial chart along the zero set of its positively
//! weighted coordinates.
//!
//! A chart with weights `w` filters polynomials by
//! `C_(i) = span{x^s : s·w ≥ i}`. Everything here works monomially on that
//! local model: the filtration degree of `f` is the minimal weighted degree
//! of its monomials, `+∞` for `f = 0`.

mod chart;
mod morphism;
mod singular;
mod transverse;
mod vector_field;

use std::collections::BTreeMap;

pub use chart::{barred, path_coefficient, WeightVector, WeightedChart, T_VAR, ZOOM_VAR};
pub use morphism::{
    check_tangent_filtration, check_weighted_morphism, graph_coordinate_degrees,
    graph_submanifold_chart, GraphChart, GraphCoordinate, MorphismReport, MorphismWitness,
    PolynomialMap, TangentFiltrationReport,
};
pub use singular::{
    check_clean_distribution, induced_degree_up_to, induced_weighting_degree, CleanReport,
};
pub use transverse::{check_weighted_transverse_at_point, TransverseReport};
pub use vector_field::{vector_field_degree, PolyVectorField};

use crate::error::{Error, Result};
use crate::poly::{Degree, Polynomial};

pub type FiltrationDegree = Degree;

pub fn filtration_degree(chart: &WeightedChart, f: &Polynomial) -> Result<FiltrationDegree> {
    chart.check_vars(f)?;
    f.weighted_degree(|v| chart.weight_of(v))
}

/// `f = Σ_j part_j` with each part weighted-homogeneous of degree `j`.
pub fn homogeneous_decomposition(
    chart: &WeightedChart,
    f: &Polynomial,
) -> Result<BTreeMap<i64, Polynomial>> {
    chart.check_vars(f)?;
    f.weighted_parts(|v| chart.weight_of(v))
}

fn require_degree(chart: &WeightedChart, f: &Polynomial, i: i64) -> Result<()> {
    let degree = filtration_degree(chart, f)?;
    if degree.at_least(i) {
        return Ok(());
    }
    let (monomial, found) = f
        .term_weights(|v| chart.weight_of(v))?
        .into_iter()
        .min_by_key(|(_, d)| *d)
        .expect("nonzero polynomial");
    Err(Error::DegreeTooLow {
        required: i,
        found: Degree::Finite(found),
        monomial,
    })
}

/// The degree-`i` weighted-homogeneous part of `f` in barred coordinates,
/// i.e. the class of `f` in `gr(C)_(i)`. Requires `deg f ≥ i`.
pub fn homogeneous_approximation(
    chart: &WeightedChart,
    f: &Polynomial,
    i: i64,
) -> Result<Polynomial> {
    require_degree(chart, f, i)?;
    let part = homogeneous_decomposition(chart, f)?
        .remove(&i)
        .unwrap_or_else(Polynomial::zero);
    Ok(part.rename(&chart.bar_map()).with_vars(chart.barred().names()))
}

/// `t^{-i} f(t^{w_1} x̄_1, …, t^{w_m} x̄_m)`, a polynomial in `(x̄, t)` when
/// `deg f ≥ i`.
pub fn rees_interpolation(chart: &WeightedChart, f: &Polynomial, i: i64) -> Result<Polynomial> {
    require_degree(chart, f, i)?;
    let bars = chart.barred();
    let mut vars: Vec<String> = bars.names().to_vec();
    vars.push(T_VAR.to_string());
    let mut terms = Vec::new();
    for (exps, c) in f.named_terms() {
        let mut e = vec![0u32; vars.len()];
        let mut d = 0i64;
        for (name, x) in exps {
            let a = chart.index_of(&name).expect("checked");
            e[a] = x;
            d += chart.weight(a) * i64::from(x);
        }
        e[vars.len() - 1] = u32::try_from(d - i).expect("degree precondition");
        terms.push((e, c));
    }
    Polynomial::from_terms(&vars, terms)
}

/// The unique `i` with `g(λ^{w} x̄, λ^{-1} t) = λ^i g`.
pub fn zoom_weight(chart: &WeightedChart, g: &Polynomial) -> Result<i64> {
    let bars = chart.barred();
    let weight = |v: &str| {
        if v == T_VAR {
            Some(-1)
        } else {
            bars.weight_of(v)
        }
    };
    for v in g.used_vars() {
        if weight(&v).is_none() {
            return Err(Error::ForeignVariable {
                variable: v,
                allowed: format!("{}, {}", bars.names().join(", "), T_VAR),
            });
        }
    }
    let terms = g.term_weights(weight)?;
    let Some((first, first_degree)) = terms.first().cloned() else {
        return Err(Error::ZeroHasNoZoomDegree);
    };
    if let Some((second, second_degree)) = terms.into_iter().find(|(_, d)| *d != first_degree) {
        return Err(Error::NotZoomHomogeneous {
            first,
            first_degree,
            second,
            second_degree,
        });
    }
    Ok(first_degree)
}

/// `t`-adic valuation of `f(λ_1 t^{w_1}, …, λ_m t^{w_m})` with symbolic `λ_a`.
pub fn weighted_path_valuation(chart: &WeightedChart, f: &Polynomial) -> Result<FiltrationDegree> {
    chart.check_vars(f)?;
    let t = Polynomial::var(T_VAR);
    let bindings: BTreeMap<String, Polynomial> = chart
        .names()
        .iter()
        .enumerate()
        .map(|(a, name)| {
            let w = u32::try_from(chart.weight(a)).expect("non-negative weight");
            (
                name.clone(),
                Polynomial::var(&path_coefficient(a)) * t.pow(w),
            )
        })
        .collect();
    f.compose(&bindings).with_vars(&[T_VAR]).t_adic_valuation(T_VAR)
}

/// Minimal monomials in the positively weighted coordinates generating
/// `C_(i)` as an ideal, highest power of the first coordinate first.
pub fn filtration_generators(chart: &WeightedChart, i: i64) -> Vec<Polynomial> {
    let normal: Vec<usize> = (0..chart.dim()).filter(|&a| chart.weight(a) > 0).collect();
    if i <= 0 {
        return vec![Polynomial::one()];
    }
    let mut candidates: Vec<Vec<u32>> = vec![vec![]];
    for &a in &normal {
        let w = chart.weight(a);
        let cap = u32::try_from((i + w - 1) / w).expect("small exponent");
        candidates = candidates
            .into_iter()
            .flat_map(|e| {
                (0..=cap).map(move |x| {
                    let mut e = e.clone();
                    e.push(x);
                    e
                })
            })
            .collect();
    }
    let weight = |e: &[u32]| -> i64 {
        e.iter().zip(&normal).map(|(&x, &a)| chart.weight(a) * i64::from(x)).sum()
    };
    let members: Vec<Vec<u32>> = candidates.into_iter().filter(|e| weight(e) >= i).collect();
    let divides = |d: &[u32], e: &[u32]| d.iter().zip(e).all(|(x, y)| x <= y);
    let mut minimal: Vec<&Vec<u32>> = members
        .iter()
        .filter(|e| !members.iter().any(|d| d != *e && divides(d, e)))
        .collect();
    minimal.sort_by(|a, b| b.cmp(a));
    minimal
        .into_iter()
        .map(|e| {
            let factors: Vec<(&str, u32)> = normal
                .iter()
                .zip(e)
                .map(|(&a, &x)| (chart.names()[a].as_str(), x))
                .collect();
            Polynomial::monomial(crate::poly::int(1), &factors)
        })
        .collect()
}

/// Substitutes `t = value` into a Rees-type polynomial and renames barred
/// coordinates back to chart coordinates.
pub fn specialize_t(chart: &WeightedChart, g: &Polynomial, value: i64) -> Polynomial {
    let at = g.evaluate(&BTreeMap::from([(
        T_VAR.to_string(),
        crate::poly::int(value),
    )]));
    at.rename(&chart.unbar_map())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    fn plane13() -> WeightedChart {
        WeightedChart::from_pairs(&[("x", 1), ("y", 3)]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        parse(s).unwrap()
    }

    #[test]
    fn filtration_degree_examples() {
        let c = plane13();
        assert_eq!(filtration_degree(&c, &p("x^4 + x*y")).unwrap(), Degree::Finite(4));
        assert_eq!(filtration_degree(&c, &p("1")).unwrap(), Degree::Finite(0));
        assert_eq!(filtration_degree(&c, &p("x^2 + y")).unwrap(), Degree::Finite(2));
        assert_eq!(filtration_degree(&c, &p("0")).unwrap(), Degree::Infinite);
        assert!(matches!(
            filtration_degree(&c, &p("z")),
            Err(Error::ForeignVariable { .. })
        ));
    }

    #[test]
    fn decomposition_examples() {
        let c = plane13();
        let d = homogeneous_decomposition(&c, &p("y + x^2")).unwrap();
        assert_eq!(d.len(), 2);
        assert_eq!(d[&2], p("x^2"));
        assert_eq!(d[&3], p("y"));
        assert!(homogeneous_decomposition(&c, &p("0")).unwrap().is_empty());
        let d = homogeneous_decomposition(&c, &p("x*y")).unwrap();
        assert_eq!(d.into_iter().collect::<Vec<_>>(), vec![(4, p("x*y"))]);
    }

    #[test]
    fn approximation_examples() {
        let c = plane13();
        assert_eq!(
            homogeneous_approximation(&c, &p("y + x^3"), 3).unwrap(),
            p("x_bar^3 + y_bar")
        );
        assert_eq!(homogeneous_approximation(&c, &p("y + x^2"), 2).unwrap(), p("x_bar^2"));
        assert_eq!(homogeneous_approximation(&c, &p("7/3"), 0).unwrap(), p("7/3"));
        match homogeneous_approximation(&c, &p("y + x^2"), 3) {
            Err(Error::DegreeTooLow { monomial, found, .. }) => {
                assert_eq!(monomial, "x^2");
                assert_eq!(found, Degree::Finite(2));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rees_examples() {
        let c = plane13();
        assert_eq!(rees_interpolation(&c, &p("y + x^2"), 2).unwrap(), p("x_bar^2 + _t*y_bar"));
        assert_eq!(rees_interpolation(&c, &p("x*y"), 4).unwrap(), p("x_bar*y_bar"));
        assert_eq!(rees_interpolation(&c, &p("x"), 0).unwrap(), p("_t*x_bar"));
        assert!(rees_interpolation(&c, &p("x"), 2).is_err());
    }

    #[test]
    fn rees_matches_substitution() {
        let c = plane13();
        let f = p("3*x^4 - x*y + 2*y^2 + x^5*y");
        let t = Polynomial::var(T_VAR);
        let bindings = BTreeMap::from([
            ("x".to_string(), &t * &p("x_bar")),
            ("y".to_string(), t.pow(3) * p("y_bar")),
        ]);
        let scaled = f.compose(&bindings);
        let rees = rees_interpolation(&c, &f, 4).unwrap();
        assert_eq!(rees * t.pow(4), scaled);
    }

    #[test]
    fn zoom_examples() {
        let c = plane13();
        assert_eq!(zoom_weight(&c, &p("x_bar^2 + _t*y_bar")).unwrap(), 2);
        assert_eq!(zoom_weight(&c, &p("_t")).unwrap(), -1);
        match zoom_weight(&c, &p("x_bar + _t")) {
            Err(Error::NotZoomHomogeneous {
                first_degree,
                second_degree,
                ..
            }) => {
                let mut ds = [first_degree, second_degree];
                ds.sort();
                assert_eq!(ds, [-1, 1]);
            }
            other => panic!("{other:?}"),
        }
        assert!(zoom_weight(&c, &p("x")).is_err());
    }

    #[test]
    fn path_valuation_examples() {
        let c = plane13();
        assert_eq!(weighted_path_valuation(&c, &p("x^2 + y")).unwrap(), Degree::Finite(2));
        assert_eq!(weighted_path_valuation(&c, &p("0")).unwrap(), Degree::Infinite);
        assert_eq!(weighted_path_valuation(&c, &p("y")).unwrap(), Degree::Finite(3));
    }

    #[test]
    fn degree_four_ideal_generators() {
        let c = plane13();
        for g in ["x^4", "x*y", "y^2"] {
            assert!(filtration_degree(&c, &p(g)).unwrap().at_least(4));
        }
        assert_eq!(filtration_degree(&c, &p("y^2")).unwrap(), Degree::Finite(6));
        assert!(!filtration_degree(&c, &p("x^3")).unwrap().at_least(4));
        let gens = |i| -> Vec<String> {
            filtration_generators(&c, i).iter().map(|g| g.to_string()).collect()
        };
        assert_eq!(gens(1), ["x", "y"]);
        assert_eq!(gens(2), ["x^2", "y"]);
        assert_eq!(gens(3), ["x^3", "y"]);
        assert_eq!(gens(4), ["x^4", "x*y", "y^2"]);
        assert_eq!(gens(0), ["1"]);
    }
}
