//! The `r`-th order tangent calculus on polynomial charts.
//!
//! A point of `T_r U` is a curve `x_a(ε) = Σ_{j≤r} x_a^{(j)} ε^j` modulo
//! `ε^{r+1}`; the jet coordinate `x_a^{(j)}` is named `x_a__j`. The lift
//! `f^{(i)}` is the `ε^i` coefficient of `f(x(ε))`.

mod algebroid;
mod q;

use std::collections::BTreeMap;

pub use algebroid::{lift_algebroid, lifted_algebroid_check, LiftedAlgebroidReport, LiftedWitness};
pub use q::{
    degree_via_q, lift_preserves_q, q_model, section_lift_membership, tangency_check,
    MembershipReport, QDegree, QModel, TangencyReport,
};

use crate::error::{Error, Result};
use crate::poly::{Polynomial, TruncatedElement};
use crate::weighting::{PolyVectorField, PolynomialMap, WeightVector, WeightedChart};

pub fn jet_name(name: &str, j: usize) -> String {
    format!("{name}__{j}")
}

/// The formal curves `x_a(ε) = Σ_j x_a^{(j)} ε^j` for a set of variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonExpansion {
    order: usize,
    variables: Vec<String>,
}

impl EpsilonExpansion {
    pub fn new<S: AsRef<str>>(variables: &[S], order: usize) -> Self {
        EpsilonExpansion {
            order,
            variables: variables.iter().map(|s| s.as_ref().to_string()).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn expansion(&self, name: &str) -> TruncatedElement {
        TruncatedElement::from_coefficients(
            self.order,
            (0..=self.order)
                .map(|j| Polynomial::var(&jet_name(name, j)))
                .collect(),
        )
    }

    /// Jet variables, variable-major: `x__0, …, x__r, y__0, …`.
    pub fn jet_variables(&self) -> Vec<String> {
        self.variables
            .iter()
            .flat_map(|v| (0..=self.order).map(move |j| jet_name(v, j)))
            .collect()
    }
}

fn check_order(i: usize, r: usize) -> Result<()> {
    if i > r {
        return Err(Error::OrderOutOfRange(format!("lift index {i} exceeds order {r}")));
    }
    Ok(())
}

/// All lifts `f^{(0)}, …, f^{(r)}`.
pub fn lift_all(f: &Polynomial, r: usize) -> Vec<Polynomial> {
    let vars: Vec<String> = f.used_vars().into_iter().collect();
    let expansion = EpsilonExpansion::new(&vars, r);
    let mut powers: BTreeMap<(String, u32), TruncatedElement> = BTreeMap::new();
    let mut total = TruncatedElement::zero(r);
    for (exps, c) in f.named_terms() {
        let mut term = TruncatedElement::constant(r, Polynomial::constant(c));
        for (name, e) in exps {
            let power = powers
                .entry((name.clone(), e))
                .or_insert_with(|| expansion.expansion(&name).pow(e));
            term = &term * power;
        }
        total = &total + &term;
    }
    total.into_coefficients()
}

/// `f^{(i)}`, the `ε^i` coefficient of `f(x(ε))`.
pub fn lift_function(f: &Polynomial, i: usize, r: usize) -> Result<Polynomial> {
    check_order(i, r)?;
    Ok(lift_all(f, r).swap_remove(i))
}

/// Jet chart of `T_r U` with the trivial weighting.
pub fn jet_chart(chart: &WeightedChart, r: usize) -> WeightedChart {
    let names = EpsilonExpansion::new(chart.names(), r).jet_variables();
    let weights = WeightVector::new(vec![0; names.len()]);
    WeightedChart::internal(&names, weights).expect("jet names are distinct")
}

fn jet_index(chart_dim: usize, r: usize, a: usize, j: usize) -> usize {
    debug_assert!(a < chart_dim);
    a * (r + 1) + j
}

/// `T_r F`, with `(T_r F)^* y_b^{(i)} = (F^* y_b)^{(i)}`.
pub fn lift_map(map: &PolynomialMap, r: usize) -> Result<PolynomialMap> {
    let components = map
        .components()
        .iter()
        .flat_map(|c| lift_all(c, r))
        .collect();
    PolynomialMap::new(jet_chart(map.source(), r), jet_chart(map.target(), r), components)
}

/// `X^{(−i)}`: the coefficient of `∂/∂x_a^{(j)}` is `X_a^{(j−i)}` for `j ≥ i`.
pub fn lift_vector_field(field: &PolyVectorField, i: usize, r: usize) -> Result<PolyVectorField> {
    check_order(i, r)?;
    let chart = field.chart();
    let jets = jet_chart(chart, r);
    let mut coefficients = vec![Polynomial::zero(); jets.dim()];
    for (a, xa) in field.coefficients().iter().enumerate() {
        if xa.is_zero() {
            continue;
        }
        let lifts = lift_all(xa, r);
        for j in i..=r {
            coefficients[jet_index(chart.dim(), r, a, j)] = lifts[j - i].clone();
        }
    }
    PolyVectorField::with_parameters(jets, coefficients)
}

#[cfg(test)]
mod tests;
