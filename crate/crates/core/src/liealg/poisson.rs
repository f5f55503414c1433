use super::AlgebroidData;
use crate::error::Result;
use crate::linweight::{dual_bundle, total_space_degree, WeightedBundleChart};
use crate::poly::{Degree, Polynomial};

/// The linear Poisson structure on `A*`. The fibre coordinate `p_a` is the
/// linear function of `σ_a` and has weight `v_a`.
#[derive(Debug, Clone)]
pub struct PoissonModel<'a> {
    algebroid: &'a AlgebroidData,
    total_space: WeightedBundleChart,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoissonWitness {
    pub left: String,
    pub right: String,
    pub required: i64,
    pub found: Degree,
}

impl std::fmt::Display for PoissonWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{{{}, {}}}: degree {} < {}",
            self.left, self.right, self.found, self.required
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoissonReport {
    pub failures: Vec<PoissonWitness>,
}

impl PoissonReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

impl<'a> PoissonModel<'a> {
    pub fn new(algebroid: &'a AlgebroidData) -> Result<Self> {
        let b = algebroid.bundle();
        let dual = dual_bundle(b);
        let total_space = WeightedBundleChart::with_fibre(
            b.base().clone(),
            dual.frame(),
            b.fibre(),
            dual.vertical().to_vec(),
        )?;
        Ok(PoissonModel {
            algebroid,
            total_space,
        })
    }

    /// Bundle whose total-space degree is the weighting of `A*`.
    pub fn total_space(&self) -> &WeightedBundleChart {
        &self.total_space
    }

    /// `x_1, …, x_m, p_1, …, p_k`.
    pub fn generators(&self) -> Vec<String> {
        let mut g = self.algebroid.base().names().to_vec();
        g.extend(self.algebroid.bundle().fibre().iter().cloned());
        g
    }

    fn fibre_index(&self, name: &str) -> Option<usize> {
        self.algebroid.bundle().fibre().iter().position(|p| p == name)
    }

    /// Bracket of two generators.
    pub fn generator_bracket(&self, u: &str, v: &str) -> Polynomial {
        let a = self.algebroid;
        match (self.fibre_index(u), self.fibre_index(v)) {
            (Some(i), Some(j)) => (0..a.rank())
                .map(|c| a.gamma(i, j, c) * Polynomial::var(&a.bundle().fibre()[c]))
                .sum(),
            (Some(i), None) => match a.base().index_of(v) {
                Some(j) => a.anchor()[i][j].clone(),
                None => Polynomial::zero(),
            },
            (None, Some(_)) => -self.generator_bracket(v, u),
            (None, None) => Polynomial::zero(),
        }
    }

    /// `{f, g} = Σ ∂f/∂u ∂g/∂v {u, v}` over generators `u, v`.
    pub fn bracket(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let gens = self.generators();
        let df: Vec<(String, Polynomial)> = gens
            .iter()
            .map(|u| (u.clone(), f.derivative(u)))
            .filter(|(_, d)| !d.is_zero())
            .collect();
        let dg: Vec<(String, Polynomial)> = gens
            .iter()
            .map(|v| (v.clone(), g.derivative(v)))
            .filter(|(_, d)| !d.is_zero())
            .collect();
        let mut out = Polynomial::zero();
        for (u, fu) in &df {
            for (v, gv) in &dg {
                let b = self.generator_bracket(u, v);
                if !b.is_zero() {
                    out = out + fu * gv * b;
                }
            }
        }
        out
    }

    /// Jacobi identity on generator triples; returns the first failing one.
    pub fn jacobi_failure(&self) -> Option<(String, String, String)> {
        let gens = self.generators();
        for (i, u) in gens.iter().enumerate() {
            for (j, v) in gens.iter().enumerate().skip(i + 1) {
                for w in gens.iter().skip(j + 1) {
                    let (pu, pv, pw) = (Polynomial::var(u), Polynomial::var(v), Polynomial::var(w));
                    let sum = self.bracket(&pu, &self.bracket(&pv, &pw))
                        + self.bracket(&pv, &self.bracket(&pw, &pu))
                        + self.bracket(&pw, &self.bracket(&pu, &pv));
                    if !sum.is_zero() {
                        return Some((u.clone(), v.clone(), w.clone()));
                    }
                }
            }
        }
        None
    }

    /// `deg {u, v} ≥ deg u + deg v` on all generator pairs.
    pub fn degree_check(&self) -> Result<PoissonReport> {
        let gens = self.generators();
        let mut failures = Vec::new();
        for (i, u) in gens.iter().enumerate() {
            for v in gens.iter().skip(i + 1) {
                let du = total_space_degree(&self.total_space, &Polynomial::var(u))?;
                let dv = total_space_degree(&self.total_space, &Polynomial::var(v))?;
                let required = (du + dv).finite().expect("generators are nonzero");
                let found = total_space_degree(&self.total_space, &self.generator_bracket(u, v))?;
                if !found.at_least(required) {
                    failures.push(PoissonWitness {
                        left: u.clone(),
                        right: v.clone(),
                        required,
                        found,
                    });
                }
            }
        }
        Ok(PoissonReport { failures })
    }
}
