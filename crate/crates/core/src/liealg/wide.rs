use num_traits::{One, Zero};

use super::AlgebroidData;
use crate::error::{Error, Result};
use crate::poly::{linalg, Polynomial, Rational};

/// `A_{−i} = span{σ_a : v_a ≥ −i}` for `i = 1, …, r`, `r = max(−v_a)`.
pub fn filtration_levels(algebroid: &AlgebroidData) -> Vec<Vec<usize>> {
    let v = algebroid.bundle().vertical();
    let r = v.iter().map(|&x| -x).max().unwrap_or(0).max(0);
    (1..=r)
        .map(|i| (0..v.len()).filter(|&a| v[a] >= -i).collect())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WideWitness {
    /// Index into the supplied levels.
    pub level: usize,
    /// Index of the `B` generator.
    pub generator: usize,
    /// Frame element of the level.
    pub frame: usize,
    /// Coefficient outside the level that should vanish.
    pub component: usize,
    pub value: Polynomial,
}

impl std::fmt::Display for WideWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "level {}: [β{}, σ{}] has σ{} component {}",
            self.level + 1,
            self.generator + 1,
            self.frame + 1,
            self.component + 1,
            self.value
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WideReport {
    pub bracket_failures: Vec<WideWitness>,
    /// Per level, `dim(B_m + A_{−i}|_m)` at each sample point.
    pub dimensions: Vec<Vec<usize>>,
}

impl WideReport {
    pub fn bracket_condition(&self) -> bool {
        self.bracket_failures.is_empty()
    }

    pub fn constant_rank_condition(&self) -> bool {
        self.dimensions
            .iter()
            .all(|d| d.windows(2).all(|w| w[0] == w[1]))
    }

    pub fn holds(&self) -> bool {
        self.bracket_condition() && self.constant_rank_condition()
    }
}

/// Hypotheses of the wide integration theorem for `B` spanned by the
/// sections `b_generators` and levels `A_{−i}` spanned by frame subsets.
///
/// (a) `[Γ(B), Γ(A_{−i})] ⊆ Γ(A_{−i})`. By the Leibniz rule it suffices that
/// `[β, σ_a]` and `a_aj β` lie in `A_{−i}` for every generator `β`, `a` in the
/// level and coordinate `j`. (b) is checked at the sample points.
pub fn check_wide_integration_hypotheses(
    algebroid: &AlgebroidData,
    levels: &[Vec<usize>],
    b_generators: &[Vec<Polynomial>],
    samples: &[Vec<Rational>],
) -> Result<WideReport> {
    let k = algebroid.rank();
    for level in levels {
        if let Some(&a) = level.iter().find(|&&a| a >= k) {
            return Err(Error::Dimension(format!("frame index {} out of range", a + 1)));
        }
    }
    if let Some(beta) = b_generators.iter().find(|b| b.len() != k) {
        return Err(Error::Dimension(format!(
            "section of B has {} coefficients, rank is {k}",
            beta.len()
        )));
    }
    let mut bracket_failures = Vec::new();
    for (i, level) in levels.iter().enumerate() {
        for (g, beta) in b_generators.iter().enumerate() {
            for &a in level {
                let mut sigma = vec![Polynomial::zero(); k];
                sigma[a] = Polynomial::one();
                let bracket = algebroid.section_bracket(beta, &sigma);
                let leibniz = algebroid.anchor()[a].iter().filter(|r| !r.is_zero());
                let mut candidates = vec![bracket];
                candidates.extend(leibniz.map(|r| beta.iter().map(|f| r * f).collect()));
                'found: for candidate in candidates {
                    for (c, value) in candidate.into_iter().enumerate() {
                        if !level.contains(&c) && !value.is_zero() {
                            bracket_failures.push(WideWitness {
                                level: i,
                                generator: g,
                                frame: a,
                                component: c,
                                value,
                            });
                            break 'found;
                        }
                    }
                }
            }
        }
    }
    let mut dimensions = vec![Vec::new(); levels.len()];
    for point in samples {
        let at = algebroid.base().point_map(point)?;
        let b_rows: Vec<Vec<Rational>> = b_generators
            .iter()
            .map(|beta| beta.iter().map(|f| f.evaluate(&at).constant_term()).collect())
            .collect();
        for (i, level) in levels.iter().enumerate() {
            let mut rows = b_rows.clone();
            for &a in level {
                let mut e = vec![Rational::zero(); k];
                e[a] = Rational::one();
                rows.push(e);
            }
            dimensions[i].push(linalg::rank(&rows));
        }
    }
    Ok(WideReport {
        bracket_failures,
        dimensions,
    })
}
