//! Lie algebras and Lie algebroids in a weighted frame.
//!
//! An algebroid on the trivial bundle `A = U × ℝ^k` is given by its anchor
//! `a(σ_a) = Σ_j a_aj ∂/∂x_j` and structure functions
//! `[σ_a, σ_b] = Σ_c Γ^c_ab σ_c`. A Lie algebra is the case of a chart with
//! no coordinates.

mod differential;
mod limits;
mod nilpotent;
mod poisson;
mod wide;

use std::collections::BTreeMap;

pub use differential::{da_apply, da_check, da_function, da_dual_frame, DaReport, DaWitness};
pub use limits::{graded_normal_algebroid, rees_deformation_algebroid};
pub use nilpotent::{
    bch_product, dilation, dilation_check, isotropy_algebra, lower_central_series,
    DilationReport, GradedNilpotentLie,
};
pub use poisson::{PoissonModel, PoissonReport, PoissonWitness};
pub use wide::{check_wide_integration_hypotheses, filtration_levels, WideReport, WideWitness};

use crate::error::{Error, Result};
use crate::linweight::WeightedBundleChart;
use crate::poly::{Degree, Polynomial};
use crate::weighting::{
    filtration_degree, vector_field_degree, PolyVectorField, WeightVector, WeightedChart, T_VAR,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebroidData {
    bundle: WeightedBundleChart,
    anchor: Vec<Vec<Polynomial>>,
    /// `(a, b) ↦ (Γ^c_ab)_c` for `a < b`, every pair present.
    structure: BTreeMap<(usize, usize), Vec<Polynomial>>,
}

/// One structure-function entry `Γ^c_ab`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureEntry {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub value: Polynomial,
}

impl AlgebroidData {
    /// Coefficients must be polynomials in the base coordinates. Entries may
    /// be given with `a > b`, in which case they are antisymmetrized; each
    /// unordered pair and target may appear once.
    pub fn new(
        bundle: WeightedBundleChart,
        anchor: Vec<Vec<Polynomial>>,
        entries: Vec<StructureEntry>,
    ) -> Result<Self> {
        let data = Self::with_parameters(bundle, anchor, entries)?;
        for f in data.all_coefficients() {
            data.bundle.base().check_vars(f)?;
        }
        Ok(data)
    }

    /// Like `new`, but coefficients may mention parameters such as `_t`.
    pub fn with_parameters(
        bundle: WeightedBundleChart,
        anchor: Vec<Vec<Polynomial>>,
        entries: Vec<StructureEntry>,
    ) -> Result<Self> {
        let k = bundle.rank();
        let m = bundle.base().dim();
        if anchor.len() != k || anchor.iter().any(|row| row.len() != m) {
            return Err(Error::Dimension(format!(
                "anchor must be {k}×{m} (rank × base dimension)"
            )));
        }
        let mut structure: BTreeMap<(usize, usize), Vec<Polynomial>> = BTreeMap::new();
        for a in 0..k {
            for b in a + 1..k {
                structure.insert((a, b), vec![Polynomial::zero(); k]);
            }
        }
        let mut seen = std::collections::BTreeSet::new();
        for e in entries {
            if e.a >= k || e.b >= k || e.c >= k {
                return Err(Error::Dimension(format!(
                    "structure entry ({}, {}, {}) out of range for rank {k}",
                    e.a + 1,
                    e.b + 1,
                    e.c + 1
                )));
            }
            if e.a == e.b {
                if e.value.is_zero() {
                    continue;
                }
                return Err(Error::InvalidBundle(format!(
                    "[σ{0}, σ{0}] must vanish by antisymmetry",
                    e.a + 1
                )));
            }
            let (lo, hi, value) = if e.a < e.b {
                (e.a, e.b, e.value)
            } else {
                (e.b, e.a, -e.value)
            };
            if !seen.insert((lo, hi, e.c)) {
                return Err(Error::InvalidBundle(format!(
                    "structure function for [σ{}, σ{}] component {} given twice",
                    lo + 1,
                    hi + 1,
                    e.c + 1
                )));
            }
            structure.get_mut(&(lo, hi)).expect("pair")[e.c] = value;
        }
        Ok(AlgebroidData {
            bundle,
            anchor,
            structure,
        })
    }

    /// A Lie algebra with basis `frame`, weights `vertical` and constant
    /// structure constants.
    pub fn lie_algebra<S: AsRef<str>>(
        frame: &[S],
        vertical: Vec<i64>,
        entries: Vec<StructureEntry>,
    ) -> Result<Self> {
        let point = WeightedChart::new::<&str>(&[], WeightVector::new(vec![]))?;
        let bundle = WeightedBundleChart::new(point, frame, vertical)?;
        let k = bundle.rank();
        Self::new(bundle, vec![vec![]; k], entries)
    }

    /// `TU` with frame `∂/∂x_j` (named `d_x`), fibre coordinates `p_x`,
    /// weights `−w_j`, identity anchor and vanishing brackets.
    pub fn tangent(chart: &WeightedChart) -> Result<Self> {
        let frame: Vec<String> = chart.names().iter().map(|n| format!("d_{n}")).collect();
        let fibre: Vec<String> = chart.names().iter().map(|n| format!("p_{n}")).collect();
        let vertical = (0..chart.dim()).map(|j| -chart.weight(j)).collect();
        let bundle = WeightedBundleChart::with_fibre(chart.clone(), &frame, &fibre, vertical)?;
        let anchor = (0..chart.dim())
            .map(|a| {
                (0..chart.dim())
                    .map(|j| if a == j { Polynomial::one() } else { Polynomial::zero() })
                    .collect()
            })
            .collect();
        Self::new(bundle, anchor, vec![])
    }

    pub fn bundle(&self) -> &WeightedBundleChart {
        &self.bundle
    }

    pub fn base(&self) -> &WeightedChart {
        self.bundle.base()
    }

    pub fn rank(&self) -> usize {
        self.bundle.rank()
    }

    pub fn anchor(&self) -> &[Vec<Polynomial>] {
        &self.anchor
    }

    /// `Γ^c_ab`, antisymmetric in `a, b`.
    pub fn gamma(&self, a: usize, b: usize, c: usize) -> Polynomial {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => self.structure[&(a, b)][c].clone(),
            std::cmp::Ordering::Greater => -self.structure[&(b, a)][c].clone(),
            std::cmp::Ordering::Equal => Polynomial::zero(),
        }
    }

    /// Nonzero entries with `a < b`.
    pub fn structure_entries(&self) -> Vec<StructureEntry> {
        self.structure
            .iter()
            .flat_map(|(&(a, b), cs)| {
                cs.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(move |(c, v)| {
                    StructureEntry {
                        a,
                        b,
                        c,
                        value: v.clone(),
                    }
                })
            })
            .collect()
    }

    pub fn anchor_field(&self, a: usize) -> PolyVectorField {
        PolyVectorField::with_parameters(self.base().clone(), self.anchor[a].clone())
            .expect("anchor rows have base dimension")
    }

    /// `a(σ_a) f`.
    pub fn anchor_apply(&self, a: usize, f: &Polynomial) -> Polynomial {
        self.base()
            .names()
            .iter()
            .zip(&self.anchor[a])
            .filter(|(_, c)| !c.is_zero())
            .map(|(x, c)| c * f.derivative(x))
            .sum()
    }

    fn all_coefficients(&self) -> impl Iterator<Item = &Polynomial> {
        self.anchor
            .iter()
            .flatten()
            .chain(self.structure.values().flatten())
    }

    /// Whether every coefficient is a constant.
    pub fn is_constant(&self) -> bool {
        self.all_coefficients().all(Polynomial::is_constant)
    }

    /// `[Σ f_a σ_a, Σ g_b σ_b]` in frame coefficients.
    pub fn section_bracket(&self, f: &[Polynomial], g: &[Polynomial]) -> Vec<Polynomial> {
        let k = self.rank();
        let mut out = vec![Polynomial::zero(); k];
        for a in 0..k {
            if f[a].is_zero() {
                continue;
            }
            for b in 0..k {
                if a == b || g[b].is_zero() {
                    continue;
                }
                let fg = &f[a] * &g[b];
                for (c, slot) in out.iter_mut().enumerate() {
                    let gamma = self.gamma(a, b, c);
                    if !gamma.is_zero() {
                        *slot = &*slot + &(&fg * &gamma);
                    }
                }
            }
        }
        for a in 0..k {
            for b in 0..k {
                if !f[a].is_zero() && !g[b].is_zero() {
                    out[b] = &out[b] + &(&f[a] * &self.anchor_apply(a, &g[b]));
                    out[a] = &out[a] - &(&g[b] * &self.anchor_apply(b, &f[a]));
                }
            }
        }
        out
    }

    fn frame_vector(&self, a: usize) -> Vec<Polynomial> {
        let mut v = vec![Polynomial::zero(); self.rank()];
        v[a] = Polynomial::one();
        v
    }

    /// Frame bracket `[σ_a, σ_b]` as a coefficient vector.
    pub fn frame_bracket(&self, a: usize, b: usize) -> Vec<Polynomial> {
        (0..self.rank()).map(|c| self.gamma(a, b, c)).collect()
    }

    /// Sets `t = value`.
    pub fn specialize_t(&self, value: i64) -> AlgebroidData {
        let at = BTreeMap::from([(T_VAR.to_string(), crate::poly::int(value))]);
        let map = |f: &Polynomial| f.evaluate(&at);
        AlgebroidData {
            bundle: self.bundle.clone(),
            anchor: self.anchor.iter().map(|r| r.iter().map(map).collect()).collect(),
            structure: self
                .structure
                .iter()
                .map(|(k, cs)| (*k, cs.iter().map(map).collect()))
                .collect(),
        }
    }

    /// The same data on another bundle of the same rank and base dimension,
    /// renaming base coordinates positionally.
    pub fn relabel(&self, bundle: &WeightedBundleChart) -> Result<AlgebroidData> {
        if bundle.rank() != self.rank() || bundle.base().dim() != self.base().dim() {
            return Err(Error::Dimension("relabelling needs matching shapes".into()));
        }
        let names: BTreeMap<String, String> = self
            .base()
            .names()
            .iter()
            .cloned()
            .zip(bundle.base().names().iter().cloned())
            .collect();
        let map = |f: &Polynomial| f.rename(&names);
        Ok(AlgebroidData {
            bundle: bundle.clone(),
            anchor: self.anchor.iter().map(|r| r.iter().map(map).collect()).collect(),
            structure: self
                .structure
                .iter()
                .map(|(k, cs)| (*k, cs.iter().map(map).collect()))
                .collect(),
        })
    }

    /// The same structure with different vertical weights.
    pub fn reweighted(&self, vertical: Vec<i64>) -> Result<AlgebroidData> {
        let b = &self.bundle;
        let bundle =
            WeightedBundleChart::with_fibre(b.base().clone(), b.frame(), b.fibre(), vertical)?;
        Ok(AlgebroidData {
            bundle,
            ..self.clone()
        })
    }

    /// The same structure over a base with different weights.
    pub fn rebased(&self, base: &WeightedChart) -> Result<AlgebroidData> {
        if base.names() != self.base().names() {
            return Err(Error::Dimension("rebasing needs the same coordinates".into()));
        }
        let b = &self.bundle;
        let bundle =
            WeightedBundleChart::with_fibre(base.clone(), b.frame(), b.fibre(), b.vertical().to_vec())?;
        Ok(AlgebroidData {
            bundle,
            ..self.clone()
        })
    }

    /// Change of frame `σ'_b = Σ_a T_ab σ_a` with `T` invertible over the
    /// polynomial ring, `inverse` its inverse. Weights are kept.
    pub fn change_frame(
        &self,
        t: &[Vec<Polynomial>],
        inverse: &[Vec<Polynomial>],
    ) -> Result<AlgebroidData> {
        let k = self.rank();
        let column = |m: &[Vec<Polynomial>], b: usize| -> Vec<Polynomial> {
            (0..k).map(|a| m[a][b].clone()).collect()
        };
        let to_new = |v: &[Polynomial]| -> Vec<Polynomial> {
            (0..k)
                .map(|b| (0..k).map(|a| &inverse[b][a] * &v[a]).sum())
                .collect()
        };
        let mut entries = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                let bracket = to_new(&self.section_bracket(&column(t, a), &column(t, b)));
                for (c, value) in bracket.into_iter().enumerate() {
                    entries.push(StructureEntry { a, b, c, value });
                }
            }
        }
        let m = self.base().dim();
        let anchor = (0..k)
            .map(|b| {
                (0..m)
                    .map(|j| (0..k).map(|a| &t[a][b] * &self.anchor[a][j]).sum())
                    .collect()
            })
            .collect();
        Self::with_parameters(self.bundle.clone(), anchor, entries)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JacobiWitness {
    /// Component `c` of the Jacobiator of `(σ_a, σ_b, σ_c)`.
    Jacobiator {
        triple: (usize, usize, usize),
        component: usize,
        value: Polynomial,
    },
    /// `a([σ_a, σ_b]) − [a(σ_a), a(σ_b)]` has nonzero `coordinate` component.
    Anchor {
        pair: (usize, usize),
        coordinate: usize,
        value: Polynomial,
    },
}

impl std::fmt::Display for JacobiWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            JacobiWitness::Jacobiator {
                triple: (a, b, c),
                component,
                value,
            } => write!(
                f,
                "Jacobiator of (σ{}, σ{}, σ{}) has σ{} component {}",
                a + 1,
                b + 1,
                c + 1,
                component + 1,
                value
            ),
            JacobiWitness::Anchor {
                pair: (a, b),
                coordinate,
                value,
            } => write!(
                f,
                "anchor is not bracket-preserving on (σ{}, σ{}): ∂/∂x{} component {}",
                a + 1,
                b + 1,
                coordinate + 1,
                value
            ),
        }
    }
}

/// `None` if the Jacobi identity and the anchor morphism law hold.
pub fn check_jacobi(algebroid: &AlgebroidData) -> Option<JacobiWitness> {
    let k = algebroid.rank();
    for a in 0..k {
        for b in a + 1..k {
            let lhs = PolyVectorField::with_parameters(
                algebroid.base().clone(),
                (0..algebroid.base().dim())
                    .map(|j| {
                        (0..k)
                            .map(|c| algebroid.gamma(a, b, c) * &algebroid.anchor[c][j])
                            .sum()
                    })
                    .collect(),
            )
            .expect("shape");
            let rhs = algebroid
                .anchor_field(a)
                .bracket(&algebroid.anchor_field(b))
                .expect("same chart");
            for (j, (l, r)) in lhs.coefficients().iter().zip(rhs.coefficients()).enumerate() {
                let value = l - r;
                if !value.is_zero() {
                    return Some(JacobiWitness::Anchor {
                        pair: (a, b),
                        coordinate: j,
                        value,
                    });
                }
            }
        }
    }
    for a in 0..k {
        for b in a + 1..k {
            for c in b + 1..k {
                let s = |i| algebroid.frame_vector(i);
                let term = |x: usize, y: usize, z: usize| {
                    algebroid.section_bracket(&algebroid.frame_bracket(x, y), &s(z))
                };
                let parts = [term(a, b, c), term(b, c, a), term(c, a, b)];
                for d in 0..k {
                    let value: Polynomial = parts.iter().map(|p| p[d].clone()).sum();
                    if !value.is_zero() {
                        return Some(JacobiWitness::Jacobiator {
                            triple: (a, b, c),
                            component: d,
                            value,
                        });
                    }
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ImWitness {
    Structure {
        a: usize,
        b: usize,
        c: usize,
        required: i64,
        found: Degree,
    },
    Anchor {
        a: usize,
        required: i64,
        found: Degree,
    },
}

impl std::fmt::Display for ImWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ImWitness::Structure {
                a,
                b,
                c,
                required,
                found,
            } => write!(
                f,
                "Γ^{}_{}{}: degree {} < {}",
                c + 1,
                a + 1,
                b + 1,
                found,
                required
            ),
            ImWitness::Anchor { a, required, found } => {
                write!(f, "anchor of σ{}: degree {} < {}", a + 1, found, required)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImReport {
    pub failures: Vec<ImWitness>,
    /// Frame elements of positive weight. Allowed, but such weightings do
    /// not come from groupoids.
    pub positive_weights: Vec<usize>,
}

impl ImReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `deg Γ^c_ab ≥ v_a + v_b − v_c` and `deg a(σ_a) ≥ v_a`.
pub fn check_im_weighting(algebroid: &AlgebroidData) -> Result<ImReport> {
    let v = algebroid.bundle.vertical();
    let base = algebroid.base();
    let mut failures = Vec::new();
    for entry in algebroid.structure_entries() {
        let StructureEntry { a, b, c, value } = entry;
        let required = v[a] + v[b] - v[c];
        let found = filtration_degree(base, &value)?;
        if !found.at_least(required) {
            failures.push(ImWitness::Structure {
                a,
                b,
                c,
                required,
                found,
            });
        }
    }
    for a in 0..algebroid.rank() {
        let field = PolyVectorField::new(base.clone(), algebroid.anchor[a].clone())?;
        let found = vector_field_degree(&field)?;
        if !found.at_least(v[a]) {
            failures.push(ImWitness::Anchor {
                a,
                required: v[a],
                found,
            });
        }
    }
    let positive_weights = (0..algebroid.rank()).filter(|&a| v[a] > 0).collect();
    Ok(ImReport {
        failures,
        positive_weights,
    })
}

pub fn entry(a: usize, b: usize, c: usize, value: Polynomial) -> StructureEntry {
    StructureEntry { a, b, c, value }
}

#[cfg(test)]
mod tests;
