use std::collections::BTreeMap;

use super::WeightedBundleChart;
use crate::error::{Error, Result};
use crate::poly::{Degree, Polynomial};
use crate::weighting::{filtration_degree, FiltrationDegree};

/// `ω = Σ_I f_I τ_I ∈ Γ(∧^q V*)`, `τ` the dual frame, `I` strictly
/// increasing. Zero coefficients are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormElement {
    bundle: WeightedBundleChart,
    degree: usize,
    coefficients: BTreeMap<Vec<usize>, Polynomial>,
}

/// Sorts `indices`, returning the permutation sign, or `None` on a repeat.
fn normalize(indices: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v = indices.to_vec();
    let mut odd = false;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            odd = !odd;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, odd))
}

impl FormElement {
    pub fn zero(bundle: &WeightedBundleChart, degree: usize) -> Self {
        FormElement {
            bundle: bundle.clone(),
            degree,
            coefficients: BTreeMap::new(),
        }
    }

    pub fn function(bundle: &WeightedBundleChart, f: Polynomial) -> Self {
        let mut w = Self::zero(bundle, 0);
        w.add_term(&[], f);
        w
    }

    /// `τ_a`.
    pub fn dual_frame(bundle: &WeightedBundleChart, a: usize) -> Self {
        let mut w = Self::zero(bundle, 1);
        w.add_term(&[a], Polynomial::one());
        w
    }

    /// Builds `Σ f_I τ_{I}` from arbitrary index lists; unsorted lists pick up
    /// the permutation sign and repeated indices vanish.
    pub fn from_terms<I>(bundle: &WeightedBundleChart, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, Polynomial)>,
    {
        let mut w = Self::zero(bundle, degree);
        for (idx, f) in terms {
            if idx.len() != degree || idx.iter().any(|&a| a >= bundle.rank()) {
                return Err(Error::Dimension(format!(
                    "index {idx:?} does not fit a {degree}-form on a rank {} bundle",
                    bundle.rank()
                )));
            }
            w.add_term(&idx, f);
        }
        Ok(w)
    }

    fn add_term(&mut self, indices: &[usize], f: Polynomial) {
        let Some((sorted, odd)) = normalize(indices) else {
            return;
        };
        let f = if odd { -f } else { f };
        let entry = self.coefficients.entry(sorted).or_insert_with(Polynomial::zero);
        *entry = &*entry + &f;
        self.coefficients.retain(|_, c| !c.is_zero());
    }

    pub fn bundle(&self) -> &WeightedBundleChart {
        &self.bundle
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &BTreeMap<Vec<usize>, Polynomial> {
        &self.coefficients
    }

    pub fn coefficient(&self, indices: &[usize]) -> Polynomial {
        match normalize(indices) {
            Some((sorted, odd)) => {
                let c = self.coefficients.get(&sorted).cloned().unwrap_or_else(Polynomial::zero);
                if odd {
                    -c
                } else {
                    c
                }
            }
            None => Polynomial::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn add(&self, other: &FormElement) -> Result<FormElement> {
        self.compatible(other)?;
        if self.degree != other.degree {
            return Err(Error::Dimension("adding forms of different degrees".into()));
        }
        let mut out = self.clone();
        for (idx, f) in &other.coefficients {
            out.add_term(idx, f.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, g: &Polynomial) -> FormElement {
        let mut out = Self::zero(&self.bundle, self.degree);
        for (idx, f) in &self.coefficients {
            out.add_term(idx, g * f);
        }
        out
    }

    pub fn wedge(&self, other: &FormElement) -> Result<FormElement> {
        self.compatible(other)?;
        let mut out = Self::zero(&self.bundle, self.degree + other.degree);
        for (i, f) in &self.coefficients {
            for (j, g) in &other.coefficients {
                let mut idx = i.clone();
                idx.extend(j);
                out.add_term(&idx, f * g);
            }
        }
        Ok(out)
    }

    fn compatible(&self, other: &FormElement) -> Result<()> {
        if self.bundle != other.bundle {
            return Err(Error::InvalidBundle("forms on different bundles".into()));
        }
        Ok(())
    }
}

/// `min_I (deg f_I − Σ_{a∈I} v_a)`, since `τ_a` has weight `−v_a`.
pub fn form_degree(form: &FormElement) -> Result<FiltrationDegree> {
    let v = form.bundle.vertical();
    let degrees = form
        .coefficients
        .iter()
        .map(|(idx, f)| {
            let shift: i64 = idx.iter().map(|&a| v[a]).sum();
            Ok(filtration_degree(form.bundle.base(), f)?.shift(-shift))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Degree::min_of(degrees))
}
