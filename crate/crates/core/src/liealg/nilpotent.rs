use std::collections::BTreeMap;

use num_traits::Zero;

use super::{AlgebroidData, StructureEntry};
use crate::error::{Error, Result};
use crate::poly::{linalg, Polynomial, Rational};
use crate::weighting::ZOOM_VAR;

/// The Lie algebra on the fibre at `point`, where the anchor must vanish.
pub fn isotropy_algebra(algebroid: &AlgebroidData, point: &[Rational]) -> Result<AlgebroidData> {
    let at = algebroid.base().point_map(point)?;
    if algebroid
        .anchor()
        .iter()
        .flatten()
        .any(|f| !f.evaluate(&at).is_zero())
    {
        return Err(Error::Precondition("anchor does not vanish at the point".into()));
    }
    let entries = algebroid
        .structure_entries()
        .into_iter()
        .map(|e| StructureEntry {
            value: e.value.evaluate(&at),
            ..e
        })
        .collect();
    let b = algebroid.bundle();
    AlgebroidData::lie_algebra(b.frame(), b.vertical().to_vec(), entries)
}

fn require_constant_algebra(g: &AlgebroidData) -> Result<()> {
    if g.base().dim() != 0 {
        return Err(Error::Precondition("expected a Lie algebra (point base)".into()));
    }
    if !g.is_constant() {
        return Err(Error::Precondition("structure constants must be rational".into()));
    }
    Ok(())
}

fn constant_bracket(g: &AlgebroidData, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let k = g.rank();
    let mut out = vec![Rational::zero(); k];
    for e in g.structure_entries() {
        let c = e.value.constant_term();
        out[e.c] += &c * (&x[e.a] * &y[e.b] - &x[e.b] * &y[e.a]);
    }
    out
}

/// Dimensions of `g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ …`, stopping before the first
/// repeated dimension. The algebra is nilpotent iff the last entry is 0.
pub fn lower_central_series(g: &AlgebroidData) -> Result<Vec<usize>> {
    require_constant_algebra(g)?;
    let k = g.rank();
    let mut current: Vec<Vec<Rational>> = (0..k)
        .map(|a| {
            let mut e = vec![Rational::zero(); k];
            e[a] = Rational::from_integer(1.into());
            e
        })
        .collect();
    let basis = current.clone();
    let mut dims = vec![k];
    loop {
        if current.is_empty() {
            return Ok(dims);
        }
        let brackets: Vec<Vec<Rational>> = basis
            .iter()
            .flat_map(|x| current.iter().map(|y| constant_bracket(g, x, y)))
            .collect();
        let next = linalg::span_basis(&brackets);
        if next.len() == *dims.last().expect("nonempty") {
            return Ok(dims);
        }
        dims.push(next.len());
        current = next;
    }
}

/// A nilpotent Lie algebra with strictly negative weights, ready for the
/// BCH group law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedNilpotentLie {
    algebra: AlgebroidData,
    step: usize,
}

impl GradedNilpotentLie {
    pub fn new(algebra: AlgebroidData) -> Result<Self> {
        require_constant_algebra(&algebra)?;
        if let Some(a) = algebra.bundle().vertical().iter().position(|&v| v >= 0) {
            return Err(Error::Precondition(format!(
                "weight of σ{} must be negative",
                a + 1
            )));
        }
        let lcs = lower_central_series(&algebra)?;
        if lcs.last() != Some(&0) {
            return Err(Error::NotNilpotent(lcs));
        }
        let step = lcs.iter().filter(|&&d| d > 0).count();
        Ok(GradedNilpotentLie { algebra, step })
    }

    pub fn algebra(&self) -> &AlgebroidData {
        &self.algebra
    }

    pub fn rank(&self) -> usize {
        self.algebra.rank()
    }

    /// Nilpotency step: brackets of more than `step` elements vanish.
    pub fn step(&self) -> usize {
        self.step
    }

    pub fn bracket(&self, x: &[Polynomial], y: &[Polynomial]) -> Vec<Polynomial> {
        let mut out = vec![Polynomial::zero(); self.rank()];
        for e in self.algebra.structure_entries() {
            let term = (&x[e.a] * &y[e.b] - &x[e.b] * &y[e.a]) * &e.value;
            out[e.c] = &out[e.c] + &term;
        }
        out
    }

    fn check_len(&self, x: &[Polynomial]) -> Result<()> {
        if x.len() != self.rank() {
            return Err(Error::Dimension(format!(
                "element has {} coordinates, algebra has dimension {}",
                x.len(),
                self.rank()
            )));
        }
        Ok(())
    }
}

/// Coefficients of Dynkin's series per word in `X` (false) and `Y` (true),
/// up to the given length. The word `w_1 … w_n` stands for the right-nested
/// bracket `[w_1, [w_2, … [w_{n−1}, w_n]]]`.
fn dynkin_coefficients(max_len: usize) -> BTreeMap<Vec<bool>, Rational> {
    fn factorial(n: usize) -> i64 {
        (1..=n as i64).product()
    }
    let mut out: BTreeMap<Vec<bool>, Rational> = BTreeMap::new();
    // Each block is (r, s) with r + s > 0; accumulate the word and weights.
    fn go(
        blocks: &mut Vec<(usize, usize)>,
        len: usize,
        max_len: usize,
        out: &mut BTreeMap<Vec<bool>, Rational>,
    ) {
        if !blocks.is_empty() {
            let n = blocks.len() as i64;
            let mut word = Vec::new();
            let mut denom: i64 = n * len as i64;
            for &(r, s) in blocks.iter() {
                word.extend(std::iter::repeat_n(false, r));
                word.extend(std::iter::repeat_n(true, s));
                denom *= factorial(r) * factorial(s);
            }
            let sign = if n % 2 == 1 { 1 } else { -1 };
            *out.entry(word).or_insert_with(Rational::zero) +=
                Rational::new(sign.into(), denom.into());
        }
        for r in 0..=max_len - len {
            for s in 0..=max_len - len - r {
                if r + s == 0 {
                    continue;
                }
                blocks.push((r, s));
                go(blocks, len + r + s, max_len, out);
                blocks.pop();
            }
        }
    }
    go(&mut Vec::new(), 0, max_len, &mut out);
    out.retain(|_, c| !c.is_zero());
    out
}

/// `log(exp X · exp Y)` by Dynkin's formula, truncated at the nilpotency
/// step. Coordinates may be symbolic.
pub fn bch_product(
    g: &GradedNilpotentLie,
    x: &[Polynomial],
    y: &[Polynomial],
) -> Result<Vec<Polynomial>> {
    g.check_len(x)?;
    g.check_len(y)?;
    let mut out = vec![Polynomial::zero(); g.rank()];
    for (word, c) in dynkin_coefficients(g.step().max(1)) {
        let pick = |letter: bool| if letter { y } else { x };
        let mut acc = pick(*word.last().expect("nonempty word")).to_vec();
        for &letter in word.iter().rev().skip(1) {
            acc = g.bracket(pick(letter), &acc);
        }
        for (slot, v) in out.iter_mut().zip(acc) {
            if !v.is_zero() {
                *slot = &*slot + &v.scale(&c);
            }
        }
    }
    Ok(out)
}

/// `δ_λ`: the component of weight `−i` is scaled by `λ^i`.
pub fn dilation(
    g: &GradedNilpotentLie,
    lambda: &Polynomial,
    x: &[Polynomial],
) -> Result<Vec<Polynomial>> {
    g.check_len(x)?;
    Ok(x.iter()
        .zip(g.algebra().bundle().vertical())
        .map(|(c, &v)| c * lambda.pow(u32::try_from(-v).expect("negative weight")))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DilationReport {
    /// First component where `δ_λ(X·Y) ≠ δ_λX · δ_λY`.
    pub failure: Option<(usize, Polynomial)>,
}

impl DilationReport {
    pub fn holds(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks that `δ_λ` is a group automorphism, symbolically in `λ`, `X`, `Y`.
pub fn dilation_check(g: &GradedNilpotentLie) -> Result<DilationReport> {
    let k = g.rank();
    let x: Vec<Polynomial> = (1..=k).map(|a| Polynomial::var(&format!("X{a}"))).collect();
    let y: Vec<Polynomial> = (1..=k).map(|a| Polynomial::var(&format!("Y{a}"))).collect();
    let lambda = Polynomial::var(ZOOM_VAR);
    let lhs = dilation(g, &lambda, &bch_product(g, &x, &y)?)?;
    let rhs = bch_product(g, &dilation(g, &lambda, &x)?, &dilation(g, &lambda, &y)?)?;
    let failure = lhs
        .into_iter()
        .zip(rhs)
        .enumerate()
        .find(|(_, (l, r))| l != r)
        .map(|(c, (l, r))| (c, l - r));
    Ok(DilationReport { failure })
}
