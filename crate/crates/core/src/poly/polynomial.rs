use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::{Degree, Rational};
use crate::error::{Error, Result};

/// Exponents of a monomial, indexed by the owning polynomial's variable table.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// the earliest variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zero(len: usize) -> Self {
        ExponentVector(vec![0; len])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn add(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

type VarTable = Arc<[String]>;

fn merge_tables(a: &VarTable, b: &VarTable) -> VarTable {
    if Arc::ptr_eq(a, b) || a == b {
        return a.clone();
    }
    if b.is_empty() {
        return a.clone();
    }
    if a.is_empty() {
        return b.clone();
    }
    let merged: BTreeSet<&String> = a.iter().chain(b.iter()).collect();
    merged.into_iter().cloned().collect::<Vec<_>>().into()
}

/// Exact multivariate polynomial over the rationals.
///
/// The variable table is kept sorted by name and may contain variables that
/// do not occur in any term. Equality ignores such unused variables.
#[derive(Clone)]
pub struct Polynomial {
    vars: VarTable,
    terms: BTreeMap<ExponentVector, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial {
            vars: Arc::from(Vec::new()),
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(ExponentVector::zero(0), c);
        }
        Polynomial {
            vars: Arc::from(Vec::new()),
            terms,
        }
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn var(name: &str) -> Self {
        Self::monomial(Rational::one(), &[(name, 1)])
    }

    /// `c · Π name^exp`. Repeated names have their exponents added.
    pub fn monomial(c: Rational, factors: &[(&str, u32)]) -> Self {
        let names: BTreeSet<&str> = factors.iter().map(|(n, _)| *n).collect();
        let vars: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let mut exps = vec![0u32; vars.len()];
        for (name, e) in factors {
            let idx = vars.iter().position(|v| v == name).expect("present");
            exps[idx] += e;
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(ExponentVector(exps), c);
        }
        Polynomial {
            vars: vars.into(),
            terms,
        }
    }

    /// Builds a polynomial from explicit terms over a variable table. The
    /// table is sorted and duplicate exponent vectors are summed.
    pub fn from_terms<I>(vars: &[String], terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut sorted: Vec<String> = vars.to_vec();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != vars.len() {
            return Err(Error::InvalidChart(format!(
                "duplicate variable in table {vars:?}"
            )));
        }
        let perm: Vec<usize> = vars
            .iter()
            .map(|v| sorted.iter().position(|s| s == v).expect("present"))
            .collect();
        let mut out = Polynomial {
            vars: sorted.into(),
            terms: BTreeMap::new(),
        };
        for (exps, c) in terms {
            if exps.len() != vars.len() {
                return Err(Error::Dimension(format!(
                    "exponent vector of length {} over {} variables",
                    exps.len(),
                    vars.len()
                )));
            }
            let mut e = vec![0u32; vars.len()];
            for (i, x) in exps.into_iter().enumerate() {
                e[perm[i]] = x;
            }
            out.add_term(ExponentVector(e), c);
        }
        Ok(out)
    }

    fn add_term(&mut self, e: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Sorted variable table (possibly including unused variables).
    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Variables that occur with a nonzero exponent in some term.
    pub fn used_vars(&self) -> BTreeSet<String> {
        let mut used = BTreeSet::new();
        for e in self.terms.keys() {
            for (i, &x) in e.0.iter().enumerate() {
                if x > 0 {
                    used.insert(self.vars[i].clone());
                }
            }
        }
        used
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Rational)> + '_ {
        self.terms.iter()
    }

    /// Terms as `(name -> exponent, coefficient)` pairs, omitting zero exponents.
    pub fn named_terms(&self) -> Vec<(BTreeMap<String, u32>, Rational)> {
        self.terms
            .iter()
            .map(|(e, c)| (self.named_exponents(e), c.clone()))
            .collect()
    }

    pub fn named_exponents(&self, e: &ExponentVector) -> BTreeMap<String, u32> {
        e.0.iter()
            .enumerate()
            .filter(|(_, &x)| x > 0)
            .map(|(i, &x)| (self.vars[i].clone(), x))
            .collect()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(ExponentVector::is_constant)
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(e, _)| e.is_constant())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(ExponentVector::total_degree).max()
    }

    fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.binary_search_by(|v| v.as_str().cmp(name)).ok()
    }

    /// Whether `name` occurs with positive exponent in some term.
    pub fn has_var(&self, name: &str) -> bool {
        self.index_of(name)
            .is_some_and(|i| self.terms.keys().any(|e| e.0[i] > 0))
    }

    fn reindexed(&self, table: &VarTable) -> BTreeMap<ExponentVector, Rational> {
        if Arc::ptr_eq(&self.vars, table) || self.vars == *table {
            return self.terms.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| table.binary_search(v).expect("superset table"))
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut out = vec![0u32; table.len()];
                for (i, &x) in e.0.iter().enumerate() {
                    out[map[i]] = x;
                }
                (ExponentVector(out), c.clone())
            })
            .collect()
    }

    /// Extends the variable table with the given names (no effect on terms).
    pub fn with_vars<S: AsRef<str>>(&self, names: &[S]) -> Polynomial {
        let extra: VarTable = {
            let mut v: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
            v.sort();
            v.dedup();
            v.into()
        };
        let table = merge_tables(&self.vars, &extra);
        Polynomial {
            terms: self.reindexed(&table),
            vars: table,
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            };
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut result = Polynomial::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    fn add_impl(&self, other: &Polynomial, sign: bool) -> Polynomial {
        let table = merge_tables(&self.vars, &other.vars);
        let mut out = Polynomial {
            terms: self.reindexed(&table),
            vars: table.clone(),
        };
        for (e, c) in other.reindexed(&table) {
            out.add_term(e, if sign { c } else { -c });
        }
        out
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        let table = merge_tables(&self.vars, &other.vars);
        let a = self.reindexed(&table);
        let b = other.reindexed(&table);
        let mut out = Polynomial {
            vars: table,
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                out.add_term(ea.add(eb), ca * cb);
            }
        }
        out
    }

    /// Formal partial derivative. The variable must be in the table.
    pub fn partial_derivative(&self, var: &str) -> Result<Polynomial> {
        let idx = self
            .index_of(var)
            .ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        Ok(self.derivative_at(idx))
    }

    /// Partial derivative that treats a variable outside the table as
    /// absent (derivative zero).
    pub fn derivative(&self, var: &str) -> Polynomial {
        match self.index_of(var) {
            Some(idx) => self.derivative_at(idx),
            None => Polynomial {
                vars: self.vars.clone(),
                terms: BTreeMap::new(),
            },
        }
    }

    fn derivative_at(&self, idx: usize) -> Polynomial {
        let mut out = Polynomial {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            let k = e.0[idx];
            if k == 0 {
                continue;
            }
            let mut ne = e.0.clone();
            ne[idx] -= 1;
            out.add_term(ExponentVector(ne), c * Rational::from_integer(k.into()));
        }
        out
    }

    /// Substitutes polynomials for variables. Unbound variables are carried
    /// through; a binding whose image mentions a carried-through variable is
    /// rejected as ambiguous.
    pub fn substitute(&self, bindings: &BTreeMap<String, Polynomial>) -> Result<Polynomial> {
        let carried: BTreeSet<String> = self
            .used_vars()
            .into_iter()
            .filter(|v| !bindings.contains_key(v))
            .collect();
        for (bound, image) in bindings {
            if !self.used_vars().contains(bound) {
                continue;
            }
            if let Some(clash) = image.used_vars().into_iter().find(|v| carried.contains(v)) {
                return Err(Error::AmbiguousSubstitution(clash));
            }
        }
        Ok(self.compose(bindings))
    }

    /// Substitution without the ambiguity check: every occurrence of a bound
    /// variable is replaced simultaneously, unbound variables are kept.
    pub fn compose(&self, bindings: &BTreeMap<String, Polynomial>) -> Polynomial {
        let slots: Vec<Option<&Polynomial>> =
            self.vars.iter().map(|v| bindings.get(v)).collect();
        let kept: Vec<String> = self
            .vars
            .iter()
            .zip(&slots)
            .filter(|(_, s)| s.is_none())
            .map(|(v, _)| v.clone())
            .collect();
        let kept_index: Vec<Option<usize>> = {
            let mut j = 0;
            slots
                .iter()
                .map(|s| {
                    if s.is_none() {
                        j += 1;
                        Some(j - 1)
                    } else {
                        None
                    }
                })
                .collect()
        };
        let mut power_cache: BTreeMap<(usize, u32), Polynomial> = BTreeMap::new();
        let mut result = Polynomial::zero().with_vars(&kept);
        for s in slots.iter().flatten() {
            result = result.with_vars(s.vars());
        }
        for (e, c) in &self.terms {
            let mut kept_exp = vec![0u32; kept.len()];
            let mut term = Polynomial::constant(c.clone());
            for (i, &x) in e.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match slots[i] {
                    None => kept_exp[kept_index[i].expect("kept")] = x,
                    Some(image) => {
                        let p = power_cache
                            .entry((i, x))
                            .or_insert_with(|| image.pow(x))
                            .clone();
                        term = &term * &p;
                        if term.is_zero() {
                            break;
                        }
                    }
                }
            }
            if term.is_zero() {
                continue;
            }
            let mono = Polynomial::from_terms(&kept, [(kept_exp, Rational::one())])
                .expect("valid table");
            result = &result + &(&term * &mono);
        }
        result
    }

    /// Renames variables. The renaming must be injective on the table.
    pub fn rename(&self, map: &BTreeMap<String, String>) -> Polynomial {
        let names: Vec<String> = self
            .vars
            .iter()
            .map(|v| map.get(v).cloned().unwrap_or_else(|| v.clone()))
            .collect();
        let terms = self.terms.iter().map(|(e, c)| (e.0.clone(), c.clone()));
        match Polynomial::from_terms(&names, terms) {
            Ok(p) => p,
            Err(_) => {
                let bindings: BTreeMap<String, Polynomial> =
                    map.iter().map(|(k, v)| (k.clone(), Polynomial::var(v))).collect();
                self.compose(&bindings)
            }
        }
    }

    /// Evaluates the given variables at rational values; others are kept.
    pub fn evaluate(&self, point: &BTreeMap<String, Rational>) -> Polynomial {
        let bindings = point
            .iter()
            .map(|(k, v)| (k.clone(), Polynomial::constant(v.clone())))
            .collect();
        self.compose(&bindings)
    }

    /// Sets the listed variables to zero.
    pub fn restrict_zero<S: AsRef<str>>(&self, vars: &[S]) -> Polynomial {
        let idx: Vec<usize> = vars.iter().filter_map(|v| self.index_of(v.as_ref())).collect();
        let mut out = Polynomial {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            if idx.iter().all(|&i| e.0[i] == 0) {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// Minimal exponent of `t` over all terms; infinite for zero.
    pub fn t_adic_valuation(&self, t: &str) -> Result<Degree> {
        let idx = self
            .index_of(t)
            .ok_or_else(|| Error::UnknownVariable(t.to_string()))?;
        Ok(Degree::min_of(
            self.terms.keys().map(|e| Degree::Finite(i64::from(e.0[idx]))),
        ))
    }

    /// Coefficient of `var^k` as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, var: &str, k: u32) -> Polynomial {
        let Some(idx) = self.index_of(var) else {
            return if k == 0 {
                self.clone()
            } else {
                Polynomial {
                    vars: self.vars.clone(),
                    terms: BTreeMap::new(),
                }
            };
        };
        let mut out = Polynomial {
            vars: self.vars.clone(),
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            if e.0[idx] == k {
                let mut ne = e.0.clone();
                ne[idx] = 0;
                out.terms.insert(ExponentVector(ne), c.clone());
            }
        }
        out
    }

    /// Highest exponent of `var`; `None` for the zero polynomial.
    pub fn degree_in(&self, var: &str) -> Option<u32> {
        let idx = self.index_of(var);
        self.terms
            .keys()
            .map(|e| idx.map_or(0, |i| e.0[i]))
            .max()
    }

    /// Minimum over terms of `Σ weight(v)·exp(v)`. Every variable occurring in
    /// a term must have a weight.
    pub fn weighted_degree<F>(&self, weight: F) -> Result<Degree>
    where
        F: Fn(&str) -> Option<i64>,
    {
        let w = self.weight_vector(&weight)?;
        Ok(Degree::min_of(self.terms.keys().map(|e| Degree::Finite(dot(&w, e)))))
    }

    /// Splits into weighted-homogeneous parts keyed by weighted degree.
    pub fn weighted_parts<F>(&self, weight: F) -> Result<BTreeMap<i64, Polynomial>>
    where
        F: Fn(&str) -> Option<i64>,
    {
        let w = self.weight_vector(&weight)?;
        let mut parts: BTreeMap<i64, Polynomial> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = dot(&w, e);
            parts
                .entry(d)
                .or_insert_with(|| Polynomial {
                    vars: self.vars.clone(),
                    terms: BTreeMap::new(),
                })
                .terms
                .insert(e.clone(), c.clone());
        }
        Ok(parts)
    }

    /// Weighted degree of each term, in ascending term order.
    pub fn term_weights<F>(&self, weight: F) -> Result<Vec<(String, i64)>>
    where
        F: Fn(&str) -> Option<i64>,
    {
        let w = self.weight_vector(&weight)?;
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| (self.term_string(e, c), dot(&w, e)))
            .collect())
    }

    fn weight_vector<F>(&self, weight: &F) -> Result<Vec<Option<i64>>>
    where
        F: Fn(&str) -> Option<i64>,
    {
        let used = self.used_vars();
        self.vars
            .iter()
            .map(|v| match weight(v) {
                Some(x) => Ok(Some(x)),
                None if used.contains(v) => Err(Error::UnknownVariable(v.clone())),
                None => Ok(None),
            })
            .collect()
    }

    /// Text of one term, e.g. `-1/2*x^2*y`.
    pub fn term_string(&self, e: &ExponentVector, c: &Rational) -> String {
        let mono = self.monomial_string(e);
        if mono.is_empty() {
            return c.to_string();
        }
        if c.is_one() {
            mono
        } else if (-c).is_one() {
            format!("-{mono}")
        } else {
            format!("{c}*{mono}")
        }
    }

    pub fn monomial_string(&self, e: &ExponentVector) -> String {
        let mut factors = Vec::new();
        for (i, &x) in e.0.iter().enumerate() {
            match x {
                0 => {}
                1 => factors.push(self.vars[i].clone()),
                _ => factors.push(format!("{}^{}", self.vars[i], x)),
            }
        }
        factors.join("*")
    }

    /// Leading (largest) term in the canonical order.
    pub fn leading_term_string(&self) -> Option<String> {
        self.terms.iter().next_back().map(|(e, c)| self.term_string(e, c))
    }
}

fn dot(w: &[Option<i64>], e: &ExponentVector) -> i64 {
    e.0.iter()
        .zip(w)
        .map(|(&x, wi)| i64::from(x) * wi.unwrap_or(0))
        .sum()
}

impl Default for Polynomial {
    fn default() -> Self {
        Polynomial::zero()
    }
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        if self.terms.len() != other.terms.len() {
            return false;
        }
        let table = merge_tables(&self.vars, &other.vars);
        self.reindexed(&table) == other.reindexed(&table)
    }
}

impl Eq for Polynomial {}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            if k == 0 {
                write!(f, "{}", self.term_string(e, c))?;
            } else if c.is_negative() {
                write!(f, " - {}", self.term_string(e, &-c))?;
            } else {
                write!(f, " + {}", self.term_string(e, c))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                $body(self, rhs)
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                $body(&self, &rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                $body(&self, rhs)
            }
        }
        impl $tr<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                $body(self, &rhs)
            }
        }
    };
}

binop!(Add, add, |a: &Polynomial, b: &Polynomial| a.add_impl(b, true));
binop!(Sub, sub, |a: &Polynomial, b: &Polynomial| a.add_impl(b, false));
binop!(Mul, mul, |a: &Polynomial, b: &Polynomial| a.mul_impl(b));

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Sum for Polynomial {
    fn sum<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::zero(), |acc, p| acc + p)
    }
}

impl<'a> Sum<&'a Polynomial> for Polynomial {
    fn sum<I: Iterator<Item = &'a Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::zero(), |acc, p| acc + p)
    }
}

impl Product for Polynomial {
    fn product<I: Iterator<Item = Polynomial>>(iter: I) -> Polynomial {
        iter.fold(Polynomial::one(), |acc, p| acc * p)
    }
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl From<i64> for Polynomial {
    fn from(n: i64) -> Self {
        Polynomial::integer(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse, rat};

    fn p(s: &str) -> Polynomial {
        parse(s).unwrap()
    }

    #[test]
    fn add_cancels_and_collects() {
        assert_eq!(p("x + y") + p("-x"), p("y"));
        assert_eq!(p("x^2") + p("x^2"), p("2*x^2"));
        assert_eq!(Polynomial::zero() + p("x*y - 3"), p("x*y - 3"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p("x") * p("y"), p("x*y"));
        assert_eq!(p("x + y") * p("x - y"), p("x^2 - y^2"));
        assert_eq!(Polynomial::one() * p("x^3 + 2"), p("x^3 + 2"));
    }

    #[test]
    fn substitute_examples() {
        let b = |k: &str, v: &str| BTreeMap::from([(k.to_string(), p(v))]);
        assert_eq!(p("x^2").substitute(&b("x", "t*u")).unwrap(), p("t^2*u^2"));
        assert_eq!(p("x + y").substitute(&b("x", "0")).unwrap(), p("y"));
        assert_eq!(p("x*y").substitute(&b("x", "x + e")).unwrap(), p("x*y + e*y"));
    }

    #[test]
    fn substitute_rejects_collision() {
        let b = BTreeMap::from([("x".to_string(), p("y"))]);
        assert_eq!(
            p("x + y").substitute(&b),
            Err(Error::AmbiguousSubstitution("y".into()))
        );
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("x^2*y").partial_derivative("x").unwrap(), p("2*x*y"));
        assert_eq!(p("x^2").with_vars(&["y"]).partial_derivative("y").unwrap(), p("0"));
        assert_eq!(
            p("(x+y)^3").partial_derivative("x").unwrap(),
            p("3*(x+y)^2")
        );
        assert!(matches!(
            p("x").partial_derivative("z"),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn valuation_examples() {
        let q = p("t^2*l1^2 + t^3*l2");
        assert_eq!(q.t_adic_valuation("t").unwrap(), Degree::Finite(2));
        assert_eq!(
            Polynomial::zero().with_vars(&["t"]).t_adic_valuation("t").unwrap(),
            Degree::Infinite
        );
        assert_eq!(
            p("l1").with_vars(&["t"]).t_adic_valuation("t").unwrap(),
            Degree::Finite(0)
        );
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(p("x*y + x^4").to_string(), "x^4 + x*y");
        assert_eq!(p("-5/2 + y - x^2").to_string(), "-x^2 + y - 5/2");
        assert_eq!(p("1/2*x").to_string(), "1/2*x");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::constant(rat(-3, 4)).to_string(), "-3/4");
    }

    #[test]
    fn equality_ignores_unused_vars() {
        assert_eq!(p("x").with_vars(&["y", "z"]), p("x"));
        assert_ne!(p("x"), p("y"));
    }

    #[test]
    fn coefficient_extraction() {
        let q = p("t^2*x + t^2 + t*y");
        assert_eq!(q.coefficient_of("t", 2), p("x + 1"));
        assert_eq!(q.coefficient_of("t", 0), Polynomial::zero());
        assert_eq!(q.degree_in("t"), Some(2));
    }
}
