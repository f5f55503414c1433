use std::ops::{Add, Mul};

use super::Polynomial;

/// Element of `P[ε]/⟨ε^{r+1}⟩`: the coefficients of `ε^0, …, ε^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedElement {
    coefficients: Vec<Polynomial>,
}

impl TruncatedElement {
    pub fn zero(order: usize) -> Self {
        TruncatedElement {
            coefficients: vec![Polynomial::zero(); order + 1],
        }
    }

    pub fn constant(order: usize, p: Polynomial) -> Self {
        let mut t = Self::zero(order);
        t.coefficients[0] = p;
        t
    }

    /// Takes the first `order + 1` coefficients, padding with zeros.
    pub fn from_coefficients(order: usize, mut coefficients: Vec<Polynomial>) -> Self {
        coefficients.resize(order + 1, Polynomial::zero());
        TruncatedElement { coefficients }
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficient(&self, j: usize) -> &Polynomial {
        &self.coefficients[j]
    }

    pub fn coefficients(&self) -> &[Polynomial] {
        &self.coefficients
    }

    pub fn into_coefficients(self) -> Vec<Polynomial> {
        self.coefficients
    }

    pub fn pow(&self, n: u32) -> TruncatedElement {
        let mut result = TruncatedElement::constant(self.order(), Polynomial::one());
        for _ in 0..n {
            result = &result * self;
        }
        result
    }
}

impl Add for &TruncatedElement {
    type Output = TruncatedElement;

    fn add(self, rhs: &TruncatedElement) -> TruncatedElement {
        assert_eq!(self.order(), rhs.order(), "mismatched truncation orders");
        TruncatedElement {
            coefficients: self
                .coefficients
                .iter()
                .zip(&rhs.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Mul for &TruncatedElement {
    type Output = TruncatedElement;

    fn mul(self, rhs: &TruncatedElement) -> TruncatedElement {
        assert_eq!(self.order(), rhs.order(), "mismatched truncation orders");
        let r = self.order();
        let mut out = TruncatedElement::zero(r);
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coefficients.iter().enumerate().take(r + 1 - i) {
                if b.is_zero() {
                    continue;
                }
                out.coefficients[i + j] = &out.coefficients[i + j] + &(a * b);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse;

    #[test]
    fn product_discards_high_orders() {
        let a = TruncatedElement::from_coefficients(2, vec![parse("x").unwrap(), parse("1").unwrap()]);
        let sq = &a * &a;
        assert_eq!(sq.coefficient(0), &parse("x^2").unwrap());
        assert_eq!(sq.coefficient(1), &parse("2*x").unwrap());
        assert_eq!(sq.coefficient(2), &parse("1").unwrap());
        let cube = a.pow(3);
        assert_eq!(cube.coefficient(2), &parse("3*x").unwrap());
    }
}
