//! Exact polynomial arithmetic over the rationals.

mod degree;
pub mod linalg;
mod parse;
mod polynomial;
mod truncated;

pub use degree::Degree;
pub use parse::{is_identifier, parse, parse_list};
pub use polynomial::{ExponentVector, Polynomial};
pub use truncated::TruncatedElement;

pub type Rational = num_rational::BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Parses a rational literal such as `3`, `-5/2`.
pub fn parse_rational(text: &str) -> crate::error::Result<Rational> {
    let p = parse(text)?;
    if !p.is_constant() {
        return Err(crate::error::Error::Parse {
            line: 1,
            column: 1,
            message: format!("`{}` is not a rational constant", text.trim()),
        });
    }
    Ok(p.constant_term())
}
