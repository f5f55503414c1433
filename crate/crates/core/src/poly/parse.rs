//! Text syntax for polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Division is only allowed by a nonzero constant, so `-5/2` and `x/3` are
//! accepted but `1/x` is not. Whitespace is insignificant.

use num_traits::Zero;

use super::{Polynomial, Rational};
use crate::error::{Error, Result};

pub fn parse(text: &str) -> Result<Polynomial> {
    let mut parser = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let p = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.chars.len() {
        return Err(parser.error(format!(
            "unexpected `{}`",
            parser.chars[parser.pos]
        )));
    }
    Ok(p)
}

/// Parses a comma-separated list of polynomials (empty input is an empty list).
pub fn parse_list(text: &str) -> Result<Vec<Polynomial>> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in text.split(',') {
        out.push(parse(piece).map_err(|e| match e {
            Error::Parse {
                line,
                column,
                message,
            } if line == 1 => Error::Parse {
                line,
                column: column + offset,
                message,
            },
            other => other,
        })?);
        offset += piece.chars().count() + 1;
    }
    Ok(out)
}

pub fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, message: String) -> Error {
        let mut line = 1;
        let mut column = 1;
        for &c in &self.chars[..self.pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
        }
        Error::Parse {
            line,
            column,
            message,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                '+' => {
                    self.pos += 1;
                    acc = acc + self.term()?;
                }
                '-' => {
                    self.pos += 1;
                    acc = acc - self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                '*' => {
                    self.pos += 1;
                    acc = acc * self.unary()?;
                }
                '/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.unary()?;
                    if !d.is_constant() {
                        self.pos = at;
                        return Err(self.error("division by a non-constant".into()));
                    }
                    let c = d.constant_term();
                    if c.is_zero() {
                        self.pos = at;
                        return Err(self.error("division by zero".into()));
                    }
                    acc = acc.scale(&(Rational::from_integer(1.into()) / c));
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected a non-negative integer exponent".into()));
            }
            let digits: String = self.chars[start..self.pos].iter().collect();
            let n: u32 = digits.parse().map_err(|_| {
                self.pos = start;
                self.error(format!("exponent `{digits}` is too large"))
            })?;
            return Ok(base.pow(n));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            None => Err(self.error("unexpected end of input".into())),
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                let n: num_bigint::BigInt = digits.parse().expect("digits");
                Ok(Polynomial::constant(Rational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                Ok(Polynomial::var(&name))
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn literals_and_precedence() {
        assert_eq!(parse("-5/2").unwrap(), Polynomial::constant(rat(-5, 2)));
        assert_eq!(parse("2*x^2 + 1").unwrap().to_string(), "2*x^2 + 1");
        assert_eq!(parse("-x^2").unwrap().to_string(), "-x^2");
        assert_eq!(parse(" ( x + y ) ^ 2 ").unwrap().to_string(), "x^2 + 2*x*y + y^2");
        assert_eq!(parse("x/3").unwrap().to_string(), "1/3*x");
    }

    #[test]
    fn errors_carry_position() {
        match parse("x + * y") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 5)),
            other => panic!("{other:?}"),
        }
        match parse("x +\n  1/y") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (2, 5)),
            other => panic!("{other:?}"),
        }
        assert!(parse("(x + 1").is_err());
        assert!(parse("x^").is_err());
        assert!(parse("1/0").is_err());
        assert!(parse("").is_err());
    }

    #[test]
    fn list_parsing() {
        let l = parse_list("1, 0, 1/2").unwrap();
        assert_eq!(l.len(), 3);
        assert_eq!(l[2], Polynomial::constant(rat(1, 2)));
        match parse_list("1, )") {
            Err(Error::Parse { column, .. }) => assert_eq!(column, 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn identifiers() {
        assert!(is_identifier("x_bar"));
        assert!(is_identifier("_t"));
        assert!(!is_identifier("1x"));
        assert!(!is_identifier(""));
    }
}
