use std::fmt;
use std::ops::Add;

/// An integer degree or valuation, with `Infinite` ordered above every
/// integer. The zero polynomial has infinite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    Finite(i64),
    Infinite,
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Degree::Infinite)
    }

    /// `self >= i`, the membership test `f ∈ C_(i)`.
    pub fn at_least(self, i: i64) -> bool {
        self >= Degree::Finite(i)
    }

    pub fn shift(self, k: i64) -> Degree {
        match self {
            Degree::Finite(d) => Degree::Finite(d + k),
            Degree::Infinite => Degree::Infinite,
        }
    }

    pub fn min_of<I: IntoIterator<Item = Degree>>(iter: I) -> Degree {
        iter.into_iter().min().unwrap_or(Degree::Infinite)
    }
}

impl From<i64> for Degree {
    fn from(d: i64) -> Self {
        Degree::Finite(d)
    }
}

impl Add for Degree {
    type Output = Degree;

    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::Infinite,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Finite(d) => write!(f, "{d}"),
            Degree::Infinite => write!(f, "inf"),
        }
    }
}
