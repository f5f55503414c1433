use thiserror::Error;

use crate::poly::Degree;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("substitution is ambiguous: `{0}` is both carried through and introduced by a binding")]
    AmbiguousSubstitution(String),
    #[error("variable `{variable}` is not a coordinate of chart ({allowed})")]
    ForeignVariable { variable: String, allowed: String },
    #[error("invalid chart: {0}")]
    InvalidChart(String),
    #[error("invalid bundle: {0}")]
    InvalidBundle(String),
    #[error("degree precondition violated: need degree >= {required}, but monomial `{monomial}` has degree {found}")]
    DegreeTooLow {
        required: i64,
        found: Degree,
        monomial: String,
    },
    #[error("polynomial is not homogeneous for the zoom action: `{first}` has degree {first_degree}, `{second}` has degree {second_degree}")]
    NotZoomHomogeneous {
        first: String,
        first_degree: i64,
        second: String,
        second_degree: i64,
    },
    #[error("zero polynomial has no unique zoom degree")]
    ZeroHasNoZoomDegree,
    #[error("map does not send N into N': pullback of `{coordinate}` restricted to N is `{restriction}`")]
    DoesNotPreserveSubmanifold {
        coordinate: String,
        restriction: String,
    },
    #[error("not a weighted morphism: {0}")]
    NotWeightedMorphism(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("point is not on the submanifold: {0}")]
    PointOffSubmanifold(String),
    #[error("images differ: {0}")]
    ImagesDiffer(String),
    #[error("order out of range: {0}")]
    OrderOutOfRange(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("Lie algebra is not nilpotent (lower central series {0:?})")]
    NotNilpotent(Vec<usize>),
}

pub type Result<T> = std::result::Result<T, Error>;
