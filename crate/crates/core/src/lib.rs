//! Exact symbolic calculus of weightings on polynomial coordinate charts.
//!
//! The crate is organised bottom-up:
//!
//! - [`poly`]: exact multivariate polynomials over ℚ, parsing, truncated
//!   ε-expansions and exact linear algebra.
//! - [`weighting`]: weighted charts, filtration degrees, homogeneous
//!   approximations, Rees interpolations and morphism criteria.
//! - [`linweight`]: linear weightings of trivialized vector bundles.
//! - [`liealg`]: Lie algebroids in weighted frames, infinitesimally
//!   multiplicative weightings, limit algebroids and nilpotent group laws.
//! - [`hitangent`]: higher tangent lifts and the graded subbundle `Q`.
//! - [`suites`]: seeded randomized invariant suites, run in parallel when
//!   the `parallel` feature is enabled.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod hitangent;
pub mod liealg;
pub mod linweight;
pub mod poly;
pub mod suites;
pub mod weighting;

pub use error::{Error, Result};
pub use poly::{parse, Degree, Polynomial, Rational};
