//! Exact intersection theory of GIT line bundles on the moduli space of
//! stable n-pointed rational curves.
//!
//! Modules, bottom-up:
//! - [`rational`], [`linalg`]: exact scalars and fraction-free elimination.
//! - [`combinatorics`]: weight vectors, vital curves, symmetric divisors.
//! - [`intersection`]: `L_x · C`, `V(a, n) · C`, `A_α`, F-nefness.
//! - [`git_complex`]: 0-cells of the wall arrangement in the hypersimplex.
//! - [`cone`]: decompositions over `V(1/t, n)`, closed forms, cone membership.
//! - [`capture`]: partition polytopes and capture certificates.

pub mod capture;
pub mod combinatorics;
pub mod cone;
pub mod error;
pub mod exec;
pub mod git_complex;
pub mod intersection;
pub mod linalg;
pub mod rational;

pub use error::{Error, ParseError, Result};
pub use exec::Execution;
pub use rational::Rational;
