//! Exact computations around the trivial character of `SL₂`-character
//! varieties of finitely presented groups.
//!
//! The core algorithms are generic over a [`scalar::Field`]; the aliases
//! below fix the concrete scalar types used across the crate.

#![allow(clippy::needless_range_loop)]

pub mod homology;
pub mod io;
pub mod jets;
pub mod linalg;
pub mod magnus;
pub mod parallelogram;
pub mod perm;
pub mod pseudochar;
pub mod scalar;
pub mod suites;
pub mod words;

pub use num_complex::Complex64;

/// Exact rationals.
pub type Rational = num_rational::BigRational;
/// Exact Gaussian rationals `ℚ(i)`.
pub type Gaussian = num_complex::Complex<Rational>;
