//! Explicit transcendence-measure machinery for `e^{1/n}`.
//!
//! The crate builds the simultaneous Padé-type approximations to
//! `e^{1/n}, …, e^{k/n}` exactly, evaluates the analytic estimates that turn
//! them into the exponent `ω(k, H)`, compares that exponent with the Mahler
//! and EHLM bounds, and certifies the linear-form inequality by exhaustive
//! search for small heights.
//!
//! Exact objects (polynomials, series, matrices) are generic over their
//! coefficient ring and the analytic layer is generic over a [`Real`] float
//! type; the aliases below fix the concrete instantiations used throughout.

// `!(x > 0)` is used on purpose so NaN is rejected too.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod certify;
pub mod compare;
pub mod error;
pub mod exact;
pub mod pade;
pub mod scalar;
pub mod suite;

pub use error::{Error, Result};
pub use exact::ball::Ball;
pub use exact::poly::Polynomial;
pub use exact::series::TruncatedSeries;
pub use scalar::Real;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Arbitrary-size exact rational in canonical form.
pub type ExactRational = BigRational;
/// Arbitrary-size integer.
pub type ExactInteger = BigInt;
/// Dense univariate polynomial over the exact rationals.
pub type ExactPolynomial = Polynomial<ExactRational>;
/// Dense univariate polynomial over the integers.
pub type IntPolynomial = Polynomial<ExactInteger>;
/// Truncated power series over the exact rationals.
pub type ExactSeries = TruncatedSeries<ExactRational>;
/// Error-tracked real number (midpoint–radius ball).
pub type ErrorTrackedReal = Ball;
/// Parameter chain evaluated in double precision.
pub type BoundParams = bounds::params::BoundParams<f64>;
