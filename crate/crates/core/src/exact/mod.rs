//! Exact arithmetic substrate: rationals, dense polynomials, truncated power
//! series, factorials and error-tracked reals.

pub mod ball;
pub mod factorial;
pub mod poly;
pub mod rational;
pub mod series;

pub use ball::Ball;
pub use factorial::{binomial, factorial, FactorialTable};
pub use poly::{poly_mul, Polynomial};
pub use rational::{is_canonical, rat, BigRationalExt};
pub use series::{series_of_exp, TruncatedSeries};
