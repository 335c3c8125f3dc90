//! Exact tail of the incomplete gamma integral by partial integration:
//! `∫_X^∞ e^{−x} x^m dx = e^{−X} Σ_{i=0}^{m} m!/(m−i)! · X^{m−i}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Ball;

#[derive(Clone, Debug, Serialize)]
pub struct TailEvaluation {
    pub c: f64,
    /// `N = ℓ(k+1)`; the integral runs from `cN` with power `N − 1`.
    pub big_n: usize,
    #[serde(skip)]
    pub value: Ball,
    pub ln_value: f64,
    /// `log( c/(c−1) · e^{−cN} (cN)^{N−1} )`.
    pub ln_bound: f64,
    pub within_bound: bool,
}

/// `∫_{cN}^∞ e^{−x} x^{N−1} dx` for `c > 1`, `N ≥ 1`.
pub fn gamma_tail(c: f64, big_n: usize, precision_bits: u64) -> Result<TailEvaluation> {
    if !(c > 1.0) || !c.is_finite() {
        return Err(Error::Domain(format!(
            "tail constant c = {c} must exceed 1"
        )));
    }
    if big_n == 0 {
        return Err(Error::InputDomain("tail needs N >= 1".into()));
    }
    let c_exact = BigRational::from_f64(c).expect("finite c");
    let x = &c_exact * BigRational::from_integer(BigInt::from(big_n));
    let m = big_n - 1;
    let sum = falling_sum(&x, m);
    let value = Ball::exp_rational(&-x.clone(), precision_bits)
        .mul(&Ball::from_rational(&sum, precision_bits));
    let xf = c * big_n as f64;
    let ln_bound = (c / (c - 1.0)).ln() - xf + m as f64 * xf.ln();
    let ln_value = value.ln_abs_mid();
    Ok(TailEvaluation {
        c,
        big_n,
        within_bound: value.ln_abs_upper() <= ln_bound,
        value,
        ln_value,
        ln_bound,
    })
}

/// `Σ_{i=0}^{m} m!/(m−i)! X^{m−i} = X^m (1 + m/X (1 + (m−1)/X (1 + …)))`, exactly.
fn falling_sum(x: &BigRational, m: usize) -> BigRational {
    let mut acc = BigRational::one();
    for j in 1..=m {
        acc = BigRational::one() + BigRational::from_integer(BigInt::from(j)) / x * acc;
    }
    acc * num_traits::pow(x.clone(), m)
}

/// [`gamma_tail`] with `N = ℓ(k+1)`.
pub fn gamma_tail_series(
    c: f64,
    k: usize,
    ell: usize,
    precision_bits: u64,
) -> Result<TailEvaluation> {
    gamma_tail(c, ell * (k + 1), precision_bits)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `∫_0^∞ exp(−t + m log(1 + t/X)) dt` by composite Simpson: the tail
    /// divided by `e^{−X} X^m`.
    fn quadrature_ratio(x: f64, m: usize, steps: usize) -> f64 {
        let f = |t: f64| (-t + m as f64 * (t / x).ln_1p()).exp();
        let upper = 60.0 + 4.0 * (m as f64) * (m as f64 / x).max(1.0);
        let h = upper / steps as f64;
        let mut s = f(0.0) + f(upper);
        for i in 1..steps {
            s += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        s * h / 3.0
    }

    #[test]
    fn pure_exponential_case() {
        let t = gamma_tail(2.0, 1, 128).unwrap();
        assert!((t.value.to_f64() - (-2f64).exp()).abs() < 1e-15);
        assert!(t.within_bound);
    }

    #[test]
    fn rejects_small_c() {
        assert!(matches!(gamma_tail(1.0, 3, 64), Err(Error::Domain(_))));
        assert!(gamma_tail_series(0.5, 2, 2, 64).is_err());
    }

    #[test]
    fn matches_falling_factorial_sum() {
        // m = 2, X = 6: 36 + 12 + 2 = 50
        let s = falling_sum(&BigRational::from_integer(6.into()), 2);
        assert_eq!(s, BigRational::from_integer(50.into()));
    }

    #[test]
    fn agrees_with_quadrature() {
        let t = gamma_tail_series(2.0, 2, 2, 128).unwrap();
        let big_n = 6usize;
        let x = 12.0f64;
        let m = big_n - 1;
        let ratio = quadrature_ratio(x, m, 200_000);
        let expected = (-x + m as f64 * x.ln()).exp() * ratio;
        assert!((t.value.to_f64() - expected).abs() <= 1e-10 * expected);
        assert!(t.within_bound);
    }
}
