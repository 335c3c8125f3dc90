//! Log-scale forms of the estimates for `A_{u,0}(1)` and the remainders, and
//! the individual inequalities their proofs chain together.

use serde::Serialize;

use super::functions::{q_func, r_func_with};
use super::maxima::c_of_k;
use super::params::DConstant;
use crate::scalar::Real;

fn ln_factorial<T: Real>(m: T) -> T {
    (m + T::one()).ln_gamma()
}

/// `log 4 + (k+1)ℓ log 2 + (ℓ(k+1)−1) log((k+1)ℓ) − ℓ(k+1) + 1`, bounding `log |A_{u,0}(1)|`.
pub fn a_u0_bound<T: Real>(k: usize, ell: T) -> T {
    let m = T::from_usize_lossy(k + 1) * ell;
    T::lit(4.0).ln() + m * T::LN_2() + (m - T::one()) * m.ln() - m + T::one()
}

/// `log( 2(k+1)ℓ e^{−(k+1)ℓ+1} ((k+1)ℓ−1)^{(k+1)ℓ−1} )`, the middle piece of the integral.
pub fn i1_bound<T: Real>(k: usize, ell: T) -> T {
    let m = T::from_usize_lossy(k + 1) * ell;
    (T::lit(2.0) * m).ln() - m + T::one() + (m - T::one()) * (m - T::one()).ln()
}

/// Log of the single-remainder bound
/// `n^{kℓ} (e^{j/n} − 1) (k!)^ℓ / ((ℓ−1)! (c(k) n^{k+1})^{ℓ−1} n^k)`.
pub fn l_star_bound<T: Real>(n: usize, k: usize, ell: T, j: usize) -> T {
    let nf = T::from_usize_lossy(n);
    let kf = T::from_usize_lossy(k);
    let ln_n = nf.ln();
    let ej = (T::from_usize_lossy(j) / nf).exp_m1().ln();
    kf * ell * ln_n + ej + ell * ln_factorial(kf)
        - ln_factorial(ell - T::one())
        - (ell - T::one()) * (c_of_k::<T>(k).ln() + (kf + T::one()) * ln_n)
        - kf * ln_n
}

/// Log of `(k!)^ℓ / (c(k)^{ℓ−1} (ℓ−1)!) · n^{2−ℓ} e^{(k+1)/n}`.
pub fn sum_l_bound<T: Real>(n: usize, k: usize, ell: T) -> T {
    let nf = T::from_usize_lossy(n);
    let kf = T::from_usize_lossy(k);
    ell * ln_factorial(kf) - (ell - T::one()) * c_of_k::<T>(k).ln() - ln_factorial(ell - T::one())
        + (T::lit(2.0) - ell) * nf.ln()
        + (kf + T::one()) / nf
}

/// One inequality `lhs < rhs` from a proof, evaluated numerically.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProofStep {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl ProofStep {
    fn new<T: Real>(name: impl Into<String>, lhs: T, rhs: T) -> Self {
        Self {
            name: name.into(),
            lhs: lhs.as_f64(),
            rhs: rhs.as_f64(),
            holds: lhs < rhs,
        }
    }
}

/// Every inequality used to pass from the integral estimates to `q(ℓ)` and
/// `r(ℓ)`, evaluated at the given point in analytically cancelled form.
pub fn proof_steps<T: Real>(n: usize, k: usize, ell: T, variant: DConstant) -> Vec<ProofStep> {
    let kf = T::from_usize_lossy(k);
    let nf = T::from_usize_lossy(n);
    let ln2pi = (T::lit(2.0) * T::PI()).ln();
    let ln6 = T::lit(6.0).ln();
    let one = T::one();
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    // log ℓ − log(ℓ−1), free of cancellation
    let log_ratio = -(-one / ell).ln_1p();
    let mut steps = Vec::new();

    let a_norm = a_u0_bound(k, ell) - ln_factorial(ell - one) + kf * ell * nf.ln();
    let sum_l = sum_l_bound(n, k, ell);
    if k >= 3 {
        steps.push(ProofStep::new(
            "log l - log(l-1) < 0.000003",
            log_ratio,
            T::lit(0.000003),
        ));
        steps.push(ProofStep::new(
            "(k+1)log(k+1) - k log k <= 1 + log(k+1)",
            (kf + one) * (kf + one).ln() - kf * kf.ln(),
            one + (kf + one).ln() + T::epsilon(),
        ));
        steps.push(ProofStep::new(
            "-k + (k+1)log 2 + 1 + log(k+1) < 0.72k",
            -kf + (kf + one) * T::LN_2() + one + (kf + one).ln(),
            T::lit(0.72) * kf,
        ));
        steps.push(ProofStep::new(
            "log 6 - log(2 pi)/2 - 1/(12l+1) < 0.88",
            ln6 - half * ln2pi - one / (T::lit(12.0) * ell + one),
            T::lit(0.88),
        ));
        steps.push(ProofStep::new(
            "log(2 pi)/2 - log 6 + 1/(12k) + 1 < 0.16",
            half * ln2pi - ln6 + one / (T::lit(12.0) * kf) + one,
            T::lit(0.16),
        ));
        steps.push(ProofStep::new(
            "log(k)/2 - k < -0.81k",
            half * kf.ln() - kf,
            -T::lit(0.81) * kf,
        ));
        steps.push(ProofStep::new(
            "log(l)/2 + 2 log n + (k+1)/n + 0.88 < 0.00004 l",
            half * ell.ln() + two * nf.ln() + (kf + one) / nf + T::lit(0.88),
            T::lit(0.00004) * ell,
        ));
    } else {
        steps.push(ProofStep::new(
            "log l - log(l-1) < 0.00046",
            log_ratio,
            T::lit(0.00046),
        ));
    }
    // the lower-order terms of the q(ℓ) estimate, divided by ℓ
    steps.push(ProofStep::new(
        "lower-order terms of q are negative",
        (-ell.ln() - (kf + one).ln() + half * (ell - one).ln() + T::lit(4.0).ln() - half * ln2pi)
            / ell,
        T::zero(),
    ));
    steps.push(ProofStep::new(
        "log|A*_{u,0}(1)| bound <= q(l)",
        a_norm,
        q_func(ell, n, k).value + T::epsilon() * a_norm.abs(),
    ));
    steps.push(ProofStep::new(
        "log sum|L*_{u,j}(1)| bound <= -r(l)",
        sum_l,
        -r_func_with(ell, n, k, variant).value + T::epsilon() * sum_l.abs(),
    ));
    steps
}
