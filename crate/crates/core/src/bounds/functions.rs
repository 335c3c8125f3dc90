use serde::Serialize;

use super::params::{BoundParams, DConstant};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// A value together with whether the guarantee it comes with applies.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Flagged<T> {
    pub value: T,
    pub hypothesis_satisfied: bool,
}

impl<T> Flagged<T> {
    pub fn new(value: T, hypothesis_satisfied: bool) -> Self {
        Self {
            value,
            hypothesis_satisfied,
        }
    }
}

/// `s(n, k) = (k+n) log²(k+n)`.
pub fn s_func<T: Real>(n: usize, k: usize) -> T {
    let m = T::from_usize_lossy(k + n);
    let l = m.ln();
    m * l * l
}

/// `log ℓ ≥ s(n, k)`.
fn ell_hypothesis<T: Real>(ell: T, n: usize, k: usize) -> bool {
    ell.ln() >= s_func::<T>(n, k)
}

/// Log-scale bound `q(ℓ)` on the normalized `|A*_{u,0}(1)|`.
pub fn q_func<T: Real>(ell: T, n: usize, k: usize) -> Flagged<T> {
    let kf = T::from_usize_lossy(k);
    let ln_n = T::from_usize_lossy(n).ln();
    let value = if k == 2 {
        T::lit(2.0) * ell * ell.ln() + ell * (T::lit(3.377257) + T::lit(2.0) * ln_n)
    } else {
        ell * kf * ell.ln()
            + ell * (kf * kf.ln() + kf * ln_n + T::lit(0.72) * kf + T::lit(0.000003))
    };
    Flagged::new(value, ell_hypothesis(ell, n, k))
}

/// `r(ℓ)` with `Σ_j |L*_{u,j}(1)| ≤ e^{−r(ℓ)}`, using the default `d` constant.
pub fn r_func<T: Real>(ell: T, n: usize, k: usize) -> Flagged<T> {
    r_func_with(ell, n, k, DConstant::default())
}

pub fn r_func_with<T: Real>(ell: T, n: usize, k: usize, variant: DConstant) -> Flagged<T> {
    let kf = T::from_usize_lossy(k);
    let ln_n = T::from_usize_lossy(n).ln();
    let value = if k == 2 {
        ell * ell.ln() + T::lit(0.64) * ell
    } else {
        ell * ell.ln() - ell * (kf * kf.ln() - T::lit(0.81) * kf - ln_n + T::lit(variant.value()))
    };
    Flagged::new(value, ell_hypothesis(ell, n, k))
}

/// Inverse of `z ↦ z log z` on `[1, ∞)`.
pub fn z_inverse<T: Real>(y: T) -> T {
    assert!(y >= T::zero(), "z_inverse needs y >= 0");
    if y == T::zero() {
        return T::one();
    }
    let e = T::E();
    let g = |z: T| z * z.ln() - y;
    let tol = T::epsilon() * T::lit(2.0) * y.max(T::one());
    let (mut lo, mut hi) = (T::one(), y.max(e));
    let mut z = if y > e {
        y / y.ln()
    } else {
        T::one() + y / T::lit(2.0)
    };
    z = z.max(lo).min(hi);
    for _ in 0..200 {
        let gz = g(z);
        if gz.abs() <= tol {
            return z;
        }
        if gz > T::zero() {
            hi = z;
        } else {
            lo = z;
        }
        let step = gz / (z.ln() + T::one());
        let newton = z - step;
        if step.abs() <= T::epsilon() * z {
            return newton;
        }
        z = if newton > lo && newton < hi {
            newton
        } else {
            (lo + hi) / T::lit(2.0)
        };
        if hi - lo <= T::epsilon() * hi {
            return z;
        }
    }
    z
}

/// `ε(H)` of the approximation lemma from `log H`.
pub fn epsilon_h<T: Real>(log_h: T, params: &BoundParams<T>) -> Flagged<T> {
    let log_2h = log_h + T::LN_2();
    let z = z_inverse(log_2h / params.v);
    let value = (params.big_b * z + params.big_c * z.ln()) / log_2h;
    // log(2H) ≥ v h₁ log h₁, compared in log scale
    let hyp = log_2h.ln() >= params.v.ln() + params.log_h1 + params.log_h1.ln();
    Flagged::new(value, hyp)
}

/// `d(k)` in the second-order term of `ω`.
pub fn d_of_k<T: Real>(k: usize) -> T {
    match k {
        0 | 1 => T::nan(),
        2 => T::lit(3.319),
        3 => T::lit(1.145),
        4 => T::lit(1.114),
        _ => T::one() + T::lit(0.69) / (T::from_usize_lossy(k).ln() - T::one()),
    }
}

/// `θ` added to `B` in the final estimate.
pub fn theta<T: Real>(k: usize) -> T {
    T::lit(match k {
        2 => 0.744754115,
        3 => 0.04386773,
        4 => 0.00075786,
        5 => 0.00000412,
        6 => 7.976e-9,
        _ => 1e-8,
    })
}

/// `ω(k, H) = k + k² log k · d(k) / log log H` from `log log H`.
pub fn omega_theorem_loglog<T: Real>(k: usize, loglog_h: T) -> Result<T> {
    if k < 2 {
        return Err(Error::InputDomain(format!("k = {k} must be at least 2")));
    }
    if !(loglog_h > T::zero()) {
        return Err(Error::Domain(format!(
            "log log H = {loglog_h} must be positive"
        )));
    }
    let kf = T::from_usize_lossy(k);
    Ok(kf + kf * kf * kf.ln() * d_of_k::<T>(k) / loglog_h)
}

/// `ω(k, H)` from `log H`; requires `log H > 1`.
pub fn omega_theorem<T: Real>(k: usize, log_h: T) -> Result<T> {
    if !(log_h > T::one()) {
        return Err(Error::Domain(format!(
            "log H = {log_h} gives a non-positive log log H"
        )));
    }
    omega_theorem_loglog(k, log_h.ln())
}

/// Whether `log H ≥ s e^s`, i.e. `log log H ≥ s + log s`.
pub fn theorem_hypothesis<T: Real>(n: usize, k: usize, loglog_h: T) -> bool {
    let s = s_func::<T>(n, k);
    loglog_h >= s + s.ln()
}

/// The defining form `u (B + θ) / (v k² log k)`.
pub fn f_unsimplified<T: Real>(params: &BoundParams<T>, theta: T) -> T {
    let kf = T::from_usize_lossy(params.k);
    params.u_over_v() * (params.big_b + theta) / (kf * kf * kf.ln())
}

/// The simplified upper bound for `f(n, k)`, `k ≥ 3`.
pub fn f_func<T: Real>(n: usize, k: usize, theta: T) -> T {
    let kf = T::from_usize_lossy(k);
    let lk = kf.ln();
    let m = T::from_usize_lossy(k + n);
    let lm = m.ln();
    let s = m * lm * lm;
    let num = T::one()
        + T::one() / kf
        + T::lit(0.89) / (kf * lk)
        + (T::lit(0.000003) + theta) / (kf * kf * lk)
        - T::lit(0.81) / lk
        + T::one() / (m * lm)
        + T::lit(2.0) * lm.ln() / s;
    let den = T::one() - kf * lk / s + T::lit(0.81) * kf / s;
    num / den
}
