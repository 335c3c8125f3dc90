use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Additive constant in `d`: `0.17` in the parameter chain, `0.174` in the
/// statement of the remainder lemma.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum DConstant {
    #[default]
    D017,
    D0174,
}

impl DConstant {
    pub fn value(self) -> f64 {
        match self {
            DConstant::D017 => 0.17,
            DConstant::D0174 => 0.174,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            DConstant::D017 => "d=0.17",
            DConstant::D0174 => "d=0.174",
        }
    }
}

impl std::str::FromStr for DConstant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().trim_start_matches("d=") {
            "0.17" => Ok(DConstant::D017),
            "0.174" => Ok(DConstant::D0174),
            other => Err(Error::InputDomain(format!("unknown d constant {other:?}"))),
        }
    }
}

/// Inputs `q(h) = a h log h + b h`, `−r(h) = −c h log h + d h` and the derived
/// constants of the approximation lemma.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundParams<T> {
    pub n: usize,
    pub k: usize,
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
    /// `s(n, k) = (k+n) log²(k+n)`.
    pub s: T,
    pub big_b: T,
    pub big_c: T,
    pub big_d: T,
    pub big_f: T,
    pub v: T,
    /// `log h₁ = s`; `h₁` itself overflows for moderate `k`.
    pub log_h1: T,
    /// `u = 1 + log(s)/s`.
    pub u_factor: T,
    pub d_constant: DConstant,
}

impl<T: Real> BoundParams<T> {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        Self::with_variant(n, k, DConstant::default())
    }

    pub fn with_variant(n: usize, k: usize, variant: DConstant) -> Result<Self> {
        if n < 2 || k < n {
            return Err(Error::InputDomain(format!(
                "bound parameters need k >= n >= 2, got n = {n}, k = {k}"
            )));
        }
        let kf = T::from_usize_lossy(k);
        let ln_n = T::from_usize_lossy(n).ln();
        let s = super::functions::s_func::<T>(n, k);
        let (b, d) = if k == 2 {
            (T::lit(3.377257) + T::lit(2.0) * ln_n, T::lit(-0.64))
        } else {
            let kln = kf * kf.ln();
            (
                kln + kf * ln_n + T::lit(0.72) * kf + T::lit(0.000003),
                kln - T::lit(0.81) * kf - ln_n + T::lit(variant.value()),
            )
        };
        let a = kf;
        let c = T::one();
        let big_b = b + a * d / c;
        let big_d = a + b + a * (-s).exp();
        let big_f = T::one() / (T::lit(2.0) * big_d.exp());
        let v = c - d / s;
        let params = Self {
            n,
            k,
            a,
            b,
            c,
            d,
            s,
            big_b,
            big_c: a,
            big_d,
            big_f,
            v,
            log_h1: s,
            u_factor: T::one() + s.ln() / s,
            d_constant: variant,
        };
        params.check()?;
        Ok(params)
    }

    /// `v > 0`, `B > 0`, `0 < F < 1`.
    pub fn check(&self) -> Result<()> {
        if !(self.v > T::zero()) {
            return Err(Error::Domain(format!("v = {} is not positive", self.v)));
        }
        if !(self.big_b > T::zero()) {
            return Err(Error::Domain(format!("B = {} is not positive", self.big_b)));
        }
        if !(self.big_f > T::zero() && self.big_f < T::one()) {
            return Err(Error::Domain(format!(
                "F = {} is outside (0, 1)",
                self.big_f
            )));
        }
        Ok(())
    }

    /// `u / v`, the factor multiplying `B` in the exponent estimate.
    pub fn u_over_v(&self) -> T {
        self.u_factor / self.v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn general_chain_matches_closed_forms() {
        let p = BoundParams::<f64>::new(2, 5).unwrap();
        let k = 5.0f64;
        let expected_b = k * k.ln() + 0.89 * k + 0.000003 + k * k * k.ln() - 0.81 * k * k;
        assert_relative_eq!(p.big_b, expected_b, max_relative = 1e-12);
        assert_relative_eq!(p.big_d, k + p.b + k * (-p.s).exp(), max_relative = 1e-12);
        assert!(p.v > 0.0 && p.v < 1.0);
        assert!(p.big_f > 0.0 && p.big_f < 1.0);
    }

    #[test]
    fn k2_recomputed_from_definitions() {
        let p = BoundParams::<f64>::new(2, 2).unwrap();
        assert_relative_eq!(p.b, 3.377257 + 2.0 * 2f64.ln(), max_relative = 1e-12);
        assert_relative_eq!(p.big_b, p.b - 1.28, max_relative = 1e-12);
        assert_relative_eq!(p.big_b, 3.48355, epsilon = 1e-4);
        assert_relative_eq!(p.big_d, 6.76452, epsilon = 1e-4);
        assert_relative_eq!(p.u_over_v(), 1.16807, epsilon = 1e-4);
        // d < 0 here, so v exceeds 1
        assert!(p.v > 1.0);
    }

    #[test]
    fn variant_shifts_d() {
        let a = BoundParams::<f64>::with_variant(3, 4, DConstant::D017).unwrap();
        let b = BoundParams::<f64>::with_variant(3, 4, DConstant::D0174).unwrap();
        assert_relative_eq!(b.d - a.d, 0.004, epsilon = 1e-12);
        assert_eq!("d=0.174".parse::<DConstant>().unwrap(), DConstant::D0174);
        assert!("0.2".parse::<DConstant>().is_err());
    }

    #[test]
    fn single_precision_agrees() {
        let p32 = BoundParams::<f32>::new(2, 3).unwrap();
        let p64 = BoundParams::<f64>::new(2, 3).unwrap();
        assert_relative_eq!(p32.big_b as f64, p64.big_b, max_relative = 1e-5);
    }

    #[test]
    fn rejects_bad_pairs() {
        assert!(BoundParams::<f64>::new(3, 2).is_err());
        assert!(BoundParams::<f64>::new(1, 2).is_err());
    }
}
