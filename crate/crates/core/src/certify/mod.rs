//! Exhaustive minimization of `|λ_0 + λ_1 e^{1/n} + … + λ_k e^{k/n}|`.
//!
//! For each inner tuple `(λ_1, …, λ_k)` the best `λ_0` is minus the nearest
//! integer to `Σ λ_i e^{i/n}`, so the scan runs over `[−H, H]^k` only, halved
//! by the sign symmetry (the highest-index nonzero `λ_i` is positive). A
//! double-precision pass with a proven error bound keeps every tuple that
//! could be the minimum or the runner-up; balls then settle the order.

mod record;
mod scan;

pub use record::{CertificateDocument, CertificateRecord, MinValueDocument};
pub use scan::{naive_min, NaiveMin};

use std::time::Instant;

use crate::bounds::functions::{omega_theorem, theorem_hypothesis};
use crate::error::{Error, Result};
use crate::exact::Ball;

/// Working precision stops doubling here.
pub const PRECISION_CEILING: u64 = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    /// Starting precision; `None` picks `64 + ⌈4k log H⌉`.
    pub precision_bits: Option<u64>,
    /// Restrict `λ_0` to `[−H, H]` as well.
    pub lambda0_bounded: bool,
    pub ceiling_bits: u64,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self {
            precision_bits: None,
            lambda0_bounded: false,
            ceiling_bits: PRECISION_CEILING,
        }
    }
}

impl CertifyOptions {
    pub fn with_precision(precision_bits: u64) -> Self {
        Self {
            precision_bits: Some(precision_bits),
            ..Self::default()
        }
    }
}

pub fn default_precision(k: usize, h: u64) -> u64 {
    64 + (4.0 * k as f64 * (h.max(1) as f64).ln()).ceil() as u64
}

fn check_inputs(n: usize, k: usize, h: u64) -> Result<()> {
    if n < 2 || k < n {
        return Err(Error::InputDomain(format!(
            "certifier needs k >= n >= 2, got n = {n}, k = {k}"
        )));
    }
    if h < 1 {
        return Err(Error::InputDomain("H must be at least 1".into()));
    }
    Ok(())
}

/// `|λ_0 + Σ λ_i e^{i/n}|` as a ball.
pub fn form_ball(lambdas: &[i64], exps: &[Ball]) -> Ball {
    let prec = exps[0].precision_bits();
    let mut acc = Ball::from_i64(lambdas[0], prec);
    for (l, e) in lambdas[1..].iter().zip(exps) {
        acc = acc.add(&e.mul_int(&(*l).into()));
    }
    acc.abs()
}

fn exp_balls(n: usize, k: usize, prec: u64) -> Vec<Ball> {
    (1..=k)
        .map(|i| Ball::exp_fraction(i as u64, n as u64, prec))
        .collect()
}

/// Minimum over `λ̄ ≠ 0` with `|λ_i| ≤ H` for `i ≥ 1`, separated from zero and
/// from the runner-up.
pub fn min_linear_form(
    n: usize,
    k: usize,
    h: u64,
    precision_bits: u64,
) -> Result<CertificateRecord> {
    min_linear_form_with(n, k, h, &CertifyOptions::with_precision(precision_bits))
}

pub fn min_linear_form_with(
    n: usize,
    k: usize,
    h: u64,
    opts: &CertifyOptions,
) -> Result<CertificateRecord> {
    check_inputs(n, k, h)?;
    let start = Instant::now();
    let approx: Vec<f64> = exp_balls(n, k, 96).iter().map(Ball::to_f64).collect();
    let scan = scan::scan(&approx, h, opts.lambda0_bounded);

    let mut prec = opts
        .precision_bits
        .unwrap_or_else(|| default_precision(k, h))
        .max(32);
    let (value, argmin) = loop {
        let exps = exp_balls(n, k, prec);
        let balls: Vec<Ball> = scan
            .candidates
            .iter()
            .map(|c| form_ball(c, &exps))
            .collect();
        if let Some(i) = separated_min(&balls) {
            break (balls[i].clone(), scan.candidates[i].clone());
        }
        if prec >= opts.ceiling_bits {
            return Err(Error::PrecisionExhausted {
                ceiling_bits: opts.ceiling_bits,
            });
        }
        prec = (prec * 2).min(opts.ceiling_bits);
    };

    let mut rec = CertificateRecord {
        n,
        k,
        h,
        min_value: value,
        argmin,
        empirical_omega: None,
        theorem_omega: None,
        hypothesis_satisfied: false,
        verdict: None,
        tuples_scanned: scan.tuples_scanned,
        lambda0_bounded: opts.lambda0_bounded,
        wall_time_ms: 0,
    };
    if h >= 3 {
        let ln_h = (h as f64).ln();
        rec.empirical_omega = Some(-rec.min_value.ln_abs_mid() / ln_h);
        rec.hypothesis_satisfied = theorem_hypothesis::<f64>(n, k, ln_h.ln());
    }
    rec.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(rec)
}

/// Index of the ball lying strictly below every other and excluding zero.
fn separated_min(balls: &[Ball]) -> Option<usize> {
    let (best, _) = balls
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.midpoint().cmp(&b.1.midpoint()))?;
    if !balls[best].excludes_zero() {
        return None;
    }
    let clear = balls
        .iter()
        .enumerate()
        .all(|(i, b)| i == best || balls[best].strictly_below(b));
    clear.then_some(best)
}

/// [`min_linear_form`] plus `ω(k, H)` and the verdict `min > H^{−ω}`.
pub fn certify_against_theorem(
    n: usize,
    k: usize,
    h: u64,
    precision_bits: u64,
) -> Result<CertificateRecord> {
    certify_against_theorem_with(n, k, h, &CertifyOptions::with_precision(precision_bits))
}

pub fn certify_against_theorem_with(
    n: usize,
    k: usize,
    h: u64,
    opts: &CertifyOptions,
) -> Result<CertificateRecord> {
    if h < 3 {
        return Err(Error::Domain(format!(
            "H = {h} leaves log log H non-positive; need H >= 3"
        )));
    }
    let start = Instant::now();
    let mut rec = min_linear_form_with(n, k, h, opts)?;
    let ln_h = (h as f64).ln();
    let omega = omega_theorem(k, ln_h)?;
    rec.theorem_omega = Some(omega);
    // lower end of the ball against H^{−ω}, in log scale
    let lower = rec.min_value.lower();
    let ln_lower = if lower > num_rational::BigRational::from_integer(0.into()) {
        Ball::from_rational(&lower, 64).ln_abs_mid()
    } else {
        f64::NEG_INFINITY
    };
    rec.verdict = Some(ln_lower > -omega * ln_h);
    rec.wall_time_ms = start.elapsed().as_millis() as u64;
    Ok(rec)
}

/// One certified record per height.
pub fn empirical_omega_curve(
    n: usize,
    k: usize,
    hs: &[u64],
    precision_bits: u64,
) -> Result<Vec<CertificateRecord>> {
    hs.iter()
        .map(|&h| certify_against_theorem(n, k, h, precision_bits))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_case() {
        let r = min_linear_form(2, 2, 1, 128).unwrap();
        let v = r.min_value.to_f64();
        let e = std::f64::consts::E;
        assert!((v - (e - e.sqrt() - 1.0)).abs() < 1e-12);
        assert_eq!(r.argmin, vec![-1, -1, 1]);
        assert_eq!(r.tuples_scanned, 4);
        assert!(r.min_value.excludes_zero());
    }

    #[test]
    fn feasible_point_is_an_upper_bound() {
        for h in [1u64, 4, 9] {
            let r = min_linear_form(2, 2, h, 128).unwrap();
            let e = std::f64::consts::E;
            assert!(r.min_value.to_f64() <= (e - e.round()).abs());
        }
    }

    #[test]
    fn nested_heights_shrink() {
        let a = min_linear_form(2, 3, 1, 128).unwrap();
        let b = min_linear_form(2, 3, 5, 128).unwrap();
        assert!(b.min_value.strictly_below(&a.min_value));
        assert!(b.min_value.excludes_zero());
        assert!(b.argmin[1..].iter().all(|l| l.unsigned_abs() <= 5));
    }

    #[test]
    fn theorem_checks() {
        let r = certify_against_theorem(2, 2, 10, 128).unwrap();
        assert!(!r.hypothesis_satisfied);
        assert_eq!(r.verdict, Some(true));
        assert!(r.empirical_omega.unwrap() <= r.theorem_omega.unwrap());
        assert!(matches!(
            certify_against_theorem(2, 2, 2, 128),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn curve_is_monotone_and_deterministic() {
        let recs = empirical_omega_curve(2, 2, &[3, 10, 30, 30], 128).unwrap();
        for w in recs.windows(2) {
            assert!(w[1].min_value.midpoint() <= w[0].min_value.midpoint());
        }
        assert_eq!(recs[2].argmin, recs[3].argmin);
        assert_eq!(recs[2].min_value, recs[3].min_value);
    }

    #[test]
    fn bounded_lambda0_variant() {
        let opts = CertifyOptions {
            lambda0_bounded: true,
            ..CertifyOptions::default()
        };
        let r = min_linear_form_with(2, 2, 1, &opts).unwrap();
        assert_eq!(r.argmin, vec![-1, -1, 1]);
        let r = min_linear_form_with(2, 2, 3, &opts).unwrap();
        assert!(r.argmin[0].unsigned_abs() <= 3);
        let free = min_linear_form(2, 2, 3, 128).unwrap();
        assert!(free.min_value.midpoint() <= r.min_value.midpoint());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(min_linear_form(3, 2, 1, 64).is_err());
        assert!(min_linear_form(2, 2, 0, 64).is_err());
    }
}
