//! Exponents from earlier bounds, instantiated on the coefficient family
//! `H/2 ≤ |λ_i| ≤ H`, against `ω(k, H)`.
//!
//! Exponents are reported as `r` in a lower bound `H^{−r}`. Inputs are given
//! as `log log H` since the interesting range overflows `log H` itself.

use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::bounds::functions::{omega_theorem_loglog, theorem_hypothesis};
use crate::error::{Error, Result};

/// `C(r) = (k+1)² r √(log(n+k+1) log r)`.
pub fn mahler_c(r: f64, n: usize, k: usize) -> f64 {
    let k1 = (k + 1) as f64;
    k1 * k1 * r * (((n + k + 1) as f64).ln() * r.ln()).sqrt()
}

/// `g(r) = log r! − 2C(r)`; the sandwich asks for `g(r−1) ≤ log x < g(r)`.
fn sandwich_g(r: f64, n: usize, k: usize) -> f64 {
    ln_gamma(r + 1.0) - 2.0 * mahler_c(r, n, k)
}

/// Smallest integer `r ≤ ceiling` with `(r−1)!/e^{2C(r−1)} ≤ x < r!/e^{2C(r)}`,
/// searched upward from `r = 2` in log scale.
pub fn mahler_r(ln_x: f64, n: usize, k: usize, ceiling: u64) -> Result<u64> {
    if !(ln_x >= 0.0) {
        return Err(Error::InputDomain(
            "max coefficient must be at least 1".into(),
        ));
    }
    let mut prev = sandwich_g(1.0, n, k);
    for r in 2..=ceiling {
        let cur = sandwich_g(r as f64, n, k);
        if prev <= ln_x && ln_x < cur {
            return Ok(r);
        }
        prev = cur;
    }
    Err(Error::SearchExhausted(format!(
        "no r <= {ceiling} brackets log x = {ln_x}"
    )))
}

/// `K = 2(k+1)² √log(n+k+1)`.
fn sandwich_k(n: usize, k: usize) -> f64 {
    let k1 = (k + 1) as f64;
    2.0 * k1 * k1 * ((n + k + 1) as f64).ln().sqrt()
}

/// `ρ − 1 − K√ρ + (log 2π + ρ)/(2e^ρ)`: `g(r)/r` at `ρ = log r`, by Stirling.
fn sandwich_inner(rho: f64, n: usize, k: usize) -> f64 {
    let tail = ((2.0 * std::f64::consts::PI).ln() + rho) / 2.0 * (-rho).exp();
    rho - 1.0 - sandwich_k(n, k) * rho.sqrt() + tail
}

/// Continuous solution of `g(r) = log x` given `log log x`, returned as `log r`.
///
/// With `ρ = log r`, `log g(r) = ρ + log(ρ − 1 − K√ρ + …)`. The bracket only
/// turns positive at `ρ₀ = ((K + √(K² + 4))/2)²`, already astronomically
/// large, so for small `x` the root collapses onto `ρ₀` numerically.
pub fn mahler_ln_r(loglog_x: f64, n: usize, k: usize) -> f64 {
    let kk = sandwich_k(n, k);
    let rho0 = ((kk + (kk * kk + 4.0).sqrt()) / 2.0).powi(2);
    let big_g = |rho: f64| {
        let v = sandwich_inner(rho, n, k);
        if v <= 0.0 {
            f64::NEG_INFINITY
        } else {
            rho + v.ln()
        }
    };
    let mut lo = rho0;
    let mut hi = rho0.max(loglog_x) + 10.0;
    while big_g(hi) < loglog_x {
        hi *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if big_g(mid) < loglog_x {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-13 * hi {
            break;
        }
    }
    hi
}

/// Whether `log x/log log x < r < 6 log x/log log x`, in log scale.
pub fn mahler_bracket_holds(ln_r: f64, loglog_x: f64) -> bool {
    let lower = loglog_x - loglog_x.ln();
    ln_r > lower && ln_r < lower + 6f64.ln()
}

fn mahler_factor(k: usize) -> f64 {
    let k1 = (k + 1) as f64;
    2.0 * k1 - 0.25
}

fn check_loglog(loglog_h: f64) -> Result<()> {
    if loglog_h > 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "log log H = {loglog_h} must exceed 1"
        )))
    }
}

/// Which `r` feeds Mahler's exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MahlerVariant {
    /// `r = log H / log log H`.
    Translated,
    /// `r` solving the factorial sandwich with `x = H`.
    Sandwich,
}

/// `k − k log 2/log H + (2(k+1) − 1/4) C(r)/log H`.
pub fn mahler_exponent(loglog_h: f64, n: usize, k: usize, variant: MahlerVariant) -> Result<f64> {
    check_loglog(loglog_h)?;
    // log C(r) − log log H with log r − log log H kept in cancelled form
    let (ln_r, shift) = match variant {
        MahlerVariant::Translated => (loglog_h - loglog_h.ln(), -loglog_h.ln()),
        MahlerVariant::Sandwich => {
            let rho = mahler_ln_r(loglog_h, n, k);
            (rho, -sandwich_inner(rho, n, k).ln())
        }
    };
    let k1 = (k + 1) as f64;
    let ln_c_over_log_h = 2.0 * k1.ln() + shift + 0.5 * (((n + k + 1) as f64).ln() * ln_r).ln();
    let correction = mahler_factor(k) * ln_c_over_log_h.exp();
    let kf = k as f64;
    Ok(kf - kf * std::f64::consts::LN_2 * (-loglog_h).exp() + correction)
}

/// The leading behaviour `2(k+1)² √log k / √(log log H)` of the translated form.
pub fn mahler_asymptotic(loglog_h: f64, k: usize) -> f64 {
    let k1 = (k + 1) as f64;
    2.0 * k1 * k1 * (k as f64).ln().sqrt() / loglog_h.sqrt()
}

/// `c_k`: 13 for `k < 3`, 12 otherwise.
pub fn ehlm_ck(k: usize) -> f64 {
    if k < 3 {
        13.0
    } else {
        12.0
    }
}

/// `k + c_k k² √log(n+k) / √(log log M) − k log 2 / log M`.
pub fn ehlm_exponent(loglog_m: f64, n: usize, k: usize) -> Result<f64> {
    if !(loglog_m > 0.0) {
        return Err(Error::Domain(format!(
            "log log M = {loglog_m} must be positive"
        )));
    }
    let kf = k as f64;
    Ok(
        kf + ehlm_ck(k) * kf * kf * ((n + k) as f64).ln().sqrt() / loglog_m.sqrt()
            - kf * std::f64::consts::LN_2 * (-loglog_m).exp(),
    )
}

/// General-`h` form: `log` of `M^{1−δ}/(h_0 ⋯ h_k)` with `δ` at its stated bound.
pub fn ehlm_log_lower_bound(lambdas: &[i64], n: usize) -> Result<f64> {
    let k = lambdas
        .len()
        .checked_sub(1)
        .ok_or_else(|| Error::InputDomain("need at least one coefficient".into()))?;
    let m = lambdas.iter().map(|l| l.unsigned_abs()).max().unwrap_or(0);
    if m < 3 {
        return Err(Error::Domain("max |lambda_i| must be at least 3".into()));
    }
    let ln_m = (m as f64).ln();
    let kf = k as f64;
    let delta = ehlm_ck(k) * kf * kf * ((n + k) as f64).ln().sqrt() / ln_m.ln().sqrt();
    let ln_h: f64 = lambdas
        .iter()
        .map(|l| (l.unsigned_abs().max(1) as f64).ln())
        .sum();
    Ok((1.0 - delta) * ln_m - ln_h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Winner {
    ThisPaper,
    Ehlm,
    Mahler,
}

impl Winner {
    pub fn label(self) -> &'static str {
        match self {
            Winner::ThisPaper => "this-paper",
            Winner::Ehlm => "ehlm",
            Winner::Mahler => "mahler",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub n: usize,
    pub k: usize,
    #[serde(rename = "log_logH")]
    pub loglog_h: f64,
    pub exp_paper: f64,
    pub exp_mahler: f64,
    pub exp_mahler_exact: f64,
    pub exp_ehlm: f64,
    pub winner: Winner,
    pub hypothesis_satisfied: bool,
    pub notes: String,
}

impl ComparisonRow {
    pub fn evaluate(n: usize, k: usize, loglog_h: f64) -> Result<Self> {
        if n < 2 || k < n {
            return Err(Error::InputDomain(format!(
                "comparison needs k >= n >= 2, got n = {n}, k = {k}"
            )));
        }
        let exp_paper = omega_theorem_loglog(k, loglog_h)?;
        let exp_mahler = mahler_exponent(loglog_h, n, k, MahlerVariant::Translated)?;
        let exp_mahler_exact = mahler_exponent(loglog_h, n, k, MahlerVariant::Sandwich)?;
        let exp_ehlm = ehlm_exponent(loglog_h, n, k)?;
        let winner = if exp_paper < exp_ehlm && exp_paper < exp_mahler {
            Winner::ThisPaper
        } else if exp_ehlm <= exp_mahler {
            Winner::Ehlm
        } else {
            Winner::Mahler
        };
        Ok(Self {
            n,
            k,
            loglog_h,
            exp_paper,
            exp_mahler,
            exp_mahler_exact,
            exp_ehlm,
            winner,
            hypothesis_satisfied: theorem_hypothesis::<f64>(n, k, loglog_h),
            notes: "coefficients in [H/2, H]; Mahler r = log H/log log H \
                    (exact sandwich r in exp_mahler_exact)"
                .into(),
        })
    }

    pub const CSV_HEADER: [&'static str; 7] = [
        "n",
        "k",
        "log_logH",
        "exp_paper",
        "exp_mahler",
        "exp_ehlm",
        "winner",
    ];

    pub fn csv_record(&self) -> [String; 7] {
        [
            self.n.to_string(),
            self.k.to_string(),
            format!("{}", self.loglog_h),
            format!("{:.12}", self.exp_paper),
            format!("{:.12}", self.exp_mahler),
            format!("{:.12}", self.exp_ehlm),
            self.winner.label().to_string(),
        ]
    }
}

/// One row per `log log H`.
pub fn compare_report(n: usize, k: usize, loglog_hs: &[f64]) -> Result<Vec<ComparisonRow>> {
    loglog_hs
        .iter()
        .map(|&x| ComparisonRow::evaluate(n, k, x))
        .collect()
}

/// Smallest grid value `T ≤ limit` past which `ω(k, H)` stays
/// strictly below both competitors on a log-spaced grid.
pub fn crossover_threshold(n: usize, k: usize, limit: f64) -> Result<Option<f64>> {
    let steps = 400;
    let grid: Vec<f64> = (0..=steps)
        .map(|i| {
            2f64.powf(limit.log2() * i as f64 / steps as f64)
                .max(1.0 + 1e-9)
        })
        .collect();
    let mut threshold = None;
    for &x in grid.iter().rev() {
        let row = ComparisonRow::evaluate(n, k, x)?;
        let ok = row.exp_paper < row.exp_ehlm && row.exp_paper < row.exp_mahler;
        if ok {
            threshold = Some(x);
        } else {
            break;
        }
    }
    Ok(threshold)
}
