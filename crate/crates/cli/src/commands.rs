use std::path::PathBuf;

use anyhow::{bail, Context as _};
use clap::Args;
use emeasure::bounds::{
    d_of_k, omega_theorem_loglog, s_func, theorem_hypothesis, BoundReport, DConstant,
};
use emeasure::certify::{
    certify_against_theorem_with, min_linear_form_with, CertificateDocument, CertifyOptions,
};
use emeasure::compare::{compare_report, ComparisonRow};
use emeasure::pade::{normalize_system, SystemDocument};
use emeasure::suite::{deep_check, verify_grid, Check, Grid, VerifyReport};
use serde::Serialize;

use crate::config::{Format, RunConfig};
use crate::grid::{check as check_grid, from_config, parse_grid};
use crate::output::{append_archive, failure_report, Sink};
use crate::Common;

pub enum Outcome {
    Passed,
    /// Machine-readable report of the first failed check.
    Failed(String),
}

/// Flags merged over the config file.
pub struct Context {
    pub precision_bits: Option<u64>,
    pub format: Format,
    pub jobs: Option<usize>,
    pub variant: DConstant,
    pub lambda0_bounded: bool,
    pub archive: Option<PathBuf>,
    pub config: RunConfig,
    sink: Sink,
}

impl Context {
    pub fn new(common: &Common) -> anyhow::Result<Self> {
        let config = RunConfig::discover(common.config.as_deref())?;
        let variant = match common.variant.as_ref().or(config.variant.as_ref()) {
            Some(v) => v.parse()?,
            None => DConstant::default(),
        };
        let jobs = common.jobs.or(config.jobs);
        if jobs == Some(0) {
            bail!("input domain: --jobs must be at least 1");
        }
        Ok(Self {
            precision_bits: common.precision_bits.or(config.precision_bits),
            format: common.format.or(config.format).unwrap_or_default(),
            jobs,
            variant,
            lambda0_bounded: config.lambda0_bounded.unwrap_or(false),
            archive: config.archive.clone(),
            sink: Sink::new(common.out.clone().or(config.out.clone())),
            config,
        })
    }

    pub fn install_pool(&self) -> anyhow::Result<()> {
        if let Some(j) = self.jobs {
            rayon::ThreadPoolBuilder::new()
                .num_threads(j)
                .build_global()
                .context("configuring the worker pool")?;
        }
        Ok(())
    }

    fn grid(&self, flag: Option<&str>) -> anyhow::Result<Grid> {
        let grid = match flag {
            Some(spec) => parse_grid(spec)?,
            None => from_config(&self.config.grid),
        };
        check_grid(&grid)?;
        Ok(grid)
    }

    fn variants(&self) -> Vec<DConstant> {
        if self.variant == DConstant::default() {
            vec![self.variant]
        } else {
            vec![DConstant::default(), self.variant]
        }
    }
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub ell: Option<usize>,
    /// Grid instead of a single point, e.g. `n=2..3,k=2..4,ell=2..5`.
    #[arg(long)]
    pub grid: Option<String>,
}

pub fn construct(ctx: &Context, args: ConstructArgs) -> anyhow::Result<Outcome> {
    let points = match (&args.grid, args.n, args.k, args.ell) {
        (Some(spec), ..) => {
            let g = parse_grid(spec)?;
            g.points()
        }
        (None, Some(n), Some(k), Some(ell)) => vec![(n, k, ell)],
        (None, ..) => bail!("input domain: construct needs --n, --k and --ell, or --grid"),
    };
    let mut docs = Vec::new();
    for (n, k, ell) in points {
        let sys = normalize_system(n, k, ell)?;
        docs.push(SystemDocument::from_system(&sys));
    }
    match ctx.format {
        Format::Json => ctx.sink.json_lines(&docs)?,
        Format::Csv => ctx.sink.csv(
            &["n", "k", "ell", "L", "determinant"],
            docs.iter().map(|d| {
                [
                    d.n.to_string(),
                    d.k.to_string(),
                    d.ell.to_string(),
                    d.big_l.to_string(),
                    d.determinant.clone(),
                ]
            }),
        )?,
        Format::Text => ctx.sink.text(
            &docs
                .iter()
                .map(|d| {
                    format!(
                        "n={} k={} l={} L={}: integral, determinant {} ({} digits)",
                        d.n,
                        d.k,
                        d.ell,
                        d.big_l,
                        if d.determinant == "0" {
                            "ZERO"
                        } else {
                            "nonzero"
                        },
                        d.determinant.trim_start_matches('-').len()
                    )
                })
                .collect::<Vec<_>>(),
        )?,
    }
    match docs.iter().find(|d| d.determinant == "0") {
        Some(d) => Ok(Outcome::Failed(failure_report(
            "determinant nonzero",
            &format!("n={} k={} l={}", d.n, d.k, d.ell),
            "determinant is zero",
        ))),
        None => Ok(Outcome::Passed),
    }
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// `default` or e.g. `n=2..3,k=2..5,ell=2..8`.
    #[arg(long)]
    pub grid: Option<String>,
    /// Add the exact large-ℓ check.
    #[arg(long)]
    pub deep: bool,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 2200)]
    pub ell: usize,
}

#[derive(Serialize)]
struct VerifyDocument<'a> {
    passed: bool,
    variants: Vec<&'static str>,
    checks: &'a [Check],
}

pub fn verify(ctx: &Context, args: VerifyArgs) -> anyhow::Result<Outcome> {
    let grid = ctx.grid(args.grid.as_deref())?;
    let variants = ctx.variants();
    let mut report = verify_grid(&grid, &variants);
    if args.deep {
        let bits = ctx.precision_bits.unwrap_or(25_000);
        for &v in &variants {
            report.extend(deep_check(args.n, args.k, args.ell, bits, v)?);
        }
    }
    emit_verify(ctx, &report, &variants)?;
    Ok(match report.first_failure() {
        Some(c) => Outcome::Failed(failure_report(&c.name, &c.params, &c.detail)),
        None => Outcome::Passed,
    })
}

fn emit_verify(ctx: &Context, report: &VerifyReport, variants: &[DConstant]) -> anyhow::Result<()> {
    match ctx.format {
        Format::Json => ctx.sink.json_lines(&[VerifyDocument {
            passed: report.passed(),
            variants: variants.iter().map(|v| v.label()).collect(),
            checks: &report.checks,
        }]),
        Format::Csv => ctx.sink.csv(
            &["group", "check", "params", "passed", "detail"],
            report.checks.iter().map(|c| {
                [
                    c.group.to_string(),
                    c.name.clone(),
                    c.params.clone(),
                    c.passed.to_string(),
                    c.detail.clone(),
                ]
            }),
        ),
        Format::Text => {
            let mut lines: Vec<String> = report
                .checks
                .iter()
                .map(|c| {
                    format!(
                        "{:4}  {:<11} {:<48} {:<28} {}",
                        if c.passed { "pass" } else { "FAIL" },
                        c.group,
                        c.name,
                        c.params,
                        c.detail
                    )
                })
                .collect();
            let failed = report.checks.iter().filter(|c| !c.passed).count();
            lines.push(format!("{} checks, {failed} failed", report.checks.len()));
            ctx.sink.text(&lines)
        }
    }
}

#[derive(Args, Debug)]
pub struct BoundsArgs {
    #[arg(long)]
    pub k: usize,
    /// Used for the hypothesis threshold.
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long = "loglogH", value_delimiter = ',', conflicts_with = "log_h")]
    pub loglog_h: Vec<f64>,
    #[arg(long = "logH", value_delimiter = ',')]
    pub log_h: Vec<f64>,
}

pub fn bounds(ctx: &Context, args: BoundsArgs) -> anyhow::Result<Outcome> {
    if args.n < 2 || args.k < args.n {
        bail!(
            "input domain: need k >= n >= 2, got n = {}, k = {}",
            args.n,
            args.k
        );
    }
    let lls: Vec<f64> = if !args.loglog_h.is_empty() {
        args.loglog_h.clone()
    } else if !args.log_h.is_empty() {
        args.log_h.iter().map(|x| x.ln()).collect()
    } else {
        bail!("input domain: bounds needs --loglogH or --logH");
    };
    let k = args.k;
    let kf = k as f64;
    let d = d_of_k::<f64>(k);
    let coeff = kf * kf * kf.ln() * d;
    let mut reports = vec![
        BoundReport::new(k, "d(k)", d),
        BoundReport::new(k, "omega coefficient k^2 log k d(k)", coeff),
        BoundReport::new(k, "s(n,k)", s_func::<f64>(args.n, k)).n(args.n),
    ];
    for ll in lls {
        let omega = omega_theorem_loglog::<f64>(k, ll)?;
        reports.push(
            BoundReport::new(k, "omega", omega)
                .n(args.n)
                .loglog_h(ll)
                .hypothesis(theorem_hypothesis::<f64>(args.n, k, ll)),
        );
    }
    match ctx.format {
        Format::Json => ctx.sink.json_lines(&reports)?,
        Format::Csv => ctx.sink.csv(
            &[
                "k",
                "n",
                "loglogH",
                "quantity",
                "value",
                "hypothesis_satisfied",
            ],
            reports.iter().map(|r| {
                [
                    r.k.to_string(),
                    r.n.map(|n| n.to_string()).unwrap_or_default(),
                    r.loglog_h.map(|x| x.to_string()).unwrap_or_default(),
                    r.quantity.clone(),
                    format!("{:.12}", r.value),
                    r.hypothesis_satisfied
                        .map(|b| b.to_string())
                        .unwrap_or_default(),
                ]
            }),
        )?,
        Format::Text => ctx.sink.text(
            &reports
                .iter()
                .map(|r| {
                    let at = r
                        .loglog_h
                        .map(|x| format!(" at log log H = {x}"))
                        .unwrap_or_default();
                    let hyp = r
                        .hypothesis_satisfied
                        .map(|b| {
                            format!(
                                " (hypothesis {})",
                                if b { "satisfied" } else { "not satisfied" }
                            )
                        })
                        .unwrap_or_default();
                    format!("{}{at} = {:.12}{hyp}", r.quantity, r.value)
                })
                .collect::<Vec<_>>(),
        )?,
    }
    Ok(Outcome::Passed)
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long = "loglogH", value_delimiter = ',', default_values_t = vec![1e3, 1e6])]
    pub loglog_h: Vec<f64>,
}

pub fn compare(ctx: &Context, args: CompareArgs) -> anyhow::Result<Outcome> {
    let rows = compare_report(args.n, args.k, &args.loglog_h)?;
    match ctx.format {
        Format::Json => ctx.sink.json_lines(&rows)?,
        Format::Csv => ctx.sink.csv(
            &ComparisonRow::CSV_HEADER,
            rows.iter().map(|r| r.csv_record()),
        )?,
        Format::Text => ctx.sink.text(
            &rows
                .iter()
                .map(|r| {
                    format!(
                        "n={} k={} log log H={}: omega {:.9}, EHLM {:.9}, Mahler {:.9} -> {}",
                        r.n,
                        r.k,
                        r.loglog_h,
                        r.exp_paper,
                        r.exp_ehlm,
                        r.exp_mahler,
                        r.winner.label()
                    )
                })
                .collect::<Vec<_>>(),
        )?,
    }
    Ok(Outcome::Passed)
}

#[derive(Args, Debug)]
pub struct CertifyArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// Heights; a list runs one certificate per value.
    #[arg(long = "H", value_delimiter = ',')]
    pub h: Vec<u64>,
    /// Also bound λ_0 by H.
    #[arg(long)]
    pub lambda0_bounded: bool,
    /// Append certificates to this newline-delimited JSON file.
    #[arg(long)]
    pub archive: Option<PathBuf>,
}

pub fn certify(ctx: &Context, args: CertifyArgs) -> anyhow::Result<Outcome> {
    let hs: Vec<u64> = if !args.h.is_empty() {
        args.h.clone()
    } else if let Some([lo, hi]) = ctx.config.grid.h {
        (lo..=hi).collect()
    } else {
        bail!("input domain: certify needs --H");
    };
    let opts = CertifyOptions {
        precision_bits: ctx.precision_bits,
        lambda0_bounded: args.lambda0_bounded || ctx.lambda0_bounded,
        ..CertifyOptions::default()
    };
    let mut docs: Vec<CertificateDocument> = Vec::new();
    for &h in &hs {
        let rec = if h >= 3 {
            certify_against_theorem_with(args.n, args.k, h, &opts)?
        } else {
            min_linear_form_with(args.n, args.k, h, &opts)?
        };
        docs.push(rec.to_document());
    }
    if let Some(path) = args.archive.as_ref().or(ctx.archive.as_ref()) {
        append_archive(path, &docs)?;
    }
    match ctx.format {
        Format::Json => ctx.sink.json_lines(&docs)?,
        Format::Csv => ctx.sink.csv(
            &[
                "n",
                "k",
                "H",
                "min_value",
                "radius",
                "precision_bits",
                "argmin",
                "empirical_omega",
                "theorem_omega",
                "hypothesis_satisfied",
                "verdict",
                "tuples_scanned",
                "wall_time_ms",
            ],
            docs.iter().map(|d| {
                [
                    d.n.to_string(),
                    d.k.to_string(),
                    d.h.to_string(),
                    d.min_value.midpoint_decimal.clone(),
                    d.min_value.radius_decimal.clone(),
                    d.min_value.precision_bits.to_string(),
                    format!("{:?}", d.argmin),
                    d.empirical_omega.map(|x| x.to_string()).unwrap_or_default(),
                    d.theorem_omega.map(|x| x.to_string()).unwrap_or_default(),
                    d.hypothesis_satisfied.to_string(),
                    d.verdict.map(|b| b.to_string()).unwrap_or_default(),
                    d.tuples_scanned.to_string(),
                    d.wall_time_ms.to_string(),
                ]
            }),
        )?,
        Format::Text => ctx.sink.text(
            &docs
                .iter()
                .map(|d| {
                    let verdict = match d.verdict {
                        Some(true) => format!(
                            ", min > H^-omega with omega = {:.4}",
                            d.theorem_omega.unwrap_or(f64::NAN)
                        ),
                        Some(false) => ", VERDICT FAILED".to_string(),
                        None => String::new(),
                    };
                    format!(
                        "n={} k={} H={}: min {} (+/- {}) at {:?}, {} tuples{verdict}",
                        d.n,
                        d.k,
                        d.h,
                        d.min_value.midpoint_decimal,
                        d.min_value.radius_decimal,
                        d.argmin,
                        d.tuples_scanned
                    )
                })
                .collect::<Vec<_>>(),
        )?,
    }
    Ok(match docs.iter().find(|d| d.verdict == Some(false)) {
        Some(d) => Outcome::Failed(failure_report(
            "min > H^-omega",
            &format!("n={} k={} H={}", d.n, d.k, d.h),
            &d.min_value.midpoint_decimal,
        )),
        None => Outcome::Passed,
    })
}
