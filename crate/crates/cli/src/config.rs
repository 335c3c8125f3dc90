use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use emeasure::bounds::DConstant;
use serde::Deserialize;

/// Environment variable naming a TOML file with run defaults.
pub const CONFIG_ENV: &str = "EMEASURE_CONFIG";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

/// Inclusive `[lo, hi]`.
pub type Range = [usize; 2];

#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub n: Option<Range>,
    pub k: Option<Range>,
    pub ell: Option<Range>,
    #[serde(rename = "H")]
    pub h: Option<[u64; 2]>,
}

/// Defaults read from the config file; command-line flags win.
#[derive(Clone, Debug, Default, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub precision_bits: Option<u64>,
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub jobs: Option<usize>,
    pub variant: Option<String>,
    pub lambda0_bounded: Option<bool>,
    pub archive: Option<PathBuf>,
    pub grid: GridConfig,
}

impl RunConfig {
    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let cfg: RunConfig =
            toml::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Explicit path, else `$EMEASURE_CONFIG`, else defaults.
    pub fn discover(explicit: Option<&Path>) -> anyhow::Result<Self> {
        match explicit {
            Some(p) => Self::load(p),
            None => match std::env::var_os(CONFIG_ENV) {
                Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
                _ => Ok(Self::default()),
            },
        }
    }

    pub fn validate(&self) -> anyhow::Result<()> {
        if self.jobs == Some(0) {
            bail!("jobs must be at least 1");
        }
        if let Some(v) = &self.variant {
            v.parse::<DConstant>()?;
        }
        let g = &self.grid;
        for (name, r) in [("n", g.n), ("k", g.k), ("ell", g.ell)] {
            if let Some([lo, hi]) = r {
                if lo > hi {
                    bail!("grid range {name} = [{lo}, {hi}] is empty");
                }
            }
        }
        if matches!(g.n, Some([lo, _]) if lo < 2) {
            bail!("grid n must start at 2 or above");
        }
        if matches!(g.ell, Some([lo, _]) if lo < 2) {
            bail!("grid ell must start at 2 or above");
        }
        if let (Some([n_lo, _]), Some([_, k_hi])) = (g.n, g.k) {
            if k_hi < n_lo {
                bail!("grid has no point with k >= n");
            }
        }
        if matches!(g.h, Some([lo, hi]) if lo < 1 || lo > hi) {
            bail!("grid H range must be non-empty and start at 1 or above");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_full_file() {
        let cfg: RunConfig = toml::from_str(
            r#"
            precision_bits = 512
            format = "csv"
            jobs = 2
            variant = "d=0.174"
            lambda0_bounded = true
            [grid]
            n = [2, 3]
            k = [2, 4]
            ell = [2, 5]
            H = [1, 10]
            "#,
        )
        .unwrap();
        assert_eq!(cfg.format, Some(Format::Csv));
        assert_eq!(cfg.grid.h, Some([1, 10]));
        cfg.validate().unwrap();
    }

    #[test]
    fn rejects_bad_ranges() {
        let cfg: RunConfig = toml::from_str("[grid]\nn = [1, 3]").unwrap();
        assert!(cfg.validate().is_err());
        let cfg: RunConfig = toml::from_str("jobs = 0").unwrap();
        assert!(cfg.validate().is_err());
        assert!(toml::from_str::<RunConfig>("colour = 1").is_err());
    }
}
