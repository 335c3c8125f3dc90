use anyhow::{bail, Context};
use emeasure::suite::Grid;

use crate::config::GridConfig;

/// `default`, or comma-separated `name=lo..hi` / `name=v` items for
/// `n`, `k` and `ell`.
pub fn parse_grid(spec: &str) -> anyhow::Result<Grid> {
    let mut grid = Grid::default();
    let spec = spec.trim();
    if spec.is_empty() || spec == "default" {
        return Ok(grid);
    }
    for item in spec.split(',') {
        let (name, range) = item
            .split_once('=')
            .with_context(|| format!("grid item {item:?} is not name=range"))?;
        let (lo, hi) = match range.split_once("..") {
            Some((a, b)) => (
                a.trim().parse::<usize>()?,
                b.trim().trim_start_matches('=').parse::<usize>()?,
            ),
            None => {
                let v = range.trim().parse::<usize>()?;
                (v, v)
            }
        };
        if lo > hi {
            bail!("grid range {name} = {lo}..{hi} is empty");
        }
        match name.trim() {
            "n" => grid.n = (lo, hi),
            "k" => grid.k = (lo, hi),
            "ell" | "l" => grid.ell = (lo, hi),
            other => bail!("unknown grid axis {other:?}"),
        }
    }
    check(&grid)?;
    Ok(grid)
}

pub fn from_config(cfg: &GridConfig) -> Grid {
    let mut grid = Grid::default();
    if let Some([a, b]) = cfg.n {
        grid.n = (a, b);
    }
    if let Some([a, b]) = cfg.k {
        grid.k = (a, b);
    }
    if let Some([a, b]) = cfg.ell {
        grid.ell = (a, b);
    }
    grid
}

pub fn check(grid: &Grid) -> anyhow::Result<()> {
    if grid.n.0 < 2 {
        bail!("input domain: grid needs n >= 2");
    }
    if grid.ell.0 < 2 {
        bail!("input domain: grid needs ell >= 2");
    }
    if grid.points().is_empty() {
        bail!("input domain: grid has no point with k >= n");
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ranges() {
        let g = parse_grid("n=2,k=2..4,ell=3..5").unwrap();
        assert_eq!((g.n, g.k, g.ell), ((2, 2), (2, 4), (3, 5)));
        assert_eq!(parse_grid("default").unwrap(), Grid::default());
        assert!(parse_grid("n=1..2").is_err());
        assert!(parse_grid("q=2").is_err());
        assert!(parse_grid("k=5..3").is_err());
    }
}
