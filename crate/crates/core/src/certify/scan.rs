//! Reduced scan over inner tuples and the naive oracle.

use rayon::prelude::*;

const CHUNK: u64 = 1 << 14;

pub(crate) struct Scan {
    /// Every `(λ_0, …, λ_k)` that may be the minimum or the runner-up, in
    /// lexicographic order.
    pub candidates: Vec<Vec<i64>>,
    pub tuples_scanned: u64,
}

struct Local {
    tol: f64,
    best: [f64; 2],
    kept: Vec<(f64, Vec<i64>)>,
}

impl Local {
    fn new(tol: f64) -> Self {
        Self {
            tol,
            best: [f64::INFINITY; 2],
            kept: Vec::new(),
        }
    }

    fn threshold(&self) -> f64 {
        self.best[1] + 2.0 * self.tol
    }

    fn offer(&mut self, val: f64, lam: impl FnOnce() -> Vec<i64>) {
        if val < self.best[0] {
            self.best = [val, self.best[0]];
        } else if val < self.best[1] {
            self.best[1] = val;
        }
        if val <= self.threshold() {
            self.kept.push((val, lam()));
            if self.kept.len() > 4096 {
                self.prune();
            }
        }
    }

    fn prune(&mut self) {
        let t = self.threshold();
        self.kept.retain(|(v, _)| *v <= t);
    }

    fn merge(mut self, other: Local) -> Local {
        for (v, lam) in other.kept {
            self.offer(v, || lam);
        }
        self.prune();
        self
    }
}

/// Nearest and second-nearest admissible `λ_0` for inner sum `s`.
fn lambda0_options(s: f64, bound: Option<i64>) -> [i64; 2] {
    let target = -s;
    let near = target.round();
    let other = if target >= near {
        near + 1.0
    } else {
        near - 1.0
    };
    let (mut a, mut b) = (near as i64, other as i64);
    if let Some(h) = bound {
        a = a.clamp(-h, h);
        b = b.clamp(-h, h);
        if a == b {
            b = if a == h { a - 1 } else { a + 1 };
        }
    }
    [a, b]
}

fn decode(mut m: u64, h: i64, k: usize, out: &mut [i64]) {
    let base = (2 * h + 1) as u64;
    for slot in out.iter_mut().take(k) {
        *slot = (m % base) as i64 - h;
        m /= base;
    }
}

/// `exps[i] ≈ e^{(i+1)/n}`. Tuples are indexed in balanced base `2H+1` with
/// `λ_k` most significant, so indices above the centre are exactly the tuples
/// whose highest nonzero entry is positive.
pub(crate) fn scan(exps: &[f64], h: u64, lambda0_bounded: bool) -> Scan {
    let k = exps.len();
    let hi = h as i64;
    let total = (2 * h + 1)
        .checked_pow(k as u32)
        .expect("search space exceeds u64");
    let centre = (total - 1) / 2;
    let tol = 8.0 * (k as f64 + 2.0) * f64::EPSILON * h as f64 * exps.iter().sum::<f64>();
    let bound = lambda0_bounded.then_some(hi);

    let first = centre + 1;
    let chunks = (total - first).div_ceil(CHUNK);
    let mut merged = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let start = first + c * CHUNK;
            let end = (start + CHUNK).min(total);
            let mut local = Local::new(tol);
            let mut lam = vec![0i64; k];
            decode(start, hi, k, &mut lam);
            for _ in start..end {
                let s: f64 = lam.iter().zip(exps).map(|(l, e)| *l as f64 * e).sum();
                for l0 in lambda0_options(s, bound) {
                    let val = (s + l0 as f64).abs();
                    local.offer(val, || {
                        let mut v = Vec::with_capacity(k + 1);
                        v.push(l0);
                        v.extend_from_slice(&lam);
                        v
                    });
                }
                // odometer step
                for slot in lam.iter_mut() {
                    if *slot < hi {
                        *slot += 1;
                        break;
                    }
                    *slot = -hi;
                }
            }
            local.prune();
            local
        })
        .reduce(|| Local::new(tol), Local::merge);

    if lambda0_bounded {
        let mut unit = vec![0i64; k + 1];
        unit[0] = 1;
        merged.offer(1.0, || unit);
    }
    merged.prune();
    let mut candidates: Vec<Vec<i64>> = merged.kept.into_iter().map(|(_, l)| l).collect();
    candidates.sort();
    candidates.dedup();
    Scan {
        candidates,
        tuples_scanned: total - first,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NaiveMin {
    pub value: f64,
    pub argmin: Vec<i64>,
}

/// Full enumeration with `|λ_0| ≤ 3(k+1)H`, sign-normalized so the highest
/// nonzero entry is positive. Meant for tiny `H` and `k` only.
pub fn naive_min(n: usize, k: usize, h: u64) -> NaiveMin {
    let hi = h as i64;
    let b0 = 3 * (k as i64 + 1) * hi;
    let exps: Vec<f64> = (1..=k).map(|i| (i as f64 / n as f64).exp()).collect();
    let mut best = NaiveMin {
        value: f64::INFINITY,
        argmin: Vec::new(),
    };
    let mut lam = vec![-hi; k];
    loop {
        for l0 in -b0..=b0 {
            let mut full = vec![l0];
            full.extend_from_slice(&lam);
            if full.iter().all(|&x| x == 0) {
                continue;
            }
            if full.iter().rev().find(|&&x| x != 0).copied().unwrap_or(0) < 0 {
                continue;
            }
            let val = (l0 as f64
                + lam
                    .iter()
                    .zip(&exps)
                    .map(|(l, e)| *l as f64 * e)
                    .sum::<f64>())
            .abs();
            if val < best.value || (val == best.value && full < best.argmin) {
                best = NaiveMin {
                    value: val,
                    argmin: full,
                };
            }
        }
        let mut i = 0;
        while i < k && lam[i] == hi {
            lam[i] = -hi;
            i += 1;
        }
        if i == k {
            break;
        }
        lam[i] += 1;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn scan_count_is_half_the_nonzero_grid() {
        let e = [1.2, 1.6, 2.1];
        for h in 1..4u64 {
            let s = scan(&e, h, false);
            assert_eq!(s.tuples_scanned, ((2 * h + 1).pow(3) - 1) / 2);
        }
    }

    #[test]
    fn lambda0_choices() {
        assert_eq!(lambda0_options(2.3, None), [-2, -3]);
        assert_eq!(lambda0_options(-2.7, None), [3, 2]);
        assert_eq!(lambda0_options(7.9, Some(3)), [-3, -2]);
        assert_eq!(lambda0_options(-9.0, Some(3)), [3, 2]);
    }

    proptest! {
        #[test]
        fn nearest_integer_is_optimal(s in -1e6f64..1e6) {
            let [a, b] = lambda0_options(s, None);
            let va = (s + a as f64).abs();
            prop_assert!(va <= 0.5 + 1e-9);
            prop_assert!(va <= (s + b as f64).abs());
            for c in [a - 2, a - 1, a + 1, a + 2] {
                prop_assert!(va <= (s + c as f64).abs() + 1e-9);
            }
        }
    }
}
