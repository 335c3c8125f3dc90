//! Maxima of `∏ |a_s − y|` over an interval.
//!
//! A dense grid locates every local maximum, golden-section search polishes
//! each one, and a branch-and-bound pass over the grid cells supplies an
//! upper bound: on a cell `[a, b]`, `|x − y| ≤ max(|x − a|, |x − b|)`.

use serde::Serialize;

use crate::scalar::Real;

pub const GRID_POINTS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MaxEstimate<T> {
    /// Largest value actually attained at a sampled point.
    pub value: T,
    /// Upper bound on the maximum over the whole interval.
    pub upper: T,
    pub argmax: T,
}

impl<T: Real> MaxEstimate<T> {
    pub fn contains(&self, x: T) -> bool {
        x >= self.value && x <= self.upper
    }
}

fn product<T: Real>(nodes: &[T], y: T) -> T {
    nodes.iter().fold(T::one(), |acc, &a| acc * (a - y).abs())
}

fn cell_upper<T: Real>(nodes: &[T], a: T, b: T) -> T {
    nodes
        .iter()
        .fold(T::one(), |acc, &x| acc * (x - a).abs().max((x - b).abs()))
}

fn golden<T: Real>(nodes: &[T], mut a: T, mut b: T) -> (T, T) {
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (product(nodes, c), product(nodes, d));
    for _ in 0..200 {
        if b - a <= T::epsilon() * T::lit(4.0) * b.abs().max(T::one()) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = product(nodes, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = product(nodes, d);
        }
    }
    let m = (a + b) / T::lit(2.0);
    (m, product(nodes, m))
}

/// Maximum of `∏ |a_s − y|` for `y ∈ [lo, hi]`.
pub fn max_abs_product<T: Real>(nodes: &[T], lo: T, hi: T) -> MaxEstimate<T> {
    assert!(hi > lo, "empty interval");
    let h = (hi - lo) / T::from_usize_lossy(GRID_POINTS);
    let at = |i: usize| {
        if i == GRID_POINTS {
            hi
        } else {
            lo + h * T::from_usize_lossy(i)
        }
    };
    let vals: Vec<T> = (0..=GRID_POINTS).map(|i| product(nodes, at(i))).collect();

    let mut best = T::zero();
    let mut arg = lo;
    for i in 0..=GRID_POINTS {
        let left = if i > 0 {
            vals[i - 1]
        } else {
            T::neg_infinity()
        };
        let right = if i < GRID_POINTS {
            vals[i + 1]
        } else {
            T::neg_infinity()
        };
        if vals[i] >= left && vals[i] >= right {
            let (y, v) = if i > 0 && i < GRID_POINTS {
                golden(nodes, at(i - 1), at(i + 1))
            } else {
                (at(i), vals[i])
            };
            let (y, v) = if v >= vals[i] {
                (y, v)
            } else {
                (at(i), vals[i])
            };
            if v > best {
                best = v;
                arg = y;
            }
        }
    }

    let slack = T::lit(1e-10).max(T::epsilon() * T::lit(1e3)) * best.max(T::min_positive_value());
    let mut upper = best;
    let mut stack: Vec<(T, T)> = (0..GRID_POINTS).map(|i| (at(i), at(i + 1))).collect();
    while let Some((a, b)) = stack.pop() {
        let ub = cell_upper(nodes, a, b);
        if ub <= best + slack {
            upper = upper.max(ub);
            continue;
        }
        let m = (a + b) / T::lit(2.0);
        if m <= a || m >= b {
            upper = upper.max(ub);
            continue;
        }
        let fm = product(nodes, m);
        if fm > best {
            best = fm;
            arg = m;
        }
        stack.push((a, m));
        stack.push((m, b));
    }
    // cover rounding in the products
    let rel = T::epsilon() * T::from_usize_lossy(4 * nodes.len() + 4);
    MaxEstimate {
        value: best,
        upper: upper.max(best) * (T::one() + rel),
        argmax: arg,
    }
}

fn nodes<T: Real>(n: usize, count: usize) -> Vec<T> {
    (0..count)
        .map(|s| T::from_usize_lossy(s) / T::from_usize_lossy(n))
        .collect()
}

/// `max_{0≤y≤1} ∏_{s=0}^{k} |s/n − y|`.
pub fn c_small_max<T: Real>(n: usize, k: usize) -> MaxEstimate<T> {
    max_abs_product(&nodes::<T>(n, k + 1), T::zero(), T::one())
}

/// `c(n) = max_{0≤y≤1} ∏_{s=0}^{5} |s/n − y|`.
pub fn c_n_max<T: Real>(n: usize) -> MaxEstimate<T> {
    max_abs_product(&nodes::<T>(n, 6), T::zero(), T::one())
}

/// `max_{0<x<k/n} ∏_{s=0}^{k} |s/n − x|`.
pub fn raw_max_product<T: Real>(n: usize, k: usize) -> MaxEstimate<T> {
    let hi = T::from_usize_lossy(k) / T::from_usize_lossy(n);
    max_abs_product(&nodes::<T>(n, k + 1), T::zero(), hi)
}

/// `c(k)`: `3√3` for `k = 2`, `6` otherwise.
pub fn c_of_k<T: Real>(k: usize) -> T {
    if k == 2 {
        T::lit(3.0) * T::lit(3.0).sqrt()
    } else {
        T::lit(6.0)
    }
}

/// `k!/(c(k) n^{k+1})`, the closed-form bound on [`raw_max_product`].
pub fn max_product_bound<T: Real>(n: usize, k: usize) -> T {
    let kfact = (T::from_usize_lossy(k) + T::one()).ln_gamma().exp();
    let npow = T::from_usize_lossy(n).powi(k as i32 + 1);
    kfact / (c_of_k::<T>(k) * npow)
}

/// Tabulated upper bounds for `max_{[0,1]} ∏ |s/n − y|` with `k ≤ 4`.
pub fn table_value(n: usize, k: usize) -> Option<f64> {
    match (n, k) {
        (2, 2) => Some(0.049),
        (2, 3) => Some(1.0 / 16.0),
        (3, 3) => Some(1.0 / 81.0),
        (2, 4) => Some(0.114),
        (3, 4) => Some(0.015),
        (4, 4) => Some(0.004),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn two_two_is_exact() {
        let m = c_small_max::<f64>(2, 2);
        let exact = 1.0 / (12.0 * 3f64.sqrt());
        assert!(m.contains(exact) || (m.value - exact).abs() < 1e-12);
        assert!(m.upper - m.value < 1e-8);
        assert!(m.upper <= 0.049);
    }

    #[test]
    fn cubic_bound_attained() {
        for n in 2..6 {
            let m = raw_max_product::<f64>(n, 2);
            assert_relative_eq!(m.value, max_product_bound::<f64>(n, 2), max_relative = 1e-9);
        }
        let m = raw_max_product::<f64>(1, 2);
        assert!(
            (m.argmax - (1.0 - 1.0 / 3f64.sqrt())).abs() < 1e-6
                || (m.argmax - (1.0 + 1.0 / 3f64.sqrt())).abs() < 1e-6
        );
    }

    #[test]
    fn quartic_peak_is_one() {
        let m = max_abs_product(&[0.0f64, 1.0, 2.0, 3.0], 0.0, 1.0);
        assert_relative_eq!(m.value, 1.0, epsilon = 1e-12);
        assert_relative_eq!(m.argmax, (3.0 - 5f64.sqrt()) / 2.0, epsilon = 1e-6);
    }

    #[test]
    fn closed_form_k5() {
        assert_relative_eq!(max_product_bound::<f64>(2, 5), 0.3125, epsilon = 1e-12);
    }

    #[test]
    fn c_n_at_most_one() {
        for n in 2..12 {
            let c = c_n_max::<f64>(n);
            assert!(c.upper <= 1.0 && c.value > 0.0, "n = {n}");
        }
    }

    #[test]
    fn single_precision_search() {
        let m = c_small_max::<f32>(3, 3);
        assert!((m.value as f64 - 1.0 / 81.0).abs() < 1e-5);
    }
}
