//! Integer-only construction of `A*_{u,j}` for large `ℓ`.
//!
//! With `y = n x` and `a_s = s − j`, `Ω(x; β̄^{(j)}, ℓ̄^{(u)}) = n^{−L} P(y)` where
//! `P(y) = (−y)^{ℓ−1} Q(y)^{ℓ−1} ∏_{s≠u} (a_s − y)` and `Q(y) = ∏_{s≠j} (a_s − y)`.
//! The coefficient of `t^{L−i}` in `A*_{u,j}` is then `p_i n^{i+1−ℓ} i!/(ℓ−1)!`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::vectors::check_parameters;
use crate::error::Result;
use crate::exact::Polynomial;
use crate::IntPolynomial;

/// Coefficients of `q^m` by the power recurrence; requires `q[0] ≠ 0`.
pub fn integer_power(q: &[BigInt], m: usize) -> Vec<BigInt> {
    assert!(
        !q[0].is_zero(),
        "power recurrence needs a nonzero constant term"
    );
    let d = q.len() - 1;
    let len = d * m + 1;
    let mut p = Vec::with_capacity(len);
    p.push(num_traits::pow(q[0].clone(), m));
    let m1 = BigInt::from(m + 1);
    for i in 1..len {
        let mut acc = BigInt::zero();
        for t in 1..=d.min(i) {
            if q[t].is_zero() {
                continue;
            }
            let w = &m1 * t - BigInt::from(i);
            acc += w * &q[t] * &p[i - t];
        }
        let den = &q[0] * BigInt::from(i);
        let (quot, rem) = acc.div_rem(&den);
        debug_assert!(rem.is_zero(), "power recurrence division must be exact");
        p.push(quot);
    }
    p
}

/// Multiplies in place by `(a − y)`.
fn mul_root(coeffs: &mut Vec<BigInt>, a: i64) {
    coeffs.push(BigInt::zero());
    for i in (0..coeffs.len()).rev() {
        let lower = if i > 0 {
            coeffs[i - 1].clone()
        } else {
            BigInt::zero()
        };
        coeffs[i] = &coeffs[i] * a - lower;
    }
}

#[derive(Clone, Debug)]
pub struct IntegerRoute {
    n: usize,
    k: usize,
    ell: usize,
}

impl IntegerRoute {
    pub fn new(n: usize, k: usize, ell: usize) -> Result<Self> {
        check_parameters(n, k, ell)?;
        Ok(Self { n, k, ell })
    }

    pub fn big_l(&self) -> usize {
        (self.k + 1) * self.ell - 1
    }

    /// `Q(y)^{ℓ−1}` for column `j`.
    pub fn column_base(&self, j: usize) -> Vec<BigInt> {
        let mut q = vec![BigInt::one()];
        for s in 0..=self.k {
            if s != j {
                mul_root(&mut q, s as i64 - j as i64);
            }
        }
        integer_power(&q, self.ell - 1)
    }

    /// Full coefficients `p_0 … p_L` of `P_{u,j}(y)` given the column base.
    pub fn product_from_base(&self, base: &[BigInt], u: usize, j: usize) -> Vec<BigInt> {
        let mut c = base.to_vec();
        for s in 0..=self.k {
            if s != u {
                mul_root(&mut c, s as i64 - j as i64);
            }
        }
        let shift = self.ell - 1;
        let negate = shift % 2 == 1;
        let mut p = vec![BigInt::zero(); shift];
        p.extend(c.into_iter().map(|x| if negate { -x } else { x }));
        debug_assert_eq!(p.len(), self.big_l() + 1);
        p
    }

    pub fn product_coeffs(&self, u: usize, j: usize) -> Vec<BigInt> {
        self.product_from_base(&self.column_base(j), u, j)
    }

    /// `A*_{u,j}(1)` by nested evaluation over the weights `n^{i+1−ℓ} i!/(ℓ−1)!`.
    pub fn value_from_product(&self, p: &[BigInt]) -> BigInt {
        let big_l = self.big_l();
        let mut acc = p[big_l].clone();
        for i in (self.ell - 1..big_l).rev() {
            acc = &p[i] + acc * BigInt::from(self.n * (i + 1));
        }
        acc
    }

    pub fn value_at_one(&self, u: usize, j: usize) -> BigInt {
        self.value_from_product(&self.product_coeffs(u, j))
    }

    /// The normalized polynomial `A*_{u,j}(t)`.
    pub fn poly(&self, u: usize, j: usize) -> IntPolynomial {
        let p = self.product_coeffs(u, j);
        let big_l = self.big_l();
        let mut coeffs = vec![BigInt::zero(); big_l + 1];
        let mut w = BigInt::one();
        for i in self.ell - 1..=big_l {
            if i >= self.ell {
                w *= BigInt::from(self.n * i);
            }
            coeffs[big_l - i] = &p[i] * &w;
        }
        Polynomial::from_coeffs(coeffs)
    }

    /// The full matrix `M[u][j] = A*_{u,j}(1)`, one column base per `j`.
    pub fn values(&self) -> Vec<Vec<BigInt>> {
        let columns: Vec<Vec<BigInt>> = (0..=self.k)
            .into_par_iter()
            .map(|j| {
                let base = self.column_base(j);
                (0..=self.k)
                    .map(|u| self.value_from_product(&self.product_from_base(&base, u, j)))
                    .collect()
            })
            .collect();
        (0..=self.k)
            .map(|u| columns.iter().map(|col| col[u].clone()).collect())
            .collect()
    }
}

/// `M[u][j] = A*_{u,j}(1)` through the integer route.
pub fn normalized_values(n: usize, k: usize, ell: usize) -> Result<Vec<Vec<BigInt>>> {
    Ok(IntegerRoute::new(n, k, ell)?.values())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_power(q: &[BigInt], m: usize) -> Vec<BigInt> {
        let p = Polynomial::from_coeffs(q.to_vec()).pow(m);
        let mut v = p.into_coeffs();
        v.resize((q.len() - 1) * m + 1, BigInt::zero());
        v
    }

    #[test]
    fn linear_power_is_binomial() {
        let q = [BigInt::from(2), BigInt::from(-1)];
        let p = integer_power(&q, 4);
        let expected: Vec<BigInt> = [16, -32, 24, -8, 1]
            .iter()
            .map(|&x| BigInt::from(x))
            .collect();
        assert_eq!(p, expected);
    }

    #[test]
    fn values_match_polys() {
        let r = IntegerRoute::new(3, 3, 4).unwrap();
        let m = r.values();
        for u in 0..=3 {
            for j in 0..=3 {
                assert_eq!(m[u][j], r.poly(u, j).eval(&BigInt::one()));
            }
        }
    }

    proptest! {
        #[test]
        fn power_matches_repeated_product(
            q in prop::collection::vec(-5i64..6, 1..5),
            q0 in prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]),
            m in 0usize..9,
        ) {
            let mut coeffs = vec![BigInt::from(q0)];
            coeffs.extend(q.into_iter().map(BigInt::from));
            prop_assert_eq!(integer_power(&coeffs, m), naive_power(&coeffs, m));
        }
    }
}
