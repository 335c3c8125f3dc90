//! Dense univariate polynomials over any commutative ring.
//!
//! Coefficients are stored in ascending degree order. The representation is
//! canonical: the zero polynomial has no coefficients and otherwise the last
//! coefficient is nonzero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Num;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Clone + Num> Polynomial<T> {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::from_coeffs(vec![T::zero(), T::one()])
    }

    /// `c · x^deg`.
    pub fn monomial(c: T, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); deg + 1];
        coeffs[deg] = c;
        Self { coeffs }
    }

    /// `a − x`, the building block of the auxiliary products.
    pub fn root_factor(a: T) -> Self {
        Self::from_coeffs(vec![a, T::zero() - T::one()])
    }

    /// Builds a polynomial from ascending coefficients, stripping trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^i`; zero beyond the degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// `self^e` by repeated squaring.
    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = poly_mul(&base, &base);
            }
        }
        acc
    }

    /// Maps every coefficient into another ring.
    pub fn map<U: Clone + Num>(&self, f: impl FnMut(&T) -> U) -> Polynomial<U> {
        Polynomial::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..n).map(|i| f(self.coeff(i), other.coeff(i))).collect())
    }
}

/// Exact product of two dense polynomials (schoolbook).
pub fn poly_mul<T: Clone + Num>(p: &Polynomial<T>, q: &Polynomial<T>) -> Polynomial<T> {
    if p.is_zero() || q.is_zero() {
        return Polynomial::zero();
    }
    let mut out = vec![T::zero(); p.coeffs.len() + q.coeffs.len() - 1];
    for (i, a) in p.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.coeffs.iter().enumerate() {
            out[i + j] = out[i + j].clone() + a.clone() * b.clone();
        }
    }
    Polynomial::from_coeffs(out)
}

impl<T: Clone + Num> Add for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn add(self, rhs: Self) -> Polynomial<T> {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl<T: Clone + Num> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn sub(self, rhs: Self) -> Polynomial<T> {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl<T: Clone + Num> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn mul(self, rhs: Self) -> Polynomial<T> {
        poly_mul(self, rhs)
    }
}

impl<T: Clone + Num> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        self.map(|c| T::zero() - c.clone())
    }
}

impl<T: Clone + Num + fmt::Display> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn ip(c: &[i64]) -> Polynomial<BigInt> {
        Polynomial::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(poly_mul(&ip(&[1, 1]), &ip(&[1, -1])), ip(&[1, 0, -1]));
    }

    #[test]
    fn zero_absorbs() {
        let p = ip(&[3, 0, 2]);
        assert!(poly_mul(&p, &Polynomial::zero()).is_zero());
        assert!(poly_mul(&Polynomial::zero(), &p).is_zero());
    }

    #[test]
    fn cube_of_shifted_root() {
        // binomial expansion of (x - 1/2)^3
        let half = rat(1, 2);
        let sq = poly_mul(
            &Polynomial::from_coeffs(vec![-half.clone(), rat(1, 1)]),
            &Polynomial::from_coeffs(vec![-half.clone(), rat(1, 1)]),
        );
        let cube = poly_mul(
            &sq,
            &Polynomial::from_coeffs(vec![-half.clone(), rat(1, 1)]),
        );
        let mut expected = Vec::new();
        for i in 0..=3u32 {
            let binom = [1, 3, 3, 1][i as usize];
            let mut c = BigRational::from_integer(binom.into());
            for _ in 0..(3 - i) {
                c *= -half.clone();
            }
            expected.push(c);
        }
        assert_eq!(cube.coeffs(), expected.as_slice());
        assert_eq!(
            cube.coeffs(),
            &[rat(-1, 8), rat(3, 4), rat(-3, 2), rat(1, 1)]
        );
        assert_eq!(
            cube,
            Polynomial::root_factor(half).pow(3).scale(&rat(-1, 1))
        );
    }

    #[test]
    fn degree_and_trimming() {
        assert_eq!(ip(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(ip(&[0, 0]).degree(), None);
        assert_eq!(ip(&[0, 0, 5]).valuation(), Some(2));
        assert_eq!(ip(&[2, -3, 1]).eval(&BigInt::from(2)), BigInt::from(0));
    }

    #[test]
    fn works_over_floats() {
        let p = Polynomial::from_coeffs(vec![1.0f64, 1.0]);
        let q = Polynomial::from_coeffs(vec![1.0f64, -1.0]);
        assert_eq!(poly_mul(&p, &q).coeffs(), &[1.0, 0.0, -1.0]);
    }

    fn small_poly() -> impl Strategy<Value = Polynomial<BigRational>> {
        prop::collection::vec((-20i64..20, 1i64..6), 0..6).prop_map(|cs| {
            Polynomial::from_coeffs(cs.into_iter().map(|(a, b)| rat(a, b)).collect())
        })
    }

    proptest! {
        #[test]
        fn distributive((p, q, r) in (small_poly(), small_poly(), small_poly())) {
            let lhs = poly_mul(&(&p + &q), &r);
            let rhs = &poly_mul(&p, &r) + &poly_mul(&q, &r);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn degree_additive((p, q) in (small_poly(), small_poly())) {
            let prod = poly_mul(&p, &q);
            match (p.degree(), q.degree()) {
                (Some(a), Some(b)) => prop_assert_eq!(prod.degree(), Some(a + b)),
                _ => prop_assert!(prod.is_zero()),
            }
            for c in prod.coeffs() {
                prop_assert!(crate::exact::is_canonical(c));
            }
        }
    }
}
