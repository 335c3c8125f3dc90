use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::determinant::bareiss_determinant;
use super::fast::IntegerRoute;
use super::json::SystemDocument;
use super::omega::omega_poly;
use super::vectors::{check_parameters, AlphaVector, ExponentVector, Nodes};
use crate::error::{Error, Result};
use crate::exact::{series_of_exp, Ball, FactorialTable, Polynomial};
use crate::{ExactPolynomial, ExactSeries, IntPolynomial};

/// Starting precision for remainder evaluation before escalation.
pub const DEFAULT_REMAINDER_PRECISION: u64 = 256;
/// Escalation stops once the working precision would exceed this.
pub const PRECISION_CEILING: u64 = 1 << 20;

/// `Σ_i t^{L−i} i! σ_i` for the coefficients `σ_i` of `omega`.
fn laplace_poly(omega: &ExactPolynomial, total: usize) -> ExactPolynomial {
    let mut facts = FactorialTable::with_capacity(total);
    let mut coeffs = vec![BigRational::zero(); total + 1];
    for (i, s) in omega.coeffs().iter().enumerate() {
        if !s.is_zero() {
            coeffs[total - i] = s * BigRational::from_integer(facts.get(i).clone());
        }
    }
    Polynomial::from_coeffs(coeffs)
}

/// `A_0(t) = Σ t^{L−i} i! σ_i(ℓ̄, ᾱ)`.
pub fn a0_poly(ell: &ExponentVector, alpha: &(impl Nodes + ?Sized)) -> ExactPolynomial {
    laplace_poly(&omega_poly(alpha, ell), ell.total())
}

/// `A_j(t) = Σ t^{L−i} i! σ_i(ℓ̄, β̄^{(j)})`; `j = 0` reproduces `A_0`.
pub fn aj_poly(j: usize, ell: &ExponentVector, alpha: &AlphaVector) -> Result<ExactPolynomial> {
    if j > alpha.k() {
        return Err(Error::InputDomain(format!(
            "column index j = {j} exceeds k = {}",
            alpha.k()
        )));
    }
    Ok(laplace_poly(
        &omega_poly(&alpha.shifted(j), ell),
        ell.total(),
    ))
}

/// Truncation of `e^{α t} A_0(t) − A_j(t)` to the given order.
pub fn remainder_series_of(
    alpha_j: &BigRational,
    a0: &ExactPolynomial,
    aj: &ExactPolynomial,
    order: usize,
) -> ExactSeries {
    let e = series_of_exp(alpha_j, order);
    let lhs = &e * &ExactSeries::from_polynomial(a0, order);
    &lhs - &ExactSeries::from_polynomial(aj, order)
}

/// `e^{α_j t} A_{u,0}(t) − A_{u,j}(t)` for the row `ℓ̄^{(u)}`, exactly, through `t^order`.
pub fn remainder_series(
    j: usize,
    u: usize,
    n: usize,
    k: usize,
    ell: usize,
    order: usize,
) -> Result<ExactSeries> {
    check_parameters(n, k, ell)?;
    let exps = ExponentVector::row(k, ell, u)?;
    if order < exps.total() {
        return Err(Error::InputDomain(format!(
            "order {order} is below L = {}",
            exps.total()
        )));
    }
    let alpha = AlphaVector::new(n, k)?;
    let a0 = a0_poly(&exps, &alpha);
    let aj = aj_poly(j, &exps, &alpha)?;
    Ok(remainder_series_of(&alpha.nodes()[j], &a0, &aj, order))
}

/// Ball for `e^{j/n} a0 − aj` at a fixed working precision.
pub fn remainder_ball(a0: &BigInt, aj: &BigInt, j: usize, n: usize, prec: u64) -> Ball {
    let e = Ball::exp_fraction(j as u64, n as u64, prec);
    e.mul_int(a0).sub(&Ball::from_int(aj, prec))
}

/// Evaluates [`remainder_ball`] with doubling precision until the midpoint dominates the radius.
pub fn remainder_escalating(
    a0: &BigInt,
    aj: &BigInt,
    j: usize,
    n: usize,
    start_bits: u64,
) -> Result<Ball> {
    let mut prec = start_bits.max(16);
    loop {
        let ball = remainder_ball(a0, aj, j, n, prec);
        if ball.is_well_resolved() {
            return Ok(ball);
        }
        if prec >= PRECISION_CEILING {
            return Err(Error::InsufficientPrecision {
                precision_bits: prec,
                radius: ball.radius_f64(),
                tolerance: ball.to_f64().abs() / 4.0,
            });
        }
        prec = (prec * 2).min(PRECISION_CEILING);
    }
}

/// `L*_{u,j}(1) = e^{j/n} A*_{u,0}(1) − A*_{u,j}(1)` as a resolved ball.
pub fn remainder_value(
    j: usize,
    u: usize,
    n: usize,
    k: usize,
    ell: usize,
    precision_bits: u64,
) -> Result<Ball> {
    let route = IntegerRoute::new(n, k, ell)?;
    if j > k || u > k {
        return Err(Error::InputDomain(format!(
            "indices (u, j) = ({u}, {j}) exceed k = {k}"
        )));
    }
    let a0 = route.value_at_one(u, 0);
    let aj = route.value_at_one(u, j);
    remainder_escalating(&a0, &aj, j, n, precision_bits)
}

/// The normalized family `A*_{u,j} = n^{kℓ}/(ℓ−1)! · A_{u,j}` for `u, j = 0..=k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproximationSystem {
    alpha: AlphaVector,
    ell: usize,
    big_l: usize,
    norm_factor: BigRational,
    polys: Vec<Vec<IntPolynomial>>,
}

fn norm_factor(n: usize, k: usize, ell: usize) -> BigRational {
    BigRational::new(
        num_traits::pow(BigInt::from(n), k * ell),
        crate::exact::factorial(ell - 1),
    )
}

fn to_integer(p: &ExactPolynomial, u: usize, j: usize) -> Result<IntPolynomial> {
    let coeffs = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if c.denom().is_one() {
                Ok(c.numer().clone())
            } else {
                Err(Error::ConstructionContract(format!(
                    "A*_{{{u},{j}}} has non-integral coefficient {c} at t^{i}"
                )))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::from_coeffs(coeffs))
}

/// Builds and normalizes all `(k+1)²` polynomials through exact rational expansion.
pub fn normalize_system(n: usize, k: usize, ell: usize) -> Result<ApproximationSystem> {
    check_parameters(n, k, ell)?;
    let alpha = AlphaVector::new(n, k)?;
    let norm = norm_factor(n, k, ell);
    let big_l = (k + 1) * ell - 1;

    let polys = (0..=k)
        .into_par_iter()
        .map(|u| {
            let exps = ExponentVector::row(k, ell, u)?;
            (0..=k)
                .map(|j| {
                    let a = aj_poly(j, &exps, &alpha)?;
                    let scaled = to_integer(&a.scale(&norm), u, j)?;
                    let expected = big_l - exps.entries()[j];
                    if scaled.degree() != Some(expected) {
                        return Err(Error::ConstructionContract(format!(
                            "deg A*_{{{u},{j}}} = {:?}, expected {expected}",
                            scaled.degree()
                        )));
                    }
                    Ok(scaled)
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ApproximationSystem {
        alpha,
        ell,
        big_l,
        norm_factor: norm,
        polys,
    })
}

impl ApproximationSystem {
    /// Same family through the integer route; suited to large `ℓ`.
    pub fn build_fast(n: usize, k: usize, ell: usize) -> Result<Self> {
        let route = IntegerRoute::new(n, k, ell)?;
        let polys = (0..=k)
            .into_par_iter()
            .map(|u| (0..=k).map(|j| route.poly(u, j)).collect())
            .collect();
        Ok(Self {
            alpha: AlphaVector::new(n, k)?,
            ell,
            big_l: route.big_l(),
            norm_factor: norm_factor(n, k, ell),
            polys,
        })
    }

    pub fn n(&self) -> usize {
        self.alpha.n()
    }

    pub fn k(&self) -> usize {
        self.alpha.k()
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// `L = (k+1)ℓ − 1`.
    pub fn big_l(&self) -> usize {
        self.big_l
    }

    pub fn alpha(&self) -> &AlphaVector {
        &self.alpha
    }

    /// `n^{kℓ}/(ℓ−1)!`.
    pub fn norm_factor(&self) -> &BigRational {
        &self.norm_factor
    }

    pub fn poly(&self, u: usize, j: usize) -> &IntPolynomial {
        &self.polys[u][j]
    }

    pub fn polys(&self) -> &[Vec<IntPolynomial>] {
        &self.polys
    }

    /// `M[u][j] = A*_{u,j}(1)`.
    pub fn values_at_one(&self) -> Vec<Vec<BigInt>> {
        self.polys
            .iter()
            .map(|row| row.iter().map(|p| p.eval(&BigInt::one())).collect())
            .collect()
    }

    pub fn determinant(&self) -> BigInt {
        bareiss_determinant(self.values_at_one())
    }

    /// Resolved ball for `L*_{u,j}(1)`.
    pub fn remainder_value(&self, u: usize, j: usize, precision_bits: u64) -> Result<Ball> {
        let one = BigInt::one();
        let a0 = self.polys[u][0].eval(&one);
        let aj = self.polys[u][j].eval(&one);
        remainder_escalating(&a0, &aj, j, self.n(), precision_bits)
    }

    pub fn to_document(&self) -> SystemDocument {
        SystemDocument::from_system(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn ones() -> ExponentVector {
        ExponentVector::custom(vec![1, 1, 1]).unwrap()
    }

    #[test]
    fn a0_small_system() {
        let alpha = AlphaVector::new(2, 2).unwrap();
        let a0 = a0_poly(&ones(), &alpha);
        assert_eq!(a0.coeffs(), &[rat(-6, 1), rat(3, 1), rat(-1, 2)]);
        assert_eq!(a0.degree(), Some(2));
        assert_eq!(a0.eval(&rat(1, 1)), rat(-7, 2));
    }

    #[test]
    fn aj_small_system() {
        let alpha = AlphaVector::new(2, 2).unwrap();
        let a1 = aj_poly(1, &ones(), &alpha).unwrap();
        // (−1/2 − x)(−x)(1/2 − x) = x/4 − x³ → σ_1 = 1/4, σ_3 = −1
        assert_eq!(a1.coeffs(), &[rat(-6, 1), rat(0, 1), rat(1, 4)]);
        assert!(aj_poly(3, &ones(), &alpha).is_err());
    }

    #[test]
    fn lowest_sigma_at_ell_j() {
        let alpha = AlphaVector::new(3, 4).unwrap();
        let exps = ExponentVector::custom(vec![2, 3, 1, 4, 2]).unwrap();
        for j in 0..=4 {
            let om = omega_poly(&alpha.shifted(j), &exps);
            assert_eq!(om.valuation(), Some(exps.entries()[j]));
            let a = aj_poly(j, &exps, &alpha).unwrap();
            assert_eq!(a.degree(), Some(exps.total() - exps.entries()[j]));
        }
    }

    #[test]
    fn small_remainder_order() {
        let alpha = AlphaVector::new(2, 2).unwrap();
        let a0 = a0_poly(&ones(), &alpha);
        let a1 = aj_poly(1, &ones(), &alpha).unwrap();
        let r3 = remainder_series_of(&alpha.nodes()[1], &a0, &a1, 3);
        assert!(r3.is_zero());
        let r4 = remainder_series_of(&alpha.nodes()[1], &a0, &a1, 4);
        assert!(!r4.coeff(4).is_zero());
        let same = remainder_series_of(&BigRational::zero(), &a0, &a0, 6);
        assert!(same.is_zero());
    }

    #[test]
    fn remainder_order_rows() {
        let s = remainder_series(2, 1, 2, 3, 3, 12).unwrap();
        assert_eq!(s.valuation(), Some(12));
        assert!(remainder_series(1, 0, 2, 2, 2, 4).is_err());
    }

    #[test]
    fn norm_factors() {
        assert_eq!(norm_factor(2, 3, 2), rat(64, 1));
        assert_eq!(norm_factor(3, 3, 3), rat(19683, 2));
    }

    #[test]
    fn small_denominators_divide_norm() {
        let alpha = AlphaVector::new(2, 2).unwrap();
        let exps = ExponentVector::row(2, 2, 0).unwrap();
        for j in 0..=2 {
            for c in aj_poly(j, &exps, &alpha).unwrap().coeffs() {
                assert!((BigInt::from(16) % c.denom()).is_zero());
            }
        }
    }

    #[test]
    fn system_rejects_bad_input() {
        assert!(matches!(
            normalize_system(3, 2, 2),
            Err(Error::InputDomain(_))
        ));
        assert!(matches!(
            normalize_system(2, 2, 1),
            Err(Error::InputDomain(_))
        ));
    }

    #[test]
    fn system_shape_and_degrees() {
        let sys = normalize_system(2, 3, 3).unwrap();
        assert_eq!(sys.big_l(), 11);
        for u in 0..=3 {
            for j in 0..=3 {
                let lj = if j == u { 2 } else { 3 };
                assert_eq!(sys.poly(u, j).degree(), Some(11 - lj));
            }
        }
        assert!(!sys.determinant().is_zero());
    }

    #[test]
    fn fast_route_agrees() {
        for (n, k, ell) in [(2, 2, 2), (2, 3, 4), (3, 4, 3), (3, 3, 5)] {
            let slow = normalize_system(n, k, ell).unwrap();
            let fast = ApproximationSystem::build_fast(n, k, ell).unwrap();
            assert_eq!(slow, fast, "(n, k, ell) = ({n}, {k}, {ell})");
        }
    }

    #[test]
    fn remainder_small_nonzero_and_refines() {
        let v = remainder_value(1, 0, 2, 2, 2, 64).unwrap();
        assert!(v.excludes_zero());
        let sys = normalize_system(2, 2, 2).unwrap();
        let vals = sys.values_at_one();
        let coarse = remainder_ball(&vals[0][0], &vals[0][1], 1, 2, 80);
        let fine = remainder_ball(&vals[0][0], &vals[0][1], 1, 2, 160);
        assert!(fine.radius() * BigRational::from_integer(2.into()) <= coarse.radius());
        assert!(coarse.overlaps(&fine));
    }
}
