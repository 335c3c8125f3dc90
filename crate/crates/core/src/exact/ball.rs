//! Midpoint–radius ("ball") arithmetic over dyadic numbers.
//!
//! A ball stands for the closed interval `[(mid − rad)·2^exp, (mid + rad)·2^exp]`.
//! Every operation returns a ball that contains the exact result of applying
//! the operation to any points of its inputs; the midpoint is rounded to the
//! working precision and the rounding error is folded into the radius.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rational::{ln_abs_int, BigRationalExt};
use crate::error::{Error, Result};

/// Radius mantissas are kept to about this many bits.
const RADIUS_BITS: u64 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    mid: BigInt,
    rad: BigUint,
    exp: i64,
    prec: u64,
}

fn shl_int(x: &BigInt, by: i64) -> BigInt {
    debug_assert!(by >= 0);
    x << (by as usize)
}

impl Ball {
    pub fn zero(prec: u64) -> Self {
        Self {
            mid: BigInt::zero(),
            rad: BigUint::zero(),
            exp: 0,
            prec,
        }
    }

    /// An exactly represented integer. Integers wider than `prec` are rounded.
    pub fn from_int(x: &BigInt, prec: u64) -> Self {
        Self {
            mid: x.clone(),
            rad: BigUint::zero(),
            exp: 0,
            prec,
        }
        .normalized()
    }

    pub fn from_i64(x: i64, prec: u64) -> Self {
        Self::from_int(&BigInt::from(x), prec)
    }

    /// Tightest dyadic enclosure of a rational at `prec` bits.
    pub fn from_rational(q: &BigRational, prec: u64) -> Self {
        if q.denom().is_one() {
            return Self::from_int(q.numer(), prec);
        }
        let shift = prec as i64 + q.denom().bits() as i64 - q.numer().bits() as i64 + 2;
        let (num, den) = if shift >= 0 {
            (shl_int(q.numer(), shift), q.denom().clone())
        } else {
            (q.numer().clone(), shl_int(q.denom(), -shift))
        };
        let (mid, rem) = num.div_mod_floor(&den);
        let rad = if rem.is_zero() {
            BigUint::zero()
        } else {
            BigUint::one()
        };
        Self {
            mid,
            rad,
            exp: -shift,
            prec,
        }
        .normalized()
    }

    pub fn precision_bits(&self) -> u64 {
        self.prec
    }

    /// Rounds the midpoint to the new working precision.
    pub fn with_precision(&self, prec: u64) -> Self {
        Self {
            prec,
            ..self.clone()
        }
        .normalized()
    }

    fn normalized(mut self) -> Self {
        if self.mid.is_zero() && self.rad.is_zero() {
            self.exp = 0;
            return self;
        }
        let mbits = self.mid.bits();
        let rbits = self.rad.bits();
        let mut sh = mbits.saturating_sub(self.prec);
        sh = sh.max(rbits.saturating_sub(RADIUS_BITS));
        if sh > 0 {
            // BigInt >> rounds toward −∞, so the midpoint error is below one unit.
            self.mid >>= sh as usize;
            self.rad = (&self.rad >> sh as usize) + 2u32;
            self.exp += sh as i64;
        }
        self
    }

    pub fn midpoint(&self) -> BigRational {
        dyadic(&self.mid, self.exp)
    }

    pub fn radius(&self) -> BigRational {
        dyadic(&BigInt::from(self.rad.clone()), self.exp)
    }

    pub fn lower(&self) -> BigRational {
        dyadic(&(&self.mid - BigInt::from(self.rad.clone())), self.exp)
    }

    pub fn upper(&self) -> BigRational {
        dyadic(&(&self.mid + BigInt::from(self.rad.clone())), self.exp)
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    fn lo_int(&self) -> BigInt {
        &self.mid - BigInt::from(self.rad.clone())
    }

    fn hi_int(&self) -> BigInt {
        &self.mid + BigInt::from(self.rad.clone())
    }

    /// Aligns two dyadic integers to the smaller exponent.
    fn align(a: &BigInt, ea: i64, b: &BigInt, eb: i64) -> (BigInt, BigInt, i64) {
        match ea.cmp(&eb) {
            Ordering::Equal => (a.clone(), b.clone(), ea),
            Ordering::Greater => (shl_int(a, ea - eb), b.clone(), eb),
            Ordering::Less => (a.clone(), shl_int(b, eb - ea), ea),
        }
    }

    fn align_rad(&self, to: i64) -> BigUint {
        &self.rad << ((self.exp - to) as usize)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b, e) = Self::align(&self.mid, self.exp, &other.mid, other.exp);
        Self {
            mid: a + b,
            rad: self.align_rad(e) + other.align_rad(e),
            exp: e,
            prec: self.prec.max(other.prec),
        }
        .normalized()
    }

    pub fn neg(&self) -> Self {
        Self {
            mid: -&self.mid,
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let am = self.mid.magnitude();
        let bm = other.mid.magnitude();
        Self {
            mid: &self.mid * &other.mid,
            rad: am * &other.rad + bm * &self.rad + &self.rad * &other.rad,
            exp: self.exp + other.exp,
            prec: self.prec.max(other.prec),
        }
        .normalized()
    }

    pub fn mul_int(&self, x: &BigInt) -> Self {
        Self {
            mid: &self.mid * x,
            rad: &self.rad * x.magnitude(),
            exp: self.exp,
            prec: self.prec,
        }
        .normalized()
    }

    /// Enclosure of `|x|` for `x` in the ball.
    pub fn abs(&self) -> Self {
        if self.lo_int().sign() != Sign::Minus {
            return self.clone();
        }
        if self.hi_int().sign() != Sign::Plus {
            return self.neg();
        }
        // Straddles zero: enclose [0, max(|lo|, |hi|)].
        let top = self
            .lo_int()
            .magnitude()
            .clone()
            .max(self.hi_int().magnitude().clone());
        let half = (&top + 1u32) >> 1usize;
        Self {
            mid: BigInt::from(half.clone()),
            rad: half,
            exp: self.exp,
            prec: self.prec,
        }
        .normalized()
    }

    /// Enclosure of `1/x`; the ball must exclude zero.
    pub fn recip(&self) -> Result<Self> {
        if !self.excludes_zero() {
            return Err(Error::Domain("reciprocal of a ball containing zero".into()));
        }
        if self.mid.is_negative() {
            return Ok(self.neg().recip()?.neg());
        }
        let lo = self.lo_int();
        let hi = self.hi_int();
        let s = self.prec + hi.bits() + 2;
        let num = BigInt::one() << s as usize;
        let q_lo = num.div_floor(&hi);
        let q_hi = num.div_ceil(&lo);
        let mid = (&q_lo + &q_hi) >> 1usize;
        let rad = (&q_hi - &mid).magnitude().clone();
        Ok(Self {
            mid,
            rad,
            exp: -(s as i64) - self.exp,
            prec: self.prec,
        }
        .normalized())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.recip()?))
    }

    /// Enclosure of `e^x` for an exact rational `x`.
    pub fn exp_rational(x: &BigRational, prec: u64) -> Self {
        if x.is_zero() {
            return Self::from_i64(1, prec);
        }
        let ax = x.abs();
        // Reduce the argument below 2^-8, then square back up.
        let mag = ax.numer().bits() as i64 - ax.denom().bits() as i64 + 1;
        let halvings = (mag + 8).max(0) as u64;
        let guard = halvings + 2 * (64 - (prec + 64).leading_zeros() as u64) + 24;
        let frac_bits = prec + guard;

        let p = ax.numer().clone();
        let q = ax.denom().clone() << halvings as usize;
        let mut sum = BigInt::zero();
        let mut term = BigInt::one() << frac_bits as usize;
        let mut steps: u64 = 0;
        while !term.is_zero() {
            sum += &term;
            steps += 1;
            term = (term * &p).div_floor(&(&q * steps));
        }
        // Each step floors once; the error of term i is below i units and the
        // discarded tail is below two units per step.
        let err = (steps + 2) * (steps + 2);
        let mut ball = Self {
            mid: sum,
            rad: BigUint::from(err),
            exp: -(frac_bits as i64),
            prec: frac_bits,
        }
        .normalized();
        for _ in 0..halvings {
            ball = ball.mul(&ball);
        }
        if x.is_negative() {
            ball = ball.recip().expect("e^x is positive");
        }
        ball.with_precision(prec)
    }

    /// Enclosure of `e^{j/n}`.
    pub fn exp_fraction(j: u64, n: u64, prec: u64) -> Self {
        Self::exp_rational(&BigRational::new(j.into(), n.into()), prec)
    }

    pub fn contains_rational(&self, q: &BigRational) -> bool {
        &self.lower() <= q && q <= &self.upper()
    }

    /// Whether `other` lies entirely inside `self`.
    pub fn contains(&self, other: &Self) -> bool {
        self.lower() <= other.lower() && other.upper() <= self.upper()
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        !(self.strictly_below(other) || other.strictly_below(self))
    }

    /// Every point of `self` is smaller than every point of `other`.
    pub fn strictly_below(&self, other: &Self) -> bool {
        let (a, b, _) = Self::align(&self.hi_int(), self.exp, &other.lo_int(), other.exp);
        a < b
    }

    pub fn is_positive(&self) -> bool {
        self.lo_int().is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi_int().is_negative()
    }

    pub fn excludes_zero(&self) -> bool {
        self.is_positive() || self.is_negative()
    }

    /// Radius below `tolerance` (absolute), otherwise an insufficient-precision error.
    pub fn require_radius_below(&self, tolerance: &BigRational) -> Result<()> {
        if &self.radius() <= tolerance {
            Ok(())
        } else {
            Err(Error::InsufficientPrecision {
                precision_bits: self.prec,
                radius: self.radius_f64(),
                tolerance: tolerance.to_f64().unwrap_or(f64::NAN),
            })
        }
    }

    /// Radius below `|mid| / 4`.
    pub fn is_well_resolved(&self) -> bool {
        (&self.rad << 2usize) < *self.mid.magnitude()
    }

    pub fn to_f64(&self) -> f64 {
        scaled_f64(&self.mid, self.exp)
    }

    pub fn radius_f64(&self) -> f64 {
        scaled_f64(&BigInt::from(self.rad.clone()), self.exp)
    }

    /// `ln |mid|`, finite far outside the `f64` range.
    pub fn ln_abs_mid(&self) -> f64 {
        ln_abs_int(&self.mid) + self.exp as f64 * std::f64::consts::LN_2
    }

    /// `ln` of the upper end of `|x|` over the ball.
    pub fn ln_abs_upper(&self) -> f64 {
        let top = self
            .lo_int()
            .magnitude()
            .clone()
            .max(self.hi_int().magnitude().clone());
        ln_abs_int(&BigInt::from(top)) + self.exp as f64 * std::f64::consts::LN_2
    }

    pub fn mid_decimal(&self, digits: usize) -> String {
        self.midpoint().to_sci_string(digits, false)
    }

    pub fn rad_decimal(&self) -> String {
        if self.rad.is_zero() {
            return "0".into();
        }
        self.radius().to_sci_string(3, true)
    }
}

fn dyadic(m: &BigInt, exp: i64) -> BigRational {
    if exp >= 0 {
        BigRational::from_integer(shl_int(m, exp))
    } else {
        BigRational::new(m.clone(), BigInt::one() << (-exp) as usize)
    }
}

fn scaled_f64(m: &BigInt, exp: i64) -> f64 {
    if m.is_zero() {
        return 0.0;
    }
    let bits = m.bits() as i64;
    let shift = (bits - 64).max(0);
    let top = (m >> shift as usize).to_f64().unwrap_or(f64::NAN);
    let e = shift + exp;
    // Two steps keep intermediate powers of two inside the f64 range.
    let e1 = (e / 2).clamp(-1100, 1100) as i32;
    let e2 = (e - e1 as i64).clamp(-1100, 1100) as i32;
    top * 2f64.powi(e1) * 2f64.powi(e2)
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} +/- {}]", self.mid_decimal(20), self.rad_decimal())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use proptest::prelude::*;

    /// Partial sums of the exponential series in exact rationals, with the
    /// geometric tail bound, as an oracle independent of the ball kernel.
    fn exp_oracle(x: &BigRational, terms: usize) -> (BigRational, BigRational) {
        let mut sum = BigRational::zero();
        let mut term = BigRational::one();
        for i in 1..=terms {
            sum += &term;
            term = term * x / BigRational::from_integer(i.into());
        }
        // |tail| <= 2 |next term| once |x| <= (terms+1)/2
        let tail = term.abs() * BigRational::from_integer(2.into());
        (sum, tail)
    }

    #[test]
    fn e_to_the_one_and_half() {
        let e = Ball::exp_fraction(2, 2, 128);
        assert!((e.to_f64() - std::f64::consts::E).abs() < 1e-15);
        let (s, t) = exp_oracle(&rat(1, 2), 60);
        let root = Ball::exp_fraction(1, 2, 160);
        assert!(root.contains_rational(&s) || root.overlaps(&Ball::from_rational(&s, 160)));
        assert!((root.midpoint() - &s).abs() <= &t + root.radius());
        assert!((root.to_f64() - 1.6487212707001282).abs() < 1e-15);
    }

    #[test]
    fn e_to_five_halves() {
        let b = Ball::exp_fraction(5, 2, 200);
        let (s, t) = exp_oracle(&rat(5, 2), 120);
        assert!((b.midpoint() - &s).abs() <= &t + b.radius());
        assert!((b.to_f64() - 12.182493960703473).abs() < 1e-13);
    }

    #[test]
    fn radius_contract() {
        for prec in [16u64, 53, 100, 1000] {
            for (j, n) in [(1u64, 2u64), (5, 2), (3, 3), (7, 4)] {
                let b = Ball::exp_fraction(j, n, prec);
                let val = (j as f64 / n as f64).exp();
                let bound = 2f64.powi(-(prec as i32) + 4) * val;
                assert!(b.radius_f64() <= bound, "prec {prec} j {j} n {n}");
            }
        }
    }

    #[test]
    fn doubling_precision_halves_radius() {
        let a = Ball::exp_fraction(1, 3, 200);
        let b = Ball::exp_fraction(1, 3, 400);
        assert!(b.radius_f64() * 2.0 <= a.radius_f64());
        assert!(a.contains(&b) || a.overlaps(&b));
    }

    #[test]
    fn negative_argument_and_recip() {
        let a = Ball::exp_rational(&rat(-3, 7), 150);
        let b = Ball::exp_rational(&rat(3, 7), 150);
        let one = a.mul(&b);
        assert!(one.contains_rational(&rat(1, 1)));
    }

    #[test]
    fn abs_of_straddling_ball() {
        let b = Ball::from_rational(&rat(1, 3), 10).sub(&Ball::from_rational(&rat(1, 3), 10));
        let a = b.abs();
        assert!(!a.is_negative());
        assert!(a.contains_rational(&rat(0, 1)));
    }

    #[test]
    fn ordering_helpers() {
        let a = Ball::from_rational(&rat(1, 3), 64);
        let b = Ball::from_rational(&rat(1, 2), 64);
        assert!(a.strictly_below(&b));
        assert!(!b.strictly_below(&a));
        assert!(a.is_positive() && a.excludes_zero());
        assert!(a.require_radius_below(&rat(1, 1_000_000)).is_ok());
        assert!(matches!(
            a.require_radius_below(&rat(0, 1)),
            Err(Error::InsufficientPrecision { .. })
        ));
    }

    #[test]
    fn huge_and_tiny_scales() {
        let big = Ball::from_int(&(BigInt::one() << 5000usize), 64);
        assert!((big.ln_abs_mid() - 5000.0 * std::f64::consts::LN_2).abs() < 1e-9);
        let tiny = Ball::from_int(&BigInt::one(), 64).div(&big).unwrap();
        assert!((tiny.ln_abs_mid() + 5000.0 * std::f64::consts::LN_2).abs() < 1e-9);
        assert_eq!(tiny.to_f64(), 0.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn exp_containment(num in -400i64..400, den in 1i64..60, prec in 24u64..160) {
            let x = rat(num, den);
            let coarse = Ball::exp_rational(&x, prec);
            let fine = Ball::exp_rational(&x, 4 * prec);
            prop_assert!(coarse.contains_rational(&fine.midpoint()));
        }

        #[test]
        fn arithmetic_contains_exact(a in -1000i64..1000, b in 1i64..97, c in -1000i64..1000, d in 1i64..89) {
            let x = rat(a, b);
            let y = rat(c, d);
            let bx = Ball::from_rational(&x, 40);
            let by = Ball::from_rational(&y, 40);
            prop_assert!(bx.add(&by).contains_rational(&(&x + &y)));
            prop_assert!(bx.sub(&by).contains_rational(&(&x - &y)));
            prop_assert!(bx.mul(&by).contains_rational(&(&x * &y)));
            if !y.is_zero() {
                prop_assert!(bx.div(&by).unwrap().contains_rational(&(&x / &y)));
            }
            prop_assert!(bx.abs().contains_rational(&x.abs()));
        }
    }
}
