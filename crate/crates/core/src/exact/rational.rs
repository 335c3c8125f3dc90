//! Helpers on top of `num_rational::BigRational`.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// Denominator positive and fraction fully reduced.
pub fn is_canonical(q: &BigRational) -> bool {
    q.denom().is_positive() && q.numer().gcd(q.denom()).is_one()
}

pub trait BigRationalExt {
    /// `ln |q|` as a double; works far outside the `f64` range.
    fn ln_abs(&self) -> f64;
    /// Scientific notation with `digits` significant digits.
    fn to_sci_string(&self, digits: usize, round_up: bool) -> String;
}

impl BigRationalExt for BigRational {
    fn ln_abs(&self) -> f64 {
        ln_abs_int(self.numer()) - ln_abs_int(self.denom())
    }

    fn to_sci_string(&self, digits: usize, round_up: bool) -> String {
        format_sci(self, digits, round_up)
    }
}

/// `ln |x|` for an arbitrary integer, `-inf` for zero.
pub fn ln_abs_int(x: &BigInt) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.abs().to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x.abs() >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Exact decimal rendering of an integer.
pub fn int_string(x: &BigInt) -> String {
    x.to_str_radix(10)
}

fn pow10(e: u32) -> BigInt {
    num_traits::pow(BigInt::from(10), e as usize)
}

fn format_sci(q: &BigRational, digits: usize, round_up: bool) -> String {
    let digits = digits.max(1);
    if q.is_zero() {
        return "0".to_string();
    }
    let neg = q.is_negative();
    let a = q.abs();
    // Estimated decimal exponent, corrected below.
    let mut e10 = (a.ln_abs() / std::f64::consts::LN_10).floor() as i64;
    loop {
        let shift = digits as i64 - 1 - e10;
        let scaled = if shift >= 0 {
            &a * BigRational::from_integer(pow10(shift as u32))
        } else {
            &a / BigRational::from_integer(pow10((-shift) as u32))
        };
        let int = if round_up {
            scaled.ceil().to_integer()
        } else {
            scaled.round().to_integer()
        };
        let s = int.to_str_radix(10);
        if s.len() > digits {
            e10 += 1;
            continue;
        }
        if s.len() < digits {
            e10 -= 1;
            continue;
        }
        let mut out = String::new();
        if neg && int.sign() != Sign::NoSign {
            out.push('-');
        }
        out.push_str(&s[..1]);
        if digits > 1 {
            out.push('.');
            out.push_str(&s[1..]);
        }
        out.push_str(&format!("e{e10}"));
        return out;
    }
}
