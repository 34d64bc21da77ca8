//! Scalar abstraction over machine doubles and arbitrary-precision floats.
//!
//! All numeric kernels in this crate are generic over [`Real`]. Values carry
//! their own precision: arithmetic between two values widens to the larger
//! mantissa, and constants are constructed from an explicit [`Precision`].

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rug::float::Constant;
use rug::ops::CompleteRound;
use rug::Float;

use crate::error::{Error, Result};
use crate::precision::Precision;

pub trait Real:
    Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64, prec: Precision) -> Self;
    fn from_i64(x: i64, prec: Precision) -> Self;
    /// Exactly rounded quotient of two integers.
    fn from_ratio(num: i64, den: i64, prec: Precision) -> Self;
    fn from_big_ratio(q: &BigRational, prec: Precision) -> Self;
    /// Parse a plain decimal string (optionally in scientific notation).
    fn from_decimal_str(s: &str, prec: Precision) -> Result<Self>;

    fn zero(prec: Precision) -> Self;
    fn one(prec: Precision) -> Self;
    fn pi(prec: Precision) -> Self;

    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    /// Square root; caller guarantees a nonnegative argument.
    fn sqrt(&self) -> Self;
    fn abs(&self) -> Self;
    fn floor(&self) -> Self;

    fn to_f64(&self) -> f64;
    /// Decimal string that round-trips at this value's precision.
    fn to_decimal_string(&self) -> String;
    /// Precision this value was constructed at.
    fn precision(&self) -> Precision;

    fn is_zero(&self) -> bool;
    fn is_finite(&self) -> bool;

    fn zero_like(&self) -> Self {
        Self::zero(self.precision())
    }
    fn one_like(&self) -> Self {
        Self::one(self.precision())
    }
}

/// `x^n` by repeated squaring.
pub fn powi<R: Real>(x: &R, n: u32) -> R {
    let mut result = x.one_like();
    let mut base = x.clone();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base.clone();
        }
        base = base.clone() * base;
        e >>= 1;
    }
    result
}

/// 2π at the given precision.
pub fn two_pi<R: Real>(prec: Precision) -> R {
    R::pi(prec) + R::pi(prec)
}

impl Real for f64 {
    fn from_f64(x: f64, _prec: Precision) -> Self {
        x
    }
    fn from_i64(x: i64, _prec: Precision) -> Self {
        x as f64
    }
    fn from_ratio(num: i64, den: i64, _prec: Precision) -> Self {
        num as f64 / den as f64
    }
    fn from_big_ratio(q: &BigRational, _prec: Precision) -> Self {
        // to_f64 on huge numerators can lose bits; split as quotient of doubles
        q.to_f64().unwrap_or_else(|| {
            let n = q.numer().to_f64().unwrap_or(f64::NAN);
            let d = q.denom().to_f64().unwrap_or(f64::NAN);
            n / d
        })
    }
    fn from_decimal_str(s: &str, _prec: Precision) -> Result<Self> {
        s.trim()
            .parse::<f64>()
            .map_err(|e| Error::InvalidInput(format!("bad decimal '{s}': {e}")))
    }
    fn zero(_prec: Precision) -> Self {
        0.0
    }
    fn one(_prec: Precision) -> Self {
        1.0
    }
    fn pi(_prec: Precision) -> Self {
        std::f64::consts::PI
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn floor(&self) -> Self {
        f64::floor(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn to_decimal_string(&self) -> String {
        // shortest round-trip representation
        format!("{self:?}")
    }
    fn precision(&self) -> Precision {
        Precision::Machine
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

/// Arbitrary-precision float. Wraps an MPFR value; binary operations round
/// at the wider of the two operand precisions.
#[derive(Clone, Debug)]
pub struct BigReal(Float);

impl BigReal {
    fn join(a: &BigReal, b: &BigReal) -> u32 {
        a.0.prec().max(b.0.prec())
    }

    pub(crate) fn raw(&self) -> &Float {
        &self.0
    }
}

impl Display for BigReal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        Display::fmt(&self.0, f)
    }
}

impl PartialEq for BigReal {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl Add for BigReal {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let p = Self::join(&self, &rhs);
        BigReal((&self.0 + &rhs.0).complete(p))
    }
}

impl Sub for BigReal {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        let p = Self::join(&self, &rhs);
        BigReal((&self.0 - &rhs.0).complete(p))
    }
}

impl Mul for BigReal {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let p = Self::join(&self, &rhs);
        BigReal((&self.0 * &rhs.0).complete(p))
    }
}

impl Div for BigReal {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let p = Self::join(&self, &rhs);
        BigReal((&self.0 / &rhs.0).complete(p))
    }
}

impl Neg for BigReal {
    type Output = Self;
    fn neg(self) -> Self {
        BigReal(-self.0)
    }
}

fn bigint_to_rug(x: &BigInt) -> rug::Integer {
    // round-trips through the portable string form; construction-time only
    rug::Integer::from_str_radix(&x.to_str_radix(16), 16).expect("bigint radix conversion")
}

impl Real for BigReal {
    fn from_f64(x: f64, prec: Precision) -> Self {
        BigReal(Float::with_val(prec.bits(), x))
    }
    fn from_i64(x: i64, prec: Precision) -> Self {
        BigReal(Float::with_val(prec.bits(), x))
    }
    fn from_ratio(num: i64, den: i64, prec: Precision) -> Self {
        let n = Float::with_val(prec.bits(), num);
        BigReal(Float::with_val(prec.bits(), n / den))
    }
    fn from_big_ratio(q: &BigRational, prec: Precision) -> Self {
        let n = Float::with_val(prec.bits(), bigint_to_rug(q.numer()));
        let d = Float::with_val(prec.bits(), bigint_to_rug(q.denom()));
        BigReal(Float::with_val(prec.bits(), n / d))
    }
    fn from_decimal_str(s: &str, prec: Precision) -> Result<Self> {
        Float::parse(s.trim())
            .map(|p| BigReal(Float::with_val(prec.bits(), p)))
            .map_err(|e| Error::InvalidInput(format!("bad decimal '{s}': {e}")))
    }
    fn zero(prec: Precision) -> Self {
        BigReal(Float::with_val(prec.bits(), 0))
    }
    fn one(prec: Precision) -> Self {
        BigReal(Float::with_val(prec.bits(), 1))
    }
    fn pi(prec: Precision) -> Self {
        BigReal(Float::with_val(prec.bits(), Constant::Pi))
    }
    fn sin(&self) -> Self {
        BigReal(self.0.clone().sin())
    }
    fn cos(&self) -> Self {
        BigReal(self.0.clone().cos())
    }
    fn sqrt(&self) -> Self {
        BigReal(self.0.clone().sqrt())
    }
    fn abs(&self) -> Self {
        BigReal(self.0.clone().abs())
    }
    fn floor(&self) -> Self {
        BigReal(self.0.clone().floor())
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn to_decimal_string(&self) -> String {
        self.0.to_string_radix(10, None)
    }
    fn precision(&self) -> Precision {
        let bits = self.0.prec();
        if bits <= 53 {
            Precision::Machine
        } else {
            Precision::Arbitrary {
                digits: ((bits.saturating_sub(32)) as f64 / 3.3219280948873626).floor() as u32,
            }
        }
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const P100: Precision = Precision::Arbitrary { digits: 100 };

    #[test]
    fn big_real_round_trips_decimal_strings() {
        let x = BigReal::from_ratio(1, 3, P100);
        let s = x.to_decimal_string();
        let y = BigReal::from_decimal_str(&s, P100).unwrap();
        let diff = (x - y).abs();
        assert!(diff < BigReal::from_f64(1e-95, P100));
    }

    #[test]
    fn sin_pi_is_tiny_at_high_precision() {
        let pi = BigReal::pi(P100);
        let s = pi.sin().abs();
        assert!(s < BigReal::from_f64(1e-99, P100), "sin(pi) = {s}");
    }

    #[test]
    fn precision_survives_arithmetic() {
        let x = BigReal::from_i64(2, P100);
        let y = x.clone() * x.clone() - BigReal::from_i64(4, P100);
        assert!(y.is_zero());
        assert_eq!(y.precision().digits10(), 100);
    }

    #[test]
    fn powi_matches_repeated_multiplication() {
        let x = 1.7f64;
        assert!((powi(&x, 5) - x * x * x * x * x).abs() < 1e-12);
        assert_eq!(powi(&x, 0), 1.0);
    }
}
