//! Coefficient fields.
//!
//! Everything polynomial in this crate is generic over [`Scalar`], which is
//! implemented for `f64` and for exact [`BigRational`]s. Rational inputs give
//! bit-exact coefficients; `f64` is used whenever an input is irrational
//! (an intercenter distance like `sqrt(10)/3`, say).

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive, Zero};

/// A field the critical-polynomial machinery can run over.
pub trait Scalar:
    Num + Signed + Clone + Debug + PartialOrd + FromPrimitive + ToPrimitive + Send + Sync
{
    /// Exact rational image of the value. Every finite `f64` is a dyadic
    /// rational, so this only fails for NaN and infinities.
    fn to_rational(&self) -> Option<BigRational>;

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    fn from_int(k: i64) -> Self {
        Self::from_i64(k).expect("every field contains the integers")
    }
}

impl Scalar for f64 {
    fn to_rational(&self) -> Option<BigRational> {
        BigRational::from_float(*self)
    }
}

impl Scalar for BigRational {
    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
}

/// Shorthand for building a rational `num/den`.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Midpoint of two rationals.
pub(crate) fn midpoint(a: &BigRational, b: &BigRational) -> BigRational {
    (a + b) / BigRational::from_integer(BigInt::from(2))
}

/// Nearest `f64` to a rational, clamped to the representable range.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    match x.to_f64() {
        Some(v) if v.is_finite() => v,
        _ => {
            if x.is_positive() {
                f64::MAX
            } else {
                f64::MIN
            }
        }
    }
}
