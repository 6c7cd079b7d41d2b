//! Number types the library is generic over.
//!
//! Everything in the crate is written against [`Scalar`], a field with exact
//! equality. The intended carrier is [`BigRational`]: rank decisions and
//! golden values are only meaningful when arithmetic is exact. `f64` is
//! supported for quick previews and uses an absolute tolerance for zero tests.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{NumOps, One, ToPrimitive, Zero};

/// A field element usable as a coordinate, stress weight or lift coefficient.
pub trait Scalar:
    Clone + Debug + Display + PartialEq + Zero + One + NumOps + Neg<Output = Self> + Send + Sync
{
    /// Whether the value should be treated as zero by elimination and
    /// fold checks. Exact types only ever answer `true` for zero.
    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn from_i64(value: i64) -> Self;

    /// Lossy conversion used for mesh export.
    fn to_f64(&self) -> f64;

    /// Scales `row` by a nonzero factor so its entries become integers,
    /// where that is meaningful. Fraction-free elimination stays cheap
    /// only on integer input.
    fn clear_denominators(_row: &mut [Self]) {}
}

impl Scalar for BigRational {
    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn clear_denominators(row: &mut [Self]) {
        let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        if lcm.is_one() {
            return;
        }
        let factor = BigRational::from_integer(lcm);
        for x in row.iter_mut() {
            *x = x.clone() * factor.clone();
        }
    }
}

impl Scalar for Rational64 {
    fn from_i64(value: i64) -> Self {
        Rational64::from_integer(value)
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Absolute threshold below which an `f64` counts as zero.
pub const F64_EPSILON: f64 = 1e-9;

impl Scalar for f64 {
    fn is_negligible(&self) -> bool {
        self.abs() < F64_EPSILON
    }

    fn from_i64(value: i64) -> Self {
        value as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Builds the rational `numer / denom`.
///
/// # Panics
///
/// Panics if `denom` is zero.
pub fn rational(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Whether a rational is an integer multiple of `period` (which must be nonzero).
pub fn is_multiple_of(value: &BigRational, period: &BigRational) -> bool {
    (value / period).is_integer()
}
