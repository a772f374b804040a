use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Field-like coefficient type shared by the float numerics and the exact
/// rational polynomial algebra.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    fn to_f64(&self) -> f64;

    /// Whether `self` counts as zero next to quantities of size `scale`
    /// (relative 1e-12 for floats). Exact types answer exactly.
    fn is_negligible(&self, scale: f64) -> bool;

    fn half() -> Self {
        Self::one() / Self::from_i64(2)
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_negligible(&self, scale: f64) -> bool {
        self.abs() <= 1e-12 * scale.abs()
    }

    fn half() -> Self {
        0.5
    }
}

pub type Rational = BigRational;

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn to_f64(&self) -> f64 {
        // numerator/denominator may individually overflow f64
        match (self.numer().to_f64(), self.denom().to_f64()) {
            (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
            _ => {
                let shift = self.denom().bits().max(self.numer().bits()) as i64 - 60;
                let scaled = if shift > 0 {
                    BigRational::new(
                        self.numer() >> shift as usize,
                        self.denom() >> shift as usize,
                    )
                } else {
                    self.clone()
                };
                scaled.numer().to_f64().unwrap_or(f64::NAN)
                    / scaled.denom().to_f64().unwrap_or(f64::NAN)
            }
        }
    }

    fn is_negligible(&self, _scale: f64) -> bool {
        self.is_zero()
    }
}

/// Build an exact rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub(crate) fn abs_f64<T: Scalar>(v: &T) -> f64 {
    v.to_f64().abs()
}
