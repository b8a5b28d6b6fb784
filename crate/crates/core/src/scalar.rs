//! Scalar traits shared by the numeric modules.

use std::fmt::Debug;

use num_traits::{Float, FloatConst, FromPrimitive, Num, ToPrimitive};

use crate::dd::Dd;

/// Floating-point scalar accepted by the kernel, quadrature and bound
/// evaluators.
pub trait Real:
    Float + FloatConst + FromPrimitive + Send + Sync + Debug + std::fmt::Display + 'static
{
    /// Converts an `f64` literal, panicking only if the type cannot hold it.
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal not representable")
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Field scalar for exponent-pair arithmetic: exact rationals or floats.
pub trait PairScalar: Clone + PartialOrd + Num + Debug + ToPrimitive {
    fn two() -> Self {
        Self::one() + Self::one()
    }

    fn half() -> Self {
        Self::one() / Self::two()
    }

    fn as_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

impl<T: Clone + PartialOrd + Num + Debug + ToPrimitive> PairScalar for T {}

/// Scalar used to hold values `n^c` in the counting and exponential sum
/// code. `Dd` is the production choice; `f64` serves as a low-precision
/// reference.
pub trait PowerScalar:
    Copy
    + PartialOrd
    + Debug
    + Send
    + Sync
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + 'static
{
    fn from_f64(v: f64) -> Self;
    /// `n^c` for a positive integer `n`.
    fn int_pow(n: u64, c: f64) -> Self;
    fn to_f64(self) -> f64;
    fn abs(self) -> Self;
    /// Fractional part of `self * x`, reduced to `[-1/2, 1/2]`.
    fn phase(self, x: f64) -> f64;
}

impl PowerScalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }

    fn int_pow(n: u64, c: f64) -> Self {
        (n as f64).powf(c)
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn abs(self) -> Self {
        f64::abs(self)
    }

    fn phase(self, x: f64) -> f64 {
        let t = self * x;
        t - t.round()
    }
}

impl PowerScalar for Dd {
    fn from_f64(v: f64) -> Self {
        Dd::from(v)
    }

    fn int_pow(n: u64, c: f64) -> Self {
        Dd::from_u64(n).powf(c)
    }

    fn to_f64(self) -> f64 {
        self.to_f64()
    }

    fn abs(self) -> Self {
        Dd::abs(self)
    }

    fn phase(self, x: f64) -> f64 {
        let t = self.mul_f64(x);
        (t - t.round()).to_f64()
    }
}
