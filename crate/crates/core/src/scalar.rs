//! Floating-point abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, NumAssign};
use rustfft::FftNum;

/// Real sample type the modeling core is generic over (`f32` or `f64`).
/// `lit` and `as_f64` are lossless for `f64` and round for `f32`.
pub trait Scalar: FftNum + Float + FloatConst + NumAssign + Display + Debug + Default {
    fn lit(v: f64) -> Self;
    fn as_f64(self) -> f64;
}

impl Scalar for f32 {
    #[inline]
    fn lit(v: f64) -> Self {
        v as f32
    }
    #[inline]
    fn as_f64(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    #[inline]
    fn lit(v: f64) -> Self {
        v
    }
    #[inline]
    fn as_f64(self) -> f64 {
        self
    }
}
