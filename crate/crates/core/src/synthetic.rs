//! Synthetic test sequences.

use std::f64::consts::TAU;

use crate::error::Result;
use crate::scalar::Scalar;
use crate::volume::{Dims, VideoVolume};

/// Two sinusoidal gratings drifting in different directions over a
/// diagonal brightness gradient. Values stay within [0, 255].
pub fn moving_gratings<T: Scalar>(dims: Dims) -> Result<VideoVolume<T>> {
    let span = (dims.width + dims.height).max(2) as f64;
    VideoVolume::from_fn(dims, |x, y, t| {
        let (x, y, t) = (x as f64, y as f64, t as f64);
        let gradient = 60.0 * (x + y) / span;
        let a = 40.0 * (TAU * (0.8 * x + 0.6 * y - 1.5 * t) / 17.0).sin();
        let b = 25.0 * (TAU * (-0.3 * x + 0.95 * y + 0.8 * t) / 9.0).sin();
        T::lit(98.0 + gradient + a + b)
    })
}
