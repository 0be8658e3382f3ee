//! Video volumes and their hole masks.
//!
//! Both containers store samples frame by frame, row by row, with `x`
//! running fastest. This is the byte order of headerless raw video, so
//! reading and writing files is a straight copy.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Largest value of the 8-bit native sample range.
pub const SAMPLE_MAX: f64 = 255.0;

/// Extents of a video volume: width `x`, height `y`, frame count `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Dims {
    pub width: usize,
    pub height: usize,
    pub frames: usize,
}

impl Dims {
    pub const fn new(width: usize, height: usize, frames: usize) -> Self {
        Dims { width, height, frames }
    }

    pub fn validate(self) -> Result<Self> {
        if self.width == 0 || self.height == 0 || self.frames == 0 {
            return Err(Error::InvalidDims(self));
        }
        Ok(self)
    }

    #[inline]
    pub const fn frame_len(self) -> usize {
        self.width * self.height
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.width * self.height * self.frames
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub const fn index(self, x: usize, y: usize, t: usize) -> usize {
        x + self.width * (y + self.height * t)
    }

    /// Index of a signed coordinate, or `None` when it falls outside.
    #[inline]
    pub fn checked_index(self, x: isize, y: isize, t: isize) -> Option<usize> {
        if x < 0 || y < 0 || t < 0 {
            return None;
        }
        let (x, y, t) = (x as usize, y as usize, t as usize);
        if x >= self.width || y >= self.height || t >= self.frames {
            return None;
        }
        Some(self.index(x, y, t))
    }

    #[inline]
    pub const fn coords(self, index: usize) -> (usize, usize, usize) {
        let x = index % self.width;
        let rest = index / self.width;
        (x, rest % self.height, rest / self.height)
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}x{}", self.width, self.height, self.frames)
    }
}

/// Luma samples `v[x, y, t]`.
#[derive(Debug, Clone, PartialEq)]
pub struct VideoVolume<T> {
    dims: Dims,
    samples: Vec<T>,
}

impl<T: Scalar> VideoVolume<T> {
    pub fn from_samples(dims: Dims, samples: Vec<T>) -> Result<Self> {
        dims.validate()?;
        if samples.len() != dims.len() {
            return Err(Error::BufferLength {
                expected: dims.len(),
                actual: samples.len(),
            });
        }
        Ok(VideoVolume { dims, samples })
    }

    pub fn filled(dims: Dims, value: T) -> Result<Self> {
        dims.validate()?;
        Ok(VideoVolume {
            dims,
            samples: vec![value; dims.len()],
        })
    }

    /// Builds a volume by evaluating `f(x, y, t)` at every sample.
    pub fn from_fn(dims: Dims, mut f: impl FnMut(usize, usize, usize) -> T) -> Result<Self> {
        dims.validate()?;
        let mut samples = Vec::with_capacity(dims.len());
        for t in 0..dims.frames {
            for y in 0..dims.height {
                for x in 0..dims.width {
                    samples.push(f(x, y, t));
                }
            }
        }
        Ok(VideoVolume { dims, samples })
    }

    #[inline]
    pub fn dims(&self) -> Dims {
        self.dims
    }

    #[inline]
    pub fn samples(&self) -> &[T] {
        &self.samples
    }

    #[inline]
    pub fn samples_mut(&mut self) -> &mut [T] {
        &mut self.samples
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, t: usize) -> T {
        self.samples[self.dims.index(x, y, t)]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, t: usize, value: T) {
        let i = self.dims.index(x, y, t);
        self.samples[i] = value;
    }

    /// One frame as a row-major slice.
    pub fn frame(&self, t: usize) -> &[T] {
        let len = self.dims.frame_len();
        &self.samples[t * len..(t + 1) * len]
    }

    pub fn into_samples(self) -> Vec<T> {
        self.samples
    }
}

/// Per-sample hole state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum SampleState {
    #[default]
    Known,
    Unknown,
    Reconstructed,
}

impl SampleState {
    /// True for samples that belong to a hole, filled or not.
    #[inline]
    pub fn is_hole(self) -> bool {
        !matches!(self, SampleState::Known)
    }
}

/// Tri-state mask aligned with a [`VideoVolume`].
///
/// The only legal transition is `Unknown -> Reconstructed`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoleMask {
    dims: Dims,
    states: Vec<SampleState>,
}

impl HoleMask {
    /// Mask with every sample known.
    pub fn new(dims: Dims) -> Result<Self> {
        dims.validate()?;
        Ok(HoleMask {
            dims,
            states: vec![SampleState::Known; dims.len()],
        })
    }

    pub fn from_states(dims: Dims, states: Vec<SampleState>) -> Result<Self> {
        dims.validate()?;
        if states.len() != dims.len() {
            return Err(Error::BufferLength {
                expected: dims.len(),
                actual: states.len(),
            });
        }
        Ok(HoleMask { dims, states })
    }

    /// Builds a mask where `f(x, y, t)` marks the unknown samples.
    pub fn from_fn(dims: Dims, mut f: impl FnMut(usize, usize, usize) -> bool) -> Result<Self> {
        let mut mask = HoleMask::new(dims)?;
        for (i, s) in mask.states.iter_mut().enumerate() {
            let (x, y, t) = dims.coords(i);
            if f(x, y, t) {
                *s = SampleState::Unknown;
            }
        }
        Ok(mask)
    }

    #[inline]
    pub fn dims(&self) -> Dims {
        self.dims
    }

    #[inline]
    pub fn states(&self) -> &[SampleState] {
        &self.states
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, t: usize) -> SampleState {
        self.states[self.dims.index(x, y, t)]
    }

    /// Marks a known sample as a hole. Used by mask generators.
    #[inline]
    pub fn mark_unknown(&mut self, x: usize, y: usize, t: usize) {
        let i = self.dims.index(x, y, t);
        if self.states[i] == SampleState::Known {
            self.states[i] = SampleState::Unknown;
        }
    }

    /// Flips an unknown sample to reconstructed; other states are untouched.
    #[inline]
    pub(crate) fn mark_reconstructed(&mut self, index: usize) {
        if self.states[index] == SampleState::Unknown {
            self.states[index] = SampleState::Reconstructed;
        }
    }

    pub fn count(&self, state: SampleState) -> usize {
        self.states.iter().filter(|&&s| s == state).count()
    }

    /// Number of hole samples, filled or not.
    pub fn hole_count(&self) -> usize {
        self.states.iter().filter(|s| s.is_hole()).count()
    }

    /// Fraction of samples that belong to a hole.
    pub fn hole_ratio(&self) -> f64 {
        self.hole_count() as f64 / self.dims.len() as f64
    }

    pub fn ensure_matches(&self, dims: Dims) -> Result<()> {
        if self.dims != dims {
            return Err(Error::DimensionMismatch {
                expected: dims,
                actual: self.dims,
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trips_through_coords() {
        let dims = Dims::new(5, 3, 4);
        for i in 0..dims.len() {
            let (x, y, t) = dims.coords(i);
            assert_eq!(dims.index(x, y, t), i);
        }
        assert_eq!(dims.checked_index(-1, 0, 0), None);
        assert_eq!(dims.checked_index(4, 2, 3), Some(dims.len() - 1));
        assert_eq!(dims.checked_index(5, 0, 0), None);
    }

    #[test]
    fn zero_extent_rejected() {
        assert!(matches!(
            VideoVolume::<f64>::filled(Dims::new(0, 2, 2), 0.0),
            Err(Error::InvalidDims(_))
        ));
        assert!(HoleMask::new(Dims::new(2, 2, 0)).is_err());
    }

    #[test]
    fn buffer_length_checked() {
        let err = VideoVolume::from_samples(Dims::new(2, 2, 2), vec![0.0f64; 7]).unwrap_err();
        assert!(matches!(err, Error::BufferLength { expected: 8, actual: 7 }));
    }

    #[test]
    fn known_samples_never_become_reconstructed() {
        let dims = Dims::new(2, 1, 1);
        let mut mask = HoleMask::from_fn(dims, |x, _, _| x == 1).unwrap();
        mask.mark_reconstructed(0);
        mask.mark_reconstructed(1);
        assert_eq!(mask.states(), &[SampleState::Known, SampleState::Reconstructed]);
        assert_eq!(mask.hole_count(), 1);
        assert_eq!(mask.hole_ratio(), 0.5);
    }
}
