//! Extrapolation windows: a cube plus its surrounding border.

use crate::error::{Error, Result};
use crate::grid::{CubeGrid, CubeIndex};
use crate::params::FseParams;
use crate::scalar::Scalar;
use crate::volume::{HoleMask, SampleState, VideoVolume, SAMPLE_MAX};

/// Role of a window sample in model generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SampleClass {
    /// Originally known.
    Available,
    /// Filled by an earlier cube.
    Reconstructed,
    /// Unknown, inside the cube being filled.
    InnerHole,
    /// Unknown outside the cube, or outside the volume.
    OuterHole,
}

impl SampleClass {
    #[inline]
    pub fn is_support(self) -> bool {
        matches!(self, SampleClass::Available | SampleClass::Reconstructed)
    }
}

/// Window extents along x, y and t.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WindowShape {
    pub m: usize,
    pub n: usize,
    pub p: usize,
}

impl WindowShape {
    pub const fn cubic(edge: usize) -> Self {
        WindowShape {
            m: edge,
            n: edge,
            p: edge,
        }
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.m * self.n * self.p
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.len() == 0
    }

    /// Linear index with `p` running fastest, so scan order is the
    /// lexicographic order of `(m, n, p)`.
    #[inline]
    pub const fn index(self, m: usize, n: usize, p: usize) -> usize {
        (m * self.n + n) * self.p + p
    }

    #[inline]
    pub const fn coords(self, index: usize) -> (usize, usize, usize) {
        let p = index % self.p;
        let rest = index / self.p;
        (rest / self.n, rest % self.n, p)
    }
}

/// Samples and classes of one extrapolation window.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtrapolationVolume<T> {
    shape: WindowShape,
    /// Volume coordinate of window sample (0, 0, 0); may be negative.
    origin: [isize; 3],
    signal: Vec<T>,
    classes: Vec<SampleClass>,
}

impl<T: Scalar> ExtrapolationVolume<T> {
    /// Assembles a window from raw parts. Hole samples keep whatever
    /// signal value is given; model generation never reads them.
    pub fn from_parts(shape: WindowShape, signal: Vec<T>, classes: Vec<SampleClass>) -> Result<Self> {
        if shape.is_empty() {
            return Err(Error::InvalidParam {
                name: "window",
                reason: "every extent must be at least 1".into(),
            });
        }
        for len in [signal.len(), classes.len()] {
            if len != shape.len() {
                return Err(Error::BufferLength {
                    expected: shape.len(),
                    actual: len,
                });
            }
        }
        Ok(ExtrapolationVolume {
            shape,
            origin: [0; 3],
            signal,
            classes,
        })
    }

    #[inline]
    pub fn shape(&self) -> WindowShape {
        self.shape
    }

    #[inline]
    pub fn origin(&self) -> [isize; 3] {
        self.origin
    }

    #[inline]
    pub fn signal(&self) -> &[T] {
        &self.signal
    }

    #[inline]
    pub fn classes(&self) -> &[SampleClass] {
        &self.classes
    }

    #[inline]
    pub fn class_at(&self, m: usize, n: usize, p: usize) -> SampleClass {
        self.classes[self.shape.index(m, n, p)]
    }

    pub fn count(&self, class: SampleClass) -> usize {
        self.classes.iter().filter(|&&c| c == class).count()
    }

    /// Window index of a volume coordinate, if it lies inside the window.
    pub fn local_index(&self, x: usize, y: usize, t: usize) -> Option<usize> {
        let local = |v: usize, o: isize, len: usize| {
            let d = v as isize - o;
            (d >= 0 && (d as usize) < len).then_some(d as usize)
        };
        Some(self.shape.index(
            local(x, self.origin[0], self.shape.m)?,
            local(y, self.origin[1], self.shape.n)?,
            local(t, self.origin[2], self.shape.p)?,
        ))
    }
}

/// Volume indices of the unknown samples of a cube, in raster order
/// (x fastest). This is the order cube fills are exchanged in.
pub fn unknown_in_cube(mask: &HoleMask, grid: &CubeGrid, cube: CubeIndex) -> Vec<usize> {
    let dims = mask.dims();
    let [xs, ys, ts] = grid.extent(cube);
    let mut out = Vec::new();
    for t in ts {
        for y in ys.clone() {
            for x in xs.clone() {
                let i = dims.index(x, y, t);
                if mask.states()[i] == SampleState::Unknown {
                    out.push(i);
                }
            }
        }
    }
    out
}

/// Cuts the window centred on `cube` out of the volume and classifies
/// every sample. Window positions outside the volume are classed as
/// [`SampleClass::OuterHole`].
pub fn extract_window<T: Scalar>(
    volume: &VideoVolume<T>,
    mask: &HoleMask,
    grid: &CubeGrid,
    cube: CubeIndex,
    params: &FseParams<T>,
) -> Result<ExtrapolationVolume<T>> {
    let dims = volume.dims();
    mask.ensure_matches(dims)?;
    grid.check(cube)?;
    if grid.volume_dims() != dims {
        return Err(Error::DimensionMismatch {
            expected: dims,
            actual: grid.volume_dims(),
        });
    }
    let [xs, ys, ts] = grid.extent(cube);
    let inside = |x: isize, y: isize, t: isize| {
        xs.contains(&(x as usize)) && ys.contains(&(y as usize)) && ts.contains(&(t as usize))
    };

    let edge = params.window();
    let shape = WindowShape::cubic(edge);
    let c = grid.cube_size() as isize;
    let b = params.border as isize;
    let origin = [
        cube.x as isize * c - b,
        cube.y as isize * c - b,
        cube.t as isize * c - b,
    ];

    let mut signal = vec![T::zero(); shape.len()];
    let mut classes = vec![SampleClass::OuterHole; shape.len()];
    let mut inner = 0usize;
    for m in 0..edge {
        let x = origin[0] + m as isize;
        for n in 0..edge {
            let y = origin[1] + n as isize;
            for p in 0..edge {
                let t = origin[2] + p as isize;
                let Some(vi) = dims.checked_index(x, y, t) else {
                    continue;
                };
                let wi = shape.index(m, n, p);
                signal[wi] = volume.samples()[vi];
                classes[wi] = match mask.states()[vi] {
                    SampleState::Known => SampleClass::Available,
                    SampleState::Reconstructed => SampleClass::Reconstructed,
                    SampleState::Unknown if inside(x, y, t) => {
                        inner += 1;
                        SampleClass::InnerHole
                    }
                    SampleState::Unknown => SampleClass::OuterHole,
                };
            }
        }
    }
    if inner == 0 {
        return Err(Error::CubeWithoutHoles(cube.x, cube.y, cube.t));
    }
    Ok(ExtrapolationVolume {
        shape,
        origin,
        signal,
        classes,
    })
}

/// Writes a cube fill into the volume, clamped to the 8-bit range, and
/// marks the filled samples as reconstructed.
///
/// `values` must hold one value per unknown sample of the cube, ordered
/// as [`unknown_in_cube`] lists them.
pub fn commit_cube<T: Scalar>(
    volume: &mut VideoVolume<T>,
    mask: &mut HoleMask,
    grid: &CubeGrid,
    cube: CubeIndex,
    values: &[T],
) -> Result<()> {
    mask.ensure_matches(volume.dims())?;
    grid.check(cube)?;
    let targets = unknown_in_cube(mask, grid, cube);
    if targets.len() != values.len() {
        return Err(Error::FillLength {
            expected: targets.len(),
            actual: values.len(),
        });
    }
    let hi = T::lit(SAMPLE_MAX);
    let samples = volume.samples_mut();
    for (&i, &v) in targets.iter().zip(values) {
        // NaN clamps to zero.
        samples[i] = if v > hi {
            hi
        } else if v >= T::zero() {
            v
        } else {
            T::zero()
        };
        mask.mark_reconstructed(i);
    }
    Ok(())
}
