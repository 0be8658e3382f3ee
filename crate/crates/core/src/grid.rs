//! Partition of a volume into cubes.

use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::volume::{Dims, HoleMask, SampleState, VideoVolume};

/// Position of a cube on the cube grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CubeIndex {
    pub x: usize,
    pub y: usize,
    pub t: usize,
}

impl CubeIndex {
    pub const fn new(x: usize, y: usize, t: usize) -> Self {
        CubeIndex { x, y, t }
    }

    /// Chebyshev distance on the grid; 1 means the cubes touch.
    pub fn chebyshev(self, other: CubeIndex) -> usize {
        self.x
            .abs_diff(other.x)
            .max(self.y.abs_diff(other.y))
            .max(self.t.abs_diff(other.t))
    }
}

/// How many faces of the grid a cube lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryKind {
    Interior,
    Side,
    Edge,
    Corner,
}

/// The volume split into `cube`-sized blocks. Edge cubes are truncated
/// when an extent is not a multiple of the cube size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeGrid {
    cube: usize,
    volume: Dims,
    shape: Dims,
    has_unknown: Vec<bool>,
}

/// Splits `volume` into `cube`³ blocks and records which of them contain
/// unknown samples.
pub fn partition<T: Scalar>(volume: &VideoVolume<T>, mask: &HoleMask, cube: usize) -> Result<CubeGrid> {
    mask.ensure_matches(volume.dims())?;
    CubeGrid::from_mask(mask, cube)
}

impl CubeGrid {
    pub fn from_mask(mask: &HoleMask, cube: usize) -> Result<Self> {
        if cube == 0 {
            return Err(Error::InvalidParam {
                name: "cube",
                reason: "must be at least 1".into(),
            });
        }
        let volume = mask.dims();
        let shape = Dims::new(
            volume.width.div_ceil(cube),
            volume.height.div_ceil(cube),
            volume.frames.div_ceil(cube),
        );
        let mut has_unknown = vec![false; shape.len()];
        for (i, state) in mask.states().iter().enumerate() {
            if *state == SampleState::Unknown {
                let (x, y, t) = volume.coords(i);
                has_unknown[shape.index(x / cube, y / cube, t / cube)] = true;
            }
        }
        Ok(CubeGrid {
            cube,
            volume,
            shape,
            has_unknown,
        })
    }

    #[inline]
    pub fn cube_size(&self) -> usize {
        self.cube
    }

    #[inline]
    pub fn volume_dims(&self) -> Dims {
        self.volume
    }

    /// Number of cubes along each axis.
    #[inline]
    pub fn shape(&self) -> Dims {
        self.shape
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.shape.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Linear index in scan order: x fastest, then y, then t.
    #[inline]
    pub fn linear(&self, c: CubeIndex) -> usize {
        self.shape.index(c.x, c.y, c.t)
    }

    #[inline]
    pub fn cube_at(&self, linear: usize) -> CubeIndex {
        let (x, y, t) = self.shape.coords(linear);
        CubeIndex { x, y, t }
    }

    pub fn check(&self, c: CubeIndex) -> Result<()> {
        if c.x >= self.shape.width || c.y >= self.shape.height || c.t >= self.shape.frames {
            return Err(Error::CubeOutOfRange {
                x: c.x,
                y: c.y,
                t: c.t,
                grid: (self.shape.width, self.shape.height, self.shape.frames),
            });
        }
        Ok(())
    }

    /// True if the cube contained unknown samples when the grid was built.
    #[inline]
    pub fn has_unknown(&self, c: CubeIndex) -> bool {
        self.has_unknown[self.linear(c)]
    }

    /// All cubes in scan order.
    pub fn cubes(&self) -> impl Iterator<Item = CubeIndex> + '_ {
        (0..self.len()).map(|i| self.cube_at(i))
    }

    /// Cubes that contained unknown samples, in scan order.
    pub fn hole_cubes(&self) -> impl Iterator<Item = CubeIndex> + '_ {
        self.cubes().filter(|&c| self.has_unknown(c))
    }

    /// Sample ranges covered by a cube, truncated at the volume border.
    pub fn extent(&self, c: CubeIndex) -> [Range<usize>; 3] {
        let span = |i: usize, len: usize| i * self.cube..((i + 1) * self.cube).min(len);
        [
            span(c.x, self.volume.width),
            span(c.y, self.volume.height),
            span(c.t, self.volume.frames),
        ]
    }

    /// The up to 26 cubes touching `c`, in scan order.
    pub fn neighbors(&self, c: CubeIndex) -> impl Iterator<Item = CubeIndex> {
        let shape = self.shape;
        let around = |i: usize, len: usize| i.saturating_sub(1)..(i + 2).min(len);
        let (xs, ys, ts) = (
            around(c.x, shape.width),
            around(c.y, shape.height),
            around(c.t, shape.frames),
        );
        ts.flat_map(move |t| {
            let xs = xs.clone();
            ys.clone()
                .flat_map(move |y| xs.clone().map(move |x| CubeIndex { x, y, t }))
        })
        .filter(move |&n| n != c)
    }

    /// Number of grid faces the cube touches (0..=3).
    pub fn boundary_kind(&self, c: CubeIndex) -> BoundaryKind {
        let on = |i: usize, len: usize| usize::from(i == 0 || i + 1 == len);
        match on(c.x, self.shape.width) + on(c.y, self.shape.height) + on(c.t, self.shape.frames) {
            0 => BoundaryKind::Interior,
            1 => BoundaryKind::Side,
            2 => BoundaryKind::Edge,
            _ => BoundaryKind::Corner,
        }
    }
}
