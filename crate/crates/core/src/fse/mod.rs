//! Frequency selective extrapolation of a single cube.
//!
//! A window around the cube is modeled as a sparse, weighted sum of 3D
//! Fourier basis functions; the model evaluated on the cube's unknown
//! samples is the reconstruction. [`model_fd`] is the production path,
//! [`model_sd`] the direct reference.

mod fft;
mod spatial;
mod spectral;
mod weights;

pub use fft::Fft3;
pub use spatial::{model_sd, SpatialModel};
pub use spectral::{model_fd, model_fd_traced, IterationTrace, Selection, SpectralState, TracedModel};
pub use weights::{build_weights, decay_table, WeightField};

use crate::error::{Error, Result};
use crate::grid::{CubeGrid, CubeIndex};
use crate::params::{FseParams, NO_SUPPORT_FALLBACK};
use crate::scalar::Scalar;
use crate::volume::{HoleMask, VideoVolume};
use crate::window::{extract_window, unknown_in_cube, WindowShape};

/// Reconstruction of one cube, ordered like [`unknown_in_cube`].
#[derive(Debug, Clone, PartialEq)]
pub struct CubeFill<T> {
    pub cube: CubeIndex,
    pub values: Vec<T>,
    /// The window had no support; `values` hold the neutral fallback.
    pub no_support: bool,
}

/// Reusable per-parameter state: transform plans and the decay table.
///
/// Shared by reference across worker threads.
#[derive(Debug, Clone)]
pub struct Extrapolator<T: Scalar> {
    params: FseParams<T>,
    fft: Fft3<T>,
    decay: Vec<T>,
}

impl<T: Scalar> Extrapolator<T> {
    pub fn new(params: FseParams<T>) -> Result<Self> {
        params.validate()?;
        let shape = WindowShape::cubic(params.window());
        Ok(Extrapolator {
            fft: Fft3::new(shape),
            decay: decay_table(shape, params.rho_hat),
            params,
        })
    }

    #[inline]
    pub fn params(&self) -> &FseParams<T> {
        &self.params
    }

    #[inline]
    pub fn fft(&self) -> &Fft3<T> {
        &self.fft
    }

    /// Models the window around `cube` and returns the real model values
    /// at the cube's unknown samples, unclamped.
    pub fn fill_cube(
        &self,
        volume: &VideoVolume<T>,
        mask: &HoleMask,
        grid: &CubeGrid,
        cube: CubeIndex,
    ) -> Result<CubeFill<T>> {
        let window = extract_window(volume, mask, grid, cube, &self.params)?;
        let targets = unknown_in_cube(mask, grid, cube);
        let weights = match weights::build_weights_with_decay(&window, &self.decay, self.params.delta, &self.fft) {
            Ok(w) => w,
            Err(Error::NoSupport) => {
                return Ok(CubeFill {
                    cube,
                    values: vec![T::lit(NO_SUPPORT_FALLBACK); targets.len()],
                    no_support: true,
                })
            }
            Err(e) => return Err(e),
        };
        let (model, _) = model_fd(&window, &weights, &self.params, &self.fft)?;
        let dims = volume.dims();
        let values = targets
            .iter()
            .map(|&i| {
                let (x, y, t) = dims.coords(i);
                let local = window
                    .local_index(x, y, t)
                    .expect("cube samples lie inside their window");
                model[local]
            })
            .collect();
        Ok(CubeFill {
            cube,
            values,
            no_support: false,
        })
    }
}

/// One-off [`Extrapolator::fill_cube`].
pub fn fill_cube<T: Scalar>(
    volume: &VideoVolume<T>,
    mask: &HoleMask,
    grid: &CubeGrid,
    cube: CubeIndex,
    params: &FseParams<T>,
) -> Result<CubeFill<T>> {
    Extrapolator::new(*params)?.fill_cube(volume, mask, grid, cube)
}
