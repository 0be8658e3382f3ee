//! Hole filling in video volumes by three-dimensional frequency selective
//! extrapolation.
//!
//! The volume is split into small cubes. Each cube with unknown samples is
//! reconstructed from a window around it by iteratively building a sparse
//! model of 3D Fourier basis functions ([`fse`]). The order in which cubes
//! are filled ([`scheduler`]) is either a plain line scan or an
//! optimized order that closes holes from their margin inwards in
//! batches of non-adjacent cubes.
//!
//! The numeric core is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases below fix it to `f64`, which is what the CLI uses.

pub mod cli;
pub mod error;
pub mod fse;
pub mod grid;
pub mod io;
pub mod metrics;
pub mod params;
pub mod patterns;
pub mod scalar;
pub mod scheduler;
pub mod synthetic;
pub mod volume;
pub mod window;

pub use error::{Error, Result};
pub use grid::{partition, CubeGrid, CubeIndex};
pub use params::FseParams;
pub use scalar::Scalar;
pub use scheduler::{run_fill, FillReport, FillRun, ProcessingOrder};
pub use volume::{Dims, HoleMask, SampleState, VideoVolume};
pub use window::{commit_cube, extract_window, ExtrapolationVolume, SampleClass, WindowShape};

pub type Volume = VideoVolume<f64>;
pub type VolumeF32 = VideoVolume<f32>;
pub type Params = FseParams<f64>;
pub type ParamsF32 = FseParams<f32>;
pub type Window = ExtrapolationVolume<f64>;
pub type Extrapolator = fse::Extrapolator<f64>;
