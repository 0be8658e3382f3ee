use std::io;
use std::path::PathBuf;

use crate::volume::Dims;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: Dims, actual: Dims },

    #[error("invalid dimensions {0}: every extent must be at least 1")]
    InvalidDims(Dims),

    #[error("sample buffer holds {actual} values, {expected} expected")]
    BufferLength { expected: usize, actual: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParam { name: &'static str, reason: String },

    #[error("cube ({0}, {1}, {2}) has no unknown samples")]
    CubeWithoutHoles(usize, usize, usize),

    #[error("cube ({x}, {y}, {t}) lies outside a {gx}x{gy}x{gt} grid", gx = .grid.0, gy = .grid.1, gt = .grid.2)]
    CubeOutOfRange {
        x: usize,
        y: usize,
        t: usize,
        grid: (usize, usize, usize),
    },

    #[error("cube fill expects {expected} values, got {actual}")]
    FillLength { expected: usize, actual: usize },

    #[error("extrapolation window has no support samples")]
    NoSupport,

    #[error("non-finite sample {value} at window offset {offset}")]
    NonFinite { offset: usize, value: f64 },

    #[error("pattern cross-section {section:?} does not fit in a {width}x{height} frame")]
    PatternTooLarge {
        section: (usize, usize),
        width: usize,
        height: usize,
    },

    #[error("frame {width}x{height} is smaller than the {window}x{window} SSIM window")]
    FrameTooSmall { width: usize, height: usize, window: usize },

    #[error("mask contains no hole samples")]
    EmptyHoleSet,

    #[error("processing order is incomplete: {remaining} cubes still pending")]
    RunIncomplete { remaining: usize },

    #[error("{path}: {detail} (byte offset {offset})")]
    Format { path: PathBuf, offset: u64, detail: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn format(path: impl Into<PathBuf>, offset: u64, detail: impl Into<String>) -> Self {
        Error::Format {
            path: path.into(),
            offset,
            detail: detail.into(),
        }
    }
}
