//! Headerless raw video, raw masks and PGM order maps.
//!
//! Raw video is either plain 8-bit luma (`Y8`) or planar YUV 4:2:0, where
//! only the luma plane is read and the chroma planes are carried through
//! untouched. Masks are one byte per sample in frame order: 0 known,
//! 255 unknown, 128 reconstructed.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::scheduler::OrderMap;
use crate::volume::{Dims, HoleMask, SampleState, VideoVolume, SAMPLE_MAX};

pub const MASK_KNOWN: u8 = 0;
pub const MASK_RECONSTRUCTED: u8 = 128;
pub const MASK_UNKNOWN: u8 = 255;

/// Order-map value for pixels whose cube had no holes.
pub const ORDER_MAP_RESERVED: u8 = 255;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PixelFormat {
    Y8,
    Yuv420p,
}

impl PixelFormat {
    /// Bytes per frame for a `width x height` picture.
    pub fn frame_bytes(self, width: usize, height: usize) -> usize {
        match self {
            PixelFormat::Y8 => width * height,
            PixelFormat::Yuv420p => width * height + 2 * (width.div_ceil(2) * height.div_ceil(2)),
        }
    }
}

impl FromStr for PixelFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "y8" | "gray" => Ok(PixelFormat::Y8),
            "yuv420p" | "i420" => Ok(PixelFormat::Yuv420p),
            other => Err(format!("unknown pixel format `{other}` (expected y8 or yuv420p)")),
        }
    }
}

/// Location and layout of a headerless raw video file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawVideoSpec {
    pub path: PathBuf,
    pub width: usize,
    pub height: usize,
    /// `None` reads until end of file.
    pub frames: Option<usize>,
    pub format: PixelFormat,
}

impl RawVideoSpec {
    pub fn new(path: impl Into<PathBuf>, width: usize, height: usize, format: PixelFormat) -> Self {
        RawVideoSpec {
            path: path.into(),
            width,
            height,
            frames: None,
            format,
        }
    }

    pub fn with_frames(mut self, frames: usize) -> Self {
        self.frames = Some(frames);
        self
    }
}

/// Luma volume plus the chroma bytes of every frame, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct RawVideo<T> {
    pub luma: VideoVolume<T>,
    /// Per-frame chroma planes (U then V) for YUV 4:2:0 input.
    pub chroma: Option<Vec<Vec<u8>>>,
}

fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::io(path, e))
}

/// Reads a raw video, keeping the chroma planes for later write-back.
pub fn read_raw<T: Scalar>(spec: &RawVideoSpec) -> Result<RawVideo<T>> {
    if spec.width == 0 || spec.height == 0 {
        return Err(Error::InvalidDims(Dims::new(
            spec.width,
            spec.height,
            spec.frames.unwrap_or(1),
        )));
    }
    let bytes = read_bytes(&spec.path)?;
    let frame_bytes = spec.format.frame_bytes(spec.width, spec.height);
    if bytes.is_empty() {
        return Err(Error::format(&spec.path, 0, "file is empty"));
    }
    let frames = match spec.frames {
        Some(0) => {
            return Err(Error::InvalidDims(Dims::new(spec.width, spec.height, 0)));
        }
        Some(n) => {
            let need = n * frame_bytes;
            if bytes.len() < need {
                return Err(Error::format(
                    &spec.path,
                    bytes.len() as u64,
                    format!("truncated: {n} frames need {need} bytes, file has {}", bytes.len()),
                ));
            }
            n
        }
        None => {
            if bytes.len() % frame_bytes != 0 {
                let whole = bytes.len() / frame_bytes;
                return Err(Error::format(
                    &spec.path,
                    (whole * frame_bytes) as u64,
                    format!(
                        "file size {} is not a multiple of the {frame_bytes}-byte frame size",
                        bytes.len()
                    ),
                ));
            }
            bytes.len() / frame_bytes
        }
    };

    let luma_len = spec.width * spec.height;
    let mut samples = Vec::with_capacity(luma_len * frames);
    let mut chroma = (spec.format == PixelFormat::Yuv420p).then(Vec::new);
    for f in bytes.chunks_exact(frame_bytes).take(frames) {
        samples.extend(f[..luma_len].iter().map(|&b| T::from_u8(b).unwrap()));
        if let Some(c) = chroma.as_mut() {
            c.push(f[luma_len..].to_vec());
        }
    }
    let luma = VideoVolume::from_samples(Dims::new(spec.width, spec.height, frames), samples)?;
    Ok(RawVideo { luma, chroma })
}

/// Reads the luma plane of every frame.
pub fn read_volume<T: Scalar>(spec: &RawVideoSpec) -> Result<VideoVolume<T>> {
    Ok(read_raw(spec)?.luma)
}

/// Sample to byte: clamp to [0, 255], round half away from zero.
#[inline]
pub fn quantize<T: Scalar>(v: T) -> u8 {
    let v = v.as_f64();
    if v.is_nan() {
        return 0;
    }
    v.clamp(0.0, SAMPLE_MAX).round() as u8
}

/// Writes a raw video. For YUV 4:2:0, `chroma` supplies the planes to pass
/// through; without it neutral chroma (128) is written.
pub fn write_volume<T: Scalar>(volume: &VideoVolume<T>, spec: &RawVideoSpec, chroma: Option<&[Vec<u8>]>) -> Result<()> {
    let dims = volume.dims();
    if (spec.width, spec.height) != (dims.width, dims.height) {
        return Err(Error::DimensionMismatch {
            expected: dims,
            actual: Dims::new(spec.width, spec.height, dims.frames),
        });
    }
    let chroma_len = spec.format.frame_bytes(dims.width, dims.height) - dims.frame_len();
    if let Some(c) = chroma {
        if c.len() != dims.frames || c.iter().any(|p| p.len() != chroma_len) {
            return Err(Error::BufferLength {
                expected: dims.frames * chroma_len,
                actual: c.iter().map(Vec::len).sum(),
            });
        }
    }
    let file = File::create(&spec.path).map_err(|e| Error::io(&spec.path, e))?;
    let mut out = BufWriter::new(file);
    let neutral = vec![128u8; chroma_len];
    let mut line = Vec::with_capacity(dims.frame_len());
    for t in 0..dims.frames {
        line.clear();
        line.extend(volume.frame(t).iter().map(|&v| quantize(v)));
        out.write_all(&line).map_err(|e| Error::io(&spec.path, e))?;
        if spec.format == PixelFormat::Yuv420p {
            let planes = chroma.map_or(neutral.as_slice(), |c| c[t].as_slice());
            out.write_all(planes).map_err(|e| Error::io(&spec.path, e))?;
        }
    }
    out.flush().map_err(|e| Error::io(&spec.path, e))
}

pub fn read_mask(path: &Path, dims: Dims) -> Result<HoleMask> {
    dims.validate()?;
    let bytes = read_bytes(path)?;
    if bytes.len() != dims.len() {
        return Err(Error::format(
            path,
            bytes.len().min(dims.len()) as u64,
            format!("mask holds {} bytes, {dims} needs {}", bytes.len(), dims.len()),
        ));
    }
    let states = bytes
        .iter()
        .enumerate()
        .map(|(i, &b)| match b {
            MASK_KNOWN => Ok(SampleState::Known),
            MASK_UNKNOWN => Ok(SampleState::Unknown),
            MASK_RECONSTRUCTED => Ok(SampleState::Reconstructed),
            other => Err(Error::format(path, i as u64, format!("invalid mask byte {other}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    HoleMask::from_states(dims, states)
}

pub fn write_mask(path: &Path, mask: &HoleMask) -> Result<()> {
    let bytes: Vec<u8> = mask
        .states()
        .iter()
        .map(|s| match s {
            SampleState::Known => MASK_KNOWN,
            SampleState::Unknown => MASK_UNKNOWN,
            SampleState::Reconstructed => MASK_RECONSTRUCTED,
        })
        .collect();
    fs::write(path, bytes).map_err(|e| Error::io(path, e))
}

/// 8-bit order-map value: rounds scaled linearly onto [0, 254], with
/// [`ORDER_MAP_RESERVED`] for pixels outside hole cubes.
pub fn order_map_level(round: Option<u32>, rounds: u32) -> u8 {
    match round {
        None => ORDER_MAP_RESERVED,
        Some(_) if rounds <= 1 => 0,
        Some(r) => ((r as f64 * 254.0 / (rounds - 1) as f64).round() as u8).min(254),
    }
}

/// Writes one binary PGM (P5) per frame into `dir`, named
/// `order_NNNN.pgm`. Returns the written paths.
pub fn write_order_map(dir: &Path, map: &OrderMap) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let dims = map.dims();
    let mut paths = Vec::with_capacity(dims.frames);
    for t in 0..dims.frames {
        let path = dir.join(format!("order_{t:04}.pgm"));
        let mut bytes = format!("P5\n{} {}\n255\n", dims.width, dims.height).into_bytes();
        bytes.extend(map.frame(t).iter().map(|&r| order_map_level(r, map.rounds())));
        fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
        paths.push(path);
    }
    Ok(paths)
}
