//! Reconstruction quality: PSNR over hole samples and per-frame SSIM.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::volume::{HoleMask, VideoVolume, SAMPLE_MAX};

/// Value reported in place of an infinite PSNR.
pub const PSNR_CAP: f64 = 99.99;

const SSIM_WINDOW: usize = 11;
const SSIM_SIGMA: f64 = 1.5;
const SSIM_K1: f64 = 0.01;
const SSIM_K2: f64 = 0.03;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Psnr {
    /// PSNR in dB, capped at [`PSNR_CAP`].
    pub db: f64,
    pub mse: f64,
    /// Set when the signals agree exactly on every hole sample.
    pub identical: bool,
    pub samples: usize,
}

/// PSNR over the hole samples of `mask` (unknown or reconstructed),
/// pooling all frames into one MSE.
pub fn psnr_over_holes<T: Scalar>(
    original: &VideoVolume<T>,
    reconstructed: &VideoVolume<T>,
    mask: &HoleMask,
) -> Result<Psnr> {
    ensure_same(original, reconstructed)?;
    mask.ensure_matches(original.dims())?;
    let mut sum = 0.0;
    let mut samples = 0usize;
    for ((a, b), s) in original
        .samples()
        .iter()
        .zip(reconstructed.samples())
        .zip(mask.states())
    {
        if s.is_hole() {
            let d = a.as_f64() - b.as_f64();
            sum += d * d;
            samples += 1;
        }
    }
    if samples == 0 {
        return Err(Error::EmptyHoleSet);
    }
    Ok(psnr_from_mse(sum / samples as f64, samples))
}

fn psnr_from_mse(mse: f64, samples: usize) -> Psnr {
    if mse == 0.0 {
        return Psnr {
            db: PSNR_CAP,
            mse,
            identical: true,
            samples,
        };
    }
    Psnr {
        db: (10.0 * (SAMPLE_MAX * SAMPLE_MAX / mse).log10()).min(PSNR_CAP),
        mse,
        identical: false,
        samples,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SsimReport {
    pub per_frame: Vec<f64>,
    pub mean: f64,
}

/// Single-scale SSIM of each frame: 11x11 Gaussian window with sigma 1.5,
/// K1 = 0.01, K2 = 0.03, dynamic range 255, averaged over the window
/// positions that fit entirely inside the frame.
pub fn ssim_per_frame<T: Scalar>(original: &VideoVolume<T>, reconstructed: &VideoVolume<T>) -> Result<SsimReport> {
    ensure_same(original, reconstructed)?;
    let dims = original.dims();
    if dims.width < SSIM_WINDOW || dims.height < SSIM_WINDOW {
        return Err(Error::FrameTooSmall {
            width: dims.width,
            height: dims.height,
            window: SSIM_WINDOW,
        });
    }
    let kernel = gaussian_kernel();
    let per_frame: Vec<f64> = (0..dims.frames)
        .map(|t| {
            let a: Vec<f64> = original.frame(t).iter().map(|v| v.as_f64()).collect();
            let b: Vec<f64> = reconstructed.frame(t).iter().map(|v| v.as_f64()).collect();
            ssim_frame(&a, &b, dims.width, dims.height, &kernel)
        })
        .collect();
    let mean = per_frame.iter().sum::<f64>() / per_frame.len() as f64;
    Ok(SsimReport { per_frame, mean })
}

fn ensure_same<T: Scalar>(a: &VideoVolume<T>, b: &VideoVolume<T>) -> Result<()> {
    if a.dims() != b.dims() {
        return Err(Error::DimensionMismatch {
            expected: a.dims(),
            actual: b.dims(),
        });
    }
    Ok(())
}

fn gaussian_kernel() -> [f64; SSIM_WINDOW] {
    let mut k = [0.0; SSIM_WINDOW];
    let c = (SSIM_WINDOW / 2) as f64;
    for (i, v) in k.iter_mut().enumerate() {
        let d = i as f64 - c;
        *v = (-d * d / (2.0 * SSIM_SIGMA * SSIM_SIGMA)).exp();
    }
    let sum: f64 = k.iter().sum();
    k.map(|v| v / sum)
}

/// Separable "valid" filtering of a `w x h` plane.
fn filter_valid(src: &[f64], w: usize, h: usize, k: &[f64; SSIM_WINDOW]) -> Vec<f64> {
    let ow = w - SSIM_WINDOW + 1;
    let oh = h - SSIM_WINDOW + 1;
    let mut rows = vec![0.0; ow * h];
    for y in 0..h {
        let line = &src[y * w..(y + 1) * w];
        for x in 0..ow {
            rows[y * ow + x] = k.iter().zip(&line[x..x + SSIM_WINDOW]).map(|(a, b)| a * b).sum();
        }
    }
    let mut out = vec![0.0; ow * oh];
    for y in 0..oh {
        for x in 0..ow {
            out[y * ow + x] = k.iter().enumerate().map(|(i, kv)| kv * rows[(y + i) * ow + x]).sum();
        }
    }
    out
}

fn ssim_frame(a: &[f64], b: &[f64], w: usize, h: usize, k: &[f64; SSIM_WINDOW]) -> f64 {
    let c1 = (SSIM_K1 * SAMPLE_MAX).powi(2);
    let c2 = (SSIM_K2 * SAMPLE_MAX).powi(2);
    let sq = |x: &[f64], y: &[f64]| -> Vec<f64> { x.iter().zip(y).map(|(p, q)| p * q).collect() };
    let mu_a = filter_valid(a, w, h, k);
    let mu_b = filter_valid(b, w, h, k);
    let e_aa = filter_valid(&sq(a, a), w, h, k);
    let e_bb = filter_valid(&sq(b, b), w, h, k);
    let e_ab = filter_valid(&sq(a, b), w, h, k);
    let mut total = 0.0;
    for i in 0..mu_a.len() {
        let (ma, mb) = (mu_a[i], mu_b[i]);
        let var_a = e_aa[i] - ma * ma;
        let var_b = e_bb[i] - mb * mb;
        let cov = e_ab[i] - ma * mb;
        let num = (2.0 * ma * mb + c1) * (2.0 * cov + c2);
        let den = (ma * ma + mb * mb + c1) * (var_a + var_b + c2);
        total += num / den;
    }
    total / mu_a.len() as f64
}

/// PSNR over holes and SSIM over frames in one report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QualityReport {
    pub psnr: Psnr,
    pub ssim: SsimReport,
    pub hole_samples: usize,
}

pub fn evaluate<T: Scalar>(
    original: &VideoVolume<T>,
    reconstructed: &VideoVolume<T>,
    mask: &HoleMask,
) -> Result<QualityReport> {
    let psnr = psnr_over_holes(original, reconstructed, mask)?;
    let ssim = ssim_per_frame(original, reconstructed)?;
    Ok(QualityReport {
        hole_samples: psnr.samples,
        psnr,
        ssim,
    })
}
