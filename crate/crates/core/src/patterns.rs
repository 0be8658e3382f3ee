//! Synthetic hole masks.
//!
//! All generators are pure functions of their arguments; the same seed
//! yields the same mask on every platform (ChaCha8 stream).

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::volume::{Dims, HoleMask};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PatternKind {
    DiagonalBars,
    Lenses,
    LinearBars,
}

impl PatternKind {
    pub const ALL: [PatternKind; 3] = [PatternKind::DiagonalBars, PatternKind::Lenses, PatternKind::LinearBars];

    pub fn name(self) -> &'static str {
        match self {
            PatternKind::DiagonalBars => "bars-diagonal",
            PatternKind::Lenses => "lenses",
            PatternKind::LinearBars => "bars-linear",
        }
    }
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PatternKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        PatternKind::ALL.into_iter().find(|k| k.name() == s).ok_or_else(|| {
            let names: Vec<_> = PatternKind::ALL.iter().map(|k| k.name()).collect();
            format!("unknown pattern `{s}` (expected one of: {})", names.join(", "))
        })
    }
}

/// A pattern with its geometry and seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PatternSpec {
    DiagonalBars {
        count: usize,
        section: (usize, usize),
        seed: u64,
    },
    Lenses {
        count: usize,
        radius_spatial: f64,
        radius_temporal: f64,
        seed: u64,
    },
    LinearBars {
        count: usize,
        size: (usize, usize, usize),
        seed: u64,
    },
}

impl PatternSpec {
    /// Default geometry for `kind`: 8 diagonal 32x32 bars, 30 lenses with
    /// radii 24/4, or 30 bars of 32x32x12.
    pub fn default_for(kind: PatternKind, seed: u64) -> Self {
        match kind {
            PatternKind::DiagonalBars => PatternSpec::DiagonalBars {
                count: 8,
                section: (32, 32),
                seed,
            },
            PatternKind::Lenses => PatternSpec::Lenses {
                count: 30,
                radius_spatial: 24.0,
                radius_temporal: 4.0,
                seed,
            },
            PatternKind::LinearBars => PatternSpec::LinearBars {
                count: 30,
                size: (32, 32, 12),
                seed,
            },
        }
    }

    pub fn kind(&self) -> PatternKind {
        match self {
            PatternSpec::DiagonalBars { .. } => PatternKind::DiagonalBars,
            PatternSpec::Lenses { .. } => PatternKind::Lenses,
            PatternSpec::LinearBars { .. } => PatternKind::LinearBars,
        }
    }

    pub fn generate(&self, dims: Dims) -> Result<HoleMask> {
        match *self {
            PatternSpec::DiagonalBars { count, section, seed } => gen_diagonal_bars(dims, count, section, seed),
            PatternSpec::Lenses {
                count,
                radius_spatial,
                radius_temporal,
                seed,
            } => gen_lenses(dims, count, radius_spatial, radius_temporal, seed),
            PatternSpec::LinearBars { count, size, seed } => gen_linear_bars(dims, count, size, seed),
        }
    }
}

fn positive(name: &'static str, v: usize) -> Result<()> {
    if v == 0 {
        return Err(Error::InvalidParam {
            name,
            reason: "must be positive".into(),
        });
    }
    Ok(())
}

/// Marks the box `lo..lo+size` (per axis, signed) clipped to the volume.
fn stamp_box(mask: &mut HoleMask, lo: [isize; 3], size: [usize; 3]) {
    let dims = mask.dims();
    let clip = |lo: isize, size: usize, len: usize| {
        let a = lo.max(0) as usize;
        let b = (lo + size as isize).clamp(0, len as isize) as usize;
        a..b.max(a)
    };
    let xs = clip(lo[0], size[0], dims.width);
    let ys = clip(lo[1], size[1], dims.height);
    for t in clip(lo[2], size[2], dims.frames) {
        for y in ys.clone() {
            for x in xs.clone() {
                mask.mark_unknown(x, y, t);
            }
        }
    }
}

/// `count` bars with a `section` cross-section spanning all frames. Each
/// bar moves by (+1, +1) samples per frame. Starting centres are drawn so
/// that the centre stays inside the frame for the whole sequence.
pub fn gen_diagonal_bars(dims: Dims, count: usize, section: (usize, usize), seed: u64) -> Result<HoleMask> {
    let mut mask = HoleMask::new(dims)?;
    if count == 0 {
        return Ok(mask);
    }
    positive("section", section.0.min(section.1))?;
    if section.0 > dims.width || section.1 > dims.height {
        return Err(Error::PatternTooLarge {
            section,
            width: dims.width,
            height: dims.height,
        });
    }
    let travel = dims.frames - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let cx = rng.gen_range(0..dims.width.saturating_sub(travel).max(1)) as isize;
        let cy = rng.gen_range(0..dims.height.saturating_sub(travel).max(1)) as isize;
        for t in 0..dims.frames {
            let lo = [
                cx + t as isize - (section.0 / 2) as isize,
                cy + t as isize - (section.1 / 2) as isize,
                t as isize,
            ];
            stamp_box(&mut mask, lo, [section.0, section.1, 1]);
        }
    }
    Ok(mask)
}

/// `count` ellipsoids with semi-axes (`radius_spatial`, `radius_spatial`,
/// `radius_temporal`) centred uniformly over the volume.
pub fn gen_lenses(dims: Dims, count: usize, radius_spatial: f64, radius_temporal: f64, seed: u64) -> Result<HoleMask> {
    let mut mask = HoleMask::new(dims)?;
    if !(radius_spatial > 0.0 && radius_temporal > 0.0) {
        return Err(Error::InvalidParam {
            name: "radius",
            reason: "lens radii must be positive".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let centres: Vec<[usize; 3]> = (0..count)
        .map(|_| {
            [
                rng.gen_range(0..dims.width),
                rng.gen_range(0..dims.height),
                rng.gen_range(0..dims.frames),
            ]
        })
        .collect();
    let span = |c: usize, r: f64, len: usize| {
        let r = r.floor() as usize;
        c.saturating_sub(r)..(c + r + 1).min(len)
    };
    for [cx, cy, ct] in centres {
        for t in span(ct, radius_temporal, dims.frames) {
            let dt = (t as f64 - ct as f64) / radius_temporal;
            for y in span(cy, radius_spatial, dims.height) {
                let dy = (y as f64 - cy as f64) / radius_spatial;
                for x in span(cx, radius_spatial, dims.width) {
                    let dx = (x as f64 - cx as f64) / radius_spatial;
                    if dx * dx + dy * dy + dt * dt <= 1.0 {
                        mask.mark_unknown(x, y, t);
                    }
                }
            }
        }
    }
    Ok(mask)
}

/// `count` axis-aligned boxes of `size` = (x, y, t) centred uniformly
/// over the volume and clipped at its faces.
pub fn gen_linear_bars(dims: Dims, count: usize, size: (usize, usize, usize), seed: u64) -> Result<HoleMask> {
    let mut mask = HoleMask::new(dims)?;
    positive("size", size.0.min(size.1).min(size.2))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let centre = [
            rng.gen_range(0..dims.width),
            rng.gen_range(0..dims.height),
            rng.gen_range(0..dims.frames),
        ];
        let extent = [size.0, size.1, size.2];
        let lo = [0, 1, 2].map(|a| centre[a] as isize - (extent[a] / 2) as isize);
        stamp_box(&mut mask, lo, extent);
    }
    Ok(mask)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::volume::SampleState;

    #[test]
    fn kinds_parse_by_name() {
        for k in PatternKind::ALL {
            assert_eq!(k.name().parse::<PatternKind>().unwrap(), k);
        }
        let err = "stars".parse::<PatternKind>().unwrap_err();
        assert!(err.contains("bars-diagonal, lenses, bars-linear"));
    }

    #[test]
    fn diagonal_bars_shift_one_sample_per_frame() {
        let dims = Dims::new(160, 120, 10);
        let single = gen_diagonal_bars(dims, 1, (32, 32), 3).unwrap();
        let frame_set = |t: usize| -> Vec<(usize, usize)> {
            (0..dims.height)
                .flat_map(|y| (0..dims.width).map(move |x| (x, y)))
                .filter(|&(x, y)| single.get(x, y, t) == SampleState::Unknown)
                .collect()
        };
        for t in 0..dims.frames - 1 {
            let a = frame_set(t);
            let b = frame_set(t + 1);
            let (ax, ay) = a[0];
            let (bx, by) = b[0];
            // Compare bounding boxes; clipping may trim the bar.
            let bbox = |s: &[(usize, usize)]| {
                (
                    s.iter().map(|p| p.0).max().unwrap(),
                    s.iter().map(|p| p.1).max().unwrap(),
                )
            };
            let (amx, amy) = bbox(&a);
            let (bmx, bmy) = bbox(&b);
            if amx + 1 < dims.width && amy + 1 < dims.height && ax > 0 && ay > 0 {
                assert_eq!((bmx, bmy), (amx + 1, amy + 1));
                assert_eq!((bx, by), (ax + 1, ay + 1));
            }
        }
    }

    #[test]
    fn diagonal_bars_present_in_every_frame() {
        let dims = Dims::new(200, 150, 48);
        let mask = gen_diagonal_bars(dims, 8, (32, 32), 11).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let starts: Vec<(usize, usize)> = (0..8)
            .map(|_| (rng.gen_range(0..200 - 47), rng.gen_range(0..150 - 47)))
            .collect();
        for t in 0..dims.frames {
            for &(cx, cy) in &starts {
                assert_eq!(mask.get(cx + t, cy + t, t), SampleState::Unknown);
            }
        }
    }

    #[test]
    fn diagonal_bars_edge_cases() {
        let dims = Dims::new(64, 64, 4);
        assert_eq!(gen_diagonal_bars(dims, 0, (32, 32), 1).unwrap().hole_count(), 0);
        assert!(matches!(
            gen_diagonal_bars(Dims::new(16, 64, 4), 8, (32, 32), 1),
            Err(Error::PatternTooLarge { .. })
        ));
    }

    #[test]
    fn lens_membership() {
        let dims = Dims::new(100, 100, 20);
        let mask = gen_lenses(dims, 1, 24.0, 4.0, 5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (cx, cy, ct) = (rng.gen_range(0..100), rng.gen_range(0..100), rng.gen_range(0..20));
        assert_eq!(mask.get(cx, cy, ct), SampleState::Unknown);
        if cx + 25 < 100 {
            assert_eq!(mask.get(cx + 25, cy, ct), SampleState::Known);
            assert_eq!(mask.get(cx + 24, cy, ct), SampleState::Unknown);
        }
        if ct + 5 < 20 {
            assert_eq!(mask.get(cx, cy, ct + 5), SampleState::Known);
        }
        // Every hole sample lies inside the ellipsoid.
        for (i, s) in mask.states().iter().enumerate() {
            if s.is_hole() {
                let (x, y, t) = dims.coords(i);
                let d = ((x as f64 - cx as f64) / 24.0).powi(2)
                    + ((y as f64 - cy as f64) / 24.0).powi(2)
                    + ((t as f64 - ct as f64) / 4.0).powi(2);
                assert!(d <= 1.0);
            }
        }
    }

    #[test]
    fn seeds_are_deterministic() {
        let dims = Dims::new(64, 48, 12);
        let specs = |seed| {
            [
                PatternSpec::DiagonalBars {
                    count: 8,
                    section: (16, 16),
                    seed,
                },
                PatternSpec::default_for(PatternKind::Lenses, seed),
                PatternSpec::default_for(PatternKind::LinearBars, seed),
            ]
        };
        for ((a, b), c) in specs(7).iter().zip(specs(7)).zip(specs(8)) {
            let ma = a.generate(dims).unwrap();
            assert_eq!(ma, b.generate(dims).unwrap(), "{}", a.kind());
            assert_ne!(ma, c.generate(dims).unwrap(), "{}", a.kind());
        }
    }

    #[test]
    fn interior_linear_bar_volume() {
        let mut mask = HoleMask::new(Dims::new(64, 64, 20)).unwrap();
        stamp_box(&mut mask, [10, 10, 4], [32, 32, 12]);
        assert_eq!(mask.hole_count(), 12288);
        let mut clipped = HoleMask::new(Dims::new(64, 64, 20)).unwrap();
        stamp_box(&mut clipped, [-16, 50, 15], [32, 32, 12]);
        assert_eq!(clipped.hole_count(), 16 * 14 * 5);
    }

    #[test]
    fn linear_bars_stay_within_boxes() {
        let dims = Dims::new(96, 80, 24);
        let mask = gen_linear_bars(dims, 30, (32, 32, 12), 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let centres: Vec<[usize; 3]> = (0..30)
            .map(|_| [rng.gen_range(0..96), rng.gen_range(0..80), rng.gen_range(0..24)])
            .collect();
        for (i, s) in mask.states().iter().enumerate() {
            let (x, y, t) = dims.coords(i);
            let inside = centres.iter().any(|c| {
                (c[0] as isize - 16..c[0] as isize + 16).contains(&(x as isize))
                    && (c[1] as isize - 16..c[1] as isize + 16).contains(&(y as isize))
                    && (c[2] as isize - 6..c[2] as isize + 6).contains(&(t as isize))
            });
            assert_eq!(s.is_hole(), inside);
        }
        assert!((mask.hole_ratio() - mask.hole_count() as f64 / dims.len() as f64).abs() < 1e-15);
    }
}
