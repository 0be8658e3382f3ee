//! Cube processing order and batch execution.
//!
//! The optimized order tracks, per cube, how many neighbouring cubes are
//! still unfilled (plus a penalty for faces of the volume, where no
//! neighbours exist). Each round fills the cubes with the smallest
//! non-negative count, skipping any cube that touches one already chosen
//! for the round. Holes therefore close from their margin inwards, and
//! the cubes of one round can be modeled concurrently.
//!
//! Counter values: `-1` marks a cube with nothing (left) to fill.
//!
//! Within a round every cube reads the volume as it was when the round
//! started; results are committed once all cubes of the round are done.
//! Output is therefore independent of the thread count.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fse::{CubeFill, Extrapolator};
use crate::grid::{BoundaryKind, CubeGrid, CubeIndex};
use crate::params::FseParams;
use crate::scalar::Scalar;
use crate::volume::{Dims, HoleMask, VideoVolume};
use crate::window::commit_cube;

/// Counter increment for cubes on one face of the volume.
pub const SIDE_PENALTY: i32 = 9;
/// Counter increment for cubes on two faces.
pub const EDGE_PENALTY: i32 = 15;
/// Counter increment for cubes on three faces.
pub const CORNER_PENALTY: i32 = 19;

const FINISHED: i32 = -1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProcessingOrder {
    /// Margin-to-centre order in non-adjacent batches.
    Opt,
    /// One cube at a time in scan order.
    Ls,
}

impl fmt::Display for ProcessingOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProcessingOrder::Opt => "opt",
            ProcessingOrder::Ls => "ls",
        })
    }
}

impl FromStr for ProcessingOrder {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "opt" => Ok(ProcessingOrder::Opt),
            "ls" => Ok(ProcessingOrder::Ls),
            other => Err(format!("unknown order `{other}` (expected opt or ls)")),
        }
    }
}

/// Per-cube counters and processing timestamps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderState {
    shape: Dims,
    counts: Vec<i32>,
    timestamps: Vec<Option<u32>>,
    rounds: u32,
}

impl OrderState {
    #[inline]
    pub fn count(&self, grid: &CubeGrid, c: CubeIndex) -> i32 {
        self.counts[grid.linear(c)]
    }

    #[inline]
    pub fn counts(&self) -> &[i32] {
        &self.counts
    }

    /// Round in which the cube was filled.
    #[inline]
    pub fn timestamp(&self, grid: &CubeGrid, c: CubeIndex) -> Option<u32> {
        self.timestamps[grid.linear(c)]
    }

    /// Number of completed rounds.
    #[inline]
    pub fn rounds(&self) -> u32 {
        self.rounds
    }

    /// Cubes still waiting to be filled.
    pub fn remaining(&self) -> usize {
        self.counts.iter().filter(|&&n| n >= 0).count()
    }

    pub fn is_complete(&self) -> bool {
        self.remaining() == 0
    }
}

/// Initial counters: for each cube, the number of neighbours with unknown
/// samples plus the boundary penalty; `-1` for cubes without holes.
pub fn init_counts(grid: &CubeGrid) -> OrderState {
    let mut counts = vec![0i32; grid.len()];
    for c in grid.cubes() {
        if grid.has_unknown(c) {
            for n in grid.neighbors(c) {
                counts[grid.linear(n)] += 1;
            }
        }
        counts[grid.linear(c)] += match grid.boundary_kind(c) {
            BoundaryKind::Interior => 0,
            BoundaryKind::Side => SIDE_PENALTY,
            BoundaryKind::Edge => EDGE_PENALTY,
            BoundaryKind::Corner => CORNER_PENALTY,
        };
    }
    for c in grid.cubes() {
        if !grid.has_unknown(c) {
            counts[grid.linear(c)] = FINISHED;
        }
    }
    OrderState {
        shape: grid.shape(),
        counts,
        timestamps: vec![None; grid.len()],
        rounds: 0,
    }
}

/// Next round: all pending cubes whose counter equals the smallest
/// pending counter, in scan order, minus those touching an earlier pick.
/// Empty once every cube is finished.
pub fn next_batch(state: &OrderState, grid: &CubeGrid) -> Vec<CubeIndex> {
    debug_assert_eq!(state.shape, grid.shape());
    let Some(min) = state.counts.iter().copied().filter(|&n| n >= 0).min() else {
        return Vec::new();
    };
    let mut taken = vec![false; grid.len()];
    let mut batch = Vec::new();
    for (i, &n) in state.counts.iter().enumerate() {
        if n != min {
            continue;
        }
        let c = grid.cube_at(i);
        if grid.neighbors(c).any(|nb| taken[grid.linear(nb)]) {
            continue;
        }
        taken[i] = true;
        batch.push(c);
    }
    batch
}

/// Marks a round as done: its cubes finish, each neighbour still pending
/// loses one count. Finished cubes stay at `-1`.
pub fn complete_batch(state: &mut OrderState, grid: &CubeGrid, batch: &[CubeIndex]) {
    let round = state.rounds;
    for &c in batch {
        let i = grid.linear(c);
        state.counts[i] = FINISHED;
        state.timestamps[i] = Some(round);
        for n in grid.neighbors(c) {
            let count = &mut state.counts[grid.linear(n)];
            if *count > FINISHED {
                *count -= 1;
            }
        }
    }
    state.rounds += 1;
}

/// Summary of a fill run. Serialized as JSON by the CLI.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FillReport {
    pub order: ProcessingOrder,
    pub dims: Dims,
    pub cube_size: usize,
    pub border: usize,
    pub rho_hat: f64,
    pub delta: f64,
    pub gamma: f64,
    pub iterations: usize,
    /// Cube grid extents.
    pub grid: Dims,
    pub hole_cubes: usize,
    pub unknown_samples: usize,
    pub batch_count: usize,
    pub batch_sizes: Vec<usize>,
    /// Cubes whose window had no support and got the fallback value.
    pub no_support_cubes: Vec<CubeIndex>,
}

/// Result of [`run_fill`].
#[derive(Debug, Clone)]
pub struct FillRun {
    pub report: FillReport,
    pub grid: CubeGrid,
    pub state: OrderState,
    /// Composition of every round, in processing order.
    pub batches: Vec<Vec<CubeIndex>>,
}

/// Fills every hole of `volume` in place and marks the filled samples as
/// reconstructed in `mask`.
///
/// `threads == 0` uses all available cores; `threads == 1` runs without a
/// thread pool. The line-scan order is sequential regardless.
pub fn run_fill<T: Scalar>(
    volume: &mut VideoVolume<T>,
    mask: &mut HoleMask,
    params: &FseParams<T>,
    order: ProcessingOrder,
    threads: usize,
) -> Result<FillRun> {
    mask.ensure_matches(volume.dims())?;
    let extrapolator = Extrapolator::new(*params)?;
    let grid = CubeGrid::from_mask(mask, params.cube)?;
    let mut state = init_counts(&grid);
    let unknown_samples = mask.count(crate::volume::SampleState::Unknown);
    let mut batches = Vec::new();
    let mut no_support = Vec::new();

    match order {
        ProcessingOrder::Opt => {
            let pool = if threads == 1 {
                None
            } else {
                Some(
                    rayon::ThreadPoolBuilder::new()
                        .num_threads(threads)
                        .build()
                        .map_err(|e| Error::InvalidParam {
                            name: "threads",
                            reason: e.to_string(),
                        })?,
                )
            };
            loop {
                let batch = next_batch(&state, &grid);
                if batch.is_empty() {
                    break;
                }
                let fills: Vec<CubeFill<T>> = {
                    let (volume, mask) = (&*volume, &*mask);
                    let fill = |&c: &CubeIndex| extrapolator.fill_cube(volume, mask, &grid, c);
                    match &pool {
                        None => batch.iter().map(fill).collect::<Result<_>>()?,
                        Some(pool) => pool.install(|| batch.par_iter().map(fill).collect::<Result<_>>())?,
                    }
                };
                for f in &fills {
                    commit_cube(volume, mask, &grid, f.cube, &f.values)?;
                    if f.no_support {
                        no_support.push(f.cube);
                    }
                }
                complete_batch(&mut state, &grid, &batch);
                batches.push(batch);
            }
        }
        ProcessingOrder::Ls => {
            let cubes: Vec<CubeIndex> = grid.hole_cubes().collect();
            for c in cubes {
                let f = extrapolator.fill_cube(volume, mask, &grid, c)?;
                commit_cube(volume, mask, &grid, c, &f.values)?;
                if f.no_support {
                    no_support.push(c);
                }
                complete_batch(&mut state, &grid, &[c]);
                batches.push(vec![c]);
            }
        }
    }

    let report = FillReport {
        order,
        dims: volume.dims(),
        cube_size: params.cube,
        border: params.border,
        rho_hat: params.rho_hat.as_f64(),
        delta: params.delta.as_f64(),
        gamma: params.gamma.as_f64(),
        iterations: params.iterations,
        grid: grid.shape(),
        hole_cubes: grid.hole_cubes().count(),
        unknown_samples,
        batch_count: batches.len(),
        batch_sizes: batches.iter().map(Vec::len).collect(),
        no_support_cubes: no_support,
    };
    Ok(FillRun {
        report,
        grid,
        state,
        batches,
    })
}

/// Per-pixel processing round of the covering cube, for every frame.
/// `None` for pixels of cubes that had no holes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderMap {
    dims: Dims,
    values: Vec<Option<u32>>,
    rounds: u32,
}

impl OrderMap {
    #[inline]
    pub fn dims(&self) -> Dims {
        self.dims
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, t: usize) -> Option<u32> {
        self.values[self.dims.index(x, y, t)]
    }

    pub fn frame(&self, t: usize) -> &[Option<u32>] {
        let len = self.dims.frame_len();
        &self.values[t * len..(t + 1) * len]
    }

    /// Total number of rounds in the run.
    #[inline]
    pub fn rounds(&self) -> u32 {
        self.rounds
    }
}

pub fn export_order_map(state: &OrderState, grid: &CubeGrid) -> Result<OrderMap> {
    let remaining = state.remaining();
    if remaining > 0 {
        return Err(Error::RunIncomplete { remaining });
    }
    let dims = grid.volume_dims();
    let c = grid.cube_size();
    let values = (0..dims.len())
        .map(|i| {
            let (x, y, t) = dims.coords(i);
            state.timestamp(grid, CubeIndex::new(x / c, y / c, t / c))
        })
        .collect();
    Ok(OrderMap {
        dims,
        values,
        rounds: state.rounds,
    })
}
