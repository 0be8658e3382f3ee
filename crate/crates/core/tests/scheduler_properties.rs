use fse3d::io::order_map_level;
use fse3d::patterns::{gen_diagonal_bars, gen_linear_bars};
use fse3d::scheduler::{complete_batch, export_order_map, init_counts, next_batch};
use fse3d::synthetic::moving_gratings;
use fse3d::{run_fill, CubeGrid, CubeIndex, Dims, HoleMask, Params, ProcessingOrder};

fn block_grid(grid_edge: usize, lo: usize, hi: usize) -> CubeGrid {
    let d = grid_edge * 4;
    let inside = |v: usize| (lo..hi).contains(&(v / 4));
    let mask = HoleMask::from_fn(Dims::new(d, d, d), |x, y, t| inside(x) && inside(y) && inside(t)).unwrap();
    CubeGrid::from_mask(&mask, 4).unwrap()
}

fn batches_of(grid: &CubeGrid) -> Vec<Vec<CubeIndex>> {
    let mut state = init_counts(grid);
    let mut out = Vec::new();
    while !state.is_complete() {
        let batch = next_batch(&state, grid);
        assert!(
            !batch.is_empty(),
            "scheduler stalled with {} cubes left",
            state.remaining()
        );
        complete_batch(&mut state, grid, &batch);
        out.push(batch);
    }
    assert!(next_batch(&state, grid).is_empty());
    out
}

/// Distance of a cube to the outside of the `lo..hi` box.
fn depth(c: CubeIndex, lo: usize, hi: usize) -> usize {
    [c.x, c.y, c.t].iter().map(|&v| (v - lo).min(hi - 1 - v)).min().unwrap()
}

#[test]
fn boxes_are_peeled_from_the_outside_in() {
    for (edge, lo, hi) in [(5, 1, 4), (7, 1, 6)] {
        let grid = block_grid(edge, lo, hi);
        let batches = batches_of(&grid);
        let mut last_depth = 0;
        for b in &batches {
            let d = b.iter().map(|&c| depth(c, lo, hi)).max().unwrap();
            assert!(d + 1 >= last_depth, "depth went back from {last_depth} to {d}");
            last_depth = last_depth.max(d);
        }
        let centre = (lo + hi - 1) / 2;
        assert!(batches
            .last()
            .unwrap()
            .contains(&CubeIndex::new(centre, centre, centre)));
        assert_eq!(batches.iter().map(Vec::len).sum::<usize>(), (hi - lo).pow(3));
    }
}

#[test]
fn every_hole_cube_is_scheduled_once() {
    let dims = Dims::new(96, 64, 24);
    for seed in 0..3 {
        let mask = gen_linear_bars(dims, 12, (20, 20, 8), seed).unwrap();
        let grid = CubeGrid::from_mask(&mask, 4).unwrap();
        let mut seen: Vec<CubeIndex> = batches_of(&grid).concat();
        let total = seen.len();
        seen.sort_by_key(|c| (c.t, c.y, c.x));
        seen.dedup();
        assert_eq!(seen.len(), total);
        assert_eq!(total, grid.hole_cubes().count());
    }
}

#[test]
fn schedule_is_deterministic() {
    let mask = gen_diagonal_bars(Dims::new(96, 96, 16), 5, (24, 24), 11).unwrap();
    let grid = CubeGrid::from_mask(&mask, 4).unwrap();
    assert_eq!(batches_of(&grid), batches_of(&grid));
}

#[test]
fn line_scan_timestamps_follow_raster_order() {
    let dims = Dims::new(32, 16, 8);
    let volume0 = moving_gratings::<f64>(dims).unwrap();
    let mask0 = HoleMask::from_fn(dims, |x, y, t| (x + 2 * y + 3 * t) % 11 == 0).unwrap();
    let params = Params {
        iterations: 10,
        border: 4,
        ..Params::default()
    };
    let (mut volume, mut mask) = (volume0.clone(), mask0.clone());
    let run = run_fill(&mut volume, &mut mask, &params, ProcessingOrder::Ls, 1).unwrap();
    let cubes: Vec<CubeIndex> = run.grid.hole_cubes().collect();
    assert_eq!(run.batches, cubes.iter().map(|&c| vec![c]).collect::<Vec<_>>());
    for (i, &c) in cubes.iter().enumerate() {
        assert_eq!(run.state.timestamp(&run.grid, c), Some(i as u32));
    }
    assert_eq!(mask.count(fse3d::SampleState::Unknown), 0);
}

#[test]
fn order_map_covers_hole_cubes_only() {
    let dims = Dims::new(24, 24, 8);
    let mut volume = moving_gratings::<f64>(dims).unwrap();
    let mut mask = HoleMask::from_fn(dims, |x, y, _| (8..14).contains(&x) && (4..18).contains(&y)).unwrap();
    let params = Params {
        iterations: 5,
        border: 2,
        ..Params::default()
    };
    let run = run_fill(&mut volume, &mut mask, &params, ProcessingOrder::Opt, 1).unwrap();
    let map = export_order_map(&run.state, &run.grid).unwrap();
    assert_eq!(map.rounds() as usize, run.batches.len());
    assert_eq!(map.get(0, 0, 0), None);
    assert!(map.get(9, 5, 0).is_some());
    assert_eq!(order_map_level(None, map.rounds()), 255);
    assert_eq!(order_map_level(Some(map.rounds() - 1), map.rounds()), 254);
}

#[test]
fn incomplete_state_has_no_order_map() {
    let grid = block_grid(5, 1, 4);
    let state = init_counts(&grid);
    assert!(export_order_map(&state, &grid).is_err());
}

#[test]
fn one_hole_cube_gives_identical_orders() {
    let dims = Dims::new(40, 40, 40);
    let original = moving_gratings::<f64>(dims).unwrap();
    let hole = HoleMask::from_fn(dims, |x, y, t| [x, y, t].iter().all(|v| (16..20).contains(v))).unwrap();
    let params = Params {
        iterations: 30,
        ..Params::default()
    };
    let mut results = Vec::new();
    for order in [ProcessingOrder::Opt, ProcessingOrder::Ls] {
        let (mut v, mut m) = (original.clone(), hole.clone());
        run_fill(&mut v, &mut m, &params, order, 1).unwrap();
        results.push(v);
    }
    assert_eq!(results[0], results[1]);
}
