//! Command-line front end: `fill`, `genmask` and `metrics`.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::io::{self, PixelFormat, RawVideoSpec};
use crate::metrics::{evaluate, QualityReport};
use crate::params::FseParams;
use crate::patterns::{PatternKind, PatternSpec};
use crate::scheduler::{export_order_map, run_fill, FillReport, ProcessingOrder};
use crate::volume::Dims;

#[derive(Debug, Parser)]
#[command(
    name = "fse3d",
    version,
    about = "Fill holes in raw video by 3D frequency selective extrapolation"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fill the holes of a raw video.
    Fill(FillArgs),
    /// Generate a synthetic hole mask.
    Genmask(GenmaskArgs),
    /// PSNR over holes and mean SSIM of a reconstruction.
    Metrics(MetricsArgs),
}

#[derive(Debug, Args)]
pub struct VideoArgs {
    /// Frame width in samples.
    #[arg(long = "w")]
    pub width: usize,
    /// Frame height in samples.
    #[arg(long = "h")]
    pub height: usize,
    /// Number of frames to read (default: whole file).
    #[arg(long)]
    pub frames: Option<usize>,
    /// Raw pixel format: y8 or yuv420p.
    #[arg(long, default_value = "yuv420p")]
    pub format: PixelFormat,
}

impl VideoArgs {
    fn spec(&self, path: &std::path::Path) -> RawVideoSpec {
        RawVideoSpec {
            path: path.to_path_buf(),
            width: self.width,
            height: self.height,
            frames: self.frames,
            format: self.format,
        }
    }
}

#[derive(Debug, Args)]
pub struct FillArgs {
    /// Input raw video.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Hole mask (one byte per luma sample).
    #[arg(long)]
    pub mask: PathBuf,
    /// Output raw video, same format as the input.
    #[arg(long, default_value = "filled.yuv")]
    pub out: PathBuf,
    #[command(flatten)]
    pub video: VideoArgs,
    /// Processing order: opt or ls.
    #[arg(long, default_value = "opt")]
    pub order: ProcessingOrder,
    /// Worker threads; 0 uses every core, 1 runs sequentially.
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, default_value_t = 4)]
    pub cube: usize,
    #[arg(long, default_value_t = 14)]
    pub border: usize,
    /// Weighting decay base.
    #[arg(long, default_value_t = 0.7)]
    pub rho: f64,
    /// Orthogonality deficiency compensation.
    #[arg(long, default_value_t = 0.5)]
    pub gamma: f64,
    /// Weight discount for reconstructed samples.
    #[arg(long, default_value_t = 0.5)]
    pub delta: f64,
    /// Iterations per cube.
    #[arg(long, default_value_t = 100)]
    pub iterations: usize,
    /// JSON fill report.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Directory for per-frame PGM order maps.
    #[arg(long)]
    pub order_map: Option<PathBuf>,
    /// Write the updated mask (filled samples marked 128).
    #[arg(long)]
    pub mask_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenmaskArgs {
    /// Pattern: bars-diagonal, lenses or bars-linear.
    #[arg(value_parser = parse_kind)]
    pub kind: PatternKind,
    #[arg(long = "w")]
    pub width: usize,
    #[arg(long = "h")]
    pub height: usize,
    #[arg(long)]
    pub frames: usize,
    #[arg(long, default_value = "mask.raw")]
    pub out: PathBuf,
    /// Number of shapes (default 8 diagonal bars, 30 otherwise).
    #[arg(long)]
    pub count: Option<usize>,
    /// Lens radius along x and y.
    #[arg(long, default_value_t = 24.0)]
    pub rs: f64,
    /// Lens radius along t.
    #[arg(long, default_value_t = 4.0)]
    pub rt: f64,
    /// Bar size along x.
    #[arg(long, default_value_t = 32)]
    pub sx: usize,
    /// Bar size along y.
    #[arg(long, default_value_t = 32)]
    pub sy: usize,
    /// Bar size along t (linear bars).
    #[arg(long, default_value_t = 12)]
    pub st: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct MetricsArgs {
    /// Original raw video.
    #[arg(long)]
    pub orig: PathBuf,
    /// Reconstructed raw video.
    #[arg(long)]
    pub recon: PathBuf,
    /// Hole mask used for the fill.
    #[arg(long)]
    pub mask: PathBuf,
    #[command(flatten)]
    pub video: VideoArgs,
    /// Also write the report as JSON.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

fn parse_kind(s: &str) -> std::result::Result<PatternKind, String> {
    s.parse()
}

/// Parses `args` and runs the command. Returns the process exit code.
pub fn main_with<I, A>(args: I) -> i32
where
    I: IntoIterator<Item = A>,
    A: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Fill(args) => cmd_fill(&args).map(|_| ()),
        Command::Genmask(args) => cmd_genmask(&args),
        Command::Metrics(args) => cmd_metrics(&args).map(|_| ()),
    }
}

pub fn cmd_fill(args: &FillArgs) -> Result<FillReport> {
    let params = FseParams {
        cube: args.cube,
        border: args.border,
        rho_hat: args.rho,
        delta: args.delta,
        gamma: args.gamma,
        iterations: args.iterations,
    };
    params.validate()?;
    let spec = args.video.spec(&args.input);
    let raw = io::read_raw::<f64>(&spec)?;
    let mut volume = raw.luma;
    let mut mask = io::read_mask(&args.mask, volume.dims())?;
    let run = run_fill(&mut volume, &mut mask, &params, args.order, args.threads)?;

    let out = RawVideoSpec {
        path: args.out.clone(),
        ..spec
    };
    io::write_volume(&volume, &out, raw.chroma.as_deref())?;
    if let Some(path) = &args.mask_out {
        io::write_mask(path, &mask)?;
    }
    if let Some(dir) = &args.order_map {
        let map = export_order_map(&run.state, &run.grid)?;
        io::write_order_map(dir, &map)?;
    }
    if let Some(path) = &args.report {
        let json = serde_json::to_string_pretty(&run.report).expect("report serializes");
        fs::write(path, json + "\n").map_err(|e| Error::io(path, e))?;
    }
    let r = &run.report;
    println!("order          {}", r.order);
    println!("volume         {}", r.dims);
    println!("hole cubes     {}", r.hole_cubes);
    println!("batches        {}", r.batch_count);
    println!("no support     {}", r.no_support_cubes.len());
    Ok(run.report)
}

pub fn cmd_genmask(args: &GenmaskArgs) -> Result<()> {
    let dims = Dims::new(args.width, args.height, args.frames).validate()?;
    let seed = args.seed;
    let spec = match args.kind {
        PatternKind::DiagonalBars => PatternSpec::DiagonalBars {
            count: args.count.unwrap_or(8),
            section: (args.sx, args.sy),
            seed,
        },
        PatternKind::Lenses => PatternSpec::Lenses {
            count: args.count.unwrap_or(30),
            radius_spatial: args.rs,
            radius_temporal: args.rt,
            seed,
        },
        PatternKind::LinearBars => PatternSpec::LinearBars {
            count: args.count.unwrap_or(30),
            size: (args.sx, args.sy, args.st),
            seed,
        },
    };
    let mask = spec.generate(dims)?;
    io::write_mask(&args.out, &mask)?;
    println!("{} mask {} written to {}", args.kind, dims, args.out.display());
    println!("hole ratio     {:.4}", mask.hole_ratio());
    Ok(())
}

pub fn cmd_metrics(args: &MetricsArgs) -> Result<QualityReport> {
    let original = io::read_volume::<f64>(&args.video.spec(&args.orig))?;
    let recon = io::read_volume::<f64>(&args.video.spec(&args.recon))?;
    let mask = io::read_mask(&args.mask, original.dims())?;
    let report = evaluate(&original, &recon, &mask)?;
    let flag = if report.psnr.identical { " (identical)" } else { "" };
    println!("hole samples   {}", report.hole_samples);
    println!("psnr (holes)   {:.2} dB{flag}", report.psnr.db);
    println!("ssim (mean)    {:.4}", report.ssim.mean);
    if let Some(path) = &args.json {
        let json = serde_json::to_string_pretty(&report).expect("report serializes");
        fs::write(path, json + "\n").map_err(|e| Error::io(path, e))?;
    }
    Ok(report)
}
