//! Batch front end for the `focusfuse` library.
//!
//! Four subcommands cover the whole pipeline:
//!
//! * `synth`  — derive a complementary pair of partially blurred images
//!   from one sharp original,
//! * `fuse`   — combine two or more co-registered grayscale images,
//! * `metrics` — score a candidate image against a reference,
//! * `bench`  — chain all of the above over every (original, geometry)
//!   combination and tabulate the four fusion methods side by side.
//!
//! All image I/O is PGM (`P2`/`P5`). Exit status is `0` exactly when every
//! requested artifact was written; every error path exits nonzero after a
//! single diagnostic line on stderr.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use focusfuse::metrics::{self, psnr, rmse, ssim, ssim_to_inputs, uqi};
use focusfuse::pgm::{self, Mode};
use focusfuse::synth::{self, make_pair, SplitGeometry};
use focusfuse::{
    fuse_average, fuse_max_std, fuse_pca, fuse_wavelet, GrayImage, MetricReport, TieBreak,
    DEFAULT_LEVELS, DEFAULT_WINDOW,
};

use report::BenchRow;

#[derive(Parser)]
#[command(
    name = "focusfuse",
    version,
    about = "Multi-focus grayscale image fusion toolkit",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fuse two or more co-registered grayscale images into one composite.
    Fuse(FuseArgs),
    /// Derive a complementary pair of partially blurred images from one original.
    Synth(SynthArgs),
    /// Score a candidate image against a reference and print a metric report.
    Metrics(MetricsArgs),
    /// Synthesize pairs, run every fusion method, and tabulate the results.
    Bench(BenchArgs),
}

/// Fusion method selector shared by `fuse` and `bench`.
#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Block-wise dispersion selection: copy the sharpest window verbatim.
    Proposed,
    /// Multi-level Haar fusion: largest detail magnitude, averaged approximation.
    Wavelet,
    /// Pixel blend weighted by the dominant eigenvector of the inter-image covariance.
    Pca,
    /// Plain per-pixel mean.
    Average,
}

impl Method {
    /// Every method, in the order bench executes them.
    const ALL: [Method; 4] = [Method::Proposed, Method::Wavelet, Method::Pca, Method::Average];

    fn name(self) -> &'static str {
        match self {
            Method::Proposed => "proposed",
            Method::Wavelet => "wavelet",
            Method::Pca => "pca",
            Method::Average => "average",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum TieBreakArg {
    /// The earliest input wins tied dispersion scores.
    Lowest,
    /// The latest input wins tied dispersion scores.
    Highest,
}

impl From<TieBreakArg> for TieBreak {
    fn from(arg: TieBreakArg) -> Self {
        match arg {
            TieBreakArg::Lowest => TieBreak::LowestIndex,
            TieBreakArg::Highest => TieBreak::HighestIndex,
        }
    }
}

#[derive(Args)]
struct FuseArgs {
    /// Input images (PGM), all with identical dimensions.
    #[arg(required = true, num_args = 2.., value_name = "INPUT")]
    inputs: Vec<PathBuf>,

    /// Path for the fused output image.
    #[arg(short, long, value_name = "PATH")]
    output: PathBuf,

    /// Fusion method.
    #[arg(long, value_enum, default_value_t = Method::Proposed)]
    method: Method,

    /// Window side length for block-selection fusion.
    #[arg(short = 'k', long = "window", default_value_t = DEFAULT_WINDOW, value_name = "K")]
    window: usize,

    /// Which input wins a tied dispersion score (block-selection fusion).
    #[arg(long, value_enum, default_value_t = TieBreakArg::Lowest)]
    tie_break: TieBreakArg,

    /// Decomposition depth for wavelet fusion.
    #[arg(long, default_value_t = DEFAULT_LEVELS)]
    levels: usize,

    /// Also write the selection map as a PGM (block-selection method only).
    #[arg(long, value_name = "PATH")]
    map: Option<PathBuf>,

    /// Write ASCII (P2) instead of binary (P5) output.
    #[arg(long)]
    ascii: bool,
}

#[derive(Args)]
struct SynthArgs {
    /// Fully sharp source image (PGM).
    original: PathBuf,

    /// Output prefix: writes `<prefix>_a.pgm` and `<prefix>_b.pgm`.
    #[arg(long, value_name = "PREFIX")]
    out_prefix: String,

    /// Split geometry dividing the in-focus regions
    /// (vertical | horizontal | diag_main | diag_anti).
    #[arg(long, default_value_t = SplitGeometry::Vertical)]
    geometry: SplitGeometry,

    /// Gaussian blur strength (must be > 0).
    #[arg(long, default_value_t = synth::DEFAULT_SIGMA)]
    sigma: f64,

    /// Blur kernel radius in pixels.
    #[arg(long, default_value_t = synth::DEFAULT_RADIUS)]
    radius: usize,

    /// Write ASCII (P2) instead of binary (P5) output.
    #[arg(long)]
    ascii: bool,
}

#[derive(Args)]
struct MetricsArgs {
    /// Image under evaluation (PGM).
    candidate: PathBuf,

    /// Reference image to compare against (PGM).
    reference: PathBuf,

    /// Window side length for the sliding quality-index scan.
    #[arg(long, default_value_t = metrics::DEFAULT_UQI_WINDOW, value_name = "N")]
    uqi_window: usize,
}

#[derive(Args)]
struct BenchArgs {
    /// Original images to benchmark (PGM); one pair is synthesized per geometry.
    #[arg(required = true, num_args = 1.., value_name = "ORIGINAL")]
    originals: Vec<PathBuf>,

    /// Path for the CSV report.
    #[arg(long, value_name = "PATH")]
    out: PathBuf,

    /// Comma-separated split geometries to synthesize.
    #[arg(
        long,
        value_delimiter = ',',
        default_values_t = [SplitGeometry::Vertical, SplitGeometry::DiagMain]
    )]
    geometries: Vec<SplitGeometry>,

    /// Gaussian blur strength for the synthesized pairs.
    #[arg(long, default_value_t = synth::DEFAULT_SIGMA)]
    sigma: f64,

    /// Blur kernel radius in pixels.
    #[arg(long, default_value_t = synth::DEFAULT_RADIUS)]
    radius: usize,

    /// Window side length for block-selection fusion.
    #[arg(short = 'k', long = "window", default_value_t = DEFAULT_WINDOW, value_name = "K")]
    window: usize,

    /// Decomposition depth for wavelet fusion.
    #[arg(long, default_value_t = DEFAULT_LEVELS)]
    levels: usize,

    /// Also write a markdown mirror of the report.
    #[arg(long, value_name = "PATH")]
    markdown: Option<PathBuf>,

    /// Report runtime as 0 so repeated runs are byte-identical.
    #[arg(long)]
    deterministic: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            // `:#` flattens the context chain onto one line.
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Fuse(args) => cmd_fuse(args),
        Command::Synth(args) => cmd_synth(args),
        Command::Metrics(args) => cmd_metrics(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn read_image(path: &Path) -> Result<GrayImage> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    pgm::load(&bytes).with_context(|| format!("decoding {}", path.display()))
}

fn write_image(path: &Path, img: &GrayImage, mode: Mode) -> Result<()> {
    fs::write(path, pgm::save(img, mode)).with_context(|| format!("writing {}", path.display()))
}

fn output_mode(ascii: bool) -> Mode {
    if ascii {
        Mode::Ascii
    } else {
        Mode::Binary
    }
}

fn cmd_fuse(args: FuseArgs) -> Result<()> {
    let images: Vec<GrayImage> = args
        .inputs
        .iter()
        .map(|p| read_image(p))
        .collect::<Result<_>>()?;
    let mode = output_mode(args.ascii);

    let fused = match args.method {
        Method::Proposed => {
            let result = fuse_max_std(&images, args.window, args.tie_break.into())?;
            if let Some(map_path) = &args.map {
                write_image(map_path, &result.selection.to_image(images.len()), mode)?;
            }
            result.image
        }
        blending => {
            if args.map.is_some() {
                bail!(
                    "--map is only available with --method proposed; \
                     the other methods blend pixels instead of selecting blocks"
                );
            }
            match blending {
                Method::Wavelet => fuse_wavelet(&images, args.levels)?,
                Method::Pca => fuse_pca(&images)?.image,
                Method::Average => fuse_average(&images)?,
                Method::Proposed => unreachable!("handled above"),
            }
        }
    };

    write_image(&args.output, &fused, mode)
}

fn cmd_synth(args: SynthArgs) -> Result<()> {
    let original = read_image(&args.original)?;
    let pair = make_pair(&original, args.geometry, args.sigma, args.radius)?;
    let mode = output_mode(args.ascii);

    let path_a = PathBuf::from(format!("{}_a.pgm", args.out_prefix));
    let path_b = PathBuf::from(format!("{}_b.pgm", args.out_prefix));
    write_image(&path_a, &pair.input_a, mode)?;
    write_image(&path_b, &pair.input_b, mode)?;
    println!("wrote {} and {}", path_a.display(), path_b.display());
    Ok(())
}

fn cmd_metrics(args: MetricsArgs) -> Result<()> {
    let candidate = read_image(&args.candidate)?;
    let reference = read_image(&args.reference)?;
    let report = MetricReport {
        rmse: rmse(&candidate, &reference)?,
        psnr: psnr(&candidate, &reference)?,
        uqi: uqi(&candidate, &reference, args.uqi_window)?,
        ssim: ssim(&candidate, &reference)?,
        uqi_window: args.uqi_window,
        ssim_window: metrics::SSIM_WINDOW,
        ssim_sigma: metrics::SSIM_SIGMA,
    };
    print!("{}", report::render_metrics(&report));
    Ok(())
}

fn run_method(method: Method, inputs: &[GrayImage], k: usize, levels: usize) -> Result<GrayImage> {
    Ok(match method {
        Method::Proposed => fuse_max_std(inputs, k, TieBreak::LowestIndex)?.image,
        Method::Wavelet => fuse_wavelet(inputs, levels)?,
        Method::Pca => fuse_pca(inputs)?.image,
        Method::Average => fuse_average(inputs)?,
    })
}

/// Name a bench row after the original's file stem.
fn image_label(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    let mut rows: Vec<BenchRow> = Vec::new();

    for original_path in &args.originals {
        let original = read_image(original_path)?;
        let label = image_label(original_path);

        for &geometry in &args.geometries {
            let pair = make_pair(&original, geometry, args.sigma, args.radius)?;
            // Score what a file-based pipeline would actually see: both the
            // synthetic inputs and each fused result pass through save-time
            // quantization before any metric is computed.
            let inputs = [pgm::quantized(&pair.input_a), pgm::quantized(&pair.input_b)];

            for method in Method::ALL {
                let start = Instant::now();
                let fused = run_method(method, &inputs, args.window, args.levels)?;
                let runtime_ms = if args.deterministic {
                    0.0
                } else {
                    start.elapsed().as_secs_f64() * 1e3
                };
                let fused = pgm::quantized(&fused);
                rows.push(BenchRow {
                    image: label.clone(),
                    method: method.name(),
                    k: args.window,
                    geometry: geometry.as_str(),
                    sigma: args.sigma,
                    ssim_inputs: ssim_to_inputs(&fused, &inputs)?.mean,
                    psnr: psnr(&fused, &original)?,
                    rmse: rmse(&fused, &original)?,
                    runtime_ms,
                });
            }
        }
    }

    report::sort_rows(&mut rows);
    fs::write(&args.out, report::render_csv(&rows))
        .with_context(|| format!("writing {}", args.out.display()))?;
    if let Some(md_path) = &args.markdown {
        fs::write(md_path, report::render_markdown(&rows))
            .with_context(|| format!("writing {}", md_path.display()))?;
    }
    println!("wrote {} bench rows to {}", rows.len(), args.out.display());
    Ok(())
}
