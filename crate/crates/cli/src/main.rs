use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use neurofilter_core::bench::{run_bench, BenchConfig};
use neurofilter_core::format::csv_num;
use neurofilter_core::metrics::score;
use neurofilter_core::neuromorphic::{run_window_pipeline_into, CsvTraceWriter};
use neurofilter_core::pgm::{read_pgm_file, write_pgm_file};
use neurofilter_core::{
    calibrate, filter_image, AnalogParams, BorderPolicy, FilterKind, Threshold, Window3x3,
};

#[derive(Parser)]
#[command(
    name = "neurofilter",
    version,
    about = "Neuron-gated adaptive mean filtering"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Filter one PGM image.
    Denoise(DenoiseArgs),
    /// Noise, filter and score every image of a corpus.
    Bench(BenchArgs),
    /// Simulate the analog pipeline for one 3x3 window and write its trace.
    SimulateHw(SimulateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    Mean,
    Median,
    Adaptive,
}

#[derive(Clone, Copy, ValueEnum)]
enum BorderArg {
    Replicate,
    Mirror,
    Skip,
}

impl From<BorderArg> for BorderPolicy {
    fn from(b: BorderArg) -> Self {
        match b {
            BorderArg::Replicate => Self::Replicate,
            BorderArg::Mirror => Self::Mirror,
            BorderArg::Skip => Self::Skip,
        }
    }
}

#[derive(clap::Args)]
struct DenoiseArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    #[arg(long, value_enum)]
    filter: FilterArg,
    /// Similarity threshold for the adaptive filter.
    #[arg(long, default_value_t = 0.3)]
    theta: f64,
    #[arg(long, value_enum, default_value = "replicate")]
    border: BorderArg,
    /// Clean image to score the output against.
    #[arg(long)]
    reference: Option<PathBuf>,
}

#[derive(clap::Args)]
struct BenchArgs {
    #[arg(long)]
    corpus: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Gaussian noise variances.
    #[arg(long, value_delimiter = ',', default_value = "0.02,0.04")]
    noise: Vec<f64>,
    #[arg(long, value_delimiter = ',', default_value = "0.2,0.3,0.4")]
    thetas: Vec<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "replicate")]
    border: BorderArg,
}

#[derive(clap::Args)]
struct SimulateArgs {
    #[arg(long)]
    center: f64,
    /// Eight neighbor intensities, row-major around the center.
    #[arg(long, value_delimiter = ',', required = true)]
    neighbors: Vec<f64>,
    #[arg(long)]
    theta: f64,
    /// Trace CSV output.
    #[arg(long)]
    trace: PathBuf,
    /// Keep every N-th simulation step in the trace.
    #[arg(long, default_value_t = 1)]
    trace_stride: usize,
}

fn denoise(args: DenoiseArgs) -> Result<()> {
    let img =
        read_pgm_file(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let kind = match args.filter {
        FilterArg::Mean => FilterKind::Mean,
        FilterArg::Median => FilterKind::Median,
        FilterArg::Adaptive => FilterKind::AdaptiveMean(Threshold::new(args.theta)?),
    };
    let out = filter_image(&img, kind, args.border.into());
    write_pgm_file(&args.output, &out)
        .with_context(|| format!("writing {}", args.output.display()))?;
    if let Some(reference) = &args.reference {
        let clean =
            read_pgm_file(reference).with_context(|| format!("reading {}", reference.display()))?;
        let s = score(&out, &clean)?;
        println!("mse: {}", csv_num(s.mse));
        println!("psnr_db: {}", csv_num(s.psnr_db));
    }
    Ok(())
}

fn bench(args: BenchArgs) -> Result<()> {
    let thetas = args
        .thetas
        .iter()
        .map(|&t| Threshold::new(t))
        .collect::<Result<Vec<_>, _>>()?;
    let mut cfg = BenchConfig::new(&args.corpus).with_thetas(thetas);
    cfg.noise_variances = args.noise;
    cfg.seed = args.seed;
    cfg.border = args.border.into();

    let report = run_bench(&cfg)?;
    for (name, reason) in &report.skipped {
        eprintln!("warning: skipped {name}: {reason}");
    }
    let file =
        File::create(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    report.write_csv(BufWriter::new(file))?;
    print!("{}", report.table());
    Ok(())
}

fn simulate_hw(args: SimulateArgs) -> Result<()> {
    let neighbors: [f64; 8] = match args.neighbors.as_slice().try_into() {
        Ok(n) => n,
        Err(_) => bail!(
            "--neighbors needs exactly 8 values, got {}",
            args.neighbors.len()
        ),
    };
    if let Some(v) = std::iter::once(&args.center)
        .chain(&neighbors)
        .find(|v| !(0.0..=1.0).contains(*v))
    {
        bail!("intensity {v} outside [0, 1]");
    }
    let theta = Threshold::new(args.theta)?;
    let params = calibrate(theta, &AnalogParams::default())?;
    let window = Window3x3::from_center_and_neighbors(args.center, neighbors);

    let file =
        File::create(&args.trace).with_context(|| format!("creating {}", args.trace.display()))?;
    let mut sink = CsvTraceWriter::new(BufWriter::new(file))?;
    let out = run_window_pipeline_into(&window, &params, args.trace_stride, &mut sink)?;
    sink.finish()?;

    println!(
        "theta: {}  charge_rate: {} V/s  firing duty: {}",
        theta,
        csv_num(params.charge_rate),
        csv_num(params.firing_duty())
    );
    println!("slot  pixel  v_diff_v       duty           fired  fire_time_s    register");
    for s in &out.slots {
        println!(
            "{:>4}  {:>5}  {:<13}  {:<13}  {:>5}  {:<13}  {}",
            s.slot,
            s.pixel,
            csv_num(s.v_diff),
            csv_num(s.duty),
            u8::from(s.fired),
            s.fire_time.map(csv_num).unwrap_or_else(|| "-".into()),
            s.register
        );
    }
    let slot_start = 8.0 * params.slot_duration;
    let slot_end = 9.0 * params.slot_duration;
    println!("mask: {}", out.mask);
    println!(
        "readout: {} s (final slot {} .. {} s)",
        csv_num(out.readout_time),
        csv_num(slot_start),
        csv_num(slot_end)
    );
    println!("output: {}", csv_num(out.output));
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Denoise(a) => denoise(a),
        Command::Bench(a) => bench(a),
        Command::SimulateHw(a) => simulate_hw(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
