//! Command-line interface.
//!
//! Exit status is 0 on success, 1 for invalid input or IO failures, and 2 when
//! a numerical target is missed (the matcher did not converge, or a round
//! trip exceeded its tolerance).

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use so3ft_core::clebsch_gordan::{cg_complex_matrix, cg_real_matrix};
use so3ft_core::geometry::{matrix_to_euler, EulerAngles};
use so3ft_core::shape_match::{match_shapes_with, rotate_coefficients, Correlator, MatchConfig, MatchResult};
use so3ft_core::transforms::{S2Coefficients, S2Samples, SO3Samples, So3Fft};
use so3ft_core::Complex64;

use crate::backends::{RayonExecutor, RustFftBackend};
use crate::bench::{run_bench, to_csv};
use crate::formats::{read_document, format_document, CoefficientSet, Document, SampleSet};
use crate::ingest::{ingest, normalize};
use crate::synthetic::{random_so3_complex, random_so3_real, rng, synthetic_surface, trace, uniform_rotation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "so3ft", version, about = "Fourier transforms on SO(3) and the sphere")]
pub struct Cli {
    /// Worker threads for the transforms.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Forward transform of a sample file or a built-in function.
    Fft(FftArgs),
    /// Inverse transform of a coefficient file onto the sample grid.
    Ifft(IfftArgs),
    /// Random coefficients through inverse then forward; prints the block error.
    Roundtrip(RoundtripArgs),
    /// Time forward and inverse transforms; writes CSV.
    Bench(BenchArgs),
    /// Recover the rotation between two spherical grids.
    Match(MatchArgs),
    /// Dump Clebsch-Gordan coefficients for one pair of degrees.
    CgTable(CgTableArgs),
    /// Resample a raw latitude/longitude grid onto the transform grid.
    Ingest(IngestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    Real,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    /// Trace of the rotation matrix.
    Trace,
    /// The constant 1.
    Const,
    /// Random band-limited function from `--seed`.
    Random,
}

#[derive(Debug, Args)]
pub struct FftArgs {
    /// SO3SAMPLES or S2GRID file.
    #[arg(conflicts_with = "builtin", required_unless_present = "builtin")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub builtin: Option<Builtin>,
    #[arg(short = 'B', long, default_value_t = 8)]
    pub bandwidth: usize,
    #[arg(long, value_enum, default_value_t = FlavorArg::Real)]
    pub flavor: FlavorArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct IfftArgs {
    /// SO3FT or S2FT file.
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RoundtripArgs {
    #[arg(short = 'B', long, default_value_t = 8)]
    pub bandwidth: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = FlavorArg::Real)]
    pub flavor: FlavorArg,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(short = 'B', long = "bandwidth", value_delimiter = ',', default_value = "8,16,32,64")]
    pub bandwidths: Vec<usize>,
    #[arg(long = "thread-counts", value_delimiter = ',', default_value = "1,2,4")]
    pub thread_counts: Vec<usize>,
    #[arg(long, default_value_t = 10)]
    pub repeats: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MatchArgs {
    /// S2GRID file for f. Without it a synthetic surface from `--seed` is used.
    pub f: Option<PathBuf>,
    /// S2GRID file for g.
    #[arg(long = "g", conflicts_with = "rotate", required_unless_present = "rotate")]
    pub g: Option<PathBuf>,
    /// Build g by rotating f by these Euler angles.
    #[arg(long, num_args = 3, value_names = ["ALPHA", "BETA", "GAMMA"], allow_negative_numbers = true)]
    pub rotate: Option<Vec<f64>>,
    /// Truncation bandwidth; defaults to the grid bandwidth, or 16 for the synthetic surface.
    #[arg(short = 'B', long)]
    pub bandwidth: Option<usize>,
    #[arg(long, default_value_t = 5e-3)]
    pub step: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    #[arg(long = "max-iters", default_value_t = 10_000)]
    pub max_iters: usize,
    #[arg(long, num_args = 3, value_names = ["ALPHA", "BETA", "GAMMA"], allow_negative_numbers = true, default_values_t = [0.0, 0.0, 0.0])]
    pub init: Vec<f64>,
    /// Extra random initial rotations; the best final correlation wins.
    #[arg(long, default_value_t = 0)]
    pub multistart: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Use grid values as given instead of zero-mean, unit max-abs.
    #[arg(long = "no-normalize")]
    pub no_normalize: bool,
    /// Per-iteration CSV of the winning run.
    #[arg(long)]
    pub trace: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CgTableArgs {
    pub l1: usize,
    pub l2: usize,
    #[arg(long, value_enum, default_value_t = FlavorArg::Real)]
    pub flavor: FlavorArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    /// CSV `lat,lon,value` or dense `rows cols` grid.
    pub input: PathBuf,
    #[arg(short = 'B', long, default_value_t = 16)]
    pub bandwidth: usize,
    #[arg(long = "no-normalize")]
    pub no_normalize: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn engine(bandwidth: usize, threads: usize) -> anyhow::Result<So3Fft<RayonExecutor, RustFftBackend>> {
    anyhow::ensure!((1..=256).contains(&bandwidth), "bandwidth must lie in 1..=256, got {bandwidth}");
    Ok(So3Fft::with_backends(bandwidth, RayonExecutor::new(threads)?, RustFftBackend::new())?)
}

fn read(path: &Path) -> anyhow::Result<Document> {
    read_document(path).with_context(|| format!("reading {}", path.display()))
}

fn cmd_fft(args: &FftArgs, threads: usize) -> anyhow::Result<i32> {
    let coeffs = match (&args.input, args.builtin) {
        (Some(path), _) => {
            let Document::Samples(samples) = read(path)? else {
                bail!("{} holds coefficients, not samples", path.display());
            };
            match samples {
                SampleSet::So3Real(s) => CoefficientSet::So3Real(engine(s.bandwidth(), threads)?.forward_real(&s)?),
                SampleSet::So3Complex(s) => CoefficientSet::So3Complex(engine(s.bandwidth(), threads)?.forward_complex(&s)?),
                SampleSet::S2Grid(s) => CoefficientSet::S2Real(engine(s.bandwidth(), threads)?.forward_s2_real(&s)?),
            }
        }
        (None, Some(builtin)) => {
            let fft = engine(args.bandwidth, threads)?;
            let b = args.bandwidth;
            match (builtin, args.flavor) {
                (Builtin::Random, FlavorArg::Real) => {
                    let s = fft.inverse_real(&random_so3_real(b, &mut rng(args.seed)))?;
                    CoefficientSet::So3Real(fft.forward_real(&s)?)
                }
                (Builtin::Random, FlavorArg::Complex) => {
                    let s = fft.inverse_complex(&random_so3_complex(b, &mut rng(args.seed)))?;
                    CoefficientSet::So3Complex(fft.forward_complex(&s)?)
                }
                (_, FlavorArg::Real) => {
                    let f = if builtin == Builtin::Trace { trace } else { |_: &EulerAngles| 1.0 };
                    CoefficientSet::So3Real(fft.forward_real(&SO3Samples::from_fn(fft.grid(), f))?)
                }
                (_, FlavorArg::Complex) => {
                    let f = if builtin == Builtin::Trace { trace } else { |_: &EulerAngles| 1.0 };
                    let s = SO3Samples::from_fn(fft.grid(), |e| Complex64::new(f(e), 0.0));
                    CoefficientSet::So3Complex(fft.forward_complex(&s)?)
                }
            }
        }
        (None, None) => bail!("either an input file or --builtin is required"),
    };
    emit(args.out.as_deref(), &format_document(&Document::Coefficients(coeffs)))?;
    Ok(EXIT_OK)
}

fn cmd_ifft(args: &IfftArgs, threads: usize) -> anyhow::Result<i32> {
    let Document::Coefficients(coeffs) = read(&args.input)? else {
        bail!("{} holds samples, not coefficients", args.input.display());
    };
    let samples = match coeffs {
        CoefficientSet::So3Real(c) => SampleSet::So3Real(engine(c.bandwidth(), threads)?.inverse_real(&c)?),
        CoefficientSet::So3Complex(c) => SampleSet::So3Complex(engine(c.bandwidth(), threads)?.inverse_complex(&c)?),
        CoefficientSet::S2Real(c) => SampleSet::S2Grid(engine(c.bandwidth(), threads)?.inverse_s2_real(&c)?),
    };
    emit(args.out.as_deref(), &format_document(&Document::Samples(samples)))?;
    Ok(EXIT_OK)
}

/// `Σ_l ‖F^l - G^l‖_F` for random coefficients `F` and `G = forward(inverse(F))`.
pub fn roundtrip_error(bandwidth: usize, seed: u64, flavor: FlavorArg, threads: usize) -> anyhow::Result<f64> {
    let fft = engine(bandwidth, threads)?;
    let mut r = rng(seed);
    Ok(match flavor {
        FlavorArg::Real => {
            let f = random_so3_real(bandwidth, &mut r);
            let g = fft.forward_real(&fft.inverse_real(&f)?)?;
            f.block_error(&g)?
        }
        FlavorArg::Complex => {
            let f = random_so3_complex(bandwidth, &mut r);
            let g = fft.forward_complex(&fft.inverse_complex(&f)?)?;
            f.block_error(&g)?
        }
    })
}

fn cmd_roundtrip(args: &RoundtripArgs, threads: usize) -> anyhow::Result<i32> {
    let err = roundtrip_error(args.bandwidth, args.seed, args.flavor, threads)?;
    let flavor = match args.flavor {
        FlavorArg::Real => "real",
        FlavorArg::Complex => "complex",
    };
    println!("bandwidth={} flavor={flavor} seed={} error={err:.4e}", args.bandwidth, args.seed);
    Ok(if err < args.tol { EXIT_OK } else { EXIT_NUMERICAL })
}

fn cmd_bench(args: &BenchArgs) -> anyhow::Result<i32> {
    let rows = run_bench(&args.bandwidths, &args.thread_counts, args.repeats, args.seed)?;
    emit(args.out.as_deref(), &to_csv(&rows))?;
    Ok(EXIT_OK)
}

fn read_grid(path: &Path) -> anyhow::Result<S2Samples<f64>> {
    match read(path)? {
        Document::Samples(SampleSet::S2Grid(s)) => Ok(s),
        _ => bail!("{} is not an S2GRID file", path.display()),
    }
}

fn truncated(coeffs: S2Coefficients<f64>, bandwidth: Option<usize>) -> anyhow::Result<S2Coefficients<f64>> {
    match bandwidth {
        None => Ok(coeffs),
        Some(b) if b >= 1 && b <= coeffs.bandwidth() => Ok(coeffs.with_bandwidth(b)),
        Some(b) => bail!("bandwidth {b} must lie in 1..={}", coeffs.bandwidth()),
    }
}

fn euler_arg(v: &[f64], what: &str) -> anyhow::Result<EulerAngles> {
    EulerAngles::new(v[0], v[1], v[2]).with_context(|| format!("invalid {what} angles"))
}

fn cmd_match(args: &MatchArgs, threads: usize) -> anyhow::Result<i32> {
    let prepare = |s: S2Samples<f64>| if args.no_normalize { s } else { normalize(&s) };
    let f = match &args.f {
        Some(path) => {
            let grid = prepare(read_grid(path)?);
            truncated(engine(grid.bandwidth(), threads)?.forward_s2_real(&grid)?, args.bandwidth)?
        }
        None => synthetic_surface(args.bandwidth.unwrap_or(16), &mut rng(args.seed)),
    };
    let g = match (&args.g, &args.rotate) {
        (Some(path), _) => {
            let grid = prepare(read_grid(path)?);
            let g = engine(grid.bandwidth(), threads)?.forward_s2_real(&grid)?;
            anyhow::ensure!(g.bandwidth() >= f.bandwidth(), "g has bandwidth {} below f's {}", g.bandwidth(), f.bandwidth());
            g.with_bandwidth(f.bandwidth())
        }
        (None, Some(angles)) => rotate_coefficients(&f, &euler_arg(angles, "--rotate")?.to_matrix()),
        (None, None) => bail!("either --g or --rotate is required"),
    };

    let base = MatchConfig {
        step_size: args.step,
        tolerance: args.tol,
        max_iters: args.max_iters,
        initial_guess: euler_arg(&args.init, "--init")?,
    };
    base.validate()?;
    let correlator = Correlator::new(&f, &g)?;
    let exec = RayonExecutor::new(threads)?;
    let mut starts = vec![base.initial_guess];
    let mut r = rng(args.seed ^ 0x5eed);
    starts.extend((0..args.multistart).map(|_| matrix_to_euler(&uniform_rotation(&mut r))));

    let mut best: Option<(usize, MatchResult)> = None;
    for (i, start) in starts.iter().enumerate() {
        let result = match_shapes_with(&correlator, &MatchConfig { initial_guess: *start, ..base }, &exec)?;
        let better = best.as_ref().is_none_or(|(_, b)| {
            (result.converged && !b.converged) || (result.converged == b.converged && result.correlation > b.correlation)
        });
        if better {
            best = Some((i, result));
        }
    }
    let (start_index, result) = best.expect("at least one start");

    let [a, b, c] = result.euler.to_array();
    let mut report = String::new();
    writeln!(report, "converged: {}", result.converged)?;
    writeln!(report, "iterations: {}", result.iterations)?;
    writeln!(report, "start: {start_index} of {}", starts.len())?;
    writeln!(report, "alpha: {a:.12}")?;
    writeln!(report, "beta: {b:.12}")?;
    writeln!(report, "gamma: {c:.12}")?;
    writeln!(report, "correlation: {:.12e}", result.correlation)?;
    if let Some(last) = result.trace.records.last() {
        writeln!(report, "gradient_norm: {:.6e}", last.gradient_norm)?;
    }
    emit(args.out.as_deref(), &report)?;
    if let Some(path) = &args.trace {
        fs::write(path, trace_csv(&result)).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if result.converged { EXIT_OK } else { EXIT_NUMERICAL })
}

pub fn trace_csv(result: &MatchResult) -> String {
    let mut out = String::from("iteration,correlation,gradient_norm,alpha,beta,gamma\n");
    for r in &result.trace.records {
        let [a, b, c] = r.euler.to_array();
        writeln!(out, "{},{:e},{:e},{a:e},{b:e},{c:e}", r.iteration, r.correlation, r.gradient_norm).unwrap();
    }
    out
}

/// Entries below this magnitude are omitted from the table dump.
const CG_DUMP_THRESHOLD: f64 = 1e-14;

pub fn cg_table(l1: usize, l2: usize, flavor: FlavorArg) -> String {
    let mut out = String::new();
    let (j1, j2) = (l1 as i64, l2 as i64);
    let real = (flavor == FlavorArg::Real).then(|| cg_real_matrix(l1, l2));
    let complex = (flavor == FlavorArg::Complex).then(|| cg_complex_matrix(l1, l2));
    for l in l1.abs_diff(l2)..=l1 + l2 {
        let li = l as i64;
        for m in -li..=li {
            for m1 in -j1..=j1 {
                for m2 in -j2..=j2 {
                    if let Some(c) = &real {
                        let v = c.get(l, m, m1, m2);
                        if v.norm() > CG_DUMP_THRESHOLD {
                            writeln!(out, "{l1} {l2} {l} {m} {m1} {m2} {:e} {:e}", v.re, v.im).unwrap();
                        }
                    }
                    if let Some(c) = &complex {
                        let v = c.get(l, m, m1, m2);
                        if v.abs() > CG_DUMP_THRESHOLD {
                            writeln!(out, "{l1} {l2} {l} {m} {m1} {m2} {v:e}").unwrap();
                        }
                    }
                }
            }
        }
    }
    out
}

fn cmd_cg_table(args: &CgTableArgs) -> anyhow::Result<i32> {
    emit(args.out.as_deref(), &cg_table(args.l1, args.l2, args.flavor))?;
    Ok(EXIT_OK)
}

fn cmd_ingest(args: &IngestArgs) -> anyhow::Result<i32> {
    anyhow::ensure!((1..=256).contains(&args.bandwidth), "bandwidth must lie in 1..=256");
    let text = fs::read_to_string(&args.input).with_context(|| format!("reading {}", args.input.display()))?;
    let grid = ingest(&text, args.bandwidth, !args.no_normalize).with_context(|| format!("ingesting {}", args.input.display()))?;
    emit(args.out.as_deref(), &format_document(&Document::Samples(SampleSet::S2Grid(grid))))?;
    Ok(EXIT_OK)
}

/// Runs a parsed command and returns its exit status.
pub fn run(cli: &Cli) -> anyhow::Result<i32> {
    anyhow::ensure!(cli.threads >= 1, "--threads must be at least 1");
    match &cli.command {
        Command::Fft(a) => cmd_fft(a, cli.threads),
        Command::Ifft(a) => cmd_ifft(a, cli.threads),
        Command::Roundtrip(a) => cmd_roundtrip(a, cli.threads),
        Command::Bench(a) => cmd_bench(a),
        Command::Match(a) => cmd_match(a, cli.threads),
        Command::CgTable(a) => cmd_cg_table(a),
        Command::Ingest(a) => cmd_ingest(a),
    }
}

/// Parses `args` (program name first) and runs; errors are reported on stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_INPUT
        }
    }
}
