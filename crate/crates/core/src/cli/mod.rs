//! Command-line front end.
//!
//! Every subcommand reads a snapshot CSV (see [`csvio`]), resolves a
//! [`RunConfig`] from an optional config file plus flags, and writes
//! plot-ready CSV. Errors end the process with a single line
//! `error: <Category>: <message>` on stderr.

pub mod config;
pub mod csvio;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use nalgebra::{DMatrix, DVector};

use crate::bench::{self, NoiseMode, NoiseSpec, TestTemplate};
use crate::error::{Error, Result};
use crate::types::{SnapshotSet, TimeGrid, Window};
use crate::wdmd::{fit_with_options, WdmdModel};

pub use config::RunConfig;
pub use csvio::{load_snapshots_csv, CsvLayout};

#[derive(Debug, Parser)]
#[command(name = "weak-dmd", version, about = "Weak-form dynamic mode decomposition")]
#[command(arg_required_else_help = true)]
struct Cli {
    #[command(flatten)]
    common: CommonArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Config file of `key = value` lines.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Integration window, e.g. `0:100`. Defaults to the data range.
    #[arg(long, global = true, value_name = "T1:T2")]
    window: Option<String>,
    /// Fraction of singular-value mass to keep.
    #[arg(long, global = true, value_name = "E")]
    energy: Option<f64>,
    /// Bump exponent for trial and test functions.
    #[arg(long, global = true, value_name = "INT")]
    p: Option<u32>,
    #[arg(long, global = true, value_name = "LIST")]
    trial_counts: Option<String>,
    #[arg(long, global = true, value_name = "LIST")]
    test_counts: Option<String>,
    /// Overlap per tier, applied to trial and test sets.
    #[arg(long, global = true, value_name = "LIST")]
    overlaps: Option<String>,
    #[arg(long, global = true, value_name = "INT")]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum, value_name = "LAYOUT", default_value_t = CsvLayout::TimeRows)]
    layout: CsvLayout,
    /// Output directory.
    #[arg(long, global = true, value_name = "DIR")]
    output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fit a model; writes summary.txt, spectrum.csv and modes.csv.
    Fit { data: PathBuf },
    /// Print the fitted spectrum as CSV.
    Eigs { data: PathBuf },
    /// Evaluate the denoised trajectory; writes reconstruction.csv.
    Reconstruct {
        data: PathBuf,
        /// `samples` or `uniform:N`.
        #[arg(long, default_value = "samples")]
        grid: String,
    },
    /// Step the fitted operator forward; writes forecast.csv.
    Forecast {
        data: PathBuf,
        #[arg(long)]
        dt: Option<f64>,
        #[arg(long)]
        steps: Option<usize>,
        /// `reduced` or `full`.
        #[arg(long)]
        space: Option<String>,
        /// Start time inside the window. Defaults to its right end.
        #[arg(long)]
        start: Option<f64>,
        /// Source of the initial state.
        #[arg(long, value_enum, default_value_t = Initial::Data)]
        initial: Initial,
        /// Reference snapshots on the forecast times; adds forecast_error.csv.
        #[arg(long, value_name = "PATH")]
        truth: Option<PathBuf>,
    },
    /// Refit with growing test sets; writes sweep.csv.
    Sweep {
        data: PathBuf,
        #[arg(long, value_name = "LIST")]
        test_sizes: String,
    },
    /// Closed-form oscillator spectra for the given window ends.
    Oracle {
        #[arg(long, value_name = "LIST", default_value = "1,5,20,100")]
        t2: String,
    },
    /// Sample a synthetic problem as snapshot CSV.
    Gen {
        #[arg(long, value_enum, default_value_t = Problem::Toy)]
        problem: Problem,
        /// `uniform:N`, `nonuniform:N` or `graded:N[:RATIO]`.
        #[arg(long, default_value = "nonuniform:500")]
        grid: String,
        #[arg(long)]
        t_end: Option<f64>,
        /// Standard deviation of the unit noise draw; 0 disables noise.
        #[arg(long, default_value_t = 0.0)]
        sigma: f64,
        #[arg(long, default_value_t = 0.15)]
        rel: f64,
        #[arg(long, value_enum, default_value_t = NoiseKind::Relative)]
        noise: NoiseKind,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Problem {
    Toy,
    SurrogateSuper,
    SurrogateSub,
    Decay,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Initial {
    /// Samples linearly interpolated at the start time.
    Data,
    /// The fitted trial expansion, which is least accurate at the window ends.
    Reconstruction,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NoiseKind {
    Relative,
    Additive,
}

/// Run with the process arguments and standard streams.
pub fn run_from_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

/// Run with explicit arguments (including the program name) and streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() || e.kind() == clap::error::ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                2
            } else {
                0
            };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {}", e.category(), e.to_string().replace('\n', " "));
            1
        }
    }
}

fn resolve_config(common: &CommonArgs) -> Result<RunConfig> {
    let mut cfg = match &common.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(w) = &common.window {
        cfg.window = Some(config::parse_window(w)?);
    }
    if let Some(e) = common.energy {
        cfg.energy = e;
    }
    if let Some(p) = common.p {
        cfg.trial.p = Some(p);
        cfg.test.p = Some(p);
    }
    if let Some(list) = &common.trial_counts {
        cfg.trial.counts = Some(config::parse_list(list)?);
    }
    if let Some(list) = &common.test_counts {
        cfg.test.counts = Some(config::parse_list(list)?);
    }
    if let Some(list) = &common.overlaps {
        let v: Vec<f64> = config::parse_list(list)?;
        cfg.trial.overlaps = Some(v.clone());
        cfg.test.overlaps = Some(v);
    }
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    if let Some(dir) = &common.output {
        cfg.output_dir = dir.clone();
    }
    Ok(cfg)
}

fn samples_in(window: Window, grid: &TimeGrid) -> usize {
    grid.times().iter().filter(|&&t| window.contains(t)).count()
}

fn fit_model(cfg: &RunConfig, snapshots: &SnapshotSet) -> Result<WdmdModel> {
    let window = cfg.window_for(snapshots.grid());
    let (trial, test) = cfg.layouts(window, samples_in(window, snapshots.grid()))?;
    fit_with_options(snapshots, &trial, &test, window, &cfg.fit_options())
}

fn create_file(dir: &Path, name: &str) -> Result<std::io::BufWriter<std::fs::File>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    let file = std::fs::File::create(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(std::io::BufWriter::new(file))
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<()> {
    let cfg = resolve_config(&cli.common)?;
    let layout = cli.common.layout;
    match cli.command {
        Command::Fit { data } => {
            let snapshots = load_snapshots_csv(&data, layout)?;
            let model = fit_model(&cfg, &snapshots)?;
            let summary = summary_text(&model);
            write!(out, "{summary}")?;
            let mut f = create_file(&cfg.output_dir, "summary.txt")?;
            write!(f, "{summary}")?;
            f.flush()?;
            let mut f = create_file(&cfg.output_dir, "spectrum.csv")?;
            csvio::write_spectrum(&mut f, model.spectrum.eigenvalues())?;
            f.flush()?;
            let mut f = create_file(&cfg.output_dir, "modes.csv")?;
            write_modes(&mut f, &model)?;
            f.flush()?;
        }
        Command::Eigs { data } => {
            let snapshots = load_snapshots_csv(&data, layout)?;
            let model = fit_model(&cfg, &snapshots)?;
            csvio::write_spectrum(out, model.spectrum.eigenvalues())?;
        }
        Command::Reconstruct { data, grid } => {
            let snapshots = load_snapshots_csv(&data, layout)?;
            let model = fit_model(&cfg, &snapshots)?;
            let window = model.window;
            let times: Vec<f64> = match grid.trim() {
                "samples" => snapshots.times().iter().copied().filter(|&t| window.contains(t)).collect(),
                spec => match spec.split_once(':') {
                    Some(("uniform", n)) => {
                        let n: usize = config::parse_scalar(n)?;
                        TimeGrid::uniform(window.t1(), window.t2(), n)?.times().to_vec()
                    }
                    _ => return Err(Error::InvalidArgument(format!("unknown grid {spec:?}"))),
                },
            };
            let x = model.trial().reconstruct_many(&times)?;
            let mut f = create_file(&cfg.output_dir, "reconstruction.csv")?;
            csvio::write_time_table(&mut f, &times, &x)?;
            f.flush()?;
        }
        Command::Forecast {
            data,
            dt,
            steps,
            space,
            start,
            initial,
            truth,
        } => {
            let snapshots = load_snapshots_csv(&data, layout)?;
            let model = fit_model(&cfg, &snapshots)?;
            let space = match space {
                Some(s) => config::parse_space(&s)?,
                None => cfg.forecast.space,
            };
            let steps = steps.unwrap_or(cfg.forecast.steps);
            let dt = match dt.or(cfg.forecast.dt) {
                Some(dt) => dt,
                None => {
                    let t = snapshots.times();
                    (t[t.len() - 1] - t[0]) / (t.len() - 1) as f64
                }
            };
            let t0 = start.unwrap_or(model.window.t2());
            let y0 = match initial {
                Initial::Data => interpolate(&snapshots, t0)?,
                Initial::Reconstruction => model.reconstruct(t0)?,
            };
            let pred = model.forecast(&y0, dt, steps, space)?;
            let times: Vec<f64> = (1..=steps).map(|k| t0 + k as f64 * dt).collect();
            let mut f = create_file(&cfg.output_dir, "forecast.csv")?;
            csvio::write_time_table(&mut f, &times, &pred)?;
            f.flush()?;
            if let Some(path) = truth {
                let reference = load_snapshots_csv(&path, layout)?;
                let errors = forecast_errors(&reference, &times, pred)?;
                let mut f = create_file(&cfg.output_dir, "forecast_error.csv")?;
                writeln!(f, "t,error")?;
                for (t, e) in times.iter().zip(&errors) {
                    writeln!(f, "{},{}", csvio::fmt_f64(*t), csvio::fmt_f64(*e))?;
                }
                f.flush()?;
            }
        }
        Command::Sweep { data, test_sizes } => {
            let snapshots = load_snapshots_csv(&data, layout)?;
            let sizes: Vec<usize> = config::parse_list(&test_sizes)?;
            let window = cfg.window_for(snapshots.grid());
            let (trial, _) = cfg.layouts(window, samples_in(window, snapshots.grid()))?;
            let template = TestTemplate {
                p: cfg.test.p.unwrap_or(config::DEFAULT_P),
                overlap: cfg.test.overlaps.as_ref().map_or(config::DEFAULT_OVERLAP, |v| v[0]),
            };
            let rows = bench::convergence_sweep(&snapshots, &trial, &sizes, template, window, &cfg.fit_options())?;
            let mut f = create_file(&cfg.output_dir, "sweep.csv")?;
            writeln!(f, "test_size,index,re,im")?;
            for row in &rows {
                for (k, z) in row.spectrum.eigenvalues().iter().enumerate() {
                    writeln!(f, "{},{k},{},{}", row.test_size, csvio::fmt_f64(z.re), csvio::fmt_f64(z.im))?;
                }
            }
            f.flush()?;
        }
        Command::Oracle { t2 } => {
            let values: Vec<f64> = config::parse_list(&t2)?;
            writeln!(out, "t2,index,re,im")?;
            for t2 in values {
                let spectrum = bench::table1_oracle(t2)?;
                for (k, z) in spectrum.eigenvalues().iter().enumerate() {
                    writeln!(out, "{t2},{k},{},{}", csvio::fmt_f64(z.re), csvio::fmt_f64(z.im))?;
                }
            }
        }
        Command::Gen {
            problem,
            grid,
            t_end,
            sigma,
            rel,
            noise,
        } => {
            let spec = match problem {
                Problem::Toy => bench::toy_oscillator_spec(),
                Problem::SurrogateSuper => bench::two_mode_surrogate(0.007565, -0.270383, "surrogate-super"),
                Problem::SurrogateSub => bench::two_mode_surrogate(-0.002244, -0.27054, "surrogate-sub"),
                Problem::Decay => bench::decay_spec(),
            };
            let t_end = t_end.unwrap_or(match problem {
                Problem::Toy => 20.0,
                Problem::SurrogateSuper | Problem::SurrogateSub => 200.0,
                Problem::Decay => 5.0,
            });
            let grid = parse_gen_grid(&grid, t_end, cfg.seed)?;
            let mut snapshots = bench::sample_trajectory(&spec, &grid)?;
            if sigma > 0.0 {
                let noise = NoiseSpec {
                    sigma,
                    relative_magnitude: rel,
                    seed: cfg.seed ^ NOISE_SEED_SALT,
                    mode: match noise {
                        NoiseKind::Relative => NoiseMode::Relative,
                        NoiseKind::Additive => NoiseMode::Additive,
                    },
                };
                snapshots = bench::add_noise(&snapshots, &noise)?;
            }
            match &cli.common.output {
                Some(dir) => {
                    let mut f = create_file(dir, "snapshots.csv")?;
                    csvio::write_snapshots(&mut f, &snapshots)?;
                    f.flush()?;
                }
                None => csvio::write_snapshots(out, &snapshots)?,
            }
        }
    }
    Ok(())
}

/// Keeps the noise stream independent of the grid stream under one seed.
const NOISE_SEED_SALT: u64 = 0x9e37_79b9_7f4a_7c15;

fn parse_gen_grid(spec: &str, t_end: f64, seed: u64) -> Result<TimeGrid> {
    let parts: Vec<&str> = spec.split(':').map(str::trim).collect();
    let n = |s: &str| config::parse_scalar::<usize>(s);
    match parts.as_slice() {
        ["uniform", k] => TimeGrid::uniform(0.0, t_end, n(k)?),
        ["nonuniform", k] => bench::random_grid(0.0, t_end, n(k)?, seed),
        ["graded", k] => TimeGrid::graded(0.0, t_end, n(k)?, 10.0),
        ["graded", k, r] => TimeGrid::graded(0.0, t_end, n(k)?, config::parse_scalar(r)?),
        _ => Err(Error::InvalidArgument(format!("unknown grid {spec:?}"))),
    }
}

fn interpolate(snapshots: &SnapshotSet, t: f64) -> Result<DVector<f64>> {
    let times = snapshots.times();
    let (t1, t2) = (times[0], times[times.len() - 1]);
    if !(t1..=t2).contains(&t) {
        return Err(Error::OutOfWindow { t, t1, t2 });
    }
    let k = times.partition_point(|&s| s < t).max(1);
    let w = (t - times[k - 1]) / (times[k] - times[k - 1]);
    let x = snapshots.data();
    Ok(x.column(k - 1) * (1.0 - w) + x.column(k) * w)
}

fn forecast_errors(reference: &SnapshotSet, times: &[f64], pred: DMatrix<f64>) -> Result<Vec<f64>> {
    let matches = reference.n_samples() == times.len()
        && reference
            .times()
            .iter()
            .zip(times)
            .all(|(a, b)| (a - b).abs() <= 1e-9 * a.abs().max(1.0));
    if !matches {
        return Err(Error::GridMismatch);
    }
    let predicted = SnapshotSet::new(reference.grid().clone(), pred)?;
    bench::forecast_error(reference, &predicted)
}

fn summary_text(model: &WdmdModel) -> String {
    let mut s = String::new();
    let trial = model.trial();
    s.push_str(&format!("window = {}:{}\n", model.window.t1(), model.window.t2()));
    s.push_str(&format!("states = {}\n", model.n_states()));
    s.push_str(&format!("trial_functions = {}\n", trial.basis().len()));
    s.push_str(&format!("test_functions = {}\n", model.weak.test_basis.len()));
    s.push_str(&format!("gram_rank = {}\n", trial.rank()));
    s.push_str(&format!("gram_rank_deficient = {}\n", trial.rank_deficient()));
    s.push_str(&format!("rank = {}\n", model.rank()));
    s.push_str(&format!("energy_retained = {}\n", model.svd.energy));
    let rms: Vec<String> = trial.residual_rms().iter().map(|v| format!("{v:e}")).collect();
    s.push_str(&format!("residual_rms = {}\n", rms.join(",")));
    for (k, z) in model.spectrum.eigenvalues().iter().enumerate() {
        s.push_str(&format!("lambda[{k}] = {} {:+}i\n", z.re, z.im));
    }
    s
}

fn write_modes(out: &mut dyn Write, model: &WdmdModel) -> Result<()> {
    writeln!(out, "mode,state,re,im")?;
    for k in 0..model.modes.ncols() {
        let col: DVector<_> = model.modes.column(k).into_owned();
        for (i, z) in col.iter().enumerate() {
            writeln!(out, "{k},{i},{},{}", csvio::fmt_f64(z.re), csvio::fmt_f64(z.im))?;
        }
    }
    Ok(())
}
