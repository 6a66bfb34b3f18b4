//! Command-line front door for the saturation-bound toolkit.
//!
//! Exit codes: 0 on success, 1 on usage errors (bad flags or parameter
//! values), 2 on data errors (unreadable or malformed files and models).
//! Results go to standard output or `--out`; diagnostics to standard error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use satbound_core::{
    infer, named_size_bounds, named_size_bounds_to_csv, run_reliability, sample_complexity,
    saturation_to_csv, sweep_bounds, sweep_to_csv, triangle_model, HitSpectrum, PacParams,
    SutProfileModel,
};

#[derive(Parser)]
#[command(
    name = "satbound",
    version,
    about = "Sample-size bounds for random-testing coverage saturation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the test-count bound for one parameter choice
    Bound {
        /// Number of coverage targets
        #[arg(long)]
        targets: u64,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        delta: f64,
    },
    /// Bounds over a Cartesian parameter grid, as CSV
    Sweep {
        /// Target counts, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        targets: Vec<u64>,
        /// Epsilon values, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        epsilons: Vec<f64>,
        /// Delta values, comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        deltas: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Learn the coverage conjunction from a spectrum file
    Infer {
        /// Spectrum CSV (header of target ids, then 0/1 rows)
        #[arg(long)]
        spectrum: PathBuf,
        /// Collapse bit-identical columns before learning
        #[arg(long)]
        merge_columns: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a seeded spectrum from a profile model
    Simulate {
        /// Model JSON file
        #[arg(long)]
        model: PathBuf,
        /// Number of rows to draw
        #[arg(long)]
        tests: usize,
        /// RNG seed (default: SATBOUND_SEED, then 0)
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte-Carlo reliability run at the bounded sample size
    Validate {
        /// Model JSON file
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        delta: f64,
        /// Number of independent trials
        #[arg(long)]
        trials: u32,
        /// Base RNG seed (default: SATBOUND_SEED, then 0)
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cumulative coverage curve of a spectrum, as CSV
    Saturation {
        /// Spectrum CSV file
        #[arg(long)]
        spectrum: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bounds for a file of named subject sizes (epsilon 0.2, delta 0.1)
    Table3 {
        /// CSV of `name,n` rows (a `name,n` header line is allowed)
        #[arg(long)]
        sizes: PathBuf,
    },
    /// Write the built-in demo subject as a model JSON file
    TriangleExport {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    Usage(String),
    Data(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Data(m) => m,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.code())
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Bound { targets, epsilon, delta } => {
            let bound = sample_complexity(targets, pac_params(epsilon, delta)?);
            print!("raw_bound: {:.4}\ntests: {}\n", bound.raw, bound.tests);
            Ok(())
        }
        Command::Sweep { targets, epsilons, deltas, out } => {
            let records = sweep_bounds(&targets, &epsilons, &deltas)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            emit(out.as_deref(), sweep_to_csv(&records))
        }
        Command::Infer { spectrum, merge_columns, out } => {
            let parsed = read_spectrum(&spectrum)?;
            let hypothesis = if merge_columns {
                let merged = parsed
                    .merge_identical_columns()
                    .map_err(|e| CliError::Data(format!("{}: {e}", spectrum.display())))?;
                eprintln!(
                    "merged {} targets into {}",
                    parsed.n_targets(),
                    merged.spectrum.n_targets()
                );
                infer(&merged.spectrum)
            } else {
                infer(&parsed)
            };
            emit(out.as_deref(), hypothesis.to_json() + "\n")
        }
        Command::Simulate { model, tests, seed, out } => {
            let model = read_model(&model)?;
            let spectrum = model.sample_executions(tests, resolve_seed(seed)?);
            emit(out.as_deref(), spectrum.to_csv())
        }
        Command::Validate { model, epsilon, delta, trials, seed, out } => {
            if trials == 0 {
                return Err(CliError::Usage("trials must be at least 1".into()));
            }
            let params = pac_params(epsilon, delta)?;
            let model_id = model.display().to_string();
            let model = read_model(&model)?;
            let report = run_reliability(&model, &model_id, params, trials, resolve_seed(seed)?);
            emit(out.as_deref(), report.to_json() + "\n")
        }
        Command::Saturation { spectrum, out } => {
            let parsed = read_spectrum(&spectrum)?;
            emit(out.as_deref(), saturation_to_csv(&parsed.saturation_curve()))
        }
        Command::Table3 { sizes } => {
            let text = read_file(&sizes)?;
            let rows = named_size_bounds(&parse_sizes(&text, &sizes)?);
            print!("{}", named_size_bounds_to_csv(&rows));
            Ok(())
        }
        Command::TriangleExport { out } => {
            emit(out.as_deref(), triangle_model().to_json() + "\n")
        }
    }
}

fn pac_params(epsilon: f64, delta: f64) -> Result<PacParams, CliError> {
    PacParams::new(epsilon, delta).map_err(|e| CliError::Usage(e.to_string()))
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var("SATBOUND_SEED") {
        Ok(value) => value.trim().parse().map_err(|_| {
            CliError::Usage(format!(
                "SATBOUND_SEED must be a 64-bit unsigned integer, got {value:?}"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(0),
        Err(err) => Err(CliError::Usage(format!("SATBOUND_SEED: {err}"))),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn read_spectrum(path: &Path) -> Result<HitSpectrum, CliError> {
    HitSpectrum::parse(&read_file(path)?)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn read_model(path: &Path) -> Result<SutProfileModel, CliError> {
    SutProfileModel::from_json(&read_file(path)?)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, content: String) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Data(format!("{}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Parses `name,n` lines; the split is at the last comma, so names may
/// contain commas. A literal `name,n` header on the first line is skipped.
fn parse_sizes(text: &str, path: &Path) -> Result<Vec<(String, u64)>, CliError> {
    let mut sizes = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || (line_no == 1 && trimmed == "name,n") {
            continue;
        }
        let (name, n) = trimmed.rsplit_once(',').ok_or_else(|| {
            CliError::Data(format!(
                "{}: line {line_no}: expected `name,n`",
                path.display()
            ))
        })?;
        let n = n.trim().parse().map_err(|_| {
            CliError::Data(format!(
                "{}: line {line_no}: size {n:?} is not a non-negative integer",
                path.display()
            ))
        })?;
        sizes.push((name.trim().to_string(), n));
    }
    if sizes.is_empty() {
        return Err(CliError::Data(format!(
            "{}: no size entries found",
            path.display()
        )));
    }
    Ok(sizes)
}
