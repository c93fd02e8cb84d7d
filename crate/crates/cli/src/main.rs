//! `qfilter` command-line front end.
//!
//! Exit codes: 0 success, 1 usage, 2 data error, 3 filter annihilated the state or the
//! retry budget ran out.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

use qfilter::encoding::EncodingMode;
use qfilter::filter::{FilterSpec, NamedFilter};
use qfilter::pipeline::{self, FilterChoice, Mode, RunConfig, RunReport};
use qfilter::transpose::SchemeKind;
use qfilter::{io, selftest, Error};

#[derive(Parser, Debug)]
#[command(
    name = "qfilter",
    version,
    about = "Quantum Fourier filtering and transpose, simulated"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Filter a CSV series (one value per line).
    Filter1d(FilterArgs),
    /// Filter a PGM or PPM image.
    Filter2d {
        #[command(flatten)]
        args: FilterArgs,
        /// Use the composed row/column transform (square power-of-two grayscale only).
        #[arg(long)]
        composed_2d: bool,
        /// Take magnitudes before clamping pixels to [0, maxval].
        #[arg(long)]
        abs: bool,
    },
    /// Transpose a CSV matrix through a qubit-permutation circuit.
    Transpose {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = SchemeArg::Cnot)]
        scheme: SchemeArg,
        /// JSON grid of basis indices; defaults to the layout the scheme implies.
        #[arg(long)]
        layout: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = EncodingArg::Amplitude)]
        encoding: EncodingArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Recompute every reference vector and print a pass/fail table.
    Selftest,
}

#[derive(Args, Debug)]
struct FilterArgs {
    input: PathBuf,
    /// Filter family; `custom` takes --marked, --prefix or --spec with --keep-marked.
    #[arg(long, value_enum)]
    filter: Option<FilterKind>,
    /// Comma-separated basis indices to mark.
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["prefix", "spec"])]
    marked: Option<Vec<usize>>,
    /// Comma-separated MSB-first patterns over 0, 1 and x, e.g. `00,11`.
    #[arg(long, conflicts_with = "spec")]
    prefix: Option<String>,
    /// JSON filter spec file.
    #[arg(long)]
    spec: Option<PathBuf>,
    /// Keep the marked branch instead of the unmarked one (custom filters).
    #[arg(long)]
    keep_marked: bool,
    /// Frequency distance cutoff for lowpass and highpass.
    #[arg(long)]
    cutoff: Option<usize>,
    /// Inclusive band `low,high` for bandpass and bandstop.
    #[arg(long, value_delimiter = ',', num_args = 1)]
    band: Option<Vec<usize>>,
    #[arg(long, value_enum, default_value_t = ModeArg::Project)]
    mode: ModeArg,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 10_000)]
    max_trials: usize,
    #[arg(long, value_enum, default_value_t = EncodingArg::Amplitude)]
    encoding: EncodingArg,
    /// Also run the classical masked transform and report the difference.
    #[arg(long)]
    compare_classical: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the JSON run report here instead of stdout.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum FilterKind {
    Allpass,
    Lowpass,
    Highpass,
    Bandpass,
    Bandstop,
    Custom,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ModeArg {
    Project,
    Sample,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum EncodingArg {
    Amplitude,
    Probability,
}

impl From<EncodingArg> for EncodingMode {
    fn from(e: EncodingArg) -> Self {
        match e {
            EncodingArg::Amplitude => EncodingMode::Amplitude,
            EncodingArg::Probability => EncodingMode::Probability,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SchemeArg {
    Cnot,
    Cswap,
    Rowmajor,
}

impl From<SchemeArg> for SchemeKind {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Cnot => SchemeKind::Cnot,
            SchemeArg::Cswap => SchemeKind::Cswap,
            SchemeArg::Rowmajor => SchemeKind::RowMajor,
        }
    }
}

enum Failure {
    Usage(String),
    Run(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Run(e)
    }
}

fn usage<T>(message: impl Into<String>) -> Result<T, Failure> {
    Err(Failure::Usage(message.into()))
}

fn band(args: &FilterArgs) -> Result<Option<(usize, usize)>, Failure> {
    match args.band.as_deref() {
        None => Ok(None),
        Some([low, high]) if low <= high => Ok(Some((*low, *high))),
        Some(_) => usage("--band takes two values low,high with low <= high"),
    }
}

fn filter_choice(args: &FilterArgs) -> Result<FilterChoice, Failure> {
    let explicit = args.marked.is_some() || args.prefix.is_some() || args.spec.is_some();
    let kind = match args.filter {
        Some(kind) => kind,
        None if explicit => FilterKind::Custom,
        None => FilterKind::Allpass,
    };
    // Named families fix which branch is kept; only custom honours --keep-marked.
    let keep_marked = match kind {
        FilterKind::Lowpass => true,
        FilterKind::Custom => args.keep_marked,
        _ => false,
    };
    if args.keep_marked && kind != FilterKind::Custom {
        return usage("--keep-marked only applies to --filter custom");
    }
    if explicit {
        if kind == FilterKind::Allpass {
            return usage("--filter allpass takes no marked set");
        }
        if args.cutoff.is_some() || args.band.is_some() {
            return usage("give either a marked set or --cutoff/--band, not both");
        }
        if let Some(indices) = &args.marked {
            return Ok(FilterChoice::Indices {
                indices: indices.clone(),
                keep_marked,
            });
        }
        if let Some(patterns) = &args.prefix {
            return Ok(FilterChoice::Prefixes {
                patterns: patterns.clone(),
                keep_marked,
            });
        }
        if let Some(path) = &args.spec {
            let mut spec: FilterSpec = io::read_json(path)?;
            // The file's own keep_marked stands unless a family or the flag overrides it.
            if kind != FilterKind::Custom || args.keep_marked {
                spec.keep_marked = keep_marked;
            }
            return Ok(FilterChoice::Spec(spec));
        }
    }
    let named = match (kind, args.cutoff, band(args)?) {
        (FilterKind::Allpass, None, None) => return Ok(FilterChoice::AllPass),
        (FilterKind::Lowpass, Some(cutoff), None) => NamedFilter::LowPass { cutoff },
        (FilterKind::Highpass, Some(cutoff), None) => NamedFilter::HighPass { cutoff },
        (FilterKind::Bandpass, None, Some((low, high))) => NamedFilter::BandPass { low, high },
        (FilterKind::Bandstop, None, Some((low, high))) => NamedFilter::BandStop { low, high },
        (FilterKind::Lowpass | FilterKind::Highpass, ..) => {
            return usage("lowpass and highpass need --cutoff or --marked")
        }
        (FilterKind::Bandpass | FilterKind::Bandstop, ..) => {
            return usage("bandpass and bandstop need --band or --marked")
        }
        (FilterKind::Custom, ..) => return usage("--filter custom needs --marked, --prefix or --spec"),
        (FilterKind::Allpass, ..) => return usage("--filter allpass takes no --cutoff or --band"),
    };
    Ok(FilterChoice::Named(named))
}

fn run_config(args: &FilterArgs) -> Result<RunConfig, Failure> {
    let mode = match (args.mode, args.seed) {
        (ModeArg::Project, None) => Mode::Project,
        (ModeArg::Project, Some(_)) => return usage("--seed only applies to --mode sample"),
        (ModeArg::Sample, Some(seed)) => Mode::Sample {
            seed,
            max_trials: args.max_trials,
        },
        (ModeArg::Sample, None) => return usage("--mode sample needs --seed"),
    };
    if args.max_trials == 0 {
        return usage("--max-trials must be at least 1");
    }
    Ok(RunConfig {
        output: args.out.clone(),
        filter: filter_choice(args)?,
        mode,
        encoding: args.encoding.into(),
        compare_classical: args.compare_classical,
        ..RunConfig::new(&args.input)
    })
}

fn emit(report: &RunReport, path: Option<&PathBuf>) -> Result<(), Failure> {
    match path {
        Some(path) => io::write_json(path, report)?,
        None => println!("{}", serde_json::to_string_pretty(report).map_err(Error::from)?),
    }
    eprintln!(
        "{}: {} qubits, success probability {:.6}",
        report.command, report.n_qubits, report.success_probability
    );
    Ok(())
}

fn run(command: Command) -> Result<bool, Failure> {
    match command {
        Command::Filter1d(args) => {
            let report = pipeline::run_filter_1d(&run_config(&args)?)?;
            emit(&report, args.report.as_ref())?;
        }
        Command::Filter2d { args, composed_2d, abs } => {
            let config = RunConfig {
                composed_2d,
                abs,
                ..run_config(&args)?
            };
            let report = pipeline::run_filter_2d(&config)?;
            emit(&report, args.report.as_ref())?;
        }
        Command::Transpose {
            input,
            scheme,
            layout,
            encoding,
            out,
            report,
        } => {
            let config = RunConfig {
                output: out,
                scheme: scheme.into(),
                layout,
                encoding: encoding.into(),
                ..RunConfig::new(input)
            };
            let summary = pipeline::run_transpose(&config)?;
            emit(&summary, report.as_ref())?;
        }
        Command::Selftest => {
            let checks = selftest::run()?;
            print!("{}", selftest::format_table(&checks));
            return Ok(checks.iter().all(selftest::Check::passed));
        }
    }
    Ok(true)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        e if e.is_postselection_failure() => 3,
        Error::InvalidFilter(_) | Error::DegenerateFilter(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(Failure::Usage(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(Failure::Run(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
