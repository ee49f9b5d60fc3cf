//! Argument parsing and dispatch.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;

use crate::commands::{self, CrossRatioArgs, Outcome, BLOCKING_DEFAULT_CHECKS, CONSTRUCT_DEFAULT_CHECKS};
use crate::config::{BatchFile, Check, Format, PartialConfig};
use crate::output::{self, Sink};
use crate::schema::{ErrorDoc, SCHEMA_VERSION};
use crate::{CliError, EXIT_INVALID, EXIT_PASS};

#[derive(Debug, Parser)]
#[command(name = "linset", version, about = "Construct and certify linear sets in PG(l, q^h)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a linear set from a partition and run invariant checks.
    Construct(ExperimentArgs),
    /// Certify a planar linear set as a minimal blocking set.
    VerifyBlocking(ExperimentArgs),
    /// Count reduced polynomial tuples by enumeration and closed form.
    Count {
        #[arg(long)]
        q: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        bounds: Vec<usize>,
    },
    /// List weight spectra allowed by the counting identities.
    Spectra {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: usize,
        /// Defaults to q^(k-1) + 1.
        #[arg(long)]
        size: Option<BigUint>,
        /// Defaults to k.
        #[arg(long)]
        max_weight: Option<usize>,
    },
    /// Cross-ratio of four points of PG(1, p^h) and its orbit.
    Crossratio {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        h: u32,
        /// Degree over F_p of the element written `a` in the points.
        #[arg(long)]
        alpha_degree: u32,
        /// Report membership in the subfield of this degree over F_p.
        #[arg(long)]
        subfield: Option<u32>,
        /// Four points `x,y` separated by `;`; coordinates are sums of terms c, a, a^n or c*a^n.
        #[arg(long, default_value = commands::DEFAULT_CROSS_RATIO_POINTS)]
        points: String,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run every experiment listed in a TOML batch file.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, env = "LINSET_OUT_DIR")]
        out_dir: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    /// TOML file with defaults; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long)]
    pub e: Option<u32>,
    #[arg(long)]
    pub h: Option<u32>,
    /// Coefficients of the defining polynomial over F_p, constant term first.
    #[arg(long, value_delimiter = ',')]
    pub modulus: Option<Vec<u32>>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Degree of alpha over F_q; defaults to h.
    #[arg(long)]
    pub s: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    pub partition: Option<Vec<usize>>,
    #[arg(long)]
    pub format: Option<Format>,
    /// Checks to run; repeat the flag or separate with commas.
    #[arg(long = "check", value_delimiter = ',')]
    pub checks: Option<Vec<Check>>,
    /// Include every point with its weight in the report.
    #[arg(long)]
    pub points: bool,
    #[arg(long, env = "LINSET_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
}

impl ExperimentArgs {
    fn partial(&self) -> Result<PartialConfig, CliError> {
        let flags = PartialConfig {
            p: self.p,
            e: self.e,
            h: self.h,
            modulus: self.modulus.clone(),
            seed: self.seed,
            s: self.s,
            partition: self.partition.clone(),
            format: self.format,
            checks: self.checks.clone(),
            points: self.points.then_some(true),
        };
        let file = match &self.config {
            Some(path) => PartialConfig::from_file(path)?,
            None => PartialConfig::default(),
        };
        Ok(flags.over(file))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Experiment {
    Construct,
    VerifyBlocking,
}

impl Experiment {
    fn parse(name: &str) -> Result<Self, CliError> {
        match name {
            "construct" => Ok(Experiment::Construct),
            "verify-blocking" => Ok(Experiment::VerifyBlocking),
            _ => Err(CliError::config(format!("unknown batch command `{name}`"))),
        }
    }

    fn run(self, partial: PartialConfig) -> Result<Outcome, CliError> {
        match self {
            Experiment::Construct => commands::construct(&partial.resolve(&CONSTRUCT_DEFAULT_CHECKS)?),
            Experiment::VerifyBlocking => commands::verify_blocking(&partial.resolve(&BLOCKING_DEFAULT_CHECKS)?),
        }
    }
}

fn report_failure(outcome: &Outcome) {
    if !outcome.failed_checks.is_empty() {
        output::emit_error(&ErrorDoc {
            schema: SCHEMA_VERSION,
            error: "check-failed".into(),
            message: format!("{} check(s) failed", outcome.failed_checks.len()),
            failed_checks: outcome.failed_checks.clone(),
        });
    }
}

fn deliver(outcome: Result<Outcome, CliError>, sink: &Sink) -> u8 {
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            output::emit_error(&e.to_doc());
            return EXIT_INVALID;
        }
    };
    for doc in &outcome.documents {
        if let Err(e) = sink.write(doc) {
            output::emit_error(&e.to_doc());
            return EXIT_INVALID;
        }
    }
    report_failure(&outcome);
    outcome.code
}

fn run_batch(path: &Path, sink: &Sink) -> u8 {
    let batch = match BatchFile::from_file(path) {
        Ok(b) => b,
        Err(e) => {
            output::emit_error(&e.to_doc());
            return EXIT_INVALID;
        }
    };
    if batch.experiment.is_empty() {
        output::emit_error(&CliError::config("batch file lists no experiments").to_doc());
        return EXIT_INVALID;
    }
    let mut worst = EXIT_PASS;
    for entry in &batch.experiment {
        let outcome = Experiment::parse(&entry.command).and_then(|kind| {
            let mut out = kind.run(entry.partial().over(batch.defaults.clone()))?;
            if let Some(name) = &entry.name {
                for doc in &mut out.documents {
                    doc.stem = name.clone();
                }
            }
            Ok(out)
        });
        worst = worst.max(deliver(outcome, sink));
    }
    worst
}

pub fn dispatch(cli: Cli) -> u8 {
    match cli.command {
        Command::Construct(args) => {
            let sink = Sink::new(args.out_dir.clone());
            deliver(args.partial().and_then(|p| Experiment::Construct.run(p)), &sink)
        }
        Command::VerifyBlocking(args) => {
            let sink = Sink::new(args.out_dir.clone());
            deliver(args.partial().and_then(|p| Experiment::VerifyBlocking.run(p)), &sink)
        }
        Command::Count { q, bounds } => deliver(commands::count(q, &bounds), &Sink::Stdout),
        Command::Spectra { q, k, size, max_weight } => {
            deliver(commands::spectra(q, k, size, max_weight), &Sink::Stdout)
        }
        Command::Crossratio { p, h, alpha_degree, subfield, points, seed } => {
            let args = CrossRatioArgs { p, h, alpha_degree, subfield, points: &points, seed };
            deliver(commands::crossratio(&args), &Sink::Stdout)
        }
        Command::Run { config, out_dir } => run_batch(&config, &Sink::new(out_dir)),
    }
}

/// Parses `args` and runs the command. Usage errors exit with code 2 and a
/// JSON reason on stderr.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let code = match Cli::try_parse_from(args) {
        Ok(cli) => dispatch(cli),
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            EXIT_PASS
        }
        Err(e) => {
            let message = e.render().to_string();
            output::emit_error(&CliError::config(message.trim_end()).to_doc());
            EXIT_INVALID
        }
    };
    ExitCode::from(code)
}
