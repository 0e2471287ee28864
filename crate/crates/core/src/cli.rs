//! Command-line surface.
//!
//! Exit codes: 0 GoodCertified (or success), 10 LikelyNotGood,
//! 11 NotCertifiedStandard, 2 input error, 3 structural or internal error,
//! 4 time budget exceeded.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::cache::{Cache, CACHE_DIR_ENV};
use crate::error::{Error, Result};
use crate::lie::{ClassicalType, Family, DEFAULT_MAX_RANK};
use crate::nilpotent::{enumerate_partitions, Partition};
use crate::pipeline::{check_orbit, CheckOptions};
use crate::report::{
    explanation, render_report, render_scan, to_json, OutputFormat, ScanOutcome, ScanReport,
    ScanRow,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_STRUCTURAL: i32 = 3;
pub const EXIT_TIME_BUDGET: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "nilgood",
    version,
    about = "Goodness of nilpotent orbits in classical Lie algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check one orbit.
    Check(OrbitArgs),
    /// Check every orbit of an algebra.
    Scan(ScanArgs),
    /// List the orbit partitions of an algebra.
    OrbitList(AlgebraArgs),
    /// Check one orbit and print the reasoning behind the verdict.
    Explain(OrbitArgs),
}

#[derive(Debug, Args)]
pub struct AlgebraArgs {
    /// Classical family.
    #[arg(long = "type", value_parser = parse_family, value_name = "A|B|C|D")]
    pub family: Family,
    #[arg(long)]
    pub rank: usize,
    /// Largest supported rank.
    #[arg(long, default_value_t = DEFAULT_MAX_RANK)]
    pub max_rank: usize,
    #[arg(long, value_enum, default_value_t = Output::Human)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Modular Jacobian trials.
    #[arg(long, default_value_t = crate::criterion::DEFAULT_TRIALS)]
    pub trials: u32,
    /// Generating-sequence search trials; 0 disables the search.
    #[arg(long, default_value_t = crate::criterion::DEFAULT_SEARCH_BUDGET)]
    pub search_budget: u32,
    /// Wall-clock budget per orbit in seconds; 0 is unlimited.
    #[arg(long = "time-budget", default_value_t = 0)]
    pub time_budget_secs: u64,
    /// Slodowy degree cap of the Hilbert series check; 0 picks 2 max d_i.
    #[arg(long, default_value_t = 0)]
    pub hilbert_cap: u32,
    /// Cache directory for slice restrictions.
    #[arg(long, env = CACHE_DIR_ENV)]
    pub cache_dir: Option<PathBuf>,
    /// Ignore the cache directory.
    #[arg(long)]
    pub no_cache: bool,
    /// Include restricted polynomials in the report.
    #[arg(long)]
    pub polynomials: bool,
    /// Include cache and timing diagnostics (makes output run-dependent).
    #[arg(long)]
    pub diagnostics: bool,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    /// Parts separated by commas, e.g. 5,3,2,2.
    #[arg(long)]
    pub partition: String,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub algebra: AlgebraArgs,
    #[command(flatten)]
    pub run: RunArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Human,
    Json,
}

impl From<Output> for OutputFormat {
    fn from(o: Output) -> Self {
        match o {
            Output::Human => OutputFormat::Human,
            Output::Json => OutputFormat::Json,
        }
    }
}

fn parse_family(s: &str) -> std::result::Result<Family, String> {
    s.parse::<Family>().map_err(|e| e.to_string())
}

/// Validated settings of one invocation.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: CommandKind,
    pub ty: ClassicalType,
    pub partition: Option<Partition>,
    pub options: CheckOptions,
    pub output: OutputFormat,
    pub cache_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Check,
    Scan,
    OrbitList,
    Explain,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self> {
        let (command, algebra, partition, run) = match &cli.command {
            Command::Check(a) => (
                CommandKind::Check,
                &a.algebra,
                Some(&a.partition),
                Some(&a.run),
            ),
            Command::Explain(a) => (
                CommandKind::Explain,
                &a.algebra,
                Some(&a.partition),
                Some(&a.run),
            ),
            Command::Scan(a) => (CommandKind::Scan, &a.algebra, None, Some(&a.run)),
            Command::OrbitList(a) => (CommandKind::OrbitList, a, None, None),
        };
        let ty = ClassicalType::new(algebra.family, algebra.rank)?;
        if ty.rank > algebra.max_rank {
            return Err(Error::Config(format!(
                "rank {} exceeds the supported bound {}",
                ty.rank, algebra.max_rank
            )));
        }
        let partition = partition
            .map(|p| -> Result<Partition> {
                let p: Partition = p.parse()?;
                p.validate_for(ty)?;
                Ok(p)
            })
            .transpose()?;
        let mut options = CheckOptions {
            max_rank: algebra.max_rank,
            ..CheckOptions::default()
        };
        let mut cache_dir = None;
        if let Some(run) = run {
            options.seed = run.seed;
            options.trials = run.trials;
            options.search_budget = run.search_budget;
            options.time_budget_secs = run.time_budget_secs;
            options.hilbert_cap = run.hilbert_cap;
            options.include_polynomials = run.polynomials;
            options.include_diagnostics = run.diagnostics;
            if !run.no_cache {
                cache_dir = run.cache_dir.clone();
            }
        }
        Ok(RunConfig {
            command,
            ty,
            partition,
            options,
            output: algebra.output.into(),
            cache_dir,
        })
    }
}

/// Exit code for an error.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Config(_) | Error::Validation(_) => EXIT_INPUT,
        Error::TimeBudget(_) => EXIT_TIME_BUDGET,
        Error::Contract(_) | Error::Structural(_) | Error::Cache(_) | Error::Io(_) => {
            EXIT_STRUCTURAL
        }
    }
}

/// Executes a parsed command line, writing the rendered result to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let cfg = RunConfig::from_cli(cli)?;
    let cache = cfg.cache_dir.as_ref().map(Cache::open).transpose()?;
    match cfg.command {
        CommandKind::Check | CommandKind::Explain => {
            let partition = cfg.partition.as_ref().expect("partition parsed for check");
            let report = check_orbit(cfg.ty, partition, &cfg.options, cache.as_ref())?;
            let text = if cfg.command == CommandKind::Explain && cfg.output == OutputFormat::Human {
                explanation(&report)
            } else {
                render_report(&report, cfg.output)?
            };
            out.write_all(text.as_bytes())?;
            Ok(report.verdict.exit_code())
        }
        CommandKind::Scan => {
            let scan = scan(cfg.ty, &cfg.options, cache.as_ref());
            out.write_all(render_scan(&scan, cfg.output)?.as_bytes())?;
            Ok(if scan.summary.errors > 0 {
                EXIT_STRUCTURAL
            } else {
                EXIT_OK
            })
        }
        CommandKind::OrbitList => {
            let orbits = enumerate_partitions(cfg.ty);
            let text = match cfg.output {
                OutputFormat::Json => to_json(&orbits)?,
                OutputFormat::Human => orbits
                    .iter()
                    .map(|o| {
                        if o.very_even {
                            format!("{} (very even)\n", o.partition)
                        } else {
                            format!("{}\n", o.partition)
                        }
                    })
                    .collect(),
            };
            out.write_all(text.as_bytes())?;
            Ok(EXIT_OK)
        }
    }
}

/// Checks every orbit in enumeration order, in parallel. Per-orbit failures
/// are recorded in the rows.
pub fn scan(ty: ClassicalType, options: &CheckOptions, cache: Option<&Cache>) -> ScanReport {
    let orbits = enumerate_partitions(ty);
    let rows: Vec<ScanRow> = orbits
        .par_iter()
        .map(|o| {
            let outcome = match check_orbit(ty, &o.partition, options, cache) {
                Ok(report) => ScanOutcome::Done {
                    report: Box::new(report),
                },
                Err(Error::TimeBudget(s)) => ScanOutcome::Skipped {
                    reason: format!("time budget of {s} s exceeded"),
                },
                Err(e) => ScanOutcome::Error {
                    message: e.to_string(),
                },
            };
            ScanRow {
                partition: o.partition.to_string(),
                very_even: o.very_even,
                outcome,
            }
        })
        .collect();
    ScanReport::new(ty.to_string(), ty.rank, rows)
}
