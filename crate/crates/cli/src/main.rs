//! `larc` — controllability analysis of N-level quantum systems on SU(N).
//!
//! Exit codes: 0 = analysis completed (whatever the decision), 1 = input
//! error, 2 = internal consistency or oracle contradiction.

use std::fs::File;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use larc_cli::batch::{render_summary, run_batch, BatchOptions};
use larc_cli::gen::GenSpec;
use larc_cli::io::{analyze_system, read_description, render_text, ToleranceOverrides};
use larc_core::CoreError;

#[derive(Parser)]
#[command(
    name = "larc",
    version,
    about = "Decide controllability of N-level quantum bilinear systems on SU(N)",
    long_about = "Decide controllability of an N-level quantum system (diagonal drift from an \
                  energy spectrum plus one Hermitian coupling matrix) using structural criteria \
                  on transition values and the coupling graph, cross-checkable against a \
                  brute-force Lie-bracket closure oracle."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Clone, Copy)]
struct TolArgs {
    /// Relative tolerance for transition-value equality (resonance detection).
    #[arg(long = "tol-root")]
    tol_root: Option<f64>,
    /// Relative rank-acceptance tolerance of the closure oracle.
    #[arg(long = "tol-rank")]
    tol_rank: Option<f64>,
    /// Relative threshold below which a coupling entry counts as zero.
    #[arg(long = "tol-edge")]
    tol_edge: Option<f64>,
}

impl From<TolArgs> for ToleranceOverrides {
    fn from(t: TolArgs) -> Self {
        ToleranceOverrides {
            root_eq: t.tol_root,
            edge: t.tol_edge,
            rank: t.tol_rank,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one system document (JSON from a file or stdin).
    Analyze {
        /// Path to the system description; "-" or absent reads stdin. A
        /// previously emitted report is accepted too (its embedded system
        /// is re-analyzed).
        path: Option<PathBuf>,
        /// Also run the closure oracle and attach its dimension.
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Run a seeded batch study comparing criteria against the oracle.
    Batch {
        /// Generator family: generic, resonant:K, equispaced, dipole, block:P.
        #[arg(long)]
        gen: String,
        /// Number of energy levels N.
        #[arg(long)]
        levels: usize,
        /// Number of systems to draw.
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Master seed; identical seeds reproduce identical studies.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write one JSON record per system to this file.
        #[arg(long)]
        jsonl: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[command(flatten)]
        tol: TolArgs,
    },
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    if let Some(core) = err.downcast_ref::<CoreError>() {
        match core {
            CoreError::Inconsistency(_) | CoreError::OracleContradiction(_) => 2,
            _ => 1,
        }
    } else {
        1
    }
}

fn run_analyze(
    path: Option<PathBuf>,
    oracle: bool,
    format: Format,
    tol: TolArgs,
) -> anyhow::Result<()> {
    let mut input: Box<dyn Read> = match path {
        Some(p) if p.as_os_str() != "-" => Box::new(
            File::open(&p).map_err(|e| anyhow::anyhow!("cannot open {}: {e}", p.display()))?,
        ),
        _ => Box::new(std::io::stdin()),
    };
    let desc = read_description(&mut input).map_err(|e| anyhow::anyhow!("parse error: {e}"))?;
    let sys = desc.to_system(tol.into())?;
    let report = analyze_system(&sys, oracle)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        Format::Text => print!("{}", render_text(&report)),
    }
    Ok(())
}

fn run_batch_command(
    gen: String,
    levels: usize,
    count: usize,
    seed: u64,
    jsonl: Option<PathBuf>,
    format: Format,
    tol: TolArgs,
) -> anyhow::Result<bool> {
    let spec: GenSpec = gen
        .parse()
        .map_err(|e: String| anyhow::anyhow!("invalid --gen: {e}"))?;
    let opts = BatchOptions {
        spec,
        n: levels,
        count,
        seed,
        tolerances: tol.into(),
    };
    let mut sink_file = match &jsonl {
        Some(p) => Some(File::create(p)?),
        None => None,
    };
    let summary = run_batch(
        &opts,
        sink_file.as_mut().map(|f| f as &mut dyn Write),
    )?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&summary)?),
        Format::Text => print!("{}", render_summary(&summary)),
    }
    Ok(summary.violations == 0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are not errors
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    ExitCode::SUCCESS
                }
                _ => ExitCode::from(1),
            };
        }
    };
    let outcome = match cli.command {
        Command::Analyze {
            path,
            oracle,
            format,
            tol,
        } => run_analyze(path, oracle, format, tol).map(|()| true),
        Command::Batch {
            gen,
            levels,
            count,
            seed,
            jsonl,
            format,
            tol,
        } => run_batch_command(gen, levels, count, seed, jsonl, format, tol),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        // a completed batch with violations: report written, flagged fatal
        Ok(false) => {
            eprintln!("error: oracle contradiction detected (see violations in the summary)");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
