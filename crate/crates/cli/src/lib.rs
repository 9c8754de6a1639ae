//! Command-line front end for `hodge-core`.
//!
//! Three commands: `report` describes a period domain, `verify` runs the
//! seeded verification suites, `mesh` exports a colored sphere mesh. Every
//! document written carries `"schema": "hodge-domains/1"`.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use hodge_core::HodgeNumbers;

pub mod mesh;
pub mod report;
pub mod verify;

pub const SCHEMA: &str = "hodge-domains/1";

/// Largest accepted subdivision count for `mesh`.
pub const MAX_SUBDIVISIONS: usize = 8;

/// Largest accepted sample count for `verify`.
pub const MAX_SAMPLES: u64 = 1_000_000;

#[derive(Debug, Parser)]
#[command(name = "hodge-domains", version, about = "Reports and verification suites for PU(p,q) period domains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dimensions, π₂ data and bracket generation for one tuple of Hodge numbers.
    Report {
        #[arg(long, value_parser = parse_ranks)]
        ranks: HodgeNumbers,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every verification suite applicable to the given Hodge numbers.
    Verify {
        #[arg(long, value_parser = parse_ranks)]
        ranks: HodgeNumbers,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        /// Write one JSON line per classified 2-plane.
        #[arg(long)]
        records: Option<PathBuf>,
        /// Also check the rank-one lemma on a Higgs field read from this JSON file.
        #[arg(long)]
        higgs: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Perturb the closed-form π₂ classes (exercises the failure path).
        #[arg(long, hide = true)]
        corrupt_oracle: bool,
    },
    /// Export the colored, subdivided octahedron as OFF plus a JSON sidecar.
    Mesh {
        #[arg(long)]
        subdivisions: usize,
        #[arg(long)]
        out: PathBuf,
        /// Flip one edge before coloring (exercises the failure path).
        #[arg(long, hide = true)]
        corrupt_mesh: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

pub fn parse_ranks(s: &str) -> Result<HodgeNumbers, String> {
    s.parse::<HodgeNumbers>().map_err(|e| e.to_string())
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    InvalidInput(String),
    #[error("resource guard: {0}")]
    ResourceGuard(String),
    #[error("{0}")]
    SuiteFailure(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::SuiteFailure(_) => 1,
            CliError::InvalidInput(_) => 2,
            CliError::ResourceGuard(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

/// What a successful or failed command wants printed, plus its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Report { ranks, format, out } => {
            let text = report::render(&report::run_report(&ranks), format);
            emit(text, out.as_ref(), 0)
        }
        Command::Verify {
            ranks,
            seed,
            samples,
            records,
            higgs,
            out,
            corrupt_oracle,
        } => {
            if samples == 0 {
                return Err(CliError::InvalidInput("--samples must be at least 1".into()));
            }
            if samples > MAX_SAMPLES {
                return Err(CliError::ResourceGuard(format!(
                    "--samples {samples} exceeds the limit of {MAX_SAMPLES}"
                )));
            }
            let extra = match higgs {
                Some(path) => Some(verify::read_higgs(&path)?),
                None => None,
            };
            let opts = verify::VerifyOptions {
                seed,
                samples,
                corrupt_oracle,
                higgs: extra,
            };
            let doc = verify::run_verify(&ranks, &opts);
            if let Some(path) = records {
                std::fs::write(path, verify::plane_records_jsonl(&ranks, &opts))?;
            }
            let code = if doc.passed { 0 } else { 1 };
            emit(to_json(&doc), out.as_ref(), code)
        }
        Command::Mesh {
            subdivisions,
            out,
            corrupt_mesh,
        } => {
            if subdivisions > MAX_SUBDIVISIONS {
                return Err(CliError::ResourceGuard(format!(
                    "--subdivisions {subdivisions} exceeds the limit of {MAX_SUBDIVISIONS}"
                )));
            }
            let summary = mesh::export_mesh(subdivisions, &out, corrupt_mesh)?;
            Ok(Outcome {
                code: 0,
                stdout: to_json(&summary),
            })
        }
    }
}

fn emit(text: String, out: Option<&PathBuf>, code: i32) -> Result<Outcome, CliError> {
    match out {
        Some(path) => {
            std::fs::write(path, &text)?;
            Ok(Outcome {
                code,
                stdout: String::new(),
            })
        }
        None => Ok(Outcome { code, stdout: text }),
    }
}

pub(crate) fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable document");
    s.push('\n');
    s
}
