// SPDX-License-Identifier: Apache-2.0

//! Experiment runner and trace analyzer behind the `xrpl-ndn-sim` binary.
//!
//! - `run --config FILE`: simulate and write event log, arrival traces,
//!   inter-arrival CSVs and a summary table (text and JSON).
//! - `analyze TRACE`: the inter-arrival pipeline on an external trace.
//! - `compare SUMMARY...`: merge summaries and overlay their histograms.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 data error.

mod commands;
mod config;
mod trace;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use crate::sim::SimError;

pub use commands::{cmd_analyze, cmd_compare, cmd_run, write_m3, M3Stats, RunOutcome};
pub use config::{
    ConfigFile, LinkOverride, LinkSpec, MetricsSection, ModelSection, OutputSection, RunSection, TopologySection,
    ValidatorSection,
};
pub use trace::{parse_trace, write_trace, Trace, TraceRecord, TRACE_HEADER};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config: {0}")]
    ConfigSyntax(String),
    #[error("config field `{field}`: {msg}")]
    Config { field: String, msg: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("data: {0}")]
    Data(String),
    #[error(transparent)]
    Sim(#[from] SimError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::ConfigSyntax(_) | CliError::Config { .. } => 1,
            CliError::Io { .. } | CliError::Data(_) | CliError::Sim(_) => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "xrpl-ndn-sim", version, about = "Validation dissemination simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a simulation from a config file.
    Run(RunArgs),
    /// Analyze a validation arrival trace.
    Analyze(AnalyzeArgs),
    /// Merge two or more summary.json files.
    Compare(CompareArgs),
}

#[derive(Clone, Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Overrides `run.seed`.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Overrides `output.dir` (default `out`).
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Overrides `metrics.window`.
    #[arg(long)]
    pub window: Option<usize>,
}

#[derive(Clone, Debug, Args)]
pub struct AnalyzeArgs {
    /// CSV with header `producer_id,arrival_time_s`.
    pub trace: PathBuf,
    #[arg(long, default_value_t = crate::metrics::DEFAULT_WINDOW)]
    pub window: usize,
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,
    #[arg(long, default_value_t = crate::sim::DEFAULT_HIST_BIN_S)]
    pub hist_bin_s: f64,
    /// Name of the observing node; defaults to the trace file name without
    /// a leading `trace_`.
    #[arg(long)]
    pub observer: Option<String>,
}

#[derive(Clone, Debug, Args)]
pub struct CompareArgs {
    pub reports: Vec<PathBuf>,
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,
}

/// Parses `args` and runs the chosen command, returning the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let result = match &cli.command {
        Command::Run(a) => cmd_run(a).map(|_| ()),
        Command::Analyze(a) => cmd_analyze(a).map(|_| ()),
        Command::Compare(a) => cmd_compare(a).map(|_| ()),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
