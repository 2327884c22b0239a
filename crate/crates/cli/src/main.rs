//! `gks`: keyword search over node-labeled weighted graphs.

mod commands;
mod render;
mod workspace;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gks_core::SearchError;

/// A required distance index has not been built. Carries the command to run.
#[derive(Debug, thiserror::Error)]
#[error("missing distance index; run `{0}`")]
pub struct MissingIndex(pub String);

/// Bad flag combination that clap cannot catch.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct Usage(pub String);

#[derive(Parser, Debug)]
#[command(name = "gks", version, about = "Keyword search over node-labeled weighted graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate node and edge TSV files and write a workspace.
    Ingest {
        nodes: PathBuf,
        edges: PathBuf,
        /// equal[:w0], logarithmic or semantic
        #[arg(long, default_value = "equal")]
        scheme: String,
        #[arg(long)]
        out: PathBuf,
        /// Override the EW normalization factor (default 1 / mean edge weight).
        #[arg(long)]
        ew_scale: Option<f64>,
        /// Override the NI normalization factor (default 1 / mean inverse importance).
        #[arg(long)]
        ni_scale: Option<f64>,
    },
    /// Build and persist the distance index a search method needs.
    BuildIndex {
        workspace: PathBuf,
        #[arg(long)]
        method: String,
        #[arg(long, default_value_t = gks_core::search::DEFAULT_LAMBDA)]
        lambda: f64,
        /// Radius: a number, `<m>x` for m times the mean edge weight, or `inf`.
        #[arg(long)]
        dmax: Option<String>,
    },
    /// Run a keyword query.
    Query {
        workspace: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        keywords: Vec<String>,
        #[arg(long, default_value = "combined1")]
        method: String,
        #[arg(long, default_value_t = gks_core::search::DEFAULT_LAMBDA)]
        lambda: f64,
        #[arg(long, default_value_t = gks_core::search::DEFAULT_K)]
        k: usize,
        #[arg(long, default_value_t = gks_core::search::DEFAULT_DELTA)]
        delta: f64,
        #[arg(long, default_value_t = gks_core::search::DEFAULT_MAX_ITERS)]
        max_iters: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Compare the greedy methods against the exact search on a query file
    /// (one query per line, phrases separated by tabs).
    CompareExact {
        workspace: PathBuf,
        queries: PathBuf,
        #[arg(long, default_value_t = gks_core::search::DEFAULT_LAMBDA)]
        lambda: f64,
        /// Radius of the in-memory greedy indexes; same syntax as build-index.
        #[arg(long)]
        dmax: Option<String>,
    },
    /// Index size, build time and query latency for several radii.
    BenchIndex {
        workspace: PathBuf,
        #[arg(long, default_value = "2x,5x,10x,inf")]
        dmax_list: String,
        #[arg(long, default_value_t = 1_000_000)]
        pairs: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value = "edge-only")]
        method: String,
        #[arg(long, default_value_t = gks_core::search::DEFAULT_LAMBDA)]
        lambda: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if cause.is::<Usage>() {
            return 2;
        }
        if cause.is::<MissingIndex>() {
            return 4;
        }
        match cause.downcast_ref::<SearchError>() {
            Some(SearchError::TooLarge { .. }) => return 5,
            Some(SearchError::InvalidParameter(_) | SearchError::EmptyQuery) => return 2,
            _ => {}
        }
    }
    3
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    let result = match cli.command {
        Command::Ingest { nodes, edges, scheme, out, ew_scale, ni_scale } => {
            commands::ingest(&mut stdout, &nodes, &edges, &scheme, &out, ew_scale, ni_scale)
        }
        Command::BuildIndex { workspace, method, lambda, dmax } => {
            commands::build_index(&mut stdout, &workspace, &method, lambda, dmax.as_deref())
        }
        Command::Query { workspace, keywords, method, lambda, k, delta, max_iters, format } => {
            let opts = commands::QueryOpts { method, lambda, k, delta, max_iters, format };
            commands::query(&mut stdout, &workspace, &keywords, &opts)
        }
        Command::CompareExact { workspace, queries, lambda, dmax } => {
            commands::compare_exact(&mut stdout, &workspace, &queries, lambda, dmax.as_deref())
        }
        Command::BenchIndex { workspace, dmax_list, pairs, seed, method, lambda } => {
            commands::bench_index(&mut stdout, &workspace, &dmax_list, pairs, seed, &method, lambda)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}
