//! The `chact` command line: law checks for change actions and differential
//! maps, derivatives in the group, Boolean and Kleene models, and tower
//! checks.
//!
//! Exit codes: 0 pass, 1 check failure, 2 input error, 3 resource cap.

use std::path::PathBuf;

use change_actions::CheckConfig;
use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

pub mod doc;
pub mod error;
pub mod report;

mod commands;

pub use error::CliError;
pub use report::{Format, Report};

#[derive(Debug, Parser)]
#[command(name = "chact", version, about = "Check change actions, derivatives and derivative towers")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Largest table or derivative space a command may build.
    #[arg(long, global = true, default_value_t = 1_000_000)]
    pub max_space: u128,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the monoid and action laws of a change action document.
    CheckAction { path: PathBuf },

    /// Check that a map document is a differential map between two change actions.
    CheckMap {
        #[arg(long)]
        dom: PathBuf,
        #[arg(long)]
        cod: PathBuf,
        map: PathBuf,
        /// Also require the derivative to be stable.
        #[arg(long)]
        require_stable: bool,
    },

    /// Finite differences of an integer polynomial.
    Fd {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[arg(long, allow_negative_numbers = true)]
        at: Option<BigInt>,
        #[arg(long, default_value = "1", allow_negative_numbers = true)]
        delta: BigInt,
        /// Print the differences at every integer in `LO..=HI`.
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        table: Option<Vec<BigInt>>,
    },

    /// The Boolean derivative of a truth table.
    Bool {
        #[arg(long)]
        vars: usize,
        /// `2^vars` bits, row `u` read with `x1` as the most significant bit.
        #[arg(long)]
        table: String,
        /// 1-based variable index.
        #[arg(long)]
        dvar: usize,
    },

    /// Formal derivatives of Kleene polynomials.
    Kpoly {
        /// `boolean`, `tropical:B` or `unary:N`.
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        poly: Option<String>,
        /// Variable to differentiate by (`x`, `y`, `x3`, ...).
        #[arg(long)]
        dvar: Option<String>,
        #[arg(long)]
        taylor: bool,
        #[arg(long)]
        regular: bool,
        /// Search for a strictly non-additive derivative.
        #[arg(long)]
        nonadd: bool,
    },

    /// Iterate a map into a derivative tower and check it.
    Tower {
        /// `group:Zk`, `kleene:boolean` or `kleene:tropical:B`.
        #[arg(long)]
        model: String,
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        check_assoc: bool,
        #[arg(long)]
        check_id: bool,
    },

    /// Maintain `f(a)` through a sequence of changes using only the derivative.
    Incr {
        #[arg(long)]
        dom: PathBuf,
        #[arg(long)]
        cod: PathBuf,
        map: PathBuf,
        #[arg(long)]
        start: usize,
        #[arg(long, value_delimiter = ',')]
        changes: Vec<usize>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::CheckAction { .. } => "check-action",
            Command::CheckMap { .. } => "check-map",
            Command::Fd { .. } => "fd",
            Command::Bool { .. } => "bool",
            Command::Kpoly { .. } => "kpoly",
            Command::Tower { .. } => "tower",
            Command::Incr { .. } => "incr",
        }
    }
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, Copy)]
pub struct Context {
    pub cfg: CheckConfig,
    pub max_space: u128,
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    let ctx = Context { cfg: CheckConfig::with_seed(cli.seed), max_space: cli.max_space };
    commands::dispatch(&cli.command, &ctx)
}

/// Rendered output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
    /// Text-mode errors go to stderr; everything else to stdout.
    pub to_stderr: bool,
}

pub fn execute(cli: &Cli) -> Outcome {
    match run(cli) {
        Ok(report) => Outcome { output: report.render(cli.format), code: i32::from(!report.passed), to_stderr: false },
        Err(e) => Outcome { output: render_error(cli, &e), code: e.exit_code(), to_stderr: cli.format == Format::Text },
    }
}

fn render_error(cli: &Cli, e: &CliError) -> String {
    match cli.format {
        Format::Text => format!("error: {e}\n"),
        Format::Json => {
            let v: Value = json!({
                "command": cli.command.name(),
                "error": {"kind": e.kind(), "message": e.to_string()},
                "passed": false,
            });
            format!("{v}\n")
        }
    }
}
