use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Concatenated three-qubit error correction: channel analysis, level
/// planning and resource accounting.
#[derive(Debug, Parser)]
#[command(name = "qeccat", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Similarity scores, CPTP diagnostics and the protocol chosen for a channel.
    Analyze(AnalyzeArgs),
    /// Concatenation plan and resource report for one or both code families.
    Plan(RunArgs),
    /// Three-qubit and five-qubit reports side by side, with a winner.
    Compare(RunArgs),
    /// Recompute the two published benchmark scenarios and check every value.
    #[command(visible_alias = "reproduce-paper")]
    Reproduce(OutputArgs),
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Noise specification: a JSON file or inline JSON.
    #[arg(long)]
    pub noise: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Noise specification: a JSON file or inline JSON.
    #[arg(long)]
    pub noise: String,
    /// Concatenation levels for the three-qubit family (default 4). With
    /// `--family five` this sets the five-qubit levels unless `--five-levels`
    /// is given.
    #[arg(long)]
    pub levels: Option<usize>,
    /// Concatenation levels for the five-qubit family (default 3).
    #[arg(long)]
    pub five_levels: Option<usize>,
    /// Per-gate accuracy r in (0, 1]; a number or `sqrt(x)`.
    #[arg(long, default_value = "sqrt(0.999)", value_parser = parse_gate_accuracy)]
    pub gate_accuracy: f64,
    #[arg(long, value_enum, default_value_t = FamilyArg::Both)]
    pub family: FamilyArg,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub const DEFAULT_THREE_LEVELS: usize = 4;
pub const DEFAULT_FIVE_LEVELS: usize = 3;
pub const MAX_THREE_LEVELS: usize = 8;
pub const MAX_FIVE_LEVELS: usize = 4;

impl RunArgs {
    pub fn three_levels(&self) -> usize {
        self.levels.unwrap_or(DEFAULT_THREE_LEVELS)
    }

    pub fn five_levels(&self) -> usize {
        let fallback = match self.family {
            FamilyArg::Five => self.levels,
            _ => None,
        };
        self.five_levels.or(fallback).unwrap_or(DEFAULT_FIVE_LEVELS)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Three,
    Five,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

fn parse_gate_accuracy(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let value = match s.strip_prefix("sqrt(").and_then(|rest| rest.strip_suffix(')')) {
        Some(inner) => inner
            .trim()
            .parse::<f64>()
            .map_err(|e| format!("{inner:?}: {e}"))?
            .sqrt(),
        None => s.parse::<f64>().map_err(|e| format!("{s:?}: {e}"))?,
    };
    if value > 0.0 && value <= 1.0 {
        Ok(value)
    } else {
        Err(format!("gate accuracy must lie in (0, 1], got {value}"))
    }
}
