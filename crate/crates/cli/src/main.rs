//! `qopt`: outcomes, optimal outcomes and strong-equivalence checks for
//! qualitative optimization problems written in the `.qopt` text format.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qopt_core::{EquivalenceMode, RankInterval, SemanticsMode};

#[derive(Debug, Parser)]
#[command(
    name = "qopt",
    version,
    about = "Qualitative optimization problems and their strong equivalence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the outcomes of the union of the given problems.
    Models(Evaluate),
    /// Print the optimal outcomes of the union of the given problems.
    Optimal(Evaluate),
    /// Print the satisfaction degree of an interpretation for every rule.
    Degrees {
        file: PathBuf,
        /// Comma-separated true atoms; `{}` or the empty string for none.
        #[arg(long, allow_hyphen_values = true)]
        interp: String,
    },
    /// Decide strong equivalence of two problems.
    Compare {
        file1: PathBuf,
        file2: PathBuf,
        #[command(flatten)]
        equivalence: EquivalenceArgs,
        /// Also print the failed condition, the witness and a separating context.
        #[arg(long)]
        witness: bool,
        /// Print the verdict as a JSON object.
        #[arg(long)]
        json: bool,
    },
    /// Compare two problems directly on a family of contexts.
    Oracle {
        file1: PathBuf,
        file2: PathBuf,
        #[command(flatten)]
        equivalence: EquivalenceArgs,
        /// Number of random contexts tried after the deterministic family.
        #[arg(long, default_value_t = 50)]
        budget: usize,
        /// Seed for the random contexts.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Print the problem whose optimal outcomes are the minimal models of a
    /// theory in negation normal form.
    EncodeMinmodels {
        file: PathBuf,
        /// Extra atoms that count as part of the theory's vocabulary.
        #[arg(long, value_delimiter = ',')]
        alphabet: Vec<String>,
    },
}

#[derive(Debug, Args)]
struct Evaluate {
    #[arg(required = true)]
    files: Vec<PathBuf>,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, value_enum, default_value_t = Semantics::Classical)]
    semantics: Semantics,
    /// Extra atoms added to the atoms of the input files.
    #[arg(long, value_delimiter = ',')]
    alphabet: Vec<String>,
}

#[derive(Debug, Args)]
struct EquivalenceArgs {
    #[arg(long, value_enum)]
    mode: Mode,
    /// Allowed context ranks, `I..J` or `I..inf`.
    #[arg(long, default_value = "1..inf", value_parser = parse_interval)]
    interval: RankInterval,
    #[command(flatten)]
    common: Common,
}

impl EquivalenceArgs {
    fn mode(&self) -> EquivalenceMode {
        match self.mode {
            Mode::Sel => EquivalenceMode::Sel(self.interval),
            Mode::Gen => EquivalenceMode::Gen,
            Mode::Combined => EquivalenceMode::Combined(self.interval),
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Semantics {
    Classical,
    AnswerSet,
}

impl From<Semantics> for SemanticsMode {
    fn from(s: Semantics) -> Self {
        match s {
            Semantics::Classical => SemanticsMode::Classical,
            Semantics::AnswerSet => SemanticsMode::AnswerSet,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Sel,
    Gen,
    Combined,
}

fn parse_interval(s: &str) -> Result<RankInterval, String> {
    let (low, high) = s
        .split_once("..")
        .ok_or_else(|| format!("expected I..J or I..inf, got {s:?}"))?;
    let low: u32 = low
        .trim()
        .parse()
        .map_err(|_| format!("bad lower rank {low:?}"))?;
    let iv = match high.trim() {
        "inf" => RankInterval::new(low, qopt_core::Bound::Infinity),
        h => {
            let h: u32 = h.parse().map_err(|_| format!("bad upper rank {h:?}"))?;
            RankInterval::new(low, qopt_core::Bound::Finite(h))
        }
    };
    iv.map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Models(e) => commands::evaluate(&e.files, &e.common, false),
        Command::Optimal(e) => commands::evaluate(&e.files, &e.common, true),
        Command::Degrees { file, interp } => commands::degrees(&file, &interp),
        Command::Compare {
            file1,
            file2,
            equivalence,
            witness,
            json,
        } => commands::compare(&file1, &file2, &equivalence, witness, json),
        Command::Oracle {
            file1,
            file2,
            equivalence,
            budget,
            seed,
        } => commands::oracle(&file1, &file2, &equivalence, budget, seed),
        Command::EncodeMinmodels { file, alphabet } => commands::encode(&file, &alphabet),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("qopt: {e:#}");
            ExitCode::from(2)
        }
    }
}
