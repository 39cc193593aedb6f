//! `broomcalc`: command-line front end for the broom and ordinal calculus.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use broomcalc::complexity::ClassName;
use broomcalc::{InfSeq, Ordinal};

fn ordinal(s: &str) -> Result<Ordinal, String> {
    s.parse().map_err(|e: broomcalc::Error| e.to_string())
}

fn class_name(s: &str) -> Result<ClassName, String> {
    s.parse().map_err(|e: broomcalc::Error| e.to_string())
}

fn inf_seq(s: &str) -> Result<InfSeq, String> {
    s.parse().map_err(|e: broomcalc::Error| e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "broomcalc", version, about = "Ordinals, trees on omega, broom sets and their ranks")]
pub struct Cli {
    /// Print one JSON object per line instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for every randomised step.
    #[arg(long, global = true, default_value_t = broomcalc::suite::DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Ordinal arithmetic below epsilon_0.
    #[command(subcommand)]
    Ordinal(OrdinalCmd),
    /// Build and inspect broom terms.
    #[command(subcommand)]
    Broom(BroomCmd),
    /// Rank of a term, or of a finite union of terms.
    Rank(RankArgs),
    /// Try to cover a broom by finitely many others.
    Cover(CoverArgs),
    /// Maximal trees of a given height.
    #[command(subcommand)]
    Talpha(TalphaCmd),
    /// Admissible maps on maximal trees.
    #[command(subcommand)]
    Admissible(AdmissibleCmd),
    /// Find a canonical broom inside an image tree.
    Extract(ExtractArgs),
    /// Descriptive class calculators.
    #[command(subcommand)]
    Complexity(ComplexityCmd),
    /// Run a seeded property suite.
    Suite(SuiteArgs),
}

#[derive(Subcommand, Debug)]
pub enum OrdinalCmd {
    /// Print the normal form.
    Show {
        #[arg(value_parser = ordinal)]
        a: Ordinal,
    },
    /// Ordinal sum a + b.
    Add {
        #[arg(value_parser = ordinal)]
        a: Ordinal,
        #[arg(value_parser = ordinal)]
        b: Ordinal,
    },
    /// The d with a + d = b.
    Sub {
        #[arg(value_parser = ordinal)]
        a: Ordinal,
        #[arg(value_parser = ordinal)]
        b: Ordinal,
    },
    /// Compare a with b.
    Cmp {
        #[arg(value_parser = ordinal)]
        a: Ordinal,
        #[arg(value_parser = ordinal)]
        b: Ordinal,
    },
    /// Split into limit part and finite part, with parity.
    Split {
        #[arg(value_parser = ordinal)]
        a: Ordinal,
    },
    /// The first values of the fixed enumeration of alpha.
    Pi {
        #[arg(value_parser = ordinal)]
        alpha: Ordinal,
        /// Number of indices to list.
        #[arg(long, default_value_t = 10)]
        count: u64,
    },
    /// Position of beta in the enumeration of a limit alpha.
    PiInverse {
        #[arg(value_parser = ordinal)]
        alpha: Ordinal,
        #[arg(value_parser = ordinal)]
        beta: Ordinal,
    },
}

#[derive(Subcommand, Debug)]
pub enum BroomCmd {
    /// Print the canonical broom of a level.
    Build {
        #[arg(long, value_parser = ordinal)]
        level: Ordinal,
    },
    /// Classify a broom term.
    Class {
        #[arg(long)]
        term: PathBuf,
    },
    /// Check membership in D on a truncation.
    CheckD {
        #[arg(long)]
        term: PathBuf,
        #[arg(long, default_value_t = 10)]
        breadth: usize,
        #[arg(long, default_value_t = 12)]
        depth: usize,
        /// Number of random eventually constant probes.
        #[arg(long, default_value_t = 20)]
        probes: usize,
        /// Extra explicit probes such as "(1 2 | 0)".
        #[arg(long = "probe", value_parser = inf_seq)]
        explicit: Vec<InfSeq>,
    },
    /// List the truncated elements.
    Elements {
        #[arg(long)]
        term: PathBuf,
        #[arg(long, default_value_t = 3)]
        breadth: usize,
        #[arg(long, default_value_t = 12)]
        depth: usize,
    },
    /// The canonical infinite extension of the truncated elements.
    Sample {
        #[arg(long)]
        term: PathBuf,
        #[arg(long, default_value_t = 3)]
        breadth: usize,
    },
    /// Replace each element by an infinite fan.
    Widen {
        #[arg(long)]
        term: PathBuf,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum RankMethod {
    Closed,
    Iterative,
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
pub struct RankArgs {
    #[command(subcommand)]
    pub union: Option<RankSub>,
    #[arg(long)]
    pub term: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = RankMethod::Closed)]
    pub method: RankMethod,
    /// Derivative steps allowed for the iterative method.
    #[arg(long, default_value_t = 32)]
    pub fuel: u64,
}

#[derive(Subcommand, Debug)]
pub enum RankSub {
    /// Rank of the union of the given terms.
    Union {
        #[arg(required = true)]
        terms: Vec<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct CoverArgs {
    #[arg(long)]
    pub target: PathBuf,
    #[arg(long, num_args = 1.., required = true)]
    pub covers: Vec<PathBuf>,
    #[arg(long, default_value_t = 3)]
    pub breadth: usize,
}

#[derive(Subcommand, Debug)]
pub enum TalphaCmd {
    /// Enumerate a truncation of the maximal tree.
    Enum {
        #[arg(long, value_parser = ordinal)]
        alpha: Ordinal,
        #[arg(long, default_value_t = 3)]
        breadth: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Write the tree as a DOT graph to this path.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum AdmissibleCmd {
    /// Check both admissibility conditions on a truncation.
    Check {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, default_value_t = 3)]
        breadth: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
    },
    /// Print the image tree of a map on a truncation.
    Image {
        #[arg(long)]
        map: PathBuf,
        #[arg(long, default_value_t = 3)]
        breadth: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct ExtractArgs {
    #[arg(long)]
    pub image: PathBuf,
    #[arg(long, value_parser = ordinal)]
    pub alpha: Ordinal,
    /// Successor count treated as infinite branching.
    #[arg(long, default_value_t = 3)]
    pub threshold: usize,
}

#[derive(Subcommand, Debug)]
pub enum ComplexityCmd {
    /// Exact class of the space of alpha.
    Y {
        #[arg(value_parser = ordinal)]
        alpha: Ordinal,
    },
    /// Absolute class of a broom family such as "E<=3" or "E<w".
    Absolute {
        #[arg(long)]
        family: String,
    },
    /// Broom family realising the maximal tree space of an even alpha.
    Talagrand {
        #[arg(value_parser = ordinal)]
        alpha: Ordinal,
    },
    /// Borel class containing an F or G class, or equal classes in
    /// metrizable spaces.
    Correspond {
        #[arg(long, value_parser = class_name)]
        class: ClassName,
        #[arg(long)]
        metrizable: bool,
    },
    /// Whether a space with complexity alpha and absolute class beta exists
    /// by the construction.
    Pair {
        #[arg(value_parser = ordinal)]
        alpha: Ordinal,
        #[arg(value_parser = ordinal)]
        beta: Ordinal,
    },
    /// The complexity profile of the maximal tree space.
    Theorem {
        #[arg(value_parser = ordinal)]
        alpha: Ordinal,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum)]
pub enum SuiteChoice {
    Rank,
    Broom,
    Talpha,
    Complexity,
    All,
}

#[derive(Args, Debug)]
pub struct SuiteArgs {
    #[arg(value_enum, default_value_t = SuiteChoice::All)]
    pub name: SuiteChoice,
    /// Use the least member rank in the union law, to see the suite fail.
    #[arg(long)]
    pub break_rank_union: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::dispatch(&cli) {
        Ok(report) => report.emit(cli.json),
        Err(e) => {
            if cli.json {
                println!("{}", serde_json::json!({ "verdict": "error", "error": e.to_string() }));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(2)
        }
    }
}
