mod commands;
mod error;
mod input;
mod output;

use std::process::ExitCode;
use std::time::Instant;

use bqo_core::ordinal::Alpha;
use bqo_core::poset::Poset;
use bqo_core::search::DEFAULT_BUDGET;
use bqo_core::SearchLimits;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use error::{CliError, CliResult};
use output::{Format, Report};

#[derive(Parser)]
#[command(name = "bqo", version, about = "Finite checks for posets, barriers, arrays, hereditarily finite sets and ordinals")]
struct Cli {
    /// Node budget for exhaustive searches.
    #[arg(long, global = true, env = "BQO_BUDGET")]
    budget: Option<u64>,
    /// Split searches across threads.
    #[arg(long, global = true)]
    parallel: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    group: Group,
}

#[derive(Subcommand)]
enum Group {
    /// Finite posets, embeddings and decompositions.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Finite sequences, the shift relation and fragments.
    #[command(subcommand)]
    Barrier(BarrierCmd),
    /// Arrays on fragments.
    #[command(subcommand)]
    Array(ArrayCmd),
    /// Hereditarily finite sets over a finite order.
    #[command(subcommand)]
    Hset(HsetCmd),
    /// Cantor normal forms and ω^α.
    #[command(subcommand)]
    Ordinal(OrdinalCmd),
    /// Bounded subset orders and bad triples.
    #[command(subcommand)]
    Mba(MbaCmd),
}

#[derive(Subcommand)]
pub enum PosetCmd {
    /// Check antisymmetry and transitivity.
    Validate {
        poset: String,
        /// Accept a quasi-order and print its quotient.
        #[arg(long)]
        preorder: bool,
    },
    /// Split into a linear sum of antichains, or name a forbidden suborder.
    Decompose { poset: String },
    /// Linear sum of antichains of size at most two, or a forbidden suborder.
    Classify { poset: String },
    /// Least embedding of SOURCE into TARGET.
    Embed { source: String, target: String },
    /// Least order-reflecting map of SOURCE into TARGET.
    Reflect { source: String, target: String },
}

#[derive(Subcommand)]
pub enum BarrierCmd {
    /// Relations between two sequences, e.g. `0,1` and `1,2`.
    Rel { s: String, t: String },
    /// The fragment `[0,N)^k`.
    Uniform {
        #[arg(long)]
        base: usize,
        #[arg(long)]
        rank: usize,
    },
    /// Exit 1 with the first violation if FRAGMENT is not valid.
    Validate { fragment: String },
    /// Members met between S and T inside the union of their entries.
    Chain { fragment: String, s: String, t: String },
    /// Turn a block fragment into a barrier fragment.
    Refine { fragment: String },
}

/// Either a poset target or `ω^k` for a `k`-element chain.
#[derive(Args)]
#[group(required = true, multiple = false)]
pub struct TargetArgs {
    #[arg(long)]
    target: Option<String>,
    #[arg(long)]
    alpha: Option<usize>,
}

pub enum ValueTarget {
    Poset(Poset),
    Omega(Alpha),
}

impl TargetArgs {
    fn resolve(&self) -> CliResult<ValueTarget> {
        match (&self.target, self.alpha) {
            (Some(t), None) => Ok(ValueTarget::Poset(input::load_poset(t)?)),
            (None, Some(k)) => Ok(ValueTarget::Omega(Alpha::chain(k))),
            _ => Err(CliError::Usage("give exactly one of --target or --alpha".into())),
        }
    }
}

#[derive(Subcommand)]
pub enum ArrayCmd {
    /// Good with a witness pair, or bad.
    Classify {
        array: String,
        #[command(flatten)]
        target: TargetArgs,
    },
    /// Least bad array on FRAGMENT into the target.
    SearchBad {
        fragment: String,
        #[arg(long)]
        target: String,
    },
    /// Largest N with a bad array on `[0,N)^k`.
    MaxHorizon {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 8)]
        max: usize,
    },
    /// Find a member where the first coordinate (or leading entry) stabilizes.
    Stabilize {
        array: String,
        #[arg(long, conflicts_with = "alpha", required_unless_present = "alpha")]
        sum: Option<String>,
        #[arg(long)]
        alpha: Option<usize>,
    },
    /// Remove leading entries below member AT.
    DeriveTail {
        array: String,
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        at: String,
    },
    /// Pointwise comparison of F and G under a ranking.
    Compare {
        f: String,
        g: String,
        #[command(flatten)]
        target: TargetArgs,
        /// `order`, `discrete`, or JSON pairs `[[a,b],...]`.
        #[arg(long)]
        ranking: Option<String>,
    },
    /// Descend to a minimal bad array.
    Minimize {
        array: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        ranking: Option<String>,
    },
}

#[derive(Subcommand)]
pub enum HsetCmd {
    /// Compare two terms, e.g. `{a {b}}`.
    Leq {
        x: String,
        y: String,
        #[arg(long, default_value = "one-plus-two")]
        order: String,
    },
    /// Support of a term.
    Supp {
        x: String,
        #[arg(long, default_value = "one-plus-two")]
        order: String,
    },
    Dot { n: usize },
    Ddot { n: usize },
    /// Check the interlocking table up to BOUND.
    VerifyInterlocked {
        #[arg(long, default_value_t = 12)]
        bound: usize,
    },
    /// Three pairwise incomparable terms over `1 ⊕ 2`.
    Antichain3,
}

#[derive(Subcommand)]
pub enum OrdinalCmd {
    Compare { a: String, b: String },
    Add { a: String, b: String },
    /// Compare two descending sequences in ω^k.
    OmegaCompare {
        s: String,
        t: String,
        #[arg(long)]
        alpha: usize,
    },
    /// Whether S is a suffix of T.
    Suffix { s: String, t: String },
    Head { s: String },
}

#[derive(Subcommand)]
pub enum MbaCmd {
    /// Subsets of size at most N with their order.
    Power {
        poset: String,
        #[arg(long)]
        n: usize,
    },
    Wellfounded {
        poset: String,
        #[arg(long)]
        n: usize,
    },
    Triples { poset: String },
    Minimal { poset: String },
    /// Elements strictly below some member of SUBSET.
    Downset {
        poset: String,
        #[arg(long)]
        subset: String,
    },
}

/// The group and subcommand words, skipping global options and their values.
fn command_name(args: &[String]) -> String {
    let mut words = Vec::new();
    let mut it = args.iter().skip(1);
    while let Some(a) = it.next() {
        if a == "--budget" || a == "--format" {
            it.next();
        } else if !a.starts_with('-') {
            words.push(a.as_str());
        }
        if words.len() == 2 {
            break;
        }
    }
    words.join(" ")
}

fn run(group: Group, limits: &SearchLimits) -> CliResult<serde_json::Value> {
    match group {
        Group::Poset(c) => commands::poset(c, limits),
        Group::Barrier(c) => commands::barrier(c),
        Group::Array(c) => commands::array(c, limits),
        Group::Hset(c) => commands::hset(c),
        Group::Ordinal(c) => commands::ordinal(c),
        Group::Mba(c) => commands::mba(c, limits),
    }
}

fn emit(report: &Report, format: Format, to_stderr: bool) {
    let text = report.render(format);
    if to_stderr {
        eprintln!("{text}");
    } else {
        println!("{text}");
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let start = Instant::now();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let err = CliError::Usage(e.render().to_string().trim().to_string());
            let report = Report::new(command_name(&args), err.status(), json!({ "error": err.to_string() }), start.elapsed());
            emit(&report, Format::Json, true);
            return ExitCode::from(err.exit_code());
        }
    };
    let limits = SearchLimits::with_budget(cli.budget.unwrap_or(DEFAULT_BUDGET)).parallel(cli.parallel);
    let command = command_name(&args);
    let (status, result, code) = match run(cli.group, &limits) {
        Ok(v) => ("ok", v, 0),
        Err(e) => (e.status(), json!({ "error": e.to_string() }), e.exit_code()),
    };
    let report = Report::new(command, status, result, start.elapsed());
    emit(&report, cli.format, false);
    ExitCode::from(code)
}
