//! `tel`: batch front end for the tel-core model checkers and solvers.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::exit_code_for;

#[derive(Parser, Debug)]
#[command(name = "tel", version, about = "Intuitionistic temporal logic workbench")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct ShapeArgs {
    /// Longest lasso prefix searched.
    #[arg(long, default_value_t = 1)]
    prefix: usize,
    /// Longest lasso loop searched.
    #[arg(long = "loop", default_value_t = 2)]
    loop_len: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a theory file and print its formulas.
    Parse { file: PathBuf },

    /// Report the frame conditions a model satisfies.
    Validate { model: PathBuf },

    /// Evaluate a formula at a world.
    Check { model: PathBuf, world: usize, formula: String },

    /// Check a formula under every valuation on a model's frame.
    FrameValid { model: PathBuf, formula: String },

    /// Bounded consequence: does THEORY entail every formula of GOALS?
    Entail {
        /// INT, KC, BD(n), HT, ITLe, ITLp, ITLbd(n), LTL or THT.
        #[arg(long)]
        logic: String,
        /// Most worlds per searched model.
        #[arg(long, default_value_t = 3)]
        bound: usize,
        #[command(flatten)]
        shapes: ShapeArgs,
        theory: PathBuf,
        goals: PathBuf,
    },

    /// Temporal equilibrium models among lassos of bounded shape.
    TelSolve {
        #[arg(long, default_value_t = 0)]
        prefix: usize,
        #[arg(long = "loop", default_value_t = 1)]
        loop_len: usize,
        /// Extra prefix positions tried when looking for smaller models.
        #[arg(long, default_value_t = 0)]
        extra_prefix: usize,
        /// Multiples of the loop length tried when looking for smaller models.
        #[arg(long, default_value_t = 1)]
        loop_factor: usize,
        theory: PathBuf,
    },

    /// Equilibrium models of a propositional theory.
    EqSolve { theory: PathBuf },

    /// Does the atom set satisfy the completion fixpoint of THEORY?
    CompletionCheck {
        theory: PathBuf,
        /// Comma-separated atoms, e.g. `p,q`; empty for the empty set.
        #[arg(long, default_value = "")]
        set: String,
    },

    /// Does a total lasso satisfy the temporal fixpoint of THEORY?
    FixpointCheck {
        #[command(flatten)]
        shapes: ShapeArgs,
        theory: PathBuf,
        lasso: PathBuf,
    },

    /// Check one belief set, or list every accepted one.
    SafeBeliefs {
        /// INT, KC, BD(n), HT, THT or ITLbd(n).
        #[arg(long)]
        logic: String,
        #[arg(long, default_value_t = 4)]
        bound: usize,
        #[command(flatten)]
        shapes: ShapeArgs,
        /// Propositional belief set, comma-separated.
        #[arg(long, conflicts_with = "belief")]
        set: Option<String>,
        /// Temporal belief-set file.
        #[arg(long)]
        belief: Option<PathBuf>,
        theory: PathBuf,
    },

    /// Compare the safe beliefs accepted under several logics.
    Coincide {
        /// Comma-separated, e.g. `INT,HT` or `ITLbd(2),THT`.
        #[arg(long, value_delimiter = ',')]
        logics: Vec<String>,
        #[arg(long, default_value_t = 4)]
        bound: usize,
        #[command(flatten)]
        shapes: ShapeArgs,
        theory: PathBuf,
    },

    /// Verify a relation file as a bisimulation between two models.
    BisimVerify {
        left: PathBuf,
        right: PathBuf,
        rel: PathBuf,
        /// Largest offset tried for the until/since clauses.
        #[arg(long)]
        k_bound: Option<usize>,
    },

    /// Largest relation satisfying the propositional clauses.
    BisimGreatest { left: PathBuf, right: PathBuf },

    /// Run a model construction and verify its relation.
    Contract {
        kind: ContractKind,
        model: PathBuf,
        world: usize,
        /// Write the resulting model or lasso here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ContractKind {
    Ht,
    Tht,
    Merge,
    MergeT,
    Classical,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("tel: {e}");
            return ExitCode::from(70);
        }
    }
    match commands::run(&cli.cmd) {
        Ok(report) => {
            report.emit(cli.json);
            ExitCode::from(report.status as u8)
        }
        Err(e) => {
            eprintln!("tel: {e:#}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
