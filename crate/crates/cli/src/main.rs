//! `foaut`: compile, combine, run and check first-order automata.
//!
//! Exit codes: 0 NOTEMPTY or accept, 1 EMPTY or reject, 2 BOUND,
//! 3 INCONCLUSIVE, 4 any error (including usage errors).

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use config::Overrides;

pub const EXIT_ERROR: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "foaut", version, about = "First-order automata toolkit")]
pub struct Cli {
    #[command(flatten)]
    pub overrides: Overrides,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Foltl,
    Purepast,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Procedure {
    Semi,
    FiniteControl,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Op {
    Union,
    Intersect,
    Concat,
    Star,
    Complement,
    Monadic2fc,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Frontend {
    Sfa,
    Dmt,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Translate a FOLTL sentence into an automaton file.
    Compile {
        /// File holding the sentence.
        formula: PathBuf,
        /// JSON signature of the sentence.
        #[arg(long, value_name = "FILE")]
        signature: PathBuf,
        #[arg(long, value_enum, default_value = "foltl")]
        mode: Mode,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Emptiness check through an SMT solver.
    Check {
        automaton: PathBuf,
        /// JSON theory file (axioms and solver mapping).
        #[arg(long, value_name = "FILE")]
        theory: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "semi")]
        procedure: Procedure,
        /// Keep unrolling after an `unknown` answer.
        #[arg(long)]
        continue_on_unknown: bool,
    },
    /// Brute-force acceptance of one word file.
    Run { automaton: PathBuf, word: PathBuf },
    /// Deterministic monitoring of a JSON-lines trace ("-" for stdin).
    Step { automaton: PathBuf, trace: PathBuf },
    /// Closure operations and the monadic abstraction.
    Ops {
        #[arg(value_enum)]
        op: Op,
        #[arg(required = true, num_args = 1..=2)]
        inputs: Vec<PathBuf>,
        /// Attests that the input of `complement` is deterministic and complete.
        #[arg(long)]
        deterministic: bool,
        /// Write `concat`/`star` results as second-order automata.
        #[arg(long)]
        sigma11: bool,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
    /// Lower an s-FA or DMT file into an automaton file.
    Encode {
        #[arg(value_enum)]
        kind: Frontend,
        input: PathBuf,
        /// DMT final condition over the data variables.
        #[arg(long = "final", value_name = "FORMULA")]
        fin: Option<String>,
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
