//! Emptiness: bounded unrolling discharged to an SMT solver, and the
//! decision procedure for finite-control automata.

mod model;
mod smtlib;
mod solver;
mod unroll;

use std::fmt;
use std::path::PathBuf;

use crate::automaton::{Automaton, ControlClass};
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::theory::Theory;

pub use model::{extract_witness, model_constants, parse_sexps, Sexp, Witness};
pub use smtlib::{emit_smtlib, emit_smtlib_with};
pub use solver::{Solver, SolverVerdict, DEFAULT_SOLVER, SOLVER_ENV};
pub use unroll::{at_step, demangle, loop_formula, mangle, unroll, StepSymbol, UnrolledFormula, STEP_MARK};

pub const DEFAULT_K_MAX: usize = 25;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmptinessResult {
    /// An accepted run of `k + 1` states, reading `k` letters.
    NotEmpty { k: usize, witness: Witness },
    /// No accepted run exists; every run of depth `depth` repeats a state.
    Empty { depth: usize },
    BoundExhausted { k_max: usize },
    Inconclusive { k: usize, reason: String },
}

impl fmt::Display for EmptinessResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmptinessResult::NotEmpty { k, .. } => write!(f, "NOTEMPTY (k = {k})"),
            EmptinessResult::Empty { depth } => write!(f, "EMPTY (certificate depth {depth})"),
            EmptinessResult::BoundExhausted { k_max } => write!(f, "BOUND (no accepted run up to k = {k_max})"),
            EmptinessResult::Inconclusive { k, reason } => write!(f, "INCONCLUSIVE (k = {k}: {reason})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BmcOptions {
    pub k_max: usize,
    /// Treat `unknown` as "try the next depth" instead of stopping. A later
    /// emptiness certificate is then reported as inconclusive.
    pub continue_on_unknown: bool,
    /// Directory receiving every emitted script.
    pub dump_dir: Option<PathBuf>,
}

impl Default for BmcOptions {
    fn default() -> Self {
        BmcOptions {
            k_max: DEFAULT_K_MAX,
            continue_on_unknown: false,
            dump_dir: None,
        }
    }
}

struct Session<'a> {
    theory: &'a Theory,
    solver: &'a Solver,
    opts: &'a BmcOptions,
}

impl Session<'_> {
    fn run(&self, name: &str, f: &UnrolledFormula) -> Result<SolverVerdict> {
        let script = emit_smtlib(f, self.theory)?;
        if let Some(dir) = &self.opts.dump_dir {
            std::fs::create_dir_all(dir)?;
            std::fs::write(dir.join(format!("{name}.smt2")), &script)?;
        }
        match self.solver.solve(&script)? {
            SolverVerdict::SolverError(e) => Err(Error::Solver(e)),
            v => Ok(v),
        }
    }
}

/// The bounded semi-decision loop: `NotEmpty` at the first `k` for which
/// `⟦A⟧ₖ^F` is satisfiable.
pub fn non_empty_semi(a: &Automaton, theory: &Theory, solver: &Solver, opts: &BmcOptions) -> Result<EmptinessResult> {
    let session = Session { theory, solver, opts };
    let mut unknown = None;
    for k in 0..=opts.k_max {
        let f = unroll(a, k, true);
        match session.run(&format!("bmc_k{k}"), &f)? {
            SolverVerdict::Sat(model) => {
                let witness = extract_witness(&model, &f, theory);
                return Ok(EmptinessResult::NotEmpty { k, witness });
            }
            SolverVerdict::Unsat => {}
            SolverVerdict::Unknown(reason) if opts.continue_on_unknown => {
                unknown.get_or_insert((k, reason));
            }
            SolverVerdict::Unknown(reason) => return Ok(EmptinessResult::Inconclusive { k, reason }),
            SolverVerdict::SolverError(_) => unreachable!("mapped to an error"),
        }
    }
    Ok(match unknown {
        Some((k, reason)) => EmptinessResult::Inconclusive { k, reason },
        None => EmptinessResult::BoundExhausted { k_max: opts.k_max },
    })
}

/// Depth at which every run of a finite-control automaton with `n`
/// non-rigid propositions must repeat a state within the loop formula's
/// index range.
pub fn termination_bound(n: usize) -> usize {
    if n >= usize::BITS as usize - 1 {
        usize::MAX
    } else {
        (1usize << n) + 1
    }
}

/// Decision procedure for finite-control automata: at each depth, first
/// look for an accepted run, then check whether every run of that depth
/// already contains a loop.
pub fn decide_finite_control(
    a: &Automaton,
    theory: &Theory,
    solver: &Solver,
    opts: &BmcOptions,
) -> Result<EmptinessResult> {
    if a.classify() != ControlClass::FiniteControl {
        return Err(Error::Precondition(format!("automaton is {}, not finite-control", a.classify())));
    }
    let session = Session { theory, solver, opts };
    let flexible = a.state_signature().symbols().iter().filter(|s| !s.rigid).count();
    let last = opts.k_max.max(termination_bound(flexible));
    let mut unknown: Option<(usize, String)> = None;
    for k in 0..=last {
        let accepted = unroll(a, k, true);
        match session.run(&format!("fc_k{k}_accept"), &accepted)? {
            SolverVerdict::Sat(model) => {
                let witness = extract_witness(&model, &accepted, theory);
                return Ok(EmptinessResult::NotEmpty { k, witness });
            }
            SolverVerdict::Unsat => {}
            SolverVerdict::Unknown(reason) if opts.continue_on_unknown => {
                unknown.get_or_insert((k, reason));
            }
            SolverVerdict::Unknown(reason) => return Ok(EmptinessResult::Inconclusive { k, reason }),
            SolverVerdict::SolverError(_) => unreachable!("mapped to an error"),
        }
        let looping = unroll(a, k, false).and_also(Formula::not(loop_formula(a.state_signature(), k)?));
        match session.run(&format!("fc_k{k}_loop"), &looping)? {
            SolverVerdict::Unsat => {
                return Ok(match unknown {
                    Some((k, reason)) => EmptinessResult::Inconclusive {
                        k,
                        reason: format!("{reason}; an emptiness certificate was found later"),
                    },
                    None => EmptinessResult::Empty { depth: k },
                });
            }
            SolverVerdict::Sat(_) => {}
            SolverVerdict::Unknown(reason) if opts.continue_on_unknown => {
                unknown.get_or_insert((k, reason));
            }
            SolverVerdict::Unknown(reason) => return Ok(EmptinessResult::Inconclusive { k, reason }),
            SolverVerdict::SolverError(_) => unreachable!("mapped to an error"),
        }
    }
    Ok(match unknown {
        Some((k, reason)) => EmptinessResult::Inconclusive { k, reason },
        None => EmptinessResult::BoundExhausted { k_max: last },
    })
}

/// Re-checks a witness: the unrolling at its length stays satisfiable with
/// the word symbols pinned to the witness values.
pub fn revalidate(a: &Automaton, theory: &Theory, solver: &Solver, witness: &Witness) -> Result<bool> {
    let f = unroll(a, witness.length, true);
    let script = emit_smtlib_with(&f, theory, &witness.assertions())?;
    match solver.solve(&script)? {
        SolverVerdict::Sat(_) => Ok(true),
        SolverVerdict::Unsat => Ok(false),
        SolverVerdict::Unknown(r) => Err(Error::Solver(format!("re-validation inconclusive: {r}"))),
        SolverVerdict::SolverError(e) => Err(Error::Solver(e)),
    }
}
