//! Temporal formulas to automata: surrogate predicates track the truth of
//! every one-step guarded closure member along the run.

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::foltl::{closure, nnf, snf_surrogate_with, surrogate_table, ClosureMode, Priming, Surrogate, SurrogateTable};
use crate::formula::{check_sorts, Formula, Guard};
use crate::names;
use crate::signature::Signature;

/// Sizes reported by the compiler front end.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EncodingReport {
    pub closure: usize,
    pub surrogates: usize,
}

fn primed_atom(s: &Surrogate) -> Formula {
    match s.atom() {
        Formula::Atom(n, args) => Formula::Atom(names::primed(&n), args),
        _ => unreachable!("surrogates are predicates"),
    }
}

fn all_hold(s: &Surrogate) -> Formula {
    Formula::forall_all(&s.args, s.atom())
}

fn none_hold(s: &Surrogate) -> Formula {
    Formula::forall_all(&s.args, Formula::not(s.atom()))
}

/// `∀x̄ (zs(x̄))` for every weak-yesterday surrogate and `∀x̄ ¬ys(x̄)` for
/// every yesterday surrogate.
fn past_start(table: &SurrogateTable) -> Vec<Formula> {
    let mut out: Vec<Formula> = table.of_kind(Guard::Z).map(all_hold).collect();
    out.extend(table.of_kind(Guard::Y).map(none_hold));
    out
}

/// `∀x̄ [s′(x̄) ↔ snf(ψ)]` for the yesterday-like surrogates.
fn past_updates(table: &SurrogateTable, priming: Priming) -> Vec<Formula> {
    table
        .entries()
        .iter()
        .filter(|s| !s.guard.is_future())
        .map(|s| {
            let body = Formula::iff(primed_atom(s), snf_surrogate_with(&s.formula, table, priming));
            Formula::forall_all(&s.args, body)
        })
        .collect()
}

fn prepare(phi: &Formula, sigma: &Signature) -> Result<Formula> {
    phi.require_sentence()?;
    check_sorts(phi, sigma)?;
    Ok(nnf(phi))
}

/// Automaton accepting exactly the non-empty words satisfying `phi`.
///
/// `xs_ψ`/`ws_ψ` hold of `ā` in state `ρᵢ` iff `ψ(ā)` holds at position `i`;
/// `ys_ψ`/`zs_ψ` hold in `ρᵢ` iff `ψ(ā)` held at position `i−1`. The guards
/// in the transition are read across the step: future surrogates primed,
/// past surrogates unprimed.
pub fn encode_foltl(phi: &Formula, sigma: &Signature) -> Result<Automaton> {
    encode_future(phi, sigma, Priming::Stepped, Priming::Stepped)
}

/// [`encode_foltl`] with future lines uniformly primed and past lines uniformly
/// unprimed. Kept to exhibit that this reading is wrong for formulas mixing
/// future and past guards.
pub fn encode_foltl_uniform(phi: &Formula, sigma: &Signature) -> Result<Automaton> {
    encode_future(phi, sigma, Priming::Primed, Priming::Unprimed)
}

fn encode_future(phi: &Formula, sigma: &Signature, future: Priming, past: Priming) -> Result<Automaton> {
    let phi = prepare(phi, sigma)?;
    let table = surrogate_table(&closure(&phi, ClosureMode::FutureRooted));
    let gamma = table.signature(sigma)?;
    let root = table
        .get(Guard::X, &phi)
        .expect("future-rooted closure contains X phi");

    let mut init = vec![root.atom()];
    init.extend(past_start(&table));

    let mut fin: Vec<Formula> = table.of_kind(Guard::WX).map(all_hold).collect();
    fin.extend(table.of_kind(Guard::X).map(none_hold));

    let mut trans: Vec<Formula> = table
        .entries()
        .iter()
        .filter(|s| s.guard.is_future())
        .map(|s| {
            let body = Formula::iff(s.atom(), snf_surrogate_with(&s.formula, &table, future));
            Formula::forall_all(&s.args, body)
        })
        .collect();
    trans.extend(past_updates(&table, past));

    Automaton::new(
        sigma.clone(),
        gamma,
        Formula::and(init),
        Formula::and(trans),
        Formula::and(fin),
    )
}

/// Deterministic and complete automaton accepting the non-empty words whose
/// last position satisfies the pure-past sentence `phi`.
pub fn encode_pure_past(phi: &Formula, sigma: &Signature) -> Result<Automaton> {
    if !phi.is_pure_past() {
        return Err(Error::NotPurePast(phi.to_string()));
    }
    let phi = prepare(phi, sigma)?;
    let table = surrogate_table(&closure(&phi, ClosureMode::PastRooted));
    let gamma = table.signature(sigma)?;
    let root = table
        .get(Guard::Y, &phi)
        .expect("past-rooted closure contains Y phi");
    Automaton::new(
        sigma.clone(),
        gamma,
        Formula::and(past_start(&table)),
        Formula::and(past_updates(&table, Priming::Unprimed)),
        root.atom(),
    )
}

impl EncodingReport {
    pub fn of(phi: &Formula, mode: ClosureMode) -> EncodingReport {
        let cl = closure(&nnf(phi), mode);
        EncodingReport {
            closure: cl.len(),
            surrogates: surrogate_table(&cl).entries().len(),
        }
    }
}
