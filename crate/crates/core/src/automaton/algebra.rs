//! Closure constructions: union, intersection, concatenation, Kleene star,
//! elimination of second-order prefixes and complement of deterministic
//! automata.

use std::collections::BTreeMap;

use super::so::{Sigma11Automaton, SoFormula};
use super::Automaton;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::names::{self, FreshNames};
use crate::signature::{Signature, Symbol};

fn same_word_signature(a: &Signature, b: &Signature) -> Result<()> {
    let mut sa: Vec<_> = a.symbols().to_vec();
    let mut sb: Vec<_> = b.symbols().to_vec();
    sa.sort_by(|x, y| x.name.cmp(&y.name));
    sb.sort_by(|x, y| x.name.cmp(&y.name));
    if sa != sb {
        return Err(Error::Precondition("automata read different word signatures".into()));
    }
    Ok(())
}

fn taken_names<'a>(sigs: impl IntoIterator<Item = &'a Signature>) -> FreshNames {
    let mut fresh = FreshNames::default();
    for sig in sigs {
        for name in sig.symbol_names() {
            fresh.reserve(name);
            fresh.reserve(names::primed(name));
        }
    }
    fresh
}

/// Renames the state symbols of `a2` that clash with those of `a1`.
fn apart(a1: &Automaton, a2: &Automaton) -> Result<Automaton> {
    same_word_signature(a1.word_signature(), a2.word_signature())?;
    let mut fresh = taken_names([a1.word_signature(), a1.state_signature(), a2.state_signature()]);
    let mapping: BTreeMap<String, String> = a2
        .state_signature()
        .symbols()
        .iter()
        .filter(|s| a1.state_signature().contains(&s.name))
        .map(|s| (s.name.clone(), fresh.fresh(&s.name)))
        .collect();
    if mapping.is_empty() {
        Ok(a2.clone())
    } else {
        a2.rename_state(&mapping)
    }
}

/// `Γ₁ ∪ Γ₂` plus fresh non-rigid propositions named after `hints`.
fn joint_state(a1: &Automaton, a2: &Automaton, hints: &[&str]) -> Result<(Signature, Vec<String>)> {
    let mut gamma = a1.state_signature().union(a2.state_signature())?;
    let mut fresh = taken_names([a1.word_signature(), &gamma]);
    let mut props = Vec::new();
    for h in hints {
        let p = fresh.fresh(h);
        gamma.add_symbol(Symbol::proposition(&p, false))?;
        props.push(p);
    }
    Ok((gamma, props))
}

fn prop(name: &str) -> Formula {
    Formula::prop(name)
}

fn primed_prop(name: &str) -> Formula {
    Formula::prop(&names::primed(name))
}

pub fn intersection(a1: &Automaton, a2: &Automaton) -> Result<Automaton> {
    let a2 = apart(a1, a2)?;
    Automaton::new(
        a1.word_signature().clone(),
        a1.state_signature().union(a2.state_signature())?,
        Formula::and2(a1.init().clone(), a2.init().clone()),
        Formula::and2(a1.trans().clone(), a2.trans().clone()),
        Formula::and2(a1.fin().clone(), a2.fin().clone()),
    )
}

/// A proposition `p₀` fixed along the run selects the component.
pub fn union(a1: &Automaton, a2: &Automaton) -> Result<Automaton> {
    let a2 = apart(a1, &a2.clone())?;
    let (gamma, props) = joint_state(a1, &a2, &["p0"])?;
    let p = &props[0];
    let pick = |f1: &Formula, f2: &Formula| {
        Formula::or2(
            Formula::and2(prop(p), f1.clone()),
            Formula::and2(Formula::not(prop(p)), f2.clone()),
        )
    };
    let trans = Formula::or2(
        Formula::and(vec![prop(p), a1.trans().clone(), primed_prop(p)]),
        Formula::and(vec![Formula::not(prop(p)), a2.trans().clone(), Formula::not(primed_prop(p))]),
    );
    Automaton::new(
        a1.word_signature().clone(),
        gamma,
        pick(a1.init(), a2.init()),
        trans,
        pick(a1.fin(), a2.fin()),
    )
}

/// `φ₀[Γ/Γ″] ∧ φ_T[Γ/Γ″]` with `Γ″` a fresh copy of the non-rigid state
/// symbols, returned with the copy.
fn entry_step(a: &Automaton, fresh: &mut FreshNames) -> Result<(Vec<Symbol>, Formula)> {
    let mut mapping = BTreeMap::new();
    let mut copies = Vec::new();
    for s in a.state_signature().symbols().iter().filter(|s| !s.rigid) {
        let name = fresh.fresh(&s.name);
        mapping.insert(s.name.clone(), name.clone());
        copies.push(s.renamed(name));
    }
    let body = Formula::and2(a.init().rename_symbols(&mapping), a.trans().rename_symbols(&mapping));
    Ok((copies, body))
}

/// `p` marks the first component; the switch happens on a letter read by
/// the second automaton from an initial state `Γ″` while the first is in a
/// final state.
pub fn concatenation(a1: &Automaton, a2: &Automaton) -> Result<Sigma11Automaton> {
    let a2 = apart(a1, a2)?;
    let (gamma, props) = joint_state(a1, &a2, &["p"])?;
    let p = &props[0];
    let mut fresh = taken_names([a1.word_signature(), &gamma]);
    let (copies, entry) = entry_step(&a2, &mut fresh)?;
    let switch = Formula::and(vec![prop(p), Formula::not(primed_prop(p)), a1.fin().clone(), entry]);
    let trans = Formula::or(vec![
        Formula::and(vec![prop(p), a1.trans().clone(), primed_prop(p)]),
        Formula::and(vec![Formula::not(prop(p)), a2.trans().clone(), Formula::not(primed_prop(p))]),
    ]);
    // The switch disjunct carries the second-order prefix; as the prefix
    // must be outermost, it is pulled over the whole disjunction, which is
    // sound because the other disjuncts do not mention `Γ″`.
    let trans = SoFormula {
        prefix: copies,
        matrix: Formula::or2(trans, switch),
    };
    Sigma11Automaton::new(
        a1.word_signature().clone(),
        gamma,
        SoFormula::first_order(Formula::and2(prop(p), a1.init().clone())),
        trans,
        SoFormula::first_order(Formula::and2(Formula::not(prop(p)), a2.fin().clone())),
    )
}

/// `φ_T* = φ_T ∨ (φ_F ∧ ∃Γ″(φ₀[Γ/Γ″] ∧ φ_T[Γ/Γ″]))`; `φ₀` and `φ_F` are kept.
pub fn kleene_star(a: &Automaton) -> Result<Sigma11Automaton> {
    let mut fresh = taken_names([a.word_signature(), a.state_signature()]);
    let (copies, entry) = entry_step(a, &mut fresh)?;
    Sigma11Automaton::new(
        a.word_signature().clone(),
        a.state_signature().clone(),
        SoFormula::first_order(a.init().clone()),
        SoFormula {
            prefix: copies,
            matrix: Formula::or2(a.trans().clone(), Formula::and2(a.fin().clone(), entry)),
        },
        SoFormula::first_order(a.fin().clone()),
    )
}

/// Moves every second-order prefix into the state signature as fresh
/// non-rigid symbols. Symbols quantified in `φ_T` become unprimed state
/// symbols, so the witness of step `i` lives in state `i`.
pub fn sigma11_to_fo(a: &Sigma11Automaton) -> Result<Automaton> {
    let mut gamma = a.state_signature().clone();
    let mut fresh = taken_names([a.word_signature(), a.state_signature()]);
    for so in [a.init(), a.trans(), a.fin()] {
        for s in &so.prefix {
            fresh.reserve(s.name.clone());
        }
    }
    let mut lift = |so: &SoFormula| -> Result<Formula> {
        let mut mapping = BTreeMap::new();
        for s in &so.prefix {
            let name = if gamma.contains(&s.name) || a.word_signature().contains(&s.name) {
                fresh.fresh(&s.name)
            } else {
                s.name.clone()
            };
            let mut sym = s.renamed(name.clone());
            sym.rigid = false;
            gamma.add_symbol(sym)?;
            mapping.insert(s.name.clone(), name);
        }
        Ok(so.matrix.rename_symbols(&mapping))
    };
    let init = lift(a.init())?;
    let trans = lift(a.trans())?;
    let fin = lift(a.fin())?;
    Automaton::new(a.word_signature().clone(), gamma, init, trans, fin)
}

/// Complement of a deterministic automaton: a sink proposition `s` first
/// makes it complete, then acceptance is negated.
pub fn complement_deterministic(a: &Automaton) -> Result<Automaton> {
    let mut gamma = a.state_signature().clone();
    let mut fresh = taken_names([a.word_signature(), a.state_signature()]);
    let s = fresh.fresh("s");
    gamma.add_symbol(Symbol::proposition(&s, false))?;
    let live = Formula::not(prop(&s));
    Automaton::new(
        a.word_signature().clone(),
        gamma,
        Formula::and2(live.clone(), a.init().clone()),
        Formula::or2(
            Formula::and(vec![live.clone(), Formula::not(primed_prop(&s)), a.trans().clone()]),
            Formula::and2(prop(&s), primed_prop(&s)),
        ),
        Formula::not(Formula::and2(live, a.fin().clone())),
    )
}
