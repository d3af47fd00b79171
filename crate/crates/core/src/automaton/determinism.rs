//! Bounded determinism and completeness checks, and deterministic stepping.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::oracle::{Limits, Oracle, WordSpace};
use super::Automaton;
use crate::error::{Error, Result};
use crate::eval::Compiled;
use crate::signature::Signature;
use crate::structure::{enumerate_structures, Domains, Structure};
use crate::theory::Theory;

/// Outcome of a bounded check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundedCheck {
    Holds,
    Fails(Box<Counterexample>),
}

impl BoundedCheck {
    pub fn holds(&self) -> bool {
        matches!(self, BoundedCheck::Holds)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Counterexample {
    /// The initial condition has `models.len()` pairwise non-isomorphic
    /// models for the given interpretation of the rigid word symbols.
    Initial {
        domains: Domains,
        rigid: Structure,
        models: Vec<Structure>,
    },
    /// `state` reading `letter` has the listed successors.
    Step {
        domains: Domains,
        state: Structure,
        letter: Structure,
        successors: Vec<Structure>,
    },
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let json = |s: &Structure| serde_json::to_string(&s.tables()).unwrap_or_default();
        match self {
            Counterexample::Initial { domains, rigid, models } => write!(
                f,
                "{} non-isomorphic initial states over {} with rigid part {}",
                models.len(),
                serde_json::to_string(domains).unwrap_or_default(),
                json(rigid)
            ),
            Counterexample::Step {
                domains,
                state,
                letter,
                successors,
            } => write!(
                f,
                "state {} reading {} over {} has {} successors",
                json(state),
                json(letter),
                serde_json::to_string(domains).unwrap_or_default(),
                successors.len()
            ),
        }
    }
}

/// Every assignment of element lists `e0..e{k-1}` with `1 <= k <= bound` to
/// the sorts of `sig`.
pub fn domain_assignments(sig: &Signature, bound: usize) -> Vec<Domains> {
    let sorts = sig.sorts();
    let mut out = Vec::new();
    let mut sizes = vec![1usize; sorts.len()];
    if bound == 0 {
        return out;
    }
    loop {
        out.push(Domains::with_sizes(sorts.iter().map(String::as_str).zip(sizes.iter().copied())));
        let mut pos = sizes.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if sizes[pos] < bound {
                sizes[pos] += 1;
                break;
            }
            sizes[pos] = 1;
        }
    }
}

fn all_sorts(a: &Automaton) -> Result<Signature> {
    a.state_signature().union(a.word_signature())
}

/// Successor counts over every enumerated state and letter; `bad` decides
/// which counts are violations.
fn check_steps(a: &Automaton, bound: usize, limits: Limits, bad: impl Fn(usize) -> bool) -> Result<BoundedCheck> {
    for domains in domain_assignments(&all_sorts(a)?, bound) {
        let oracle = Oracle::with_limits(a, &domains, limits)?;
        let space = WordSpace::new(a.word_signature(), &domains, &Theory::empty(), limits)?;
        for letter in space.groups().iter().flatten() {
            let l = oracle.intern(letter)?;
            for s in 0..oracle.states().len() {
                let succ = oracle.successors(s as u32, l);
                if bad(succ.len()) {
                    return Ok(BoundedCheck::Fails(Box::new(Counterexample::Step {
                        domains,
                        state: oracle.states()[s].clone(),
                        letter: letter.clone(),
                        successors: succ.iter().map(|&t| oracle.states()[t as usize].clone()).collect(),
                    })));
                }
            }
        }
    }
    Ok(BoundedCheck::Holds)
}

/// Permutations of `0..n`.
fn permutations(n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, (n - 1) as u32);
            out.push(q);
        }
    }
    out
}

/// Every per-sort permutation of the domains.
fn domain_permutations(domains: &Domains) -> Vec<BTreeMap<String, Vec<u32>>> {
    let mut out = vec![BTreeMap::new()];
    for sort in domains.sorts() {
        let n = domains.size(sort).expect("listed sort");
        let mut next = Vec::new();
        for base in &out {
            for p in permutations(n) {
                let mut m = base.clone();
                m.insert(sort.to_string(), p);
                next.push(m);
            }
        }
        out = next;
    }
    out
}

/// Initial states are unique up to isomorphism for each interpretation of
/// the rigid word symbols.
fn check_initial(a: &Automaton, bound: usize, limits: Limits) -> Result<BoundedCheck> {
    let gamma = Arc::new(a.state_signature().clone());
    let rigid_sigma = Arc::new(a.word_signature().restrict(|s| s.rigid));
    for domains in domain_assignments(&all_sorts(a)?, bound) {
        let oracle = Oracle::with_limits(a, &domains, limits)?;
        let init = Compiled::first_order(a.init(), &[&gamma, &rigid_sigma], &domains, &[])?;
        let perms = domain_permutations(&domains);
        let rigid_domains = Arc::new(domains.for_signature(&rigid_sigma)?);
        for r in enumerate_structures(rigid_sigma.clone(), rigid_domains)? {
            let stabilizer: Vec<_> = perms.iter().filter(|p| r.permuted(p) == r).collect();
            let mut classes: Vec<Structure> = Vec::new();
            for s in oracle.states() {
                if !init.eval_layers(&[s, &r], &[]) {
                    continue;
                }
                if !classes.iter().any(|c| stabilizer.iter().any(|p| s.permuted(p) == *c)) {
                    classes.push(s.clone());
                }
            }
            if classes.len() != 1 {
                return Ok(BoundedCheck::Fails(Box::new(Counterexample::Initial {
                    domains,
                    rigid: r,
                    models: classes,
                })));
            }
        }
    }
    Ok(BoundedCheck::Holds)
}

/// Every state has at most one successor per letter among states agreeing
/// on the rigid state symbols, and the initial state is unique up to
/// isomorphism, for all domains with at most `bound` elements per sort.
pub fn check_determinism_bounded(a: &Automaton, bound: usize) -> Result<BoundedCheck> {
    let limits = Limits::default();
    match check_initial(a, bound, limits)? {
        BoundedCheck::Holds => check_steps(a, bound, limits, |n| n > 1),
        fails => Ok(fails),
    }
}

/// Every state has at least one successor per letter.
pub fn check_completeness_bounded(a: &Automaton, bound: usize) -> Result<BoundedCheck> {
    check_steps(a, bound, Limits::default(), |n| n == 0)
}

/// The unique successor of `state` reading `letter`.
pub fn step_deterministic(state: &Structure, letter: &Structure, a: &Automaton) -> Result<Structure> {
    if state.signature() != a.state_signature() {
        return Err(Error::Structure("state is not over the state signature".into()));
    }
    let domains = state.domains().merge(letter.domains())?;
    let oracle = Oracle::new(a, &domains)?;
    let s = oracle
        .states()
        .iter()
        .position(|t| t.interps() == state.interps())
        .ok_or_else(|| Error::Structure("state domains differ from the letter's".into()))?;
    let l = oracle.intern(letter)?;
    let succ = oracle.successors(s as u32, l);
    match succ.len() {
        1 => Ok(oracle.states()[succ[0] as usize].clone()),
        n => Err(Error::Determinism(format!("{n} successors"))),
    }
}
