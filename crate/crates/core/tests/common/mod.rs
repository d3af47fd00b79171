//! Helpers shared by the integration tests, including a naive acceptance
//! check that does not go through the oracle's layered evaluation.

#![allow(dead_code)]

pub mod corpus;
pub mod frontends;
pub mod monadic;
pub mod smt;

use std::sync::Arc;

use foaut::automaton::{domain_assignments, Automaton, Oracle, WordSpace};
use foaut::structure::{enumerate_structures, join_structures};
use foaut::{eval_fo, Domains, Environment, Signature, Structure, Symbol, Theory, Word};

pub fn props(names: &[&str]) -> Signature {
    Signature::new(
        Vec::<String>::new(),
        names.iter().map(|n| Symbol::proposition(n, false)).collect(),
    )
    .unwrap()
}

pub fn one_sort(symbols: Vec<Symbol>) -> Signature {
    Signature::new(["S"], symbols).unwrap()
}

pub fn auto(sigma: &Signature, gamma: &Signature, init: &str, trans: &str, fin: &str) -> Automaton {
    Automaton::parse(sigma.clone(), gamma.clone(), init, trans, fin).unwrap()
}

/// Every sort of both signatures gets `n` elements.
pub fn domains_for(a: &Automaton, n: usize) -> Domains {
    let sig = a.state_signature().union(a.word_signature()).unwrap();
    Domains::uniform(sig.sorts(), n)
}

pub fn space(sigma: &Signature, domains: &Domains) -> WordSpace {
    WordSpace::new(sigma, domains, &Theory::empty(), Default::default()).unwrap()
}

pub fn language(a: &Automaton, space: &WordSpace, domains: &Domains, max_len: usize) -> Vec<bool> {
    Oracle::new(a, domains).unwrap().language(space, max_len).unwrap()
}

fn holds(joined: &Structure, phi: &foaut::Formula) -> bool {
    eval_fo(joined, phi, &Environment::new()).unwrap()
}

/// Depth-first search over explicit state sequences, joining structures and
/// relabelling the successor to the primed signature at every step.
pub fn reference_accepts(a: &Automaton, word: &Word, domains: &Domains) -> bool {
    let gamma = Arc::new(a.state_signature().clone());
    let state_domains = Arc::new(domains.for_signature(&gamma).unwrap());
    let states: Vec<Structure> = enumerate_structures(gamma.clone(), state_domains).unwrap().collect();
    let rigid_sigma = Arc::new(a.word_signature().restrict(|s| s.rigid));
    let flexible = Arc::new(gamma.restrict(|s| !s.rigid));
    let primed = Arc::new(flexible.prime_signature());
    let rigid_parts: Vec<Structure> = match word.letters().first() {
        Some(l) => vec![l.reduct(rigid_sigma.clone()).unwrap()],
        None => {
            let d = Arc::new(domains.for_signature(&rigid_sigma).unwrap());
            enumerate_structures(rigid_sigma.clone(), d).unwrap().collect()
        }
    };
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        a: &Automaton,
        word: &Word,
        i: usize,
        rho: &Structure,
        r: &Structure,
        states: &[Structure],
        flexible: &Arc<Signature>,
        primed: &Arc<Signature>,
    ) -> bool {
        if i == word.len() {
            return holds(&join_structures(&[rho, r]).unwrap(), a.fin());
        }
        for next in states {
            let same_rigid = a
                .state_signature()
                .symbols()
                .iter()
                .enumerate()
                .all(|(k, sym)| !sym.rigid || rho.interp(k) == next.interp(k));
            if !same_rigid {
                continue;
            }
            let nprime = next.reduct(flexible.clone()).unwrap().relabel(primed.clone()).unwrap();
            let joined = join_structures(&[rho, &word.letters()[i], &nprime]).unwrap();
            if holds(&joined, a.trans()) && dfs(a, word, i + 1, next, r, states, flexible, primed) {
                return true;
            }
        }
        false
    }
    rigid_parts.iter().any(|r| {
        states.iter().any(|rho| {
            holds(&join_structures(&[rho, r]).unwrap(), a.init()) && dfs(a, word, 0, rho, r, &states, &flexible, &primed)
        })
    })
}

/// Oracle verdicts on every non-empty word of length at most `max_len`, for
/// every domain assignment with at most `bound` elements per sort.
pub fn verdicts(a: &Automaton, bound: usize, max_len: usize) -> Vec<(Word, bool)> {
    let sorts = a.state_signature().union(a.word_signature()).unwrap();
    let mut out = Vec::new();
    for d in domain_assignments(&sorts, bound) {
        let sp = space(a.word_signature(), &d);
        let verdicts = language(a, &sp, &d, max_len);
        for (w, v) in sp.words(max_len).into_iter().zip(verdicts) {
            if !w.is_empty() {
                out.push((w, v));
            }
        }
    }
    out
}

/// Words on which `a` and `reference` disagree, and the number of words
/// checked.
pub fn disagreements(a: &Automaton, bound: usize, max_len: usize, reference: impl Fn(&Word) -> bool) -> (usize, Vec<Word>) {
    let all = verdicts(a, bound, max_len);
    let n = all.len();
    let bad = all.into_iter().filter(|(w, v)| *v != reference(w)).map(|(w, _)| w).collect();
    (n, bad)
}

/// Both automata read the same word signature; languages are compared over
/// every domain assignment of the union of their sorts, ε included.
pub fn same_language(a: &Automaton, b: &Automaton, bound: usize, max_len: usize) -> bool {
    let mut names: Vec<String> = Vec::new();
    for sig in [a.word_signature(), a.state_signature(), b.state_signature()] {
        for s in sig.sorts() {
            if !names.contains(s) {
                names.push(s.clone());
            }
        }
    }
    let sorts = Signature::new(names, vec![]).unwrap();
    domain_assignments(&sorts, bound).iter().all(|d| {
        let sp = space(a.word_signature(), d);
        language(a, &sp, d, max_len) == language(b, &sp, d, max_len)
    })
}
