//! Monadic automata used to exercise the finite-control abstraction.

use foaut::compile::encode_foltl;
use foaut::{parse_formula, Automaton, Signature, Symbol};

use super::{auto, one_sort};

/// Reachability with the source and target given as unary predicates, so
/// that the word signature is relational.
pub fn reachability() -> Automaton {
    auto(
        &one_sort(vec![
            Symbol::predicate("R", &["S", "S"], false),
            Symbol::predicate("src", &["S"], false),
            Symbol::predicate("dst", &["S"], false),
        ]),
        &one_sort(vec![Symbol::predicate("P", &["S"], false)]),
        "true",
        "(forall x:S. (src(x) -> P(x))) & (forall x:S. forall y:S. (P(x) & R(x,y) -> P(y))) & (forall x:S. (dst(x) -> !P(x)))",
        "true",
    )
}

fn unary_a() -> Signature {
    one_sort(vec![Symbol::predicate("a", &["S"], false)])
}

fn state_q() -> Signature {
    one_sort(vec![Symbol::predicate("Q", &["S"], false)])
}

/// FOLTL encoding of `∀x (p(x) → X q(x))`.
pub fn monodic_encoding() -> Automaton {
    let sigma = one_sort(vec![
        Symbol::predicate("p", &["S"], false),
        Symbol::predicate("q", &["S"], false),
    ]);
    let phi = parse_formula("forall x:S. (p(x) -> X q(x))", &sigma).unwrap();
    encode_foltl(&phi, &sigma).unwrap()
}

pub fn no_transitions() -> Automaton {
    auto(&unary_a(), &state_q(), "true", "false", "true")
}

/// Every element is `a` in some letter.
pub fn seen_all() -> Automaton {
    auto(
        &unary_a(),
        &state_q(),
        "forall x:S. !Q(x)",
        "forall x:S. (Q'(x) <-> Q(x) | a(x))",
        "forall x:S. Q(x)",
    )
}

/// Some marked element is `a` in the first letter and the mark persists.
pub fn marked_witness() -> Automaton {
    let mut gamma = state_q();
    gamma.add_symbol(Symbol::proposition("started", false)).unwrap();
    auto(
        &unary_a(),
        &gamma,
        "!started",
        "(started | exists x:S. (Q(x) & a(x))) & started'",
        "started",
    )
}

/// Every letter has an `a` element; no state is needed but one is declared.
pub fn some_a_everywhere() -> Automaton {
    auto(&unary_a(), &state_q(), "true", "exists x:S. a(x)", "true")
}

pub fn all() -> Vec<(&'static str, Automaton)> {
    vec![
        ("reachability", reachability()),
        ("monodic encoding", monodic_encoding()),
        ("no transitions", no_transitions()),
        ("seen all", seen_all()),
        ("marked witness", marked_witness()),
        ("some a everywhere", some_a_everywhere()),
    ]
}
