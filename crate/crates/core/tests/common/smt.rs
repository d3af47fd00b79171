//! Automata with arithmetic data and their solver theories.

use std::time::Duration;

use foaut::emptiness::Solver;
use foaut::{Automaton, Signature, Symbol, Theory};

use super::props;

pub fn solver() -> Solver {
    Solver::from_env(Duration::from_secs(20)).unwrap()
}

fn arithmetic(logic: &str, sigma: &Signature) -> Theory {
    let mut t = Theory::empty();
    t.smt.logic = logic.into();
    t.smt.sorts.insert("Int".into(), "Int".into());
    let map = [
        ("zero", "0"),
        ("one", "1"),
        ("three", "3"),
        ("add", "+"),
        ("mul", "*"),
        ("div", "div"),
        ("gt", ">"),
    ];
    for (k, v) in map {
        if sigma.contains(k) {
            t.smt.symbols.insert(k.into(), v.into());
        }
    }
    t
}

fn int_sigma(extra: &[Symbol]) -> Signature {
    let mut syms = vec![
        Symbol::constant("c", "Int", false),
        Symbol::constant("zero", "Int", true),
        Symbol::constant("one", "Int", true),
        Symbol::function("add", &["Int", "Int"], "Int", true),
    ];
    syms.extend_from_slice(extra);
    Signature::new(["Int"], syms).unwrap()
}

fn int_state(names: &[&str]) -> Signature {
    Signature::new(["Int"], names.iter().map(|n| Symbol::constant(n, "Int", false)).collect()).unwrap()
}

/// Running average of `c` is zero at the end of the word.
pub fn average() -> (Automaton, Theory) {
    let sigma = int_sigma(&[
        Symbol::function("mul", &["Int", "Int"], "Int", true),
        Symbol::function("div", &["Int", "Int"], "Int", true),
    ]);
    let a = Automaton::parse(
        sigma.clone(),
        int_state(&["a", "n"]),
        "n = zero",
        "n' = add(n, one) & a' = div(add(mul(n, a), c), add(n, one))",
        "a = zero",
    )
    .unwrap();
    (a, arithmetic("QF_NIA", &sigma))
}

/// Exactly three letters, each with a positive `c`.
pub fn counter() -> (Automaton, Theory) {
    let sigma = int_sigma(&[
        Symbol::constant("three", "Int", true),
        Symbol::predicate("gt", &["Int", "Int"], true),
    ]);
    let a = Automaton::parse(
        sigma.clone(),
        int_state(&["n"]),
        "n = zero",
        "n' = add(n, one) & gt(c, zero)",
        "n = three",
    )
    .unwrap();
    (a, arithmetic("QF_LIA", &sigma))
}

/// `p` holds initially and forever, but must fail at the end.
pub fn p_invariant() -> Automaton {
    Automaton::parse(props(&[]), props(&["p"]), "p", "p & p'", "!p").unwrap()
}

pub fn p_released() -> Automaton {
    Automaton::parse(props(&[]), props(&["p"]), "p", "true", "!p").unwrap()
}

pub fn finite_theory() -> Theory {
    let mut t = Theory::empty();
    t.smt.logic = "QF_UF".into();
    t
}
