//! Sentences used by the encoding tests, each with its own small word
//! signature so that exhaustive word spaces stay small.

use foaut::{parse_formula, Formula, Signature, Symbol};

pub struct Entry {
    pub text: &'static str,
    pub sigma: fn() -> Signature,
}

impl Entry {
    pub fn formula(&self) -> Formula {
        parse_formula(self.text, &(self.sigma)()).unwrap()
    }
}

pub fn pq() -> Signature {
    Signature::new(
        Vec::<String>::new(),
        vec![Symbol::proposition("p", false), Symbol::proposition("q", false)],
    )
    .unwrap()
}

pub fn unary() -> Signature {
    Signature::new(["S"], vec![Symbol::predicate("a", &["S"], false)]).unwrap()
}

pub fn binary() -> Signature {
    Signature::new(["S"], vec![Symbol::predicate("e", &["S", "S"], false)]).unwrap()
}

pub fn rigid_const() -> Signature {
    Signature::new(
        ["S"],
        vec![Symbol::predicate("a", &["S"], false), Symbol::constant("c", "S", true)],
    )
    .unwrap()
}

pub fn constants() -> Signature {
    Signature::new(
        ["S"],
        vec![
            Symbol::predicate("a", &["S"], false),
            Symbol::constant("c", "S", true),
            Symbol::constant("d", "S", false),
        ],
    )
    .unwrap()
}

pub fn rigid_pred() -> Signature {
    Signature::new(
        ["S"],
        vec![Symbol::predicate("r", &["S"], true), Symbol::predicate("a", &["S"], false)],
    )
    .unwrap()
}

pub fn mixed() -> Signature {
    Signature::new(
        ["S"],
        vec![Symbol::proposition("p", false), Symbol::predicate("a", &["S"], false)],
    )
    .unwrap()
}

const fn e(text: &'static str, sigma: fn() -> Signature) -> Entry {
    Entry { text, sigma }
}

/// Sentences for the future-rooted encoding: every temporal operator, both
/// quantifiers, equality, unary and binary predicates, rigid and non-rigid
/// symbols.
pub const FOLTL: &[Entry] = &[
    e("X p", pq),
    e("wX p", pq),
    e("p U q", pq),
    e("p R q", pq),
    e("Y p", pq),
    e("Z p", pq),
    e("p S q", pq),
    e("p T q", pq),
    e("true U p", pq),
    e("false R p", pq),
    e("X (p S q)", pq),
    e("X Y p", pq),
    e("wX false", pq),
    e("(p U q) & X Z !p", pq),
    e("forall x:S. a(x)", unary),
    e("exists x:S. X a(x)", unary),
    e("forall x:S. (a(x) -> X a(x))", unary),
    e("forall x:S. (true U a(x))", unary),
    e("exists x:S. (false R a(x))", unary),
    e("exists x:S. Y a(x)", unary),
    e("exists x:S. X (a(x) & Z !a(x))", unary),
    e("forall x:S. exists y:S. e(x, y)", binary),
    e("forall x:S. forall y:S. (e(x, y) -> x = y)", binary),
    e("exists x:S. X exists y:S. (e(x, y) & x != y)", binary),
    e("X a(c)", rigid_const),
    e("a(c) U (forall x:S. a(x))", rigid_const),
    e("exists x:S. (x = d & X a(x))", constants),
    e("wX (d = c)", constants),
    e("forall x:S. (r(x) -> (true U a(x)))", rigid_pred),
    e("(exists x:S. a(x)) T p", mixed),
];

/// Pure-past sentences.
pub const PURE_PAST: &[Entry] = &[
    e("Y p", pq),
    e("Z p", pq),
    e("p S q", pq),
    e("p T q", pq),
    e("Z false", pq),
    e("true S p", pq),
    e("Y Y p", pq),
    e("!(true S (p & q))", pq),
    e("exists x:S. Y a(x)", unary),
    e("forall x:S. Z a(x)", unary),
    e("exists x:S. (a(x) S !a(x))", unary),
    e("Y (exists x:S. (a(x) & Z !a(x)))", unary),
    e("forall x:S. (Y e(x, x) -> exists y:S. e(x, y))", binary),
    e("Y a(c) & Z (d = c)", constants),
    e("forall x:S. (r(x) -> (true S a(x)))", rigid_pred),
    e("(exists x:S. a(x)) S p", mixed),
];
