//! Canonical concrete syntax. Output is byte-stable and re-parses to the same
//! tree.

use super::{Formula as F, Formula, Term};

// Binding strength; higher binds tighter.
const IFF: u8 = 0;
const IMPLIES: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const BINARY_TEMPORAL: u8 = 4;
const UNARY: u8 = 5;
const ATOM: u8 = 6;

pub(crate) fn print_term(t: &Term) -> String {
    let mut out = String::new();
    term(t, &mut out);
    out
}

pub(crate) fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    formula(f, IFF, true, &mut out);
    out
}

fn term(t: &Term, out: &mut String) {
    match t {
        Term::Var(v) => out.push_str(&v.name),
        Term::App(f, args) => {
            out.push_str(f);
            if !args.is_empty() {
                out.push('(');
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    term(a, out);
                }
                out.push(')');
            }
        }
    }
}

fn strength(f: &Formula) -> u8 {
    match f {
        F::Iff(..) => IFF,
        F::Implies(..) => IMPLIES,
        F::Or(fs) if fs.len() > 1 => OR,
        F::And(fs) if fs.len() > 1 => AND,
        F::Or(fs) | F::And(fs) => fs.first().map_or(ATOM, strength),
        F::Until(..) | F::Release(..) | F::Since(..) | F::Triggered(..) => BINARY_TEMPORAL,
        F::Not(x) if matches!(**x, F::Eq(..)) => ATOM,
        F::Not(_) | F::Next(_) | F::WeakNext(_) | F::Yesterday(_) | F::WeakYesterday(_) => UNARY,
        // Quantifiers extend to the right; they never bind tighter than the
        // context unless they are the whole group.
        F::Exists(..) | F::Forall(..) => IFF,
        F::True | F::False | F::Atom(..) | F::Eq(..) => ATOM,
    }
}

/// Prints `f` in a context requiring strength at least `min`. `open` marks a
/// position where a quantifier may extend to the right unparenthesized.
fn formula(f: &Formula, min: u8, open: bool, out: &mut String) {
    let quantifier = matches!(f, F::Exists(..) | F::Forall(..));
    let needs_parens = if quantifier { !open } else { strength(f) < min };
    if needs_parens {
        out.push('(');
        formula(f, IFF, true, out);
        out.push(')');
        return;
    }
    match f {
        F::True => out.push_str("true"),
        F::False => out.push_str("false"),
        F::Atom(p, args) => term(&Term::App(p.clone(), args.clone()), out),
        F::Eq(a, b) => {
            term(a, out);
            out.push_str(" = ");
            term(b, out);
        }
        F::Not(x) => {
            if let F::Eq(a, b) = &**x {
                term(a, out);
                out.push_str(" != ");
                term(b, out);
            } else {
                out.push('!');
                formula(x, UNARY, false, out);
            }
        }
        F::And(fs) | F::Or(fs) if fs.is_empty() => {
            out.push_str(if matches!(f, F::And(_)) { "true" } else { "false" })
        }
        F::And(fs) | F::Or(fs) if fs.len() == 1 => formula(&fs[0], min, open, out),
        F::And(fs) => nary(fs, " & ", AND, out),
        F::Or(fs) => nary(fs, " | ", OR, out),
        F::Implies(a, b) => {
            formula(a, IMPLIES + 1, false, out);
            out.push_str(" -> ");
            formula(b, IMPLIES, false, out);
        }
        F::Iff(a, b) => {
            formula(a, IFF + 1, false, out);
            out.push_str(" <-> ");
            formula(b, IFF + 1, false, out);
        }
        F::Exists(v, body) | F::Forall(v, body) => {
            out.push_str(if matches!(f, F::Exists(..)) { "exists " } else { "forall " });
            out.push_str(&v.name);
            out.push(':');
            out.push_str(&v.sort);
            out.push_str(". ");
            formula(body, IFF, true, out);
        }
        F::Next(x) => unary("X ", x, out),
        F::WeakNext(x) => unary("wX ", x, out),
        F::Yesterday(x) => unary("Y ", x, out),
        F::WeakYesterday(x) => unary("Z ", x, out),
        F::Until(a, b) => binary(a, " U ", b, out),
        F::Release(a, b) => binary(a, " R ", b, out),
        F::Since(a, b) => binary(a, " S ", b, out),
        F::Triggered(a, b) => binary(a, " T ", b, out),
    }
}

fn nary(fs: &[Formula], sep: &str, level: u8, out: &mut String) {
    for (i, x) in fs.iter().enumerate() {
        if i > 0 {
            out.push_str(sep);
        }
        formula(x, level + 1, false, out);
    }
}

fn unary(op: &str, x: &Formula, out: &mut String) {
    out.push_str(op);
    formula(x, UNARY, false, out);
}

fn binary(a: &Formula, op: &str, b: &Formula, out: &mut String) {
    formula(a, BINARY_TEMPORAL + 1, false, out);
    out.push_str(op);
    formula(b, BINARY_TEMPORAL, false, out);
}
