//! SMT-LIB 2 scripts for unrolled automata.

use std::collections::BTreeSet;
use std::fmt::Write;

use super::unroll::{at_step, StepSymbol, UnrolledFormula};
use crate::error::{Error, Result};
use crate::formula::{Formula, Term};
use crate::signature::{Signature, Symbol};
use crate::theory::Theory;

fn quote(name: &str) -> String {
    format!("|{name}|")
}

fn sort_name(sort: &str, theory: &Theory) -> String {
    theory.smt.sorts.get(sort).cloned().unwrap_or_else(|| quote(sort))
}

fn symbol_head(name: &str, theory: &Theory) -> String {
    theory.smt.symbols.get(name).cloned().unwrap_or_else(|| quote(name))
}

fn term(t: &Term, theory: &Theory, out: &mut String) {
    match t {
        Term::Var(v) => {
            out.push('?');
            out.push_str(&v.name);
        }
        Term::App(f, args) if args.is_empty() => out.push_str(&symbol_head(f, theory)),
        Term::App(f, args) => {
            out.push('(');
            out.push_str(&symbol_head(f, theory));
            for a in args {
                out.push(' ');
                term(a, theory, out);
            }
            out.push(')');
        }
    }
}

fn nary(op: &str, fs: &[&Formula], theory: &Theory, out: &mut String) {
    out.push('(');
    out.push_str(op);
    for f in fs {
        out.push(' ');
        formula(f, theory, out);
    }
    out.push(')');
}

/// SMT-LIB text of a first-order formula. Variables print as `?x`, which no
/// declared name can be.
pub fn formula(phi: &Formula, theory: &Theory, out: &mut String) {
    use Formula as F;
    match phi {
        F::True => out.push_str("true"),
        F::False => out.push_str("false"),
        F::Atom(p, args) => term(&Term::App(p.clone(), args.clone()), theory, out),
        F::Eq(a, b) => {
            out.push_str("(= ");
            term(a, theory, out);
            out.push(' ');
            term(b, theory, out);
            out.push(')');
        }
        F::Not(x) => nary("not", &[x], theory, out),
        F::And(fs) if fs.is_empty() => out.push_str("true"),
        F::Or(fs) if fs.is_empty() => out.push_str("false"),
        F::And(fs) => nary("and", &fs.iter().collect::<Vec<_>>(), theory, out),
        F::Or(fs) => nary("or", &fs.iter().collect::<Vec<_>>(), theory, out),
        F::Implies(a, b) => nary("=>", &[a, b], theory, out),
        F::Iff(a, b) => nary("=", &[a, b], theory, out),
        F::Exists(v, b) | F::Forall(v, b) => {
            let q = if matches!(phi, F::Exists(..)) { "exists" } else { "forall" };
            let _ = write!(out, "({q} ((?{} {})) ", v.name, sort_name(&v.sort, theory));
            formula(b, theory, out);
            out.push(')');
        }
        _ => unreachable!("unrolled formulas are first-order"),
    }
}

fn declaration(s: &Symbol, theory: &Theory) -> String {
    let args: Vec<String> = s.arg_sorts().iter().map(|a| sort_name(a, theory)).collect();
    let result = match s.result_sort() {
        Some(r) => sort_name(r, theory),
        None => "Bool".to_string(),
    };
    format!("(declare-fun {} ({}) {result})", quote(&s.name), args.join(" "))
}

fn mentions_flexible(phi: &Formula, sigma: &Signature) -> bool {
    phi.symbols().iter().any(|n| sigma.get(n).is_some_and(|s| !s.rigid))
}

/// Theory axioms: rigid-only axioms once, others once per step `0..=k`.
fn axiom_copies(f: &UnrolledFormula, theory: &Theory) -> Vec<Formula> {
    let (sigma, gamma) = (f.word_signature(), f.state_signature());
    let mut out = Vec::new();
    for ax in theory.axioms() {
        if mentions_flexible(ax, sigma) {
            out.extend((0..=f.k()).map(|i| at_step(ax, sigma, gamma, i)));
        } else {
            out.push(ax.clone());
        }
    }
    out
}

fn check_declarations(decls: &[StepSymbol], theory: &Theory) -> Result<()> {
    let mut seen = BTreeSet::new();
    let heads: BTreeSet<&String> = theory.smt.symbols.values().collect();
    for d in decls {
        if !seen.insert(d.symbol.name.clone()) || heads.contains(&d.symbol.name) {
            return Err(Error::Smt(format!("mangled name `{}` collides", d.symbol.name)));
        }
    }
    Ok(())
}

/// Script asserting the theory copies and the unrolled formula, followed by
/// the raw assertions in `extra`.
pub fn emit_smtlib_with(f: &UnrolledFormula, theory: &Theory, extra: &[String]) -> Result<String> {
    let (sigma, gamma) = (f.word_signature(), f.state_signature());
    for s in sigma.symbols().iter().chain(gamma.symbols()) {
        if theory.is_interpreted(&s.name) && !s.rigid {
            return Err(Error::Smt(format!("interpreted symbol `{}` is not rigid", s.name)));
        }
    }
    let axioms = axiom_copies(f, theory);
    // Θᵏ mentions the word symbols of step k, which the formula never does.
    let extra_word_step = theory.axioms().iter().any(|a| mentions_flexible(a, sigma));
    let decls: Vec<StepSymbol> = f
        .symbols(extra_word_step)
        .into_iter()
        .filter(|d| !theory.is_interpreted(&d.base))
        .collect();
    check_declarations(&decls, theory)?;

    let mut out = String::new();
    let _ = writeln!(out, "; unrolling depth {}{}", f.k(), if f.with_final() { ", with final condition" } else { "" });
    let _ = writeln!(out, "(set-logic {})", theory.smt.logic);
    out.push_str("(set-option :produce-models true)\n");
    let mut sorts: Vec<&String> = Vec::new();
    for s in sigma.sorts().iter().chain(gamma.sorts()) {
        if !theory.smt.sorts.contains_key(s) && !sorts.contains(&s) {
            sorts.push(s);
        }
    }
    for s in sorts {
        let _ = writeln!(out, "(declare-sort {} 0)", quote(s));
    }
    for d in &decls {
        out.push_str(&declaration(&d.symbol, theory));
        out.push('\n');
    }
    for ax in &axioms {
        out.push_str("(assert ");
        formula(ax, theory, &mut out);
        out.push_str(")\n");
    }
    out.push_str("(assert\n (and");
    for c in f.conjuncts() {
        out.push_str("\n  ");
        formula(c, theory, &mut out);
    }
    out.push_str("))\n");
    for e in extra {
        let _ = writeln!(out, "(assert {e})");
    }
    out.push_str("(check-sat)\n(get-model)\n(exit)\n");
    Ok(out)
}

pub fn emit_smtlib(f: &UnrolledFormula, theory: &Theory) -> Result<String> {
    emit_smtlib_with(f, theory, &[])
}
