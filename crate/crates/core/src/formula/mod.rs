//! FOLTL syntax trees.

mod canon;
mod parse;
mod print;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::signature::Signature;

pub use canon::{alpha_key, AlphaKey};
pub use parse::{parse_formula, parse_formula_with_vars, parse_term, ParseMode, Parser};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub name: String,
    pub sort: String,
}

impl Var {
    pub fn new(name: impl Into<String>, sort: impl Into<String>) -> Self {
        Var {
            name: name.into(),
            sort: sort.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Var),
    /// Constant (no arguments) or function application.
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: &str, sort: &str) -> Term {
        Term::Var(Var::new(name, sort))
    }

    pub fn constant(name: &str) -> Term {
        Term::App(name.to_string(), Vec::new())
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(name.to_string(), args)
    }

    fn collect_vars(&self, out: &mut Vec<Var>, bound: &[&Var]) {
        match self {
            Term::Var(v) => {
                if !bound.iter().any(|b| b.name == v.name) && !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out, bound)),
        }
    }

    fn collect_symbols<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        if let Term::App(f, args) = self {
            out.insert(f);
            args.iter().for_each(|a| a.collect_symbols(out));
        }
    }

    fn rename_symbols(&self, mapping: &BTreeMap<String, String>) -> Term {
        match self {
            Term::Var(v) => Term::Var(v.clone()),
            Term::App(f, args) => Term::App(
                mapping.get(f).unwrap_or(f).clone(),
                args.iter().map(|a| a.rename_symbols(mapping)).collect(),
            ),
        }
    }

    pub fn substitute(&self, subst: &BTreeMap<String, Term>) -> Term {
        match self {
            Term::Var(v) => subst.get(&v.name).cloned().unwrap_or_else(|| self.clone()),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.substitute(subst)).collect()),
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }
}

type B = Box<Formula>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Atom(String, Vec<Term>),
    Eq(Term, Term),
    Not(B),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(B, B),
    Iff(B, B),
    Exists(Var, B),
    Forall(Var, B),
    Next(B),
    WeakNext(B),
    Yesterday(B),
    /// Weak yesterday, written `Z` or `wY`.
    WeakYesterday(B),
    Until(B, B),
    Release(B, B),
    Since(B, B),
    Triggered(B, B),
}

use Formula as F;

/// Kind of a one-step temporal guard.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Guard {
    X,
    WX,
    Y,
    Z,
}

impl Guard {
    pub fn is_future(self) -> bool {
        matches!(self, Guard::X | Guard::WX)
    }

    pub fn wrap(self, f: Formula) -> Formula {
        match self {
            Guard::X => F::Next(Box::new(f)),
            Guard::WX => F::WeakNext(Box::new(f)),
            Guard::Y => F::Yesterday(Box::new(f)),
            Guard::Z => F::WeakYesterday(Box::new(f)),
        }
    }
}

impl Formula {
    pub fn atom(name: &str, args: Vec<Term>) -> Formula {
        F::Atom(name.to_string(), args)
    }

    pub fn prop(name: &str) -> Formula {
        F::Atom(name.to_string(), Vec::new())
    }

    pub fn eq(a: Term, b: Term) -> Formula {
        F::Eq(a, b)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        F::Not(Box::new(f))
    }

    /// Conjunction; empty yields `true`, a single conjunct is returned as is.
    pub fn and(mut fs: Vec<Formula>) -> Formula {
        match fs.len() {
            0 => F::True,
            1 => fs.pop().unwrap(),
            _ => F::And(fs),
        }
    }

    pub fn or(mut fs: Vec<Formula>) -> Formula {
        match fs.len() {
            0 => F::False,
            1 => fs.pop().unwrap(),
            _ => F::Or(fs),
        }
    }

    pub fn and2(a: Formula, b: Formula) -> Formula {
        F::and(vec![a, b])
    }

    pub fn or2(a: Formula, b: Formula) -> Formula {
        F::or(vec![a, b])
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        F::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        F::Iff(Box::new(a), Box::new(b))
    }

    pub fn exists(v: Var, f: Formula) -> Formula {
        F::Exists(v, Box::new(f))
    }

    pub fn forall(v: Var, f: Formula) -> Formula {
        F::Forall(v, Box::new(f))
    }

    /// `∀v₁…∀vₙ f`, the identity for an empty prefix.
    pub fn forall_all(vars: &[Var], f: Formula) -> Formula {
        vars.iter().rev().fold(f, |acc, v| F::forall(v.clone(), acc))
    }

    pub fn exists_all(vars: &[Var], f: Formula) -> Formula {
        vars.iter().rev().fold(f, |acc, v| F::exists(v.clone(), acc))
    }

    pub fn next(f: Formula) -> Formula {
        F::Next(Box::new(f))
    }

    pub fn weak_next(f: Formula) -> Formula {
        F::WeakNext(Box::new(f))
    }

    pub fn yesterday(f: Formula) -> Formula {
        F::Yesterday(Box::new(f))
    }

    pub fn weak_yesterday(f: Formula) -> Formula {
        F::WeakYesterday(Box::new(f))
    }

    pub fn until(a: Formula, b: Formula) -> Formula {
        F::Until(Box::new(a), Box::new(b))
    }

    pub fn release(a: Formula, b: Formula) -> Formula {
        F::Release(Box::new(a), Box::new(b))
    }

    pub fn since(a: Formula, b: Formula) -> Formula {
        F::Since(Box::new(a), Box::new(b))
    }

    pub fn triggered(a: Formula, b: Formula) -> Formula {
        F::Triggered(Box::new(a), Box::new(b))
    }

    pub fn guard(&self) -> Option<(Guard, &Formula)> {
        match self {
            F::Next(f) => Some((Guard::X, f)),
            F::WeakNext(f) => Some((Guard::WX, f)),
            F::Yesterday(f) => Some((Guard::Y, f)),
            F::WeakYesterday(f) => Some((Guard::Z, f)),
            _ => None,
        }
    }

    pub fn is_temporal_node(&self) -> bool {
        matches!(
            self,
            F::Next(_)
                | F::WeakNext(_)
                | F::Yesterday(_)
                | F::WeakYesterday(_)
                | F::Until(..)
                | F::Release(..)
                | F::Since(..)
                | F::Triggered(..)
        )
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            F::True | F::False | F::Atom(..) | F::Eq(..) => vec![],
            F::Not(f)
            | F::Exists(_, f)
            | F::Forall(_, f)
            | F::Next(f)
            | F::WeakNext(f)
            | F::Yesterday(f)
            | F::WeakYesterday(f) => vec![f],
            F::And(fs) | F::Or(fs) => fs.iter().collect(),
            F::Implies(a, b)
            | F::Iff(a, b)
            | F::Until(a, b)
            | F::Release(a, b)
            | F::Since(a, b)
            | F::Triggered(a, b) => vec![a, b],
        }
    }

    /// Rebuilds this node with every immediate subformula mapped by `f`.
    pub fn map_children(&self, mut f: impl FnMut(&Formula) -> Formula) -> Formula {
        let mut b = |x: &Formula| Box::new(f(x));
        match self {
            F::True | F::False | F::Atom(..) | F::Eq(..) => self.clone(),
            F::Not(x) => F::Not(b(x)),
            F::Exists(v, x) => F::Exists(v.clone(), b(x)),
            F::Forall(v, x) => F::Forall(v.clone(), b(x)),
            F::Next(x) => F::Next(b(x)),
            F::WeakNext(x) => F::WeakNext(b(x)),
            F::Yesterday(x) => F::Yesterday(b(x)),
            F::WeakYesterday(x) => F::WeakYesterday(b(x)),
            F::And(fs) => F::And(fs.iter().map(|x| *b(x)).collect()),
            F::Or(fs) => F::Or(fs.iter().map(|x| *b(x)).collect()),
            F::Implies(x, y) => {
                let x = b(x);
                F::Implies(x, b(y))
            }
            F::Iff(x, y) => {
                let x = b(x);
                F::Iff(x, b(y))
            }
            F::Until(x, y) => {
                let x = b(x);
                F::Until(x, b(y))
            }
            F::Release(x, y) => {
                let x = b(x);
                F::Release(x, b(y))
            }
            F::Since(x, y) => {
                let x = b(x);
                F::Since(x, b(y))
            }
            F::Triggered(x, y) => {
                let x = b(x);
                F::Triggered(x, b(y))
            }
        }
    }

    /// Preorder walk.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a Formula)) {
        visit(self);
        for c in self.children() {
            c.walk(visit);
        }
    }

    pub fn any(&self, pred: &mut impl FnMut(&Formula) -> bool) -> bool {
        pred(self) || self.children().into_iter().any(|c| c.any(pred))
    }

    fn collect_free<'a>(&'a self, out: &mut Vec<Var>, bound: &mut Vec<&'a Var>) {
        match self {
            F::Atom(_, args) => args.iter().for_each(|a| a.collect_vars(out, bound)),
            F::Eq(a, b) => {
                a.collect_vars(out, bound);
                b.collect_vars(out, bound);
            }
            F::Exists(v, body) | F::Forall(v, body) => {
                bound.push(v);
                body.collect_free(out, bound);
                bound.pop();
            }
            _ => {
                for c in self.children() {
                    c.collect_free(out, bound);
                }
            }
        }
    }

    /// Free variables in order of first occurrence in a left-to-right
    /// preorder walk.
    pub fn free_vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.collect_free(&mut out, &mut Vec::new());
        out
    }

    pub fn is_sentence(&self) -> bool {
        self.free_vars().is_empty()
    }

    /// Names of all symbols occurring in the formula.
    pub fn symbols(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.walk(&mut |f| match f {
            F::Atom(p, args) => {
                out.insert(p.as_str());
                args.iter().for_each(|a| a.collect_symbols(&mut out));
            }
            F::Eq(a, b) => {
                a.collect_symbols(&mut out);
                b.collect_symbols(&mut out);
            }
            _ => {}
        });
        out
    }

    pub fn is_first_order(&self) -> bool {
        !self.any(&mut |f| f.is_temporal_node())
    }

    pub fn is_pure_past(&self) -> bool {
        !self.any(&mut |f| matches!(f, F::Next(_) | F::WeakNext(_) | F::Until(..) | F::Release(..)))
    }

    /// Every subformula rooted at a temporal operator has at most one free
    /// variable.
    pub fn is_monodic(&self) -> bool {
        !self.any(&mut |f| f.is_temporal_node() && f.free_vars().len() > 1)
    }

    pub fn has_equality(&self) -> bool {
        self.any(&mut |f| matches!(f, F::Eq(..)))
    }

    /// Negations only in front of atoms and equalities; no `->`/`<->`.
    pub fn is_nnf(&self) -> bool {
        !self.any(&mut |f| match f {
            F::Not(x) => !matches!(**x, F::Atom(..) | F::Eq(..)),
            F::Implies(..) | F::Iff(..) => true,
            _ => false,
        })
    }

    pub fn require_first_order(&self) -> Result<()> {
        if self.is_first_order() {
            Ok(())
        } else {
            Err(Error::Temporal(self.to_string()))
        }
    }

    pub fn require_sentence(&self) -> Result<()> {
        let free = self.free_vars();
        if free.is_empty() {
            Ok(())
        } else {
            Err(Error::NotSentence(
                free.iter().map(|v| v.name.as_str()).collect::<Vec<_>>().join(", "),
            ))
        }
    }

    /// Replaces symbol names; bound variables are untouched.
    pub fn rename_symbols(&self, mapping: &BTreeMap<String, String>) -> Formula {
        match self {
            F::Atom(p, args) => F::Atom(
                mapping.get(p).unwrap_or(p).clone(),
                args.iter().map(|a| a.rename_symbols(mapping)).collect(),
            ),
            F::Eq(a, b) => F::Eq(a.rename_symbols(mapping), b.rename_symbols(mapping)),
            _ => self.map_children(|c| c.rename_symbols(mapping)),
        }
    }

    /// Substitutes terms for free variables. Binders are assumed not to
    /// capture variables of the substituted terms.
    pub fn substitute(&self, subst: &BTreeMap<String, Term>) -> Formula {
        match self {
            F::Atom(p, args) => F::Atom(p.clone(), args.iter().map(|a| a.substitute(subst)).collect()),
            F::Eq(a, b) => F::Eq(a.substitute(subst), b.substitute(subst)),
            F::Exists(v, body) | F::Forall(v, body) if subst.contains_key(&v.name) => {
                let mut inner = subst.clone();
                inner.remove(&v.name);
                self.map_children(|c| c.substitute(&inner))
            }
            _ => self.map_children(|c| c.substitute(subst)),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        let mut n = 0;
        self.walk(&mut |_| n += 1);
        n
    }
}

/// Checks that every symbol is declared in `sig` with the shape and sorts
/// it is used at, and that equalities relate terms of one sort.
pub fn check_sorts(phi: &Formula, sig: &Signature) -> Result<()> {
    fn term_sort(t: &Term, sig: &Signature) -> Result<String> {
        match t {
            Term::Var(v) => Ok(v.sort.clone()),
            Term::App(f, args) => {
                let sym = sig.get(f).ok_or_else(|| Error::UnknownSymbol(f.clone()))?;
                let result = sym
                    .result_sort()
                    .ok_or_else(|| Error::Signature(format!("predicate `{f}` used as a term")))?;
                check_args(f, sym.arg_sorts(), args, sig)?;
                Ok(result.to_string())
            }
        }
    }
    fn check_args(f: &str, sorts: &[String], args: &[Term], sig: &Signature) -> Result<()> {
        if sorts.len() != args.len() {
            return Err(Error::Signature(format!(
                "`{f}` expects {} arguments, found {}",
                sorts.len(),
                args.len()
            )));
        }
        for (i, (s, a)) in sorts.iter().zip(args).enumerate() {
            let found = term_sort(a, sig)?;
            if *s != found {
                return Err(Error::SortMismatch {
                    context: format!("argument {} of `{f}`", i + 1),
                    expected: s.clone(),
                    found,
                });
            }
        }
        Ok(())
    }
    let mut result = Ok(());
    phi.walk(&mut |f| {
        if result.is_err() {
            return;
        }
        result = match f {
            F::Atom(p, args) => match sig.get(p) {
                Some(sym) if sym.is_predicate() => check_args(p, sym.arg_sorts(), args, sig),
                Some(_) => Err(Error::Signature(format!("`{p}` is not a predicate"))),
                None => Err(Error::UnknownSymbol(p.clone())),
            },
            F::Eq(a, b) => term_sort(a, sig).and_then(|x| {
                let y = term_sort(b, sig)?;
                if x == y {
                    Ok(())
                } else {
                    Err(Error::SortMismatch {
                        context: format!("equality `{f}`"),
                        expected: x,
                        found: y,
                    })
                }
            }),
            F::Exists(v, _) | F::Forall(v, _) if !sig.has_sort(&v.sort) => {
                Err(Error::UnknownSort(v.sort.clone()))
            }
            _ => Ok(()),
        };
    });
    result
}

/// Replaces symbols of `phi` per `mapping`.
///
/// The mapping must be injective on the symbols occurring in `phi`, and no
/// target may coincide with an occurring symbol that is left unrenamed.
pub fn rename_formula(phi: &Formula, mapping: &BTreeMap<String, String>) -> Result<Formula> {
    let used = phi.symbols();
    let mut targets: BTreeMap<&str, &str> = BTreeMap::new();
    for s in &used {
        if let Some(t) = mapping.get(*s) {
            if let Some(prev) = targets.insert(t.as_str(), s) {
                return Err(Error::RenameCollision(format!(
                    "`{prev}` and `{s}` both map to `{t}`"
                )));
            }
        }
    }
    for s in &used {
        if !mapping.contains_key(*s) {
            if let Some(src) = targets.get(s) {
                return Err(Error::RenameCollision(format!(
                    "`{src}` renamed onto the existing symbol `{s}`"
                )));
            }
        }
    }
    Ok(phi.rename_symbols(mapping))
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print_formula(self))
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print::print_term(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Var {
        Var::new("x", "S")
    }

    #[test]
    fn rename_replaces_every_occurrence() {
        let phi = F::and2(F::atom("p", vec![Term::Var(x())]), F::prop("q"));
        let m = BTreeMap::from([("p".to_string(), "p'".to_string())]);
        assert_eq!(
            rename_formula(&phi, &m).unwrap(),
            F::and2(F::atom("p'", vec![Term::Var(x())]), F::prop("q"))
        );
    }

    #[test]
    fn identity_rename_is_structural_identity() {
        let phi = F::exists(x(), F::atom("p", vec![Term::Var(x())]));
        assert_eq!(rename_formula(&phi, &BTreeMap::new()).unwrap(), phi);
        let ident = BTreeMap::from([("p".to_string(), "p".to_string())]);
        assert_eq!(rename_formula(&phi, &ident).unwrap(), phi);
    }

    #[test]
    fn rename_onto_unrenamed_symbol_collides() {
        let phi = F::and2(F::prop("p"), F::prop("q"));
        let m = BTreeMap::from([("p".to_string(), "q".to_string())]);
        assert!(matches!(rename_formula(&phi, &m), Err(Error::RenameCollision(_))));
        let m = BTreeMap::from([
            ("p".to_string(), "r".to_string()),
            ("q".to_string(), "r".to_string()),
        ]);
        assert!(matches!(rename_formula(&phi, &m), Err(Error::RenameCollision(_))));
    }

    #[test]
    fn free_vars_in_first_occurrence_order() {
        let y = Var::new("y", "S");
        let phi = F::and2(
            F::atom("r", vec![Term::Var(y.clone()), Term::Var(x())]),
            F::exists(y.clone(), F::atom("p", vec![Term::Var(y.clone())])),
        );
        assert_eq!(phi.free_vars(), vec![y, x()]);
    }

    #[test]
    fn monodic_and_pure_past_scans() {
        let y = Var::new("y", "S");
        let px = F::atom("p", vec![Term::Var(x())]);
        assert!(F::forall(x(), F::next(px.clone())).is_monodic());
        let rxy = F::atom("r", vec![Term::Var(x()), Term::Var(y.clone())]);
        assert!(!F::forall(x(), F::forall(y, F::next(rxy))).is_monodic());
        let past = F::and2(F::yesterday(F::prop("p")), F::since(F::prop("q"), F::prop("r")));
        assert!(past.is_pure_past());
        assert!(!F::next(F::prop("p")).is_pure_past());
    }
}
