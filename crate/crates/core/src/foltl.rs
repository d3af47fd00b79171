//! Normal forms, closure and surrogate predicates for FOLTL formulas.

use std::collections::HashMap;

use crate::error::Result;
use crate::formula::{alpha_key, AlphaKey, Formula, Guard, Term, Var};
use crate::names;
use crate::signature::{Signature, Symbol};

use Formula as F;

pub fn is_pure_past(phi: &Formula) -> bool {
    phi.is_pure_past()
}

pub fn is_monodic(phi: &Formula) -> bool {
    phi.is_monodic()
}

/// Negation normal form: negations pushed to atoms and equalities using the
/// temporal dualities; `->` and `<->` are expanded.
pub fn nnf(phi: &Formula) -> Formula {
    pos(phi)
}

fn b(f: Formula) -> Box<Formula> {
    Box::new(f)
}

fn pos(phi: &Formula) -> Formula {
    match phi {
        F::Not(x) => neg(x),
        F::Implies(a, c) => F::or2(neg(a), pos(c)),
        F::Iff(a, c) => F::and2(F::or2(neg(a), pos(c)), F::or2(pos(a), neg(c))),
        _ => phi.map_children(pos),
    }
}

/// NNF of `¬phi`.
fn neg(phi: &Formula) -> Formula {
    match phi {
        F::True => F::False,
        F::False => F::True,
        F::Atom(..) | F::Eq(..) => F::not(phi.clone()),
        F::Not(x) => pos(x),
        F::And(fs) => F::Or(fs.iter().map(neg).collect()),
        F::Or(fs) => F::And(fs.iter().map(neg).collect()),
        F::Implies(a, c) => F::and2(pos(a), neg(c)),
        F::Iff(a, c) => F::or2(F::and2(pos(a), neg(c)), F::and2(neg(a), pos(c))),
        F::Exists(v, x) => F::Forall(v.clone(), b(neg(x))),
        F::Forall(v, x) => F::Exists(v.clone(), b(neg(x))),
        F::Next(x) => F::WeakNext(b(neg(x))),
        F::WeakNext(x) => F::Next(b(neg(x))),
        F::Yesterday(x) => F::WeakYesterday(b(neg(x))),
        F::WeakYesterday(x) => F::Yesterday(b(neg(x))),
        F::Until(x, y) => F::Release(b(neg(x)), b(neg(y))),
        F::Release(x, y) => F::Until(b(neg(x)), b(neg(y))),
        F::Since(x, y) => F::Triggered(b(neg(x)), b(neg(y))),
        F::Triggered(x, y) => F::Since(b(neg(x)), b(neg(y))),
    }
}

/// Stepped normal form of a formula in NNF.
pub fn snf(phi: &Formula) -> Formula {
    match phi {
        F::Next(_) | F::WeakNext(_) | F::Yesterday(_) | F::WeakYesterday(_) => phi.clone(),
        F::Until(a, c) => F::or2(snf(c), F::and2(snf(a), F::next(phi.clone()))),
        F::Release(a, c) => F::and2(snf(c), F::or2(snf(a), F::weak_next(phi.clone()))),
        F::Since(a, c) => F::or2(snf(c), F::and2(snf(a), F::yesterday(phi.clone()))),
        F::Triggered(a, c) => F::and2(snf(c), F::or2(snf(a), F::weak_yesterday(phi.clone()))),
        _ => phi.map_children(snf),
    }
}

/// Whether `U R S T` occur only below a one-step guard.
pub fn is_stepped(phi: &Formula) -> bool {
    match phi {
        F::Until(..) | F::Release(..) | F::Since(..) | F::Triggered(..) => false,
        _ if phi.guard().is_some() => true,
        _ => phi.children().into_iter().all(is_stepped),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureMode {
    /// Seeded with `X φ`.
    FutureRooted,
    /// Seeded with `Y φ`, for pure-past sentences.
    PastRooted,
}

/// Closure of a sentence, as a set of formulas up to alpha-equivalence.
/// Members are kept in discovery order.
#[derive(Clone, Debug)]
pub struct ClosureSet {
    members: Vec<Formula>,
    index: HashMap<AlphaKey, usize>,
}

impl ClosureSet {
    fn insert(&mut self, f: &Formula) -> bool {
        let key = alpha_key(f);
        if self.index.contains_key(&key) {
            return false;
        }
        self.index.insert(key, self.members.len());
        self.members.push(f.clone());
        true
    }

    pub fn members(&self) -> &[Formula] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.index.contains_key(&alpha_key(f))
    }

    pub fn id_of(&self, f: &Formula) -> Option<usize> {
        self.index.get(&alpha_key(f)).copied()
    }
}

/// Least set containing the seed, all subformulas, and the one-step guard
/// of every `U R S T` member.
pub fn closure(phi: &Formula, mode: ClosureMode) -> ClosureSet {
    let seed = match mode {
        ClosureMode::FutureRooted => F::next(phi.clone()),
        ClosureMode::PastRooted => F::yesterday(phi.clone()),
    };
    let mut set = ClosureSet {
        members: Vec::new(),
        index: HashMap::new(),
    };
    let mut stack = vec![seed];
    while let Some(f) = stack.pop() {
        if !set.insert(&f) {
            continue;
        }
        let mut pending: Vec<Formula> = f.children().into_iter().cloned().collect();
        match &f {
            F::Until(..) => pending.push(F::next(f.clone())),
            F::Release(..) => pending.push(F::weak_next(f.clone())),
            F::Since(..) => pending.push(F::yesterday(f.clone())),
            F::Triggered(..) => pending.push(F::weak_yesterday(f.clone())),
            _ => {}
        }
        // Reverse so that the leftmost child is explored first.
        stack.extend(pending.into_iter().rev());
    }
    set
}

/// Fresh predicate standing for a guarded closure member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surrogate {
    pub guard: Guard,
    pub name: String,
    /// Representative of the guarded formula `ψ` in `Gψ`.
    pub formula: Formula,
    /// Free variables of the representative, in canonical order.
    pub args: Vec<Var>,
}

impl Surrogate {
    pub fn symbol(&self) -> Symbol {
        let sorts: Vec<&str> = self.args.iter().map(|v| v.sort.as_str()).collect();
        Symbol::predicate(&self.name, &sorts, false)
    }

    pub fn atom(&self) -> Formula {
        F::atom(&self.name, self.args.iter().cloned().map(Term::Var).collect())
    }
}

pub fn surrogate_prefix(g: Guard) -> &'static str {
    match g {
        Guard::X => "xs",
        Guard::WX => "ws",
        Guard::Y => "ys",
        Guard::Z => "zs",
    }
}

/// Surrogates for every `Xψ`, `wXψ`, `Yψ`, `Zψ` in a closure.
#[derive(Clone, Debug, Default)]
pub struct SurrogateTable {
    entries: Vec<Surrogate>,
    index: HashMap<(Guard, AlphaKey), usize>,
}

impl SurrogateTable {
    pub fn entries(&self) -> &[Surrogate] {
        &self.entries
    }

    pub fn of_kind(&self, g: Guard) -> impl Iterator<Item = &Surrogate> {
        self.entries.iter().filter(move |s| s.guard == g)
    }

    pub fn get(&self, g: Guard, psi: &Formula) -> Option<&Surrogate> {
        self.index.get(&(g, alpha_key(psi))).map(|&i| &self.entries[i])
    }

    /// Surrogate atom for `Gψ`, applied to the free variables of this
    /// occurrence of `ψ`.
    pub fn atom_for(&self, g: Guard, psi: &Formula) -> Option<Formula> {
        let s = self.get(g, psi)?;
        Some(F::atom(&s.name, psi.free_vars().into_iter().map(Term::Var).collect()))
    }

    /// State signature holding every surrogate, over the sorts of `base`.
    pub fn signature(&self, base: &Signature) -> Result<Signature> {
        let mut sig = Signature::new(base.sorts().iter().cloned(), vec![])?;
        for s in &self.entries {
            for v in &s.args {
                sig.ensure_sort(&v.sort)?;
            }
            sig.add_symbol(s.symbol())?;
        }
        Ok(sig)
    }
}

pub fn surrogate_table(cl: &ClosureSet) -> SurrogateTable {
    let mut table = SurrogateTable::default();
    for m in cl.members() {
        let Some((g, psi)) = m.guard() else { continue };
        let key = (g, alpha_key(psi));
        if table.index.contains_key(&key) {
            continue;
        }
        let digest = key.1.digest();
        let name = format!("{}{}{}", surrogate_prefix(g), names::FRESH, &digest[..10]);
        table.index.insert(key, table.entries.len());
        table.entries.push(Surrogate {
            guard: g,
            name,
            formula: psi.clone(),
            args: psi.free_vars(),
        });
    }
    table
}

/// How surrogates replace guards in [`snf_surrogate_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Priming {
    /// Every guard by its unprimed surrogate.
    Unprimed,
    /// Every guard by its primed surrogate.
    Primed,
    /// Future guards by primed, past guards by unprimed surrogates: the
    /// reading for a formula evaluated at the letter between the current
    /// and the next state.
    Stepped,
}

/// `snf(ψ)` with every one-step guard replaced by its surrogate atom,
/// uniformly primed or unprimed.
pub fn snf_surrogate(psi: &Formula, table: &SurrogateTable, primed: bool) -> Formula {
    snf_surrogate_with(psi, table, if primed { Priming::Primed } else { Priming::Unprimed })
}

pub fn snf_surrogate_with(psi: &Formula, table: &SurrogateTable, priming: Priming) -> Formula {
    replace_guards(&snf(psi), table, priming)
}

fn replace_guards(f: &Formula, table: &SurrogateTable, priming: Priming) -> Formula {
    if let Some((g, inner)) = f.guard() {
        let atom = table
            .atom_for(g, inner)
            .expect("every guard of a closure member has a surrogate");
        let prime = match priming {
            Priming::Unprimed => false,
            Priming::Primed => true,
            Priming::Stepped => g.is_future(),
        };
        return if prime {
            match atom {
                F::Atom(n, args) => F::Atom(names::primed(&n), args),
                _ => unreachable!(),
            }
        } else {
            atom
        };
    }
    f.map_children(|c| replace_guards(c, table, priming))
}
