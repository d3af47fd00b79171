//! Monadic automata to finite-control automata.
//!
//! A type is the set of unary state predicates an element satisfies; an
//! abstract state is the set of types realised in a state. The abstraction
//! keeps one proposition `b_t` per type and replaces every state atom in the
//! transition relation by its truth value under an assumption mapping
//! variables to (current, next) types.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::automaton::{classify, Automaton, ControlClass};
use crate::error::{Error, Result};
use crate::eval::{eval_fo, Environment};
use crate::foltl::nnf;
use crate::formula::{Formula, Term, Var};
use crate::names;
use crate::signature::{Signature, Symbol};
use crate::structure::{Domains, Structure};

use Formula as F;

/// Unary predicates beyond this make the type space too large to list.
const MAX_PREDICATES: usize = 5;
/// Upper bound on `(s₁, s₂)` guard pairs in the abstract transition.
const MAX_GUARDS: u128 = 1 << 16;

/// The monadic part of a state signature: its sort, unary predicates (in
/// declaration order) and propositions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonadicVocabulary {
    sort: Option<String>,
    predicates: Vec<String>,
    propositions: Vec<Symbol>,
    signature: Signature,
}

impl MonadicVocabulary {
    pub fn of(gamma: &Signature) -> Result<MonadicVocabulary> {
        let mut predicates = Vec::new();
        let mut propositions = Vec::new();
        let mut sorts = BTreeSet::new();
        for s in gamma.symbols() {
            if s.is_proposition() {
                propositions.push(s.clone());
            } else if s.is_predicate() && s.arity() == 1 {
                if s.rigid {
                    return Err(Error::Precondition(format!("rigid unary state predicate `{}`", s.name)));
                }
                sorts.insert(s.arg_sorts()[0].clone());
                predicates.push(s.name.clone());
            } else {
                return Err(Error::Precondition(format!("state symbol `{}` is not monadic", s.name)));
            }
        }
        if predicates.len() > MAX_PREDICATES {
            return Err(Error::Budget {
                what: "unary state predicates".into(),
                needed: predicates.len() as u128,
                limit: MAX_PREDICATES as u128,
            });
        }
        if sorts.is_empty() {
            sorts.extend(gamma.sorts().iter().cloned());
        }
        if sorts.len() > 1 {
            return Err(Error::Precondition("state signature is not monosorted".into()));
        }
        Ok(MonadicVocabulary {
            sort: sorts.into_iter().next(),
            predicates,
            propositions,
            signature: gamma.clone(),
        })
    }

    pub fn sort(&self) -> Option<&str> {
        self.sort.as_deref()
    }

    pub fn predicates(&self) -> &[String] {
        &self.predicates
    }

    pub fn propositions(&self) -> &[Symbol] {
        &self.propositions
    }

    fn with_sort(mut self, sort: Option<&str>) -> Self {
        if self.sort.is_none() {
            self.sort = sort.map(str::to_string);
        }
        self
    }

    fn type_count(&self) -> usize {
        1 << self.predicates.len()
    }

    fn predicate_index(&self, name: &str) -> Option<usize> {
        self.predicates.iter().position(|p| p == name)
    }

    fn is_proposition(&self, name: &str) -> bool {
        self.propositions.iter().any(|p| p.name == name)
    }

    fn var(&self, name: &str) -> Result<Var> {
        match &self.sort {
            Some(sort) => Ok(Var::new(name, sort.clone())),
            None => Err(Error::Precondition("no sort to quantify over".into())),
        }
    }
}

/// Bit `i` is set iff the `i`-th unary predicate belongs to the type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeSet(pub u32);

impl TypeSet {
    pub fn contains(self, predicate: usize) -> bool {
        self.0 >> predicate & 1 == 1
    }

    pub fn predicates(self, vocab: &MonadicVocabulary) -> Vec<&str> {
        (0..vocab.predicates.len())
            .filter(|&i| self.contains(i))
            .map(|i| vocab.predicates[i].as_str())
            .collect()
    }
}

/// Bit `i` is set iff the type with bits `i` is realised.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AbstractState(pub u64);

impl AbstractState {
    pub fn from_types(types: impl IntoIterator<Item = TypeSet>) -> AbstractState {
        AbstractState(types.into_iter().fold(0, |m, t| m | 1 << t.0))
    }

    pub fn contains(self, t: TypeSet) -> bool {
        self.0 >> t.0 & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn types(self) -> Vec<TypeSet> {
        (0..64).filter(|i| self.0 >> i & 1 == 1).map(TypeSet).collect()
    }
}

impl fmt::Display for AbstractState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ts: Vec<String> = self.types().iter().map(|t| format!("{:b}", t.0)).collect();
        write!(f, "{{{}}}", ts.join(", "))
    }
}

/// Current and next type of each variable in scope.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Assumption(BTreeMap<String, (TypeSet, TypeSet)>);

impl Assumption {
    pub fn new() -> Self {
        Assumption::default()
    }

    pub fn bind(mut self, var: &str, now: TypeSet, next: TypeSet) -> Self {
        self.0.insert(var.to_string(), (now, next));
        self
    }

    pub fn get(&self, var: &str) -> Option<(TypeSet, TypeSet)> {
        self.0.get(var).copied()
    }
}

pub fn types_of(gamma: &Signature) -> Result<Vec<TypeSet>> {
    let vocab = MonadicVocabulary::of(gamma)?;
    Ok((0..vocab.type_count() as u32).map(TypeSet).collect())
}

/// Every abstract state, the empty one first.
pub fn abstract_states(gamma: &Signature) -> Result<impl Iterator<Item = AbstractState>> {
    let vocab = MonadicVocabulary::of(gamma)?;
    Ok(states_of(&vocab))
}

fn states_of(vocab: &MonadicVocabulary) -> impl Iterator<Item = AbstractState> {
    // At most 2^5 types, so the masks fit and the count fits in u64.
    let count = 1u64 << vocab.type_count();
    (0..count).map(AbstractState)
}

/// `γ_t(x) = ⋀_{p∈t} p(x) ∧ ⋀_{p∉t} ¬p(x)`.
pub fn gamma_type(t: TypeSet, vocab: &MonadicVocabulary, x: &Var) -> Formula {
    let atom = |p: &str| F::atom(p, vec![Term::Var(x.clone())]);
    let n = vocab.predicates.len();
    let mut parts: Vec<Formula> = (0..n).filter(|&i| t.contains(i)).map(|i| atom(&vocab.predicates[i])).collect();
    parts.extend((0..n).filter(|&i| !t.contains(i)).map(|i| F::not(atom(&vocab.predicates[i]))));
    F::and(parts)
}

/// `γ_s = ⋀_{t∈s} ∃x.γ_t(x) ∧ ⋀_{t∉s} ¬∃x.γ_t(x)`.
pub fn gamma_state(s: AbstractState, vocab: &MonadicVocabulary) -> Result<Formula> {
    let x = vocab.var("x")?;
    let types: Vec<TypeSet> = (0..vocab.type_count() as u32).map(TypeSet).collect();
    let some = |t: TypeSet| F::exists(x.clone(), gamma_type(t, vocab, &x));
    let mut parts: Vec<Formula> = types.iter().filter(|t| s.contains(**t)).map(|&t| some(t)).collect();
    parts.extend(types.iter().filter(|t| !s.contains(**t)).map(|&t| F::not(some(t))));
    Ok(F::and(parts))
}

/// Name of the proposition `b_t`: `b#` followed by the membership bit of
/// each unary predicate in declaration order.
pub fn type_proposition(t: TypeSet, vocab: &MonadicVocabulary) -> String {
    let bits: String = (0..vocab.predicates.len())
        .map(|i| if t.contains(i) { '1' } else { '0' })
        .collect();
    format!("b{}{}", names::FRESH, if bits.is_empty() { "_" } else { &bits })
}

/// `ψ|ʰ_{s₁→s₂}`: state atoms are decided by the assumed types, word atoms
/// are kept, and each quantifier ranges over the pairs of types of `s₁` and
/// `s₂`. State propositions are kept.
pub fn restrict_formula(
    psi: &Formula,
    vocab: &MonadicVocabulary,
    s1: AbstractState,
    s2: AbstractState,
    h: &Assumption,
) -> Result<Formula> {
    let truth = |b: bool| if b { F::True } else { F::False };
    match psi {
        F::True | F::False => Ok(psi.clone()),
        F::Atom(name, args) => {
            let (base, next) = match names::unprimed(name) {
                Some(b) => (b, true),
                None => (name.as_str(), false),
            };
            if let Some(i) = vocab.predicate_index(base) {
                let Some(Term::Var(x)) = args.first() else {
                    return Err(Error::Precondition(format!("`{name}` applied to a non-variable")));
                };
                let (t1, t2) = h.get(&x.name).ok_or_else(|| Error::UnboundVariable(x.name.clone()))?;
                return Ok(truth(if next { t2 } else { t1 }.contains(i)));
            }
            if vocab.is_proposition(base) {
                return Ok(psi.clone());
            }
            if let Some(Term::App(c, _)) = args.iter().find(|t| !t.is_var()) {
                return Err(Error::Precondition(format!("constant or function `{c}` in restricted formula")));
            }
            Ok(psi.clone())
        }
        F::Eq(..) => Err(Error::Precondition("equality in restricted formula".into())),
        F::Not(inner) if matches!(**inner, F::Atom(..)) => Ok(F::not(restrict_formula(inner, vocab, s1, s2, h)?)),
        F::And(fs) => Ok(F::And(
            fs.iter()
                .map(|f| restrict_formula(f, vocab, s1, s2, h))
                .collect::<Result<_>>()?,
        )),
        F::Or(fs) => Ok(F::Or(
            fs.iter()
                .map(|f| restrict_formula(f, vocab, s1, s2, h))
                .collect::<Result<_>>()?,
        )),
        F::Exists(v, body) | F::Forall(v, body) => {
            let mut cases = Vec::new();
            for t1 in s1.types() {
                for t2 in s2.types() {
                    let h = h.clone().bind(&v.name, t1, t2);
                    cases.push(restrict_formula(body, vocab, s1, s2, &h)?);
                }
            }
            let body = Box::new(F::or(cases));
            Ok(match psi {
                F::Exists(..) => F::Exists(v.clone(), body),
                _ => F::Forall(v.clone(), body),
            })
        }
        F::Not(_) | F::Implies(..) | F::Iff(..) => Err(Error::Precondition(format!("formula not in NNF: {psi}"))),
        _ => Err(Error::Temporal(psi.to_string())),
    }
}

/// Removes `true`/`false` subformulas. Quantifiers over closed bodies are
/// dropped, which is sound because domains are non-empty.
fn fold(phi: &Formula) -> Formula {
    match phi {
        F::Not(x) => match fold(x) {
            F::True => F::False,
            F::False => F::True,
            y => F::not(y),
        },
        F::And(fs) => {
            let mut out = Vec::new();
            for f in fs {
                match fold(f) {
                    F::True => {}
                    F::False => return F::False,
                    g => out.push(g),
                }
            }
            F::and(out)
        }
        F::Or(fs) => {
            let mut out = Vec::new();
            for f in fs {
                match fold(f) {
                    F::False => {}
                    F::True => return F::True,
                    g => out.push(g),
                }
            }
            F::or(out)
        }
        F::Exists(v, b) | F::Forall(v, b) => match fold(b) {
            c @ (F::True | F::False) => c,
            body => match phi {
                F::Exists(..) => F::exists(v.clone(), body),
                _ => F::forall(v.clone(), body),
            },
        },
        _ => phi.clone(),
    }
}

/// Canonical model of `γ_s`: one element per type of `s`, with the given
/// truth values for state propositions (unlisted ones are false).
fn witness(s: AbstractState, props: &BTreeMap<String, bool>, vocab: &MonadicVocabulary) -> Result<Structure> {
    let sig = Arc::new(vocab.signature.clone());
    let types = s.types();
    let domains = match &vocab.sort {
        Some(sort) => Domains::with_sizes([(sort.as_str(), types.len())]),
        None => Domains::default(),
    };
    let mut st = Structure::default_for(sig, Arc::new(domains.for_signature(&vocab.signature)?))?;
    if vocab.sort.is_some() {
        for (e, t) in types.iter().enumerate() {
            let elem = format!("e{e}");
            for p in t.predicates(vocab) {
                st.set_predicate(p, &[&elem], true)?;
            }
        }
    }
    for (p, &v) in props {
        st.set_predicate(p, &[], v)?;
    }
    Ok(st)
}

/// `γ_s ⊨ φ` for a state sentence `φ` without state propositions.
pub fn entails_initial(s: AbstractState, phi: &Formula, vocab: &MonadicVocabulary) -> Result<bool> {
    entails_initial_with(s, &BTreeMap::new(), phi, vocab)
}

/// `γ_s ∧ π ⊨ φ` where `π` fixes every state proposition mentioned in `φ`.
/// Decided on the canonical witness; in the equality-free monadic fragment
/// all models of `γ_s ∧ π` agree on such sentences.
pub fn entails_initial_with(
    s: AbstractState,
    props: &BTreeMap<String, bool>,
    phi: &Formula,
    vocab: &MonadicVocabulary,
) -> Result<bool> {
    if phi.has_equality() {
        return Err(Error::Precondition("equality in state condition".into()));
    }
    if s.is_empty() {
        return Err(Error::Precondition("empty abstract state has no model".into()));
    }
    for name in phi.symbols() {
        if vocab.is_proposition(name) && !props.contains_key(name) {
            return Err(Error::Precondition(format!("no value for state proposition `{name}`")));
        }
        if vocab.predicate_index(name).is_none() && !vocab.is_proposition(name) {
            return Err(Error::Precondition(format!("`{name}` is not a state symbol")));
        }
    }
    eval_fo(&witness(s, props, vocab)?, phi, &Environment::new())
}

/// Every assignment to the state propositions mentioned in `phi`.
fn assignments(phi: &Formula, vocab: &MonadicVocabulary) -> Vec<BTreeMap<String, bool>> {
    let used: Vec<&str> = phi.symbols().into_iter().filter(|n| vocab.is_proposition(n)).collect();
    (0..1u64 << used.len())
        .map(|m| used.iter().enumerate().map(|(i, p)| (p.to_string(), m >> i & 1 == 1)).collect())
        .collect()
}

fn literal(name: &str, value: bool) -> Formula {
    if value {
        F::prop(name)
    } else {
        F::not(F::prop(name))
    }
}

/// `b_s = ⋀_{t∈s} b_t ∧ ⋀_{t∉s} ¬b_t`, optionally primed.
fn state_guard(s: AbstractState, vocab: &MonadicVocabulary, primed: bool) -> Formula {
    F::and(
        (0..vocab.type_count() as u32)
            .map(|t| {
                let name = type_proposition(TypeSet(t), vocab);
                let name = if primed { names::primed(&name) } else { name };
                literal(&name, s.contains(TypeSet(t)))
            })
            .collect(),
    )
}

/// `⋁ (b_s ∧ π)` over non-empty `s` and assignments `π` with `γ_s ∧ π ⊨ φ`.
fn boundary(phi: &Formula, vocab: &MonadicVocabulary) -> Result<Formula> {
    let mut out = Vec::new();
    for s in states_of(vocab).filter(|s| !s.is_empty()) {
        for pi in assignments(phi, vocab) {
            if entails_initial_with(s, &pi, phi, vocab)? {
                let mut parts = vec![state_guard(s, vocab, false)];
                parts.extend(pi.iter().map(|(p, &v)| literal(p, v)));
                out.push(F::and(parts));
            }
        }
    }
    Ok(F::or(out))
}

fn check_preconditions(a: &Automaton) -> Result<()> {
    if !matches!(classify(a), ControlClass::FiniteControl | ControlClass::Monadic) {
        return Err(Error::Precondition(format!("state signature is {}, not monadic", classify(a))));
    }
    let sigma = a.word_signature();
    if let Some(s) = sigma.symbols().iter().find(|s| !s.is_predicate()) {
        return Err(Error::Precondition(format!("word symbol `{}` is not a predicate", s.name)));
    }
    let sorts: BTreeSet<&String> = sigma.sorts().iter().chain(a.state_signature().sorts()).collect();
    if sorts.len() > 1 {
        return Err(Error::Precondition("word and state signatures are not monosorted".into()));
    }
    for (what, phi) in [("initial condition", a.init()), ("transition relation", a.trans()), ("acceptance condition", a.fin())] {
        if phi.has_equality() {
            return Err(Error::Precondition(format!("{what} uses equality")));
        }
    }
    for (what, phi) in [("initial condition", a.init()), ("acceptance condition", a.fin())] {
        if let Some(s) = phi.symbols().into_iter().find(|n| sigma.contains(n)) {
            return Err(Error::Precondition(format!("{what} mentions word symbol `{s}`")));
        }
    }
    Ok(())
}

/// Finite-control automaton over propositions `b_t`, one per type, plus the
/// state propositions of `a`.
pub fn monadic_to_finite_control(a: &Automaton) -> Result<Automaton> {
    check_preconditions(a)?;
    let sort = a.word_signature().sorts().first().map(String::as_str);
    let vocab = MonadicVocabulary::of(a.state_signature())?.with_sort(sort);
    let n_states = 1u128 << vocab.type_count();
    if n_states * n_states > MAX_GUARDS {
        return Err(Error::Budget {
            what: "abstract transition guards".into(),
            needed: n_states * n_states,
            limit: MAX_GUARDS,
        });
    }

    let mut gamma = Signature::new(Vec::<String>::new(), vec![])?;
    for t in 0..vocab.type_count() as u32 {
        let name = type_proposition(TypeSet(t), &vocab);
        if a.word_signature().contains(&name) || vocab.is_proposition(&name) {
            return Err(Error::RenameCollision(name));
        }
        gamma.add_symbol(Symbol::proposition(&name, false))?;
    }
    for p in &vocab.propositions {
        gamma.add_symbol(p.clone())?;
    }

    let init = nnf(a.init());
    let trans = nnf(a.trans());
    let fin = nnf(a.fin());

    let mut guards = Vec::new();
    for s1 in states_of(&vocab) {
        for s2 in states_of(&vocab) {
            let body = fold(&restrict_formula(&trans, &vocab, s1, s2, &Assumption::new())?);
            if body != F::True {
                guards.push(F::implies(
                    F::and2(state_guard(s1, &vocab, false), state_guard(s2, &vocab, true)),
                    body,
                ));
            }
        }
    }

    Automaton::new(
        a.word_signature().clone(),
        gamma,
        boundary(&init, &vocab)?,
        F::and(guards),
        boundary(&fin, &vocab)?,
    )
}
