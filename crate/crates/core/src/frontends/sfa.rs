//! Symbolic finite automata over the characters of one sort of an algebra
//! signature.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::eval::{eval_fo, Environment};
use crate::formula::{parse_formula_with_vars, Formula, ParseMode, Term, Var};
use crate::names::{self, FreshNames};
use crate::signature::{Signature, Symbol};
use crate::structure::{Domains, Structure};
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Transition {
    pub from: String,
    pub guard: String,
    pub to: String,
}

/// File form. Guards are formulas over `algebra` whose only free variable is
/// `variable` of sort `sort`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SfaFile {
    pub algebra: Signature,
    pub sort: String,
    pub variable: String,
    pub guards: BTreeMap<String, String>,
    pub states: Vec<String>,
    pub initial: String,
    #[serde(rename = "final")]
    pub fin: Vec<String>,
    pub transitions: Vec<Transition>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sfa {
    algebra: Signature,
    var: Var,
    guards: BTreeMap<String, Formula>,
    states: Vec<String>,
    initial: usize,
    fin: Vec<usize>,
    /// `(from, guard, to)` with state indices.
    transitions: Vec<(usize, String, usize)>,
}

fn schema(field: &str, msg: impl std::fmt::Display) -> Error {
    Error::Schema(format!("{field}: {msg}"))
}

impl SfaFile {
    pub fn into_sfa(self) -> Result<Sfa> {
        if !self.algebra.has_sort(&self.sort) {
            return Err(schema("sort", format!("`{}` is not a sort of the algebra", self.sort)));
        }
        if !names::is_user_identifier(&self.variable) || self.algebra.contains(&self.variable) {
            return Err(schema("variable", format!("`{}` is not a free identifier", self.variable)));
        }
        let var = Var::new(self.variable.clone(), self.sort.clone());
        let mut guards = BTreeMap::new();
        for (name, text) in &self.guards {
            if !names::is_user_identifier(name) {
                return Err(schema("guards", format!("`{name}` is not an identifier")));
            }
            let phi = parse_formula_with_vars(text, &self.algebra, std::slice::from_ref(&var), ParseMode::User)
                .map_err(|e| schema(&format!("guards.{name}"), e))?;
            phi.require_first_order().map_err(|e| schema(&format!("guards.{name}"), e))?;
            guards.insert(name.clone(), phi);
        }
        if self.states.is_empty() {
            return Err(schema("states", "at least one state is required"));
        }
        let index = |field: &str, q: &str| {
            self.states
                .iter()
                .position(|s| s == q)
                .ok_or_else(|| schema(field, format!("undeclared state `{q}`")))
        };
        for (i, q) in self.states.iter().enumerate() {
            if self.states[..i].contains(q) {
                return Err(schema("states", format!("`{q}` listed twice")));
            }
        }
        let initial = index("initial", &self.initial)?;
        let fin = self.fin.iter().map(|q| index("final", q)).collect::<Result<Vec<_>>>()?;
        let mut transitions = Vec::new();
        for (i, t) in self.transitions.iter().enumerate() {
            let field = format!("transitions[{i}]");
            if !guards.contains_key(&t.guard) {
                return Err(schema(&field, format!("undeclared guard `{}`", t.guard)));
            }
            transitions.push((index(&field, &t.from)?, t.guard.clone(), index(&field, &t.to)?));
        }
        Ok(Sfa {
            algebra: self.algebra,
            var,
            guards,
            states: self.states,
            initial,
            fin,
            transitions,
        })
    }
}

pub fn load_sfa(json: &str) -> Result<Sfa> {
    let file: SfaFile = serde_json::from_str(json)?;
    file.into_sfa()
}

impl Sfa {
    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn algebra(&self) -> &Signature {
        &self.algebra
    }

    pub fn sort(&self) -> &str {
        &self.var.sort
    }

    /// Guards occurring in some transition, in name order.
    pub fn used_guards(&self) -> Vec<&str> {
        let mut used: Vec<&str> = self.transitions.iter().map(|(_, g, _)| g.as_str()).collect();
        used.sort();
        used.dedup();
        used
    }

    fn holds(&self, guard: &str, algebra: &Structure, ch: &str) -> Result<bool> {
        let e = algebra
            .domains()
            .element_index(&self.var.sort, ch)
            .ok_or_else(|| Error::Domain(format!("`{ch}` is not a character")))?;
        let env = Environment::new().bind(&self.var.name, &self.var.sort, e);
        eval_fo(algebra, &self.guards[guard], &env)
    }

    /// Name of the character constant in the encoding.
    fn char_constant(&self) -> String {
        let mut fresh = FreshNames::new(self.used_guards().into_iter().map(str::to_string));
        if self.used_guards().contains(&"c") {
            fresh.fresh("c")
        } else {
            "c".to_string()
        }
    }

    /// Word signature of the encoding: the character constant and one rigid
    /// predicate per used guard.
    pub fn word_signature(&self) -> Signature {
        let sort = self.var.sort.as_str();
        let mut syms = vec![Symbol::constant(&self.char_constant(), sort, false)];
        syms.extend(self.used_guards().into_iter().map(|g| Symbol::predicate(g, &[sort], true)));
        Signature::new([sort], syms).expect("names are distinct")
    }
}

/// `⌈log₂ |Q|⌉ + 1`.
fn bits_for(states: usize) -> usize {
    let mut n = 0;
    while (1usize << n) < states {
        n += 1;
    }
    n + 1
}

fn state_formula(q: usize, n: usize, primed: bool) -> Formula {
    Formula::and(
        (0..n)
            .map(|i| {
                let name = format!("q{}{i}", names::FRESH);
                let name = if primed { names::primed(&name) } else { name };
                if q >> i & 1 == 1 {
                    Formula::prop(&name)
                } else {
                    Formula::not(Formula::prop(&name))
                }
            })
            .collect(),
    )
}

/// Finite-control automaton: `q` is encoded in binary on `⌈log₂|Q|⌉+1`
/// propositions, and each transition `(q, ψ, q′)` becomes
/// `φ_q ∧ p_ψ(c) ∧ φ′_{q′}`.
pub fn encode_sfa(m: &Sfa) -> Result<Automaton> {
    let n = bits_for(m.states.len());
    let gamma = Signature::new(
        Vec::<String>::new(),
        (0..n).map(|i| Symbol::proposition(&format!("q{}{i}", names::FRESH), false)).collect(),
    )?;
    let sigma = m.word_signature();
    let c = Term::constant(&m.char_constant());
    let trans = Formula::or(
        m.transitions
            .iter()
            .map(|(q, g, q2)| {
                Formula::and(vec![
                    state_formula(*q, n, false),
                    Formula::atom(g, vec![c.clone()]),
                    state_formula(*q2, n, true),
                ])
            })
            .collect(),
    );
    Automaton::new(
        sigma,
        gamma,
        state_formula(m.initial, n, false),
        trans,
        Formula::or(m.fin.iter().map(|&q| state_formula(q, n, false)).collect()),
    )
}

/// Direct simulation: the set of reachable states after each character.
pub fn simulate_sfa(m: &Sfa, algebra: &Structure, chars: &[&str]) -> Result<bool> {
    let mut current = vec![false; m.states.len()];
    current[m.initial] = true;
    for ch in chars {
        let mut next = vec![false; m.states.len()];
        for (q, g, q2) in &m.transitions {
            if current[*q] && m.holds(g, algebra, ch)? {
                next[*q2] = true;
            }
        }
        current = next;
    }
    Ok(m.fin.iter().any(|&q| current[q]))
}

/// The structure word representing `chars`: every letter has the
/// characters of `algebra` as domain, `c` the current character and each
/// guard predicate its denotation.
pub fn sfa_word(m: &Sfa, algebra: &Structure, chars: &[&str]) -> Result<Word> {
    let sig = Arc::new(m.word_signature());
    let sort = m.var.sort.clone();
    let elems = algebra
        .domains()
        .elements(&sort)
        .ok_or_else(|| Error::Domain(format!("no characters of sort `{sort}`")))?
        .to_vec();
    let domains = Arc::new(Domains::new(BTreeMap::from([(sort, elems.clone())]))?);
    let mut base = Structure::default_for(sig.clone(), domains.clone())?;
    for g in m.used_guards() {
        for e in &elems {
            base.set_predicate(g, &[e.as_str()], m.holds(g, algebra, e)?)?;
        }
    }
    let c = m.char_constant();
    let letters = chars
        .iter()
        .map(|ch| base.clone().with_constant(&c, ch))
        .collect::<Result<Vec<_>>>()?;
    Word::new(sig, domains, letters)
}
