//! Symbolic automata whose states are first-order structures.

mod algebra;
mod determinism;
mod oracle;
mod so;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{check_sorts, parse_formula_with_vars, Formula, ParseMode};
use crate::names;
use crate::signature::Signature;

pub use algebra::{complement_deterministic, concatenation, intersection, kleene_star, sigma11_to_fo, union};
pub use determinism::{
    check_completeness_bounded, check_determinism_bounded, domain_assignments, step_deterministic, BoundedCheck,
    Counterexample,
};
pub use oracle::{accepts_oracle, Limits, Oracle, Run, WordSpace};
pub use so::{parse_so_formula, Sigma11Automaton, SoFormula};

/// `(Σ, Γ, φ₀, φ_T, φ_F)`: word signature, state signature and the initial,
/// transition and acceptance sentences.
///
/// `φ₀` and `φ_F` range over `Γ` plus the rigid symbols of `Σ`; `φ_T` ranges
/// over `Γ ∪ Σ ∪ Γ′`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    sigma: Signature,
    gamma: Signature,
    init: Formula,
    trans: Formula,
    fin: Formula,
}

/// Signature over which `φ₀`/`φ_F` are read.
pub(crate) fn boundary_signature(sigma: &Signature, gamma: &Signature) -> Result<Signature> {
    gamma.union(&sigma.restrict(|s| s.rigid))
}

/// Signature over which `φ_T` is read.
pub(crate) fn transition_signature(sigma: &Signature, gamma: &Signature) -> Result<Signature> {
    gamma.union(sigma)?.union(&gamma.primed_part())
}

pub(crate) fn check_condition(what: &str, phi: &Formula, sig: &Signature) -> Result<()> {
    phi.require_first_order()
        .and_then(|_| phi.require_sentence())
        .and_then(|_| check_sorts(phi, sig))
        .map_err(|e| Error::Automaton(format!("{what}: {e}")))
}

pub(crate) fn check_signatures(sigma: &Signature, gamma: &Signature) -> Result<()> {
    for s in gamma.symbols() {
        if sigma.contains(&s.name) {
            return Err(Error::Disjointness(s.name.clone()));
        }
        if names::unprimed(&s.name).is_some() {
            return Err(Error::Automaton(format!("state symbol `{}` is primed", s.name)));
        }
    }
    for s in sigma.symbols() {
        if names::unprimed(&s.name).is_some() {
            return Err(Error::Automaton(format!("word symbol `{}` is primed", s.name)));
        }
    }
    Ok(())
}

impl Automaton {
    pub fn new(sigma: Signature, gamma: Signature, init: Formula, trans: Formula, fin: Formula) -> Result<Self> {
        check_signatures(&sigma, &gamma)?;
        let boundary = boundary_signature(&sigma, &gamma)?;
        check_condition("initial condition", &init, &boundary)?;
        check_condition("acceptance condition", &fin, &boundary)?;
        check_condition("transition relation", &trans, &transition_signature(&sigma, &gamma)?)?;
        Ok(Automaton {
            sigma,
            gamma,
            init,
            trans,
            fin,
        })
    }

    /// Parses the three conditions from text over the given signatures.
    pub fn parse(sigma: Signature, gamma: Signature, init: &str, trans: &str, fin: &str) -> Result<Self> {
        check_signatures(&sigma, &gamma)?;
        let boundary = boundary_signature(&sigma, &gamma)?;
        let full = transition_signature(&sigma, &gamma)?;
        let parse = |what: &str, text: &str, sig: &Signature| {
            parse_formula_with_vars(text, sig, &[], ParseMode::Automaton)
                .map_err(|e| Error::Automaton(format!("{what}: {e}")))
        };
        let init = parse("initial condition", init, &boundary)?;
        let trans = parse("transition relation", trans, &full)?;
        let fin = parse("acceptance condition", fin, &boundary)?;
        Automaton::new(sigma, gamma, init, trans, fin)
    }

    pub fn word_signature(&self) -> &Signature {
        &self.sigma
    }

    pub fn state_signature(&self) -> &Signature {
        &self.gamma
    }

    pub fn init(&self) -> &Formula {
        &self.init
    }

    pub fn trans(&self) -> &Formula {
        &self.trans
    }

    pub fn fin(&self) -> &Formula {
        &self.fin
    }

    /// `Γ ∪ Σ ∪ Γ′`.
    pub fn transition_signature(&self) -> Signature {
        transition_signature(&self.sigma, &self.gamma).expect("validated on construction")
    }

    /// Renames state symbols; primed occurrences in `φ_T` follow.
    pub fn rename_state(&self, mapping: &BTreeMap<String, String>) -> Result<Automaton> {
        let gamma = self.gamma.rename(mapping)?;
        let mut full = mapping.clone();
        for (from, to) in mapping {
            if self.gamma.get(from).is_some_and(|s| !s.rigid) {
                full.insert(names::primed(from), names::primed(to));
            }
        }
        Automaton::new(
            self.sigma.clone(),
            gamma,
            self.init.rename_symbols(mapping),
            self.trans.rename_symbols(&full),
            self.fin.rename_symbols(mapping),
        )
    }

    pub fn classify(&self) -> ControlClass {
        classify(self)
    }

    pub fn to_file(&self) -> AutomatonFile {
        AutomatonFile {
            word_signature: self.sigma.clone(),
            state_signature: self.gamma.clone(),
            init: self.init.to_string(),
            trans: self.trans.to_string(),
            fin: self.fin.to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("automaton files always serialize")
    }

    pub fn from_json(text: &str) -> Result<Automaton> {
        let file: AutomatonFile = serde_json::from_str(text)?;
        file.into_automaton()
    }
}

impl fmt::Display for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "init:  {}", self.init)?;
        writeln!(f, "trans: {}", self.trans)?;
        write!(f, "final: {}", self.fin)
    }
}

/// JSON envelope of an automaton; formulas are in the text grammar.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomatonFile {
    pub word_signature: Signature,
    pub state_signature: Signature,
    pub init: String,
    pub trans: String,
    #[serde(rename = "final")]
    pub fin: String,
}

impl AutomatonFile {
    pub fn into_automaton(self) -> Result<Automaton> {
        Automaton::parse(self.word_signature, self.state_signature, &self.init, &self.trans, &self.fin)
    }
}

/// Restrictions on the state signature, from most to least specific.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ControlClass {
    /// Only propositions.
    FiniteControl,
    /// Propositions and constants.
    DataControl,
    /// Propositions and unary predicates.
    Monadic,
    General,
}

impl fmt::Display for ControlClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ControlClass::FiniteControl => "finite-control",
            ControlClass::DataControl => "data-control",
            ControlClass::Monadic => "monadic",
            ControlClass::General => "general",
        })
    }
}

pub fn classify(a: &Automaton) -> ControlClass {
    classify_signature(a.state_signature())
}

pub fn classify_signature(gamma: &Signature) -> ControlClass {
    let syms = gamma.symbols();
    if syms.iter().all(|s| s.is_proposition()) {
        ControlClass::FiniteControl
    } else if syms.iter().all(|s| s.is_proposition() || s.is_constant()) {
        ControlClass::DataControl
    } else if syms.iter().all(|s| s.is_predicate() && s.arity() <= 1) {
        ControlClass::Monadic
    } else {
        ControlClass::General
    }
}
