//! Background theories: axioms for the oracle, interpretations for the solver.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{parse_formula, Formula};
use crate::signature::Signature;

/// How a theory is presented to an SMT solver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SmtConfig {
    #[serde(default = "default_logic")]
    pub logic: String,
    /// Signature sort to solver sort (`Int`, `Real`, `Bool`, ...). Unmapped
    /// sorts are declared as uninterpreted.
    #[serde(default)]
    pub sorts: BTreeMap<String, String>,
    /// Signature symbol to the solver expression head that interprets it,
    /// for instance `add -> +` or `zero -> 0`. Interpreted symbols are never
    /// declared nor step-indexed.
    #[serde(default)]
    pub symbols: BTreeMap<String, String>,
}

fn default_logic() -> String {
    "ALL".to_string()
}

impl Default for SmtConfig {
    fn default() -> Self {
        SmtConfig {
            logic: default_logic(),
            sorts: BTreeMap::new(),
            symbols: BTreeMap::new(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Theory {
    axioms: Vec<Formula>,
    pub smt: SmtConfig,
}

impl Theory {
    pub fn empty() -> Self {
        Theory::default()
    }

    pub fn with_axioms(axioms: Vec<Formula>) -> Self {
        Theory {
            axioms,
            smt: SmtConfig::default(),
        }
    }

    pub fn with_smt(mut self, smt: SmtConfig) -> Self {
        self.smt = smt;
        self
    }

    pub fn axioms(&self) -> &[Formula] {
        &self.axioms
    }

    /// Axioms are first-order sentences and interpreted symbols belong to `sig`.
    pub fn validate(&self, sig: &Signature) -> Result<()> {
        for a in &self.axioms {
            a.require_sentence()?;
            a.require_first_order()?;
            for s in a.symbols() {
                if !sig.contains(s) {
                    return Err(Error::UnknownSymbol(s.to_string()));
                }
            }
        }
        for s in self.smt.symbols.keys() {
            if !sig.contains(s) {
                return Err(Error::UnknownSymbol(s.clone()));
            }
        }
        for s in self.smt.sorts.keys() {
            if !sig.has_sort(s) {
                return Err(Error::UnknownSort(s.clone()));
            }
        }
        Ok(())
    }

    pub fn is_interpreted(&self, symbol: &str) -> bool {
        self.smt.symbols.contains_key(symbol)
    }
}

/// File form: axioms as formula strings plus the solver mapping.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoryFile {
    #[serde(default)]
    pub axioms: Vec<String>,
    #[serde(flatten)]
    pub smt: SmtConfig,
}

impl TheoryFile {
    pub fn into_theory(self, sig: &Signature) -> Result<Theory> {
        let axioms = self
            .axioms
            .iter()
            .map(|a| parse_formula(a, sig))
            .collect::<Result<Vec<_>>>()?;
        let t = Theory { axioms, smt: self.smt };
        t.validate(sig)?;
        Ok(t)
    }
}
