//! Finite words of structures.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::eval::Compiled;
use crate::signature::Signature;
use crate::structure::{Domains, Structure, Tables};
use crate::theory::Theory;

/// A sequence of structures over one signature sharing one domain
/// assignment. Rigidity is checked by [`validate_word`], not on construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    sig: Arc<Signature>,
    domains: Arc<Domains>,
    letters: Vec<Structure>,
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.letters.iter()).finish()
    }
}

impl Word {
    pub fn new(sig: Arc<Signature>, domains: Arc<Domains>, letters: Vec<Structure>) -> Result<Self> {
        domains.covers(&sig)?;
        for (i, l) in letters.iter().enumerate() {
            if l.signature() != sig.as_ref() {
                return Err(Error::Structure(format!("letter {i} is over a different signature")));
            }
            if !l.domains().agrees_with(&domains) {
                return Err(Error::Domain(format!("letter {i} has different domains")));
            }
        }
        Ok(Word { sig, domains, letters })
    }

    pub fn empty(sig: Arc<Signature>, domains: Arc<Domains>) -> Self {
        Word {
            sig,
            domains,
            letters: Vec::new(),
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn signature_arc(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn domains(&self) -> &Domains {
        &self.domains
    }

    pub fn domains_arc(&self) -> &Arc<Domains> {
        &self.domains
    }

    pub fn letters(&self) -> &[Structure] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: Structure) -> Result<()> {
        if letter.signature() != self.sig.as_ref() || !letter.domains().agrees_with(&self.domains) {
            return Err(Error::Structure("letter does not fit the word".into()));
        }
        self.letters.push(letter);
        Ok(())
    }

    /// The concatenation of two words over the same signature and domains.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        let mut out = self.clone();
        for l in &other.letters {
            out.push(l.clone())?;
        }
        Ok(out)
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word {
            sig: self.sig.clone(),
            domains: self.domains.clone(),
            letters: self.letters[..n].to_vec(),
        }
    }

    pub fn suffix(&self, n: usize) -> Word {
        Word {
            sig: self.sig.clone(),
            domains: self.domains.clone(),
            letters: self.letters[n..].to_vec(),
        }
    }

    pub fn to_file(&self) -> WordFile {
        WordFile {
            signature: Some(self.sig.as_ref().clone()),
            domains: self.domains.as_ref().clone(),
            letters: self.letters.iter().map(Structure::tables).collect(),
        }
    }
}

/// JSON form of a word. The signature may be omitted when the reader
/// supplies it (for instance the word signature of an automaton).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WordFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<Signature>,
    pub domains: Domains,
    pub letters: Vec<Tables>,
}

impl WordFile {
    pub fn into_word(self, fallback: Option<&Signature>) -> Result<Word> {
        let sig = match (self.signature, fallback) {
            (Some(s), _) => s,
            (None, Some(s)) => s.clone(),
            (None, None) => return Err(Error::Schema("word file has no signature".into())),
        };
        let domains = Arc::new(self.domains.for_signature(&sig)?);
        let sig = Arc::new(sig);
        let letters = self
            .letters
            .iter()
            .map(|t| Structure::from_tables(sig.clone(), domains.clone(), t))
            .collect::<Result<_>>()?;
        Word::new(sig, domains, letters)
    }
}

/// First violated constraint of a word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A rigid symbol changed its interpretation at `index`.
    Rigidity { index: usize, symbol: String },
    /// Letter `index` falsifies an axiom.
    Axiom { index: usize, axiom: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Rigidity { index, symbol } => {
                write!(f, "rigid symbol `{symbol}` changes at letter {index}")
            }
            Violation::Axiom { index, axiom } => write!(f, "letter {index} violates axiom `{axiom}`"),
        }
    }
}

/// Checks that rigid symbols are constant along the word and that every
/// letter satisfies every axiom of the theory.
pub fn validate_word(word: &Word, theory: &Theory) -> Result<Result<(), Violation>> {
    if let Some(first) = word.letters.first() {
        for (index, letter) in word.letters.iter().enumerate().skip(1) {
            for (i, sym) in word.sig.symbols().iter().enumerate() {
                if sym.rigid && letter.interp(i) != first.interp(i) {
                    return Ok(Err(Violation::Rigidity {
                        index,
                        symbol: sym.name.clone(),
                    }));
                }
            }
        }
    }
    let axioms = theory
        .axioms()
        .iter()
        .map(|a| Compiled::first_order(a, &[&word.sig], &word.domains, &[]).map(|c| (a, c)))
        .collect::<Result<Vec<_>>>()?;
    for (index, letter) in word.letters.iter().enumerate() {
        for (axiom, c) in &axioms {
            if !c.eval_layers(&[letter], &[]) {
                return Ok(Err(Violation::Axiom {
                    index,
                    axiom: axiom.to_string(),
                }));
            }
        }
    }
    Ok(Ok(()))
}
