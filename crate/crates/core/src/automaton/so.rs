//! Automata whose conditions carry existential second-order prefixes.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{boundary_signature, check_condition, check_signatures, transition_signature};
use crate::error::{Error, Result};
use crate::formula::{parse_formula_with_vars, Formula, ParseMode};
use crate::signature::{Signature, Symbol, SymbolKind};

/// `∃X₁…∃Xₖ. φ` with `φ` first-order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoFormula {
    pub prefix: Vec<Symbol>,
    pub matrix: Formula,
}

impl SoFormula {
    pub fn first_order(matrix: Formula) -> Self {
        SoFormula { prefix: Vec::new(), matrix }
    }

    pub fn is_first_order(&self) -> bool {
        self.prefix.is_empty()
    }

    fn extend(&self, sig: &Signature) -> Result<Signature> {
        let mut out = sig.clone();
        for s in &self.prefix {
            if s.rigid {
                return Err(Error::Automaton(format!("quantified symbol `{}` is rigid", s.name)));
            }
            out.add_symbol(s.clone())
                .map_err(|_| Error::Automaton(format!("quantified symbol `{}` clashes", s.name)))?;
        }
        Ok(out)
    }
}

impl fmt::Display for SoFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.prefix {
            match &s.kind {
                SymbolKind::Predicate { args } if args.is_empty() => write!(f, "exists pred {}. ", s.name)?,
                SymbolKind::Predicate { args } => write!(f, "exists pred {}({}). ", s.name, args.join(", "))?,
                SymbolKind::Constant { sort } => write!(f, "exists const {}: {}. ", s.name, sort)?,
                SymbolKind::Function { args, result } => {
                    write!(f, "exists fun {}({}): {}. ", s.name, args.join(", "), result)?
                }
            }
        }
        write!(f, "{}", self.matrix)
    }
}

const SO_KINDS: [&str; 3] = ["pred", "const", "fun"];

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn skip_ws(&mut self) {
        let r = self.rest();
        self.pos += r.len() - r.trim_start().len();
    }

    fn word(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let r = self.rest();
        let len = r
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_' || c == '#' || c == '\''))
            .unwrap_or(r.len());
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some(&r[..len])
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn error(&self, msg: String) -> Error {
        Error::Parse { pos: self.pos, msg }
    }

    fn name(&mut self) -> Result<String> {
        self.word()
            .map(str::to_string)
            .ok_or_else(|| self.error("expected a name".into()))
    }

    fn sorts(&mut self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        if self.eat('(') && !self.eat(')') {
            loop {
                out.push(self.name()?);
                if self.eat(')') {
                    break;
                }
                self.expect(',')?;
            }
        }
        Ok(out)
    }

    /// Whether a second-order binder `(exists|forall) (pred|const|fun) NAME`
    /// starts here; returns the quantifier and kind without consuming.
    fn so_binder(&self) -> Option<(&'a str, &'a str)> {
        let mut probe = Cursor {
            text: self.text,
            pos: self.pos,
        };
        let q = probe.word()?;
        if q != "exists" && q != "forall" {
            return None;
        }
        let kind = probe.word()?;
        if !SO_KINDS.contains(&kind) {
            return None;
        }
        probe.word()?;
        Some((q, kind))
    }
}

/// Parses `exists pred P(S, T). exists const c: S. exists fun f(S): T. φ`
/// where `φ` is first-order over `sig` plus the quantified symbols.
pub fn parse_so_formula(text: &str, sig: &Signature, mode: ParseMode) -> Result<SoFormula> {
    let mut cur = Cursor { text, pos: 0 };
    let mut prefix = Vec::new();
    while let Some((q, kind)) = cur.so_binder() {
        if q == "forall" {
            return Err(Error::Precondition("universal second-order quantifier".into()));
        }
        cur.word();
        cur.word();
        let name = cur.name()?;
        let symbol = match kind {
            "pred" => {
                let args = cur.sorts()?;
                Symbol::predicate(&name, &args.iter().map(String::as_str).collect::<Vec<_>>(), false)
            }
            "const" => {
                cur.expect(':')?;
                Symbol::constant(&name, &cur.name()?, false)
            }
            _ => {
                let args = cur.sorts()?;
                cur.expect(':')?;
                let result = cur.name()?;
                Symbol::function(&name, &args.iter().map(String::as_str).collect::<Vec<_>>(), &result, false)
            }
        };
        cur.expect('.')?;
        prefix.push(symbol);
    }
    let start = cur.pos;
    let mut scan = Cursor { text, pos: start };
    while scan.pos < text.len() {
        if scan.so_binder().is_some() {
            return Err(Error::Precondition(
                "second-order quantifier outside the outermost existential prefix".into(),
            ));
        }
        let step = scan.rest().chars().next().map_or(1, char::len_utf8);
        if scan.word().is_none() {
            scan.pos += step;
        }
    }
    let so = SoFormula {
        prefix,
        matrix: Formula::True,
    };
    let extended = so.extend(sig)?;
    let matrix = parse_formula_with_vars(&text[start..], &extended, &[], mode).map_err(|e| match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + start, msg },
        e => e,
    })?;
    Ok(SoFormula { matrix, ..so })
}

/// An automaton whose conditions may open with existential second-order
/// quantifiers. Quantified symbols are local to their condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sigma11Automaton {
    sigma: Signature,
    gamma: Signature,
    init: SoFormula,
    trans: SoFormula,
    fin: SoFormula,
}

impl Sigma11Automaton {
    pub fn new(sigma: Signature, gamma: Signature, init: SoFormula, trans: SoFormula, fin: SoFormula) -> Result<Self> {
        check_signatures(&sigma, &gamma)?;
        let boundary = boundary_signature(&sigma, &gamma)?;
        let full = transition_signature(&sigma, &gamma)?;
        check_condition("initial condition", &init.matrix, &init.extend(&boundary)?)?;
        check_condition("acceptance condition", &fin.matrix, &fin.extend(&boundary)?)?;
        check_condition("transition relation", &trans.matrix, &trans.extend(&full)?)?;
        Ok(Sigma11Automaton {
            sigma,
            gamma,
            init,
            trans,
            fin,
        })
    }

    pub fn parse(sigma: Signature, gamma: Signature, init: &str, trans: &str, fin: &str) -> Result<Self> {
        check_signatures(&sigma, &gamma)?;
        let boundary = boundary_signature(&sigma, &gamma)?;
        let full = transition_signature(&sigma, &gamma)?;
        let init = parse_so_formula(init, &boundary, ParseMode::Automaton)?;
        let trans = parse_so_formula(trans, &full, ParseMode::Automaton)?;
        let fin = parse_so_formula(fin, &boundary, ParseMode::Automaton)?;
        Sigma11Automaton::new(sigma, gamma, init, trans, fin)
    }

    pub fn word_signature(&self) -> &Signature {
        &self.sigma
    }

    pub fn state_signature(&self) -> &Signature {
        &self.gamma
    }

    pub fn init(&self) -> &SoFormula {
        &self.init
    }

    pub fn trans(&self) -> &SoFormula {
        &self.trans
    }

    pub fn fin(&self) -> &SoFormula {
        &self.fin
    }

    pub fn to_file(&self) -> Sigma11File {
        Sigma11File {
            word_signature: self.sigma.clone(),
            state_signature: self.gamma.clone(),
            init: self.init.to_string(),
            trans: self.trans.to_string(),
            fin: self.fin.to_string(),
        }
    }
}

/// Same envelope as an automaton file; conditions may use `exists pred`,
/// `exists const` and `exists fun` binders up front.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Sigma11File {
    pub word_signature: Signature,
    pub state_signature: Signature,
    pub init: String,
    pub trans: String,
    #[serde(rename = "final")]
    pub fin: String,
}

impl Sigma11File {
    pub fn into_automaton(self) -> Result<Sigma11Automaton> {
        Sigma11Automaton::parse(self.word_signature, self.state_signature, &self.init, &self.trans, &self.fin)
    }
}
