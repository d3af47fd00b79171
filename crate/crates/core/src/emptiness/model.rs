//! Reading solver models back into words.
//!
//! Generic s-expression crates do not handle SMT-LIB quoted symbols
//! (`|c@0|`), so a small reader is kept here.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::unroll::{mangle, UnrolledFormula};
use crate::error::{Error, Result};
use crate::signature::Signature;
use crate::structure::{Domains, Structure};
use crate::theory::Theory;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sexp {
    Atom(String),
    List(Vec<Sexp>),
}

impl Sexp {
    fn text(&self) -> String {
        match self {
            Sexp::Atom(a) => a.clone(),
            Sexp::List(xs) => format!("({})", xs.iter().map(Sexp::text).collect::<Vec<_>>().join(" ")),
        }
    }
}

/// Every top-level s-expression of `text`. Quoted symbols lose their bars.
pub fn parse_sexps(text: &str) -> Result<Vec<Sexp>> {
    let chars: Vec<char> = text.chars().collect();
    let mut stack: Vec<Vec<Sexp>> = vec![Vec::new()];
    let mut i = 0;
    let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.into() };
    while i < chars.len() {
        let c = chars[i];
        match c {
            '(' => {
                stack.push(Vec::new());
                i += 1;
            }
            ')' => {
                let done = stack.pop().filter(|_| !stack.is_empty()).ok_or_else(|| err(i, "unbalanced `)`"))?;
                stack.last_mut().expect("non-empty").push(Sexp::List(done));
                i += 1;
            }
            ';' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '|' | '"' => {
                let end = chars[i + 1..]
                    .iter()
                    .position(|&d| d == c)
                    .ok_or_else(|| err(i, "unterminated quote"))?;
                let s: String = chars[i + 1..i + 1 + end].iter().collect();
                stack.last_mut().expect("non-empty").push(Sexp::Atom(s));
                i += end + 2;
            }
            c if c.is_whitespace() => i += 1,
            _ => {
                let start = i;
                while i < chars.len() && !chars[i].is_whitespace() && !"()|;\"".contains(chars[i]) {
                    i += 1;
                }
                stack
                    .last_mut()
                    .expect("non-empty")
                    .push(Sexp::Atom(chars[start..i].iter().collect()));
            }
        }
    }
    if stack.len() != 1 {
        return Err(err(chars.len(), "unbalanced `(`"));
    }
    Ok(stack.pop().expect("one level"))
}

/// Nullary `define-fun`s of a model: name to the value's SMT-LIB text.
pub fn model_constants(model: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    let mut visit = |items: &[Sexp]| {
        for item in items {
            if let Sexp::List(xs) = item {
                if let [Sexp::Atom(h), Sexp::Atom(name), Sexp::List(params), _sort, value] = xs.as_slice() {
                    if h == "define-fun" && params.is_empty() {
                        out.insert(name.clone(), value.text());
                    }
                }
            }
        }
    };
    for top in parse_sexps(model)? {
        if let Sexp::List(items) = top {
            visit(&items);
        }
    }
    Ok(out)
}

/// `(- 3)` as `-3`; other values unchanged.
fn element_name(value: &str) -> String {
    value
        .strip_prefix("(- ")
        .and_then(|v| v.strip_suffix(')'))
        .map(|v| format!("-{v}"))
        .unwrap_or_else(|| value.to_string())
}

/// A solver witness: word-symbol values per step and, when the word
/// signature permits, the reconstructed word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub length: usize,
    /// Mangled word symbol to the model's value, in SMT-LIB text.
    pub values: BTreeMap<String, String>,
    pub word: Option<Word>,
    pub diagnostics: Vec<String>,
}

impl Witness {
    /// `(= name value)` assertions pinning the word symbols.
    pub fn assertions(&self) -> Vec<String> {
        self.values.iter().map(|(n, v)| format!("(= |{n}| {v})")).collect()
    }
}

/// Best-effort reconstruction of the word read by a satisfying run. Only
/// propositions and constants of uninterpreted word symbols are read; the
/// word is over the non-interpreted part of the word signature and its
/// domains hold the values the model mentions.
pub fn extract_witness(model: &str, unrolled: &UnrolledFormula, theory: &Theory) -> Witness {
    let k = unrolled.k();
    let mut w = Witness {
        length: k,
        values: BTreeMap::new(),
        word: None,
        diagnostics: Vec::new(),
    };
    let consts = match model_constants(model) {
        Ok(c) => c,
        Err(e) => {
            w.diagnostics.push(format!("unreadable model: {e}"));
            return w;
        }
    };
    let sigma = unrolled.word_signature().restrict(|s| !theory.is_interpreted(&s.name));
    let mut finite = true;
    for s in sigma.symbols() {
        if s.arity() > 0 {
            w.diagnostics.push(format!("`{}` has arguments; its interpretation is not read", s.name));
            finite = false;
            continue;
        }
        let names: Vec<String> = if s.rigid {
            vec![s.name.clone()]
        } else {
            (0..k).map(|i| mangle(&s.name, i)).collect()
        };
        for n in names {
            match consts.get(&n) {
                Some(v) => {
                    w.values.insert(n, v.clone());
                }
                None if k > 0 || s.rigid => w.diagnostics.push(format!("model has no value for `{n}`")),
                None => {}
            }
        }
    }
    if finite {
        match build_word(&sigma, &w.values, k) {
            Ok(word) => w.word = Some(word),
            Err(e) => w.diagnostics.push(format!("no word: {e}")),
        }
    }
    w
}

fn build_word(sigma: &Signature, values: &BTreeMap<String, String>, k: usize) -> Result<Word> {
    let sig = Arc::new(sigma.clone());
    let value = |s: &crate::signature::Symbol, i: usize| {
        let n = if s.rigid { s.name.clone() } else { mangle(&s.name, i) };
        values.get(&n).cloned()
    };
    let mut elems: BTreeMap<String, Vec<String>> = sigma.sorts().iter().map(|s| (s.clone(), Vec::new())).collect();
    for s in sigma.symbols().iter().filter(|s| s.is_constant()) {
        for i in 0..k.max(1) {
            if let Some(v) = value(s, i) {
                let list = elems.get_mut(s.result_sort().expect("constant")).expect("declared sort");
                let e = element_name(&v);
                if !list.contains(&e) {
                    list.push(e);
                }
            }
        }
    }
    for list in elems.values_mut() {
        if list.is_empty() {
            list.push("e0".into());
        }
    }
    let domains = Arc::new(Domains::new(elems)?);
    let mut letters = Vec::new();
    for i in 0..k {
        let mut l = Structure::default_for(sig.clone(), domains.clone())?;
        for s in sig.symbols() {
            let Some(v) = value(s, i) else { continue };
            if s.is_proposition() {
                l.set_predicate(&s.name, &[], v == "true")?;
            } else {
                l.set_constant(&s.name, &element_name(&v))?;
            }
        }
        letters.push(l);
    }
    Word::new(sig, domains, letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_z3_models() {
        let m = "(\n  (define-fun |c@0| () Int\n    (- 2))\n  (define-fun |p@1| () Bool\n    true)\n  (define-fun f ((x Int)) Int x)\n)";
        let c = model_constants(m).unwrap();
        assert_eq!(c.get("c@0").map(String::as_str), Some("(- 2)"));
        assert_eq!(c.get("p@1").map(String::as_str), Some("true"));
        assert_eq!(c.len(), 2);
        assert_eq!(element_name("(- 2)"), "-2");
    }

    #[test]
    fn rejects_unbalanced_text() {
        assert!(parse_sexps("((a)").is_err());
        assert!(parse_sexps("a)").is_err());
        assert!(parse_sexps("|abc").is_err());
    }
}
