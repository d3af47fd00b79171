//! Alpha-equivalence keys.

use std::collections::BTreeMap;

use sha2::{Digest, Sha256};

use super::{Formula as F, Formula, Term, Var};

/// A formula with free variables renamed `%f0, %f1, ...` in order of first
/// occurrence and bound variables renamed `%b0, %b1, ...` in binder order.
/// Two formulas have the same key iff they are equal up to renaming of
/// variables (free variables matched positionally).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlphaKey(Formula);

impl AlphaKey {
    pub fn formula(&self) -> &Formula {
        &self.0
    }

    /// Hex digest of the canonical printing, free-variable sorts included.
    pub fn digest(&self) -> String {
        let mut text = self.0.to_string();
        for v in self.0.free_vars() {
            text.push('|');
            text.push_str(&v.sort);
        }
        Sha256::digest(text.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

pub fn alpha_key(f: &Formula) -> AlphaKey {
    let mut free = BTreeMap::new();
    for (i, v) in f.free_vars().into_iter().enumerate() {
        free.insert(v.name, format!("%f{i}"));
    }
    let mut counter = 0;
    AlphaKey(rename(f, &free, &mut Vec::new(), &mut counter))
}

fn rename_term(t: &Term, free: &BTreeMap<String, String>, bound: &[(String, String)]) -> Term {
    match t {
        Term::Var(v) => {
            let name = bound
                .iter()
                .rev()
                .find(|(old, _)| *old == v.name)
                .map(|(_, new)| new.clone())
                .or_else(|| free.get(&v.name).cloned())
                .unwrap_or_else(|| v.name.clone());
            Term::Var(Var::new(name, v.sort.clone()))
        }
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| rename_term(a, free, bound)).collect()),
    }
}

fn rename(
    f: &Formula,
    free: &BTreeMap<String, String>,
    bound: &mut Vec<(String, String)>,
    counter: &mut usize,
) -> Formula {
    match f {
        F::Atom(p, args) => F::Atom(p.clone(), args.iter().map(|a| rename_term(a, free, bound)).collect()),
        F::Eq(a, b) => F::Eq(rename_term(a, free, bound), rename_term(b, free, bound)),
        F::Exists(v, body) | F::Forall(v, body) => {
            let new = format!("%b{counter}");
            *counter += 1;
            bound.push((v.name.clone(), new.clone()));
            let body = rename(body, free, bound, counter);
            bound.pop();
            let v = Var::new(new, v.sort.clone());
            if matches!(f, F::Exists(..)) {
                F::exists(v, body)
            } else {
                F::forall(v, body)
            }
        }
        _ => f.map_children(|c| rename(c, free, bound, counter)),
    }
}
