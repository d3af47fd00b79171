//! Reserved name decorations.
//!
//! User-written symbols match `[A-Za-z_][A-Za-z0-9_]*`. Two decorations are
//! reserved for generated names and can never appear in user input:
//!
//! * a trailing `'` marks the primed (next-state) copy of a symbol;
//! * a `#` separates a hint from a disambiguating suffix in fresh symbols
//!   (`p0#1`, surrogates `xs#3fa2...`).

use std::collections::HashSet;

pub const PRIME: char = '\'';
pub const FRESH: char = '#';

pub fn primed(name: &str) -> String {
    let mut s = String::with_capacity(name.len() + 1);
    s.push_str(name);
    s.push(PRIME);
    s
}

/// Strips exactly one prime, if present.
pub fn unprimed(name: &str) -> Option<&str> {
    name.strip_suffix(PRIME)
}

pub fn is_user_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Identifier in the extended alphabet accepted inside generated artifacts.
pub fn is_identifier(s: &str) -> bool {
    let body = s.trim_end_matches(PRIME);
    let mut chars = body.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == FRESH)
}

/// Generator of symbol names that avoid a growing set of taken names.
#[derive(Debug, Default, Clone)]
pub struct FreshNames {
    taken: HashSet<String>,
}

impl FreshNames {
    pub fn new<I, S>(taken: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        FreshNames {
            taken: taken.into_iter().map(Into::into).collect(),
        }
    }

    pub fn reserve(&mut self, name: impl Into<String>) {
        self.taken.insert(name.into());
    }

    /// Returns `hint#n` for the smallest `n >= 1` not yet taken, and reserves it.
    pub fn fresh(&mut self, hint: &str) -> String {
        let base = hint.split(FRESH).next().unwrap_or(hint).trim_end_matches(PRIME);
        let base = if base.is_empty() { "g" } else { base };
        let mut n = 1usize;
        loop {
            let candidate = format!("{base}{FRESH}{n}");
            if !self.taken.contains(&candidate) && !self.taken.contains(&primed(&candidate)) {
                self.taken.insert(candidate.clone());
                return candidate;
            }
            n += 1;
        }
    }
}
