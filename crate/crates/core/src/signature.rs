//! Multi-sorted signatures with per-symbol rigidity flags.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::names;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SymbolKind {
    Constant { sort: String },
    Function { args: Vec<String>, result: String },
    Predicate { args: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Symbol {
    pub name: String,
    #[serde(flatten)]
    pub kind: SymbolKind,
    pub rigid: bool,
}

impl Symbol {
    pub fn constant(name: &str, sort: &str, rigid: bool) -> Self {
        Symbol {
            name: name.to_string(),
            kind: SymbolKind::Constant {
                sort: sort.to_string(),
            },
            rigid,
        }
    }

    pub fn function(name: &str, args: &[&str], result: &str, rigid: bool) -> Self {
        Symbol {
            name: name.to_string(),
            kind: SymbolKind::Function {
                args: args.iter().map(|s| s.to_string()).collect(),
                result: result.to_string(),
            },
            rigid,
        }
    }

    pub fn predicate(name: &str, args: &[&str], rigid: bool) -> Self {
        Symbol {
            name: name.to_string(),
            kind: SymbolKind::Predicate {
                args: args.iter().map(|s| s.to_string()).collect(),
            },
            rigid,
        }
    }

    pub fn proposition(name: &str, rigid: bool) -> Self {
        Symbol::predicate(name, &[], rigid)
    }

    pub fn arg_sorts(&self) -> &[String] {
        match &self.kind {
            SymbolKind::Constant { .. } => &[],
            SymbolKind::Function { args, .. } | SymbolKind::Predicate { args } => args,
        }
    }

    pub fn arity(&self) -> usize {
        self.arg_sorts().len()
    }

    /// Result sort for constants and functions.
    pub fn result_sort(&self) -> Option<&str> {
        match &self.kind {
            SymbolKind::Constant { sort } => Some(sort),
            SymbolKind::Function { result, .. } => Some(result),
            SymbolKind::Predicate { .. } => None,
        }
    }

    pub fn is_predicate(&self) -> bool {
        matches!(self.kind, SymbolKind::Predicate { .. })
    }

    pub fn is_proposition(&self) -> bool {
        matches!(&self.kind, SymbolKind::Predicate { args } if args.is_empty())
    }

    pub fn is_constant(&self) -> bool {
        matches!(self.kind, SymbolKind::Constant { .. })
    }

    pub fn is_function(&self) -> bool {
        matches!(self.kind, SymbolKind::Function { .. })
    }

    fn sorts(&self) -> impl Iterator<Item = &String> {
        let result = match &self.kind {
            SymbolKind::Constant { sort } => Some(sort),
            SymbolKind::Function { result, .. } => Some(result),
            SymbolKind::Predicate { .. } => None,
        };
        self.arg_sorts().iter().chain(result)
    }

    pub fn renamed(&self, name: impl Into<String>) -> Symbol {
        Symbol {
            name: name.into(),
            ..self.clone()
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SignatureRepr {
    sorts: Vec<String>,
    symbols: Vec<Symbol>,
}

/// A finite multi-sorted vocabulary.
///
/// Symbol names are unique across constants, functions and predicates, and
/// every sort a symbol mentions is declared.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "SignatureRepr", into = "SignatureRepr")]
pub struct Signature {
    sorts: Vec<String>,
    symbols: Vec<Symbol>,
    by_name: HashMap<String, usize>,
    sort_ids: HashMap<String, usize>,
    arg_sort_ids: Vec<Vec<usize>>,
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.sorts == other.sorts && self.symbols == other.symbols
    }
}

impl Eq for Signature {}

impl std::hash::Hash for Signature {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.sorts.hash(state);
        self.symbols.hash(state);
    }
}

impl TryFrom<SignatureRepr> for Signature {
    type Error = Error;

    fn try_from(repr: SignatureRepr) -> Result<Self> {
        Signature::new(repr.sorts, repr.symbols)
    }
}

impl From<Signature> for SignatureRepr {
    fn from(sig: Signature) -> Self {
        SignatureRepr {
            sorts: sig.sorts,
            symbols: sig.symbols,
        }
    }
}

impl Default for Signature {
    fn default() -> Self {
        Signature::empty()
    }
}

impl Signature {
    pub fn empty() -> Self {
        Signature {
            sorts: Vec::new(),
            symbols: Vec::new(),
            by_name: HashMap::new(),
            sort_ids: HashMap::new(),
            arg_sort_ids: Vec::new(),
        }
    }

    pub fn new<S: Into<String>>(sorts: impl IntoIterator<Item = S>, symbols: Vec<Symbol>) -> Result<Self> {
        let mut sig = Signature::empty();
        for sort in sorts {
            sig.add_sort(sort)?;
        }
        for symbol in symbols {
            sig.add_symbol(symbol)?;
        }
        Ok(sig)
    }

    pub fn add_sort(&mut self, sort: impl Into<String>) -> Result<()> {
        let sort = sort.into();
        if !names::is_identifier(&sort) {
            return Err(Error::Signature(format!("`{sort}` is not a valid sort name")));
        }
        if self.sort_ids.contains_key(&sort) {
            return Err(Error::Signature(format!("sort `{sort}` declared twice")));
        }
        self.sort_ids.insert(sort.clone(), self.sorts.len());
        self.sorts.push(sort);
        Ok(())
    }

    /// Declares `sort` unless it already exists.
    pub fn ensure_sort(&mut self, sort: &str) -> Result<()> {
        if self.has_sort(sort) {
            Ok(())
        } else {
            self.add_sort(sort)
        }
    }

    pub fn add_symbol(&mut self, symbol: Symbol) -> Result<()> {
        if !names::is_identifier(&symbol.name) {
            return Err(Error::Signature(format!(
                "`{}` is not a valid symbol name",
                symbol.name
            )));
        }
        if self.by_name.contains_key(&symbol.name) {
            return Err(Error::Signature(format!(
                "symbol `{}` declared twice",
                symbol.name
            )));
        }
        let mut ids = Vec::with_capacity(symbol.arity());
        for sort in symbol.sorts() {
            if !self.sort_ids.contains_key(sort) {
                return Err(Error::Signature(format!(
                    "symbol `{}` uses undeclared sort `{sort}`",
                    symbol.name
                )));
            }
        }
        for sort in symbol.arg_sorts() {
            ids.push(self.sort_ids[sort]);
        }
        self.by_name.insert(symbol.name.clone(), self.symbols.len());
        self.symbols.push(symbol);
        self.arg_sort_ids.push(ids);
        Ok(())
    }

    pub fn sorts(&self) -> &[String] {
        &self.sorts
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn get(&self, name: &str) -> Option<&Symbol> {
        self.by_name.get(name).map(|&i| &self.symbols[i])
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.by_name.contains_key(name)
    }

    pub fn has_sort(&self, sort: &str) -> bool {
        self.sort_ids.contains_key(sort)
    }

    pub fn sort_index(&self, sort: &str) -> Option<usize> {
        self.sort_ids.get(sort).copied()
    }

    pub(crate) fn arg_sort_ids(&self, symbol: usize) -> &[usize] {
        &self.arg_sort_ids[symbol]
    }

    pub(crate) fn result_sort_id(&self, symbol: usize) -> Option<usize> {
        self.symbols[symbol]
            .result_sort()
            .map(|s| self.sort_ids[s])
    }

    pub fn symbol_names(&self) -> impl Iterator<Item = &str> {
        self.symbols.iter().map(|s| s.name.as_str())
    }

    pub fn is_disjoint(&self, other: &Signature) -> bool {
        self.symbols.iter().all(|s| !other.contains(&s.name))
    }

    /// Union of two signatures with disjoint symbols; sorts are merged.
    pub fn union(&self, other: &Signature) -> Result<Signature> {
        let mut out = self.clone();
        for sort in &other.sorts {
            out.ensure_sort(sort)?;
        }
        for symbol in &other.symbols {
            if out.contains(&symbol.name) {
                return Err(Error::Disjointness(symbol.name.clone()));
            }
            out.add_symbol(symbol.clone())?;
        }
        Ok(out)
    }

    /// Keeps the symbols accepted by `keep` and every declared sort.
    pub fn restrict(&self, mut keep: impl FnMut(&Symbol) -> bool) -> Signature {
        let mut out = Signature::empty();
        for sort in &self.sorts {
            out.add_sort(sort.clone()).expect("sorts are unique");
        }
        for symbol in &self.symbols {
            if keep(symbol) {
                out.add_symbol(symbol.clone()).expect("subset of a valid signature");
            }
        }
        out
    }

    /// Drops sorts that no symbol mentions.
    pub fn prune_sorts(&self) -> Signature {
        let used: BTreeSet<&String> = self.symbols.iter().flat_map(|s| s.sorts()).collect();
        let mut out = Signature::empty();
        for sort in self.sorts.iter().filter(|s| used.contains(s)) {
            out.add_sort(sort.clone()).expect("sorts are unique");
        }
        for symbol in &self.symbols {
            out.add_symbol(symbol.clone()).expect("sorts retained");
        }
        out
    }

    /// Renames symbols; names not in `mapping` are kept.
    pub fn rename(&self, mapping: &BTreeMap<String, String>) -> Result<Signature> {
        let mut out = Signature::empty();
        for sort in &self.sorts {
            out.add_sort(sort.clone())?;
        }
        for symbol in &self.symbols {
            let name = mapping.get(&symbol.name).unwrap_or(&symbol.name);
            out.add_symbol(symbol.renamed(name.clone()))
                .map_err(|_| Error::RenameCollision(format!("`{name}` produced twice")))?;
        }
        Ok(out)
    }

    /// The mapping `s ↦ s'` on every non-rigid symbol.
    pub fn priming_map(&self) -> BTreeMap<String, String> {
        self.symbols
            .iter()
            .filter(|s| !s.rigid)
            .map(|s| (s.name.clone(), names::primed(&s.name)))
            .collect()
    }

    /// Rigid symbols unchanged, each non-rigid symbol replaced by its primed copy.
    pub fn prime_signature(&self) -> Signature {
        self.rename(&self.priming_map())
            .expect("primed names cannot collide with unprimed ones")
    }

    /// Only the primed copies of the non-rigid symbols.
    pub fn primed_part(&self) -> Signature {
        self.restrict(|s| !s.rigid).prime_signature()
    }

    pub fn rigid_symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.symbols.iter().filter(|s| s.rigid)
    }

    pub fn is_relational(&self) -> bool {
        self.symbols.iter().all(Symbol::is_predicate)
    }
}

/// Free-standing form of [`Signature::prime_signature`].
pub fn prime_signature(sig: &Signature) -> Signature {
    sig.prime_signature()
}
