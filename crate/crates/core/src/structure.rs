//! Explicit finite structures and their enumeration.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signature::{Signature, SymbolKind};

/// Finite carrier per sort. Elements are named, and identified by their
/// position in the list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<String, Vec<String>>", into = "BTreeMap<String, Vec<String>>")]
pub struct Domains {
    map: BTreeMap<String, Vec<String>>,
}

impl TryFrom<BTreeMap<String, Vec<String>>> for Domains {
    type Error = Error;

    fn try_from(map: BTreeMap<String, Vec<String>>) -> Result<Self> {
        Domains::new(map)
    }
}

impl From<Domains> for BTreeMap<String, Vec<String>> {
    fn from(d: Domains) -> Self {
        d.map
    }
}

impl Domains {
    pub fn new(map: BTreeMap<String, Vec<String>>) -> Result<Self> {
        for (sort, elems) in &map {
            if elems.is_empty() {
                return Err(Error::Domain(format!("sort `{sort}` has an empty domain")));
            }
            let mut seen = elems.clone();
            seen.sort();
            seen.dedup();
            if seen.len() != elems.len() {
                return Err(Error::Domain(format!("sort `{sort}` lists an element twice")));
            }
        }
        Ok(Domains { map })
    }

    /// `n` elements named `e0..` for each sort.
    pub fn uniform<S: AsRef<str>>(sorts: &[S], n: usize) -> Self {
        Domains::with_sizes(sorts.iter().map(|s| (s.as_ref(), n)))
    }

    pub fn with_sizes<'a>(sizes: impl IntoIterator<Item = (&'a str, usize)>) -> Self {
        let map = sizes
            .into_iter()
            .map(|(s, n)| (s.to_string(), (0..n.max(1)).map(|i| format!("e{i}")).collect()))
            .collect();
        Domains { map }
    }

    pub fn sorts(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(String::as_str)
    }

    pub fn elements(&self, sort: &str) -> Option<&[String]> {
        self.map.get(sort).map(Vec::as_slice)
    }

    pub fn size(&self, sort: &str) -> Option<usize> {
        self.map.get(sort).map(Vec::len)
    }

    pub fn element_index(&self, sort: &str, name: &str) -> Option<u32> {
        self.map
            .get(sort)?
            .iter()
            .position(|e| e == name)
            .map(|i| i as u32)
    }

    pub fn element_name(&self, sort: &str, index: u32) -> Option<&str> {
        self.map.get(sort)?.get(index as usize).map(String::as_str)
    }

    pub fn covers(&self, sig: &Signature) -> Result<()> {
        for sort in sig.sorts() {
            if !self.map.contains_key(sort) {
                return Err(Error::Domain(format!("no domain for sort `{sort}`")));
            }
        }
        Ok(())
    }

    /// Merges two domain assignments that agree on shared sorts.
    pub fn merge(&self, other: &Domains) -> Result<Domains> {
        let mut map = self.map.clone();
        for (sort, elems) in &other.map {
            match map.get(sort) {
                Some(mine) if mine != elems => {
                    return Err(Error::Domain(format!("sort `{sort}` has different domains")))
                }
                Some(_) => {}
                None => {
                    map.insert(sort.clone(), elems.clone());
                }
            }
        }
        Ok(Domains { map })
    }

    /// Agreement on every sort present in both.
    pub fn agrees_with(&self, other: &Domains) -> bool {
        self.map
            .iter()
            .all(|(s, e)| other.map.get(s).is_none_or(|o| o == e))
    }

    /// The sub-assignment for the sorts of `sig`.
    pub fn for_signature(&self, sig: &Signature) -> Result<Domains> {
        self.covers(sig)?;
        Ok(Domains {
            map: sig
                .sorts()
                .iter()
                .map(|s| (s.clone(), self.map[s].clone()))
                .collect(),
        })
    }
}

/// Interpretation of one symbol. Tables are indexed by argument tuples in
/// row-major order over the argument domains (last argument fastest).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Interp {
    Const(u32),
    Func(Vec<u32>),
    Pred(Vec<bool>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Structure {
    sig: Arc<Signature>,
    domains: Arc<Domains>,
    sizes: Vec<usize>,
    interps: Vec<Interp>,
}

impl fmt::Debug for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Structure {}", serde_json::to_string(&self.tables()).unwrap_or_default())
    }
}

fn sort_sizes(sig: &Signature, domains: &Domains) -> Result<Vec<usize>> {
    sig.sorts()
        .iter()
        .map(|s| {
            domains
                .size(s)
                .ok_or_else(|| Error::Domain(format!("no domain for sort `{s}`")))
        })
        .collect()
}

fn table_len(sig: &Signature, sizes: &[usize], symbol: usize) -> usize {
    sig.arg_sort_ids(symbol).iter().map(|&s| sizes[s]).product()
}

impl Structure {
    pub fn new(sig: Arc<Signature>, domains: Arc<Domains>, interps: Vec<Interp>) -> Result<Self> {
        let sizes = sort_sizes(&sig, &domains)?;
        if interps.len() != sig.len() {
            return Err(Error::Structure(format!(
                "{} interpretations for {} symbols",
                interps.len(),
                sig.len()
            )));
        }
        for (i, (sym, interp)) in sig.symbols().iter().zip(&interps).enumerate() {
            let len = table_len(&sig, &sizes, i);
            let range = sig.result_sort_id(i).map(|s| sizes[s] as u32);
            let ok = match (&sym.kind, interp) {
                (SymbolKind::Constant { .. }, Interp::Const(v)) => *v < range.unwrap(),
                (SymbolKind::Function { .. }, Interp::Func(t)) => {
                    t.len() == len && t.iter().all(|v| *v < range.unwrap())
                }
                (SymbolKind::Predicate { .. }, Interp::Pred(t)) => t.len() == len,
                _ => false,
            };
            if !ok {
                return Err(Error::Structure(format!(
                    "interpretation of `{}` does not fit its declaration",
                    sym.name
                )));
            }
        }
        Ok(Structure {
            sig,
            domains,
            sizes,
            interps,
        })
    }

    /// Structure where constants and functions map to the first element and
    /// predicates are empty.
    pub fn default_for(sig: Arc<Signature>, domains: Arc<Domains>) -> Result<Self> {
        let sizes = sort_sizes(&sig, &domains)?;
        let interps = sig
            .symbols()
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let len = table_len(&sig, &sizes, i);
                match s.kind {
                    SymbolKind::Constant { .. } => Interp::Const(0),
                    SymbolKind::Function { .. } => Interp::Func(vec![0; len]),
                    SymbolKind::Predicate { .. } => Interp::Pred(vec![false; len]),
                }
            })
            .collect();
        Ok(Structure {
            sig,
            domains,
            sizes,
            interps,
        })
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

    pub fn interps(&self) -> &[Interp] {
        &self.interps
    }

    pub fn interp(&self, symbol: usize) -> &Interp {
        &self.interps[symbol]
    }

    /// Domain size of the signature's sort with index `sort`.
    pub fn sort_size(&self, sort: usize) -> usize {
        self.sizes[sort]
    }

    pub fn tuple_index(&self, symbol: usize, args: &[u32]) -> usize {
        let mut idx = 0usize;
        for (&a, &s) in args.iter().zip(self.sig.arg_sort_ids(symbol)) {
            idx = idx * self.sizes[s] + a as usize;
        }
        idx
    }

    fn symbol(&self, name: &str) -> Result<usize> {
        self.sig
            .index_of(name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    fn element(&self, sort: &str, name: &str) -> Result<u32> {
        self.domains
            .element_index(sort, name)
            .ok_or_else(|| Error::Structure(format!("`{name}` is not an element of sort `{sort}`")))
    }

    fn arg_indices(&self, symbol: usize, args: &[&str]) -> Result<Vec<u32>> {
        let sym = &self.sig.symbols()[symbol];
        if args.len() != sym.arity() {
            return Err(Error::Structure(format!(
                "`{}` takes {} arguments",
                sym.name,
                sym.arity()
            )));
        }
        sym.arg_sorts()
            .iter()
            .zip(args)
            .map(|(s, a)| self.element(s, a))
            .collect()
    }

    pub fn set_constant(&mut self, name: &str, value: &str) -> Result<()> {
        let i = self.symbol(name)?;
        let sort = self.sig.symbols()[i]
            .result_sort()
            .ok_or_else(|| Error::Structure(format!("`{name}` is not a constant")))?
            .to_string();
        let v = self.element(&sort, value)?;
        match &mut self.interps[i] {
            Interp::Const(c) => *c = v,
            _ => return Err(Error::Structure(format!("`{name}` is not a constant"))),
        }
        Ok(())
    }

    pub fn set_function(&mut self, name: &str, args: &[&str], value: &str) -> Result<()> {
        let i = self.symbol(name)?;
        let tuple = self.arg_indices(i, args)?;
        let idx = self.tuple_index(i, &tuple);
        let sort = self.sig.symbols()[i].result_sort().unwrap_or_default().to_string();
        let v = self.element(&sort, value)?;
        match &mut self.interps[i] {
            Interp::Func(t) => t[idx] = v,
            _ => return Err(Error::Structure(format!("`{name}` is not a function"))),
        }
        Ok(())
    }

    pub fn set_predicate(&mut self, name: &str, args: &[&str], value: bool) -> Result<()> {
        let i = self.symbol(name)?;
        let tuple = self.arg_indices(i, args)?;
        let idx = self.tuple_index(i, &tuple);
        match &mut self.interps[i] {
            Interp::Pred(t) => t[idx] = value,
            _ => return Err(Error::Structure(format!("`{name}` is not a predicate"))),
        }
        Ok(())
    }

    pub fn with_constant(mut self, name: &str, value: &str) -> Result<Self> {
        self.set_constant(name, value)?;
        Ok(self)
    }

    pub fn with_function(mut self, name: &str, args: &[&str], value: &str) -> Result<Self> {
        self.set_function(name, args, value)?;
        Ok(self)
    }

    pub fn with_fact(mut self, name: &str, args: &[&str]) -> Result<Self> {
        self.set_predicate(name, args, true)?;
        Ok(self)
    }

    pub fn holds(&self, name: &str, args: &[&str]) -> Result<bool> {
        let i = self.symbol(name)?;
        let tuple = self.arg_indices(i, args)?;
        match &self.interps[i] {
            Interp::Pred(t) => Ok(t[self.tuple_index(i, &tuple)]),
            _ => Err(Error::Structure(format!("`{name}` is not a predicate"))),
        }
    }

    pub fn constant_value(&self, name: &str) -> Result<&str> {
        let i = self.symbol(name)?;
        match &self.interps[i] {
            Interp::Const(v) => {
                let sort = self.sig.symbols()[i].result_sort().unwrap();
                Ok(self.domains.element_name(sort, *v).unwrap())
            }
            _ => Err(Error::Structure(format!("`{name}` is not a constant"))),
        }
    }

    /// Interpretation of a named symbol, if present.
    pub fn interp_of(&self, name: &str) -> Option<&Interp> {
        self.sig.index_of(name).map(|i| &self.interps[i])
    }

    /// The reduct to the symbols of `sub`, which must be a sub-signature.
    pub fn reduct(&self, sub: Arc<Signature>) -> Result<Structure> {
        let interps = sub
            .symbols()
            .iter()
            .map(|s| {
                let i = self.symbol(&s.name)?;
                if self.sig.symbols()[i].kind != s.kind {
                    return Err(Error::Structure(format!("`{}` changes kind", s.name)));
                }
                Ok(self.interps[i].clone())
            })
            .collect::<Result<Vec<_>>>()?;
        let domains = Arc::new(self.domains.for_signature(&sub)?);
        Structure::new(sub, domains, interps)
    }

    /// Same tables over a renamed signature with identical symbol order.
    pub fn relabel(&self, sig: Arc<Signature>) -> Result<Structure> {
        if sig.len() != self.sig.len()
            || sig
                .symbols()
                .iter()
                .zip(self.sig.symbols())
                .any(|(a, b)| a.kind != b.kind)
        {
            return Err(Error::Structure("relabelled signature has a different shape".into()));
        }
        Structure::new(sig, self.domains.clone(), self.interps.clone())
    }

    /// The image of the structure under per-sort element permutations
    /// (`perm[e]` is the new index of element `e`); sorts without an entry
    /// are left fixed.
    pub fn permuted(&self, perms: &BTreeMap<String, Vec<u32>>) -> Structure {
        let maps: Vec<Option<&Vec<u32>>> = self.sig.sorts().iter().map(|s| perms.get(s)).collect();
        let apply = |sort: usize, e: u32| maps[sort].map_or(e, |p| p[e as usize]);
        let mut out = self.clone();
        for (i, interp) in self.interps.iter().enumerate() {
            let arg_sorts = self.sig.arg_sort_ids(i);
            let result = self.sig.result_sort_id(i);
            let dims: Vec<usize> = arg_sorts.iter().map(|&s| self.sizes[s]).collect();
            let image = |args: &[u32]| -> Vec<u32> {
                args.iter().zip(arg_sorts).map(|(&a, &s)| apply(s, a)).collect()
            };
            match interp {
                Interp::Const(v) => out.interps[i] = Interp::Const(apply(result.unwrap(), *v)),
                Interp::Func(t) => {
                    let mut table = t.clone();
                    for (k, args) in TupleIter::new(dims).enumerate() {
                        table[self.tuple_index(i, &image(&args))] = apply(result.unwrap(), t[k]);
                    }
                    out.interps[i] = Interp::Func(table);
                }
                Interp::Pred(t) => {
                    let mut table = t.clone();
                    for (k, args) in TupleIter::new(dims).enumerate() {
                        table[self.tuple_index(i, &image(&args))] = t[k];
                    }
                    out.interps[i] = Interp::Pred(table);
                }
            }
        }
        out
    }

    pub fn tables(&self) -> Tables {
        let mut t = Tables::default();
        for (i, sym) in self.sig.symbols().iter().enumerate() {
            let arg_sorts = sym.arg_sorts();
            let tuples = || {
                let sizes: Vec<usize> = self.sig.arg_sort_ids(i).iter().map(|&s| self.sizes[s]).collect();
                TupleIter::new(sizes).map(|tuple| {
                    tuple
                        .iter()
                        .zip(arg_sorts)
                        .map(|(&e, s)| self.domains.element_name(s, e).unwrap().to_string())
                        .collect::<Vec<_>>()
                })
            };
            match &self.interps[i] {
                Interp::Const(v) => {
                    let sort = sym.result_sort().unwrap();
                    t.constants
                        .insert(sym.name.clone(), self.domains.element_name(sort, *v).unwrap().to_string());
                }
                Interp::Func(table) => {
                    let sort = sym.result_sort().unwrap();
                    let rows = tuples()
                        .zip(table)
                        .map(|(mut row, v)| {
                            row.push(self.domains.element_name(sort, *v).unwrap().to_string());
                            row
                        })
                        .collect();
                    t.functions.insert(sym.name.clone(), rows);
                }
                Interp::Pred(table) => {
                    let rows = tuples().zip(table).filter(|(_, v)| **v).map(|(r, _)| r).collect();
                    t.predicates.insert(sym.name.clone(), rows);
                }
            }
        }
        t
    }

    pub fn from_tables(sig: Arc<Signature>, domains: Arc<Domains>, tables: &Tables) -> Result<Structure> {
        let mut s = Structure::default_for(sig.clone(), domains)?;
        for name in tables
            .constants
            .keys()
            .chain(tables.functions.keys())
            .chain(tables.predicates.keys())
        {
            if !sig.contains(name) {
                return Err(Error::UnknownSymbol(name.clone()));
            }
        }
        for sym in sig.symbols() {
            match &sym.kind {
                SymbolKind::Constant { .. } => {
                    let v = tables
                        .constants
                        .get(&sym.name)
                        .ok_or_else(|| Error::Structure(format!("missing constant `{}`", sym.name)))?;
                    s.set_constant(&sym.name, v)?;
                }
                SymbolKind::Function { args, .. } => {
                    let rows = tables
                        .functions
                        .get(&sym.name)
                        .ok_or_else(|| Error::Structure(format!("missing function `{}`", sym.name)))?;
                    let expected: usize = args.iter().map(|a| s.domains.size(a).unwrap()).product();
                    if rows.len() != expected {
                        return Err(Error::Structure(format!(
                            "function `{}` needs {expected} rows, found {}",
                            sym.name,
                            rows.len()
                        )));
                    }
                    let mut seen = vec![false; expected];
                    for row in rows {
                        let Some((value, argv)) = row.split_last() else {
                            return Err(Error::Structure(format!("empty row for `{}`", sym.name)));
                        };
                        let argv: Vec<&str> = argv.iter().map(String::as_str).collect();
                        let i = s.symbol(&sym.name)?;
                        let idx = s.tuple_index(i, &s.arg_indices(i, &argv)?);
                        if std::mem::replace(&mut seen[idx], true) {
                            return Err(Error::Structure(format!("function `{}` defined twice on a tuple", sym.name)));
                        }
                        s.set_function(&sym.name, &argv, value)?;
                    }
                }
                SymbolKind::Predicate { .. } => {
                    if let Some(rows) = tables.predicates.get(&sym.name) {
                        for row in rows {
                            let argv: Vec<&str> = row.iter().map(String::as_str).collect();
                            s.set_predicate(&sym.name, &argv, true)?;
                        }
                    }
                }
            }
        }
        Ok(s)
    }
}

/// Serialized symbol tables. Function rows list the arguments followed by the
/// value; predicate rows list the tuples that hold (`[[]]` for a true
/// proposition).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tables {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub constants: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub functions: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub predicates: BTreeMap<String, Vec<Vec<String>>>,
}

/// Lexicographic enumeration of index tuples.
pub(crate) struct TupleIter {
    sizes: Vec<usize>,
    next: Option<Vec<u32>>,
}

impl TupleIter {
    pub(crate) fn new(sizes: Vec<usize>) -> Self {
        let next = if sizes.contains(&0) {
            None
        } else {
            Some(vec![0; sizes.len()])
        };
        TupleIter { sizes, next }
    }
}

impl Iterator for TupleIter {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for pos in (0..succ.len()).rev() {
            succ[pos] += 1;
            if (succ[pos] as usize) < self.sizes[pos] {
                self.next = Some(succ);
                return Some(current);
            }
            succ[pos] = 0;
        }
        Some(current)
    }
}

/// Merges structures over pairwise-disjoint signatures that agree on shared
/// sorts.
pub fn join_structures(parts: &[&Structure]) -> Result<Structure> {
    let Some((first, rest)) = parts.split_first() else {
        return Structure::new(Arc::new(Signature::empty()), Arc::new(Domains::default()), vec![]);
    };
    if rest.is_empty() {
        return Ok((*first).clone());
    }
    let mut sig = first.sig.as_ref().clone();
    let mut domains = first.domains.as_ref().clone();
    let mut interps = first.interps.clone();
    for part in rest {
        domains = domains.merge(&part.domains)?;
        sig = sig.union(&part.sig)?;
        interps.extend(part.interps.iter().cloned());
    }
    Structure::new(Arc::new(sig), Arc::new(domains), interps)
}

/// Number of structures over `sig` with the given domains, or `None` on overflow.
pub fn structure_count(sig: &Signature, domains: &Domains) -> Result<Option<u128>> {
    let sizes = sort_sizes(sig, domains)?;
    let mut total: u128 = 1;
    for i in 0..sig.len() {
        let len = table_len(sig, &sizes, i);
        let radix = sig.result_sort_id(i).map_or(2, |s| sizes[s]) as u128;
        for _ in 0..len {
            total = match total.checked_mul(radix) {
                Some(t) => t,
                None => return Ok(None),
            };
        }
    }
    Ok(Some(total))
}

/// Every structure over `sig` with exactly the given domains.
///
/// Order: an odometer over all table cells, cells laid out symbol by symbol in
/// declaration order and tuple by tuple in lexicographic order, the last cell
/// varying fastest; `false < true` and elements ordered by domain position.
pub fn enumerate_structures(sig: Arc<Signature>, domains: Arc<Domains>) -> Result<StructureIter> {
    let sizes = sort_sizes(&sig, &domains)?;
    let mut radices = Vec::new();
    let mut owners = Vec::new();
    for i in 0..sig.len() {
        let len = table_len(&sig, &sizes, i);
        let radix = sig.result_sort_id(i).map_or(2, |s| sizes[s]);
        for _ in 0..len {
            radices.push(radix);
            owners.push(i);
        }
    }
    let base = Structure::default_for(sig, domains)?;
    Ok(StructureIter {
        base,
        radices,
        owners,
        digits: None,
        done: false,
    })
}

pub struct StructureIter {
    base: Structure,
    radices: Vec<usize>,
    owners: Vec<usize>,
    digits: Option<Vec<u32>>,
    done: bool,
}

impl StructureIter {
    fn build(&self, digits: &[u32]) -> Structure {
        let mut s = self.base.clone();
        let mut cell = 0;
        for interp in s.interps.iter_mut() {
            match interp {
                Interp::Const(v) => {
                    *v = digits[cell];
                    cell += 1;
                }
                Interp::Func(t) => {
                    for v in t.iter_mut() {
                        *v = digits[cell];
                        cell += 1;
                    }
                }
                Interp::Pred(t) => {
                    for v in t.iter_mut() {
                        *v = digits[cell] == 1;
                        cell += 1;
                    }
                }
            }
        }
        debug_assert_eq!(cell, self.owners.len());
        s
    }
}

impl Iterator for StructureIter {
    type Item = Structure;

    fn next(&mut self) -> Option<Structure> {
        if self.done {
            return None;
        }
        let digits = match self.digits.take() {
            None => vec![0; self.radices.len()],
            Some(mut d) => {
                let mut pos = d.len();
                loop {
                    if pos == 0 {
                        self.done = true;
                        return None;
                    }
                    pos -= 1;
                    d[pos] += 1;
                    if (d[pos] as usize) < self.radices[pos] {
                        break;
                    }
                    d[pos] = 0;
                }
                d
            }
        };
        let s = self.build(&digits);
        self.digits = Some(digits);
        Some(s)
    }
}
