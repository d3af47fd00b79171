//! Formula evaluation on finite structures and words.
//!
//! Formulas are first compiled against a fixed domain assignment: symbols
//! are resolved to `(layer, index)` pairs and variables to environment
//! slots. A layer is one structure of a tuple evaluated jointly, such as
//! `ρ ∪ σ ∪ ρ′` for transition relations; a word is evaluated with a single
//! layer that moves along the letters.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::formula::{Formula, Term, Var};
use crate::signature::Signature;
use crate::structure::{Domains, Interp, Structure};
use crate::word::Word;

/// Variable assignment: name to `(sort, element index)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Environment {
    vars: BTreeMap<String, (String, u32)>,
}

impl Environment {
    pub fn new() -> Self {
        Environment::default()
    }

    pub fn bind(mut self, name: &str, sort: &str, element: u32) -> Self {
        self.vars.insert(name.to_string(), (sort.to_string(), element));
        self
    }

    pub fn get(&self, name: &str) -> Option<(&str, u32)> {
        self.vars.get(name).map(|(s, e)| (s.as_str(), *e))
    }

    fn slots(&self, free: &[Var], domains: &Domains) -> Result<Vec<u32>> {
        free.iter()
            .map(|v| {
                let (sort, e) = self
                    .vars
                    .get(&v.name)
                    .ok_or_else(|| Error::UnboundVariable(v.name.clone()))?;
                if *sort != v.sort {
                    return Err(Error::SortMismatch {
                        context: format!("assignment of `{}`", v.name),
                        expected: v.sort.clone(),
                        found: sort.clone(),
                    });
                }
                if domains.size(sort).is_none_or(|n| *e as usize >= n) {
                    return Err(Error::Domain(format!("`{}` assigned outside its domain", v.name)));
                }
                Ok(*e)
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
enum CTerm {
    Var(usize),
    Const { layer: usize, sym: usize },
    App { layer: usize, sym: usize, dims: Vec<usize>, args: Vec<CTerm> },
}

#[derive(Clone, Debug)]
enum Node {
    True,
    False,
    Pred { layer: usize, sym: usize, dims: Vec<usize>, args: Vec<CTerm> },
    Eq(CTerm, CTerm),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Implies(Box<Node>, Box<Node>),
    Iff(Box<Node>, Box<Node>),
    Exists { slot: usize, size: u32, body: Box<Node> },
    Forall { slot: usize, size: u32, body: Box<Node> },
    Next(Box<Node>),
    WeakNext(Box<Node>),
    Yesterday(Box<Node>),
    WeakYesterday(Box<Node>),
    Until(Box<Node>, Box<Node>),
    Release(Box<Node>, Box<Node>),
    Since(Box<Node>, Box<Node>),
    Triggered(Box<Node>, Box<Node>),
}

/// A formula resolved against layered signatures and fixed domains.
#[derive(Clone, Debug)]
pub struct Compiled {
    root: Node,
    slots: usize,
    free: Vec<Var>,
    temporal: bool,
}

struct Compiler<'a> {
    layers: &'a [&'a Signature],
    domains: &'a Domains,
    scope: Vec<(String, usize)>,
    slots: usize,
    allow_temporal: bool,
}

impl Compiler<'_> {
    fn resolve(&self, name: &str) -> Result<(usize, usize)> {
        for (l, sig) in self.layers.iter().enumerate() {
            if let Some(i) = sig.index_of(name) {
                return Ok((l, i));
            }
        }
        Err(Error::UnknownSymbol(name.to_string()))
    }

    fn dims(&self, layer: usize, sym: usize) -> Vec<usize> {
        let sig = self.layers[layer];
        sig.symbols()[sym]
            .arg_sorts()
            .iter()
            .map(|s| self.domains.size(s).unwrap_or(0))
            .collect()
    }

    fn sort_size(&self, sort: &str) -> Result<u32> {
        self.domains
            .size(sort)
            .map(|n| n as u32)
            .ok_or_else(|| Error::Domain(format!("no domain for sort `{sort}`")))
    }

    fn term(&self, t: &Term) -> Result<CTerm> {
        match t {
            Term::Var(v) => self
                .scope
                .iter()
                .rev()
                .find(|(n, _)| *n == v.name)
                .map(|(_, s)| CTerm::Var(*s))
                .ok_or_else(|| Error::UnboundVariable(v.name.clone())),
            Term::App(f, args) => {
                let (layer, sym) = self.resolve(f)?;
                let symbol = &self.layers[layer].symbols()[sym];
                if symbol.is_predicate() || symbol.arity() != args.len() {
                    return Err(Error::Structure(format!("`{f}` used with the wrong shape")));
                }
                if args.is_empty() {
                    Ok(CTerm::Const { layer, sym })
                } else {
                    Ok(CTerm::App {
                        layer,
                        sym,
                        dims: self.dims(layer, sym),
                        args: args.iter().map(|a| self.term(a)).collect::<Result<_>>()?,
                    })
                }
            }
        }
    }

    fn bind(&mut self, v: &Var, body: &Formula) -> Result<(usize, u32, Box<Node>)> {
        let size = self.sort_size(&v.sort)?;
        let slot = self.slots;
        self.slots += 1;
        self.scope.push((v.name.clone(), slot));
        let body = self.node(body);
        self.scope.pop();
        Ok((slot, size, Box::new(body?)))
    }

    fn node(&mut self, f: &Formula) -> Result<Node> {
        let b = |c: &mut Self, x: &Formula| c.node(x).map(Box::new);
        if f.is_temporal_node() && !self.allow_temporal {
            return Err(Error::Temporal(f.to_string()));
        }
        Ok(match f {
            Formula::True => Node::True,
            Formula::False => Node::False,
            Formula::Atom(p, args) => {
                let (layer, sym) = self.resolve(p)?;
                let symbol = &self.layers[layer].symbols()[sym];
                if !symbol.is_predicate() || symbol.arity() != args.len() {
                    return Err(Error::Structure(format!("`{p}` used with the wrong shape")));
                }
                Node::Pred {
                    layer,
                    sym,
                    dims: self.dims(layer, sym),
                    args: args.iter().map(|a| self.term(a)).collect::<Result<_>>()?,
                }
            }
            Formula::Eq(a, c) => Node::Eq(self.term(a)?, self.term(c)?),
            Formula::Not(x) => Node::Not(b(self, x)?),
            Formula::And(fs) => Node::And(fs.iter().map(|x| self.node(x)).collect::<Result<_>>()?),
            Formula::Or(fs) => Node::Or(fs.iter().map(|x| self.node(x)).collect::<Result<_>>()?),
            Formula::Implies(x, y) => Node::Implies(b(self, x)?, b(self, y)?),
            Formula::Iff(x, y) => Node::Iff(b(self, x)?, b(self, y)?),
            Formula::Exists(v, body) => {
                let (slot, size, body) = self.bind(v, body)?;
                Node::Exists { slot, size, body }
            }
            Formula::Forall(v, body) => {
                let (slot, size, body) = self.bind(v, body)?;
                Node::Forall { slot, size, body }
            }
            Formula::Next(x) => Node::Next(b(self, x)?),
            Formula::WeakNext(x) => Node::WeakNext(b(self, x)?),
            Formula::Yesterday(x) => Node::Yesterday(b(self, x)?),
            Formula::WeakYesterday(x) => Node::WeakYesterday(b(self, x)?),
            Formula::Until(x, y) => Node::Until(b(self, x)?, b(self, y)?),
            Formula::Release(x, y) => Node::Release(b(self, x)?, b(self, y)?),
            Formula::Since(x, y) => Node::Since(b(self, x)?, b(self, y)?),
            Formula::Triggered(x, y) => Node::Triggered(b(self, x)?, b(self, y)?),
        })
    }
}

enum Frame<'a> {
    Layers(&'a [&'a Structure]),
    Word(&'a [Structure], usize),
}

impl Frame<'_> {
    #[inline]
    fn layer(&self, l: usize) -> &Structure {
        match self {
            Frame::Layers(ls) => ls[l],
            Frame::Word(w, i) => &w[*i],
        }
    }

    fn at(&self, i: usize) -> Frame<'_> {
        match self {
            Frame::Word(w, _) => Frame::Word(w, i),
            Frame::Layers(_) => unreachable!("temporal operator in a first-order evaluation"),
        }
    }

    fn position(&self) -> (usize, usize) {
        match self {
            Frame::Word(w, i) => (*i, w.len()),
            Frame::Layers(_) => unreachable!("temporal operator in a first-order evaluation"),
        }
    }
}

#[inline]
fn tuple_index(dims: &[usize], vals: &[u32]) -> usize {
    let mut idx = 0usize;
    for (d, v) in dims.iter().zip(vals) {
        idx = idx * d + *v as usize;
    }
    idx
}

fn term(t: &CTerm, fr: &Frame<'_>, env: &[u32]) -> u32 {
    match t {
        CTerm::Var(s) => env[*s],
        CTerm::Const { layer, sym } => match fr.layer(*layer).interp(*sym) {
            Interp::Const(v) => *v,
            _ => unreachable!(),
        },
        CTerm::App { layer, sym, dims, args } => {
            let vals: Vec<u32> = args.iter().map(|a| term(a, fr, env)).collect();
            match fr.layer(*layer).interp(*sym) {
                Interp::Func(table) => table[tuple_index(dims, &vals)],
                _ => unreachable!(),
            }
        }
    }
}

fn eval(n: &Node, fr: &Frame<'_>, env: &mut [u32]) -> bool {
    match n {
        Node::True => true,
        Node::False => false,
        Node::Pred { layer, sym, dims, args } => {
            let table = match fr.layer(*layer).interp(*sym) {
                Interp::Pred(t) => t,
                _ => unreachable!(),
            };
            match args.len() {
                0 => table[0],
                1 => table[term(&args[0], fr, env) as usize],
                _ => {
                    let vals: Vec<u32> = args.iter().map(|a| term(a, fr, env)).collect();
                    table[tuple_index(dims, &vals)]
                }
            }
        }
        Node::Eq(a, b) => term(a, fr, env) == term(b, fr, env),
        Node::Not(x) => !eval(x, fr, env),
        Node::And(xs) => xs.iter().all(|x| eval(x, fr, env)),
        Node::Or(xs) => xs.iter().any(|x| eval(x, fr, env)),
        Node::Implies(a, b) => !eval(a, fr, env) || eval(b, fr, env),
        Node::Iff(a, b) => eval(a, fr, env) == eval(b, fr, env),
        Node::Exists { slot, size, body } => (0..*size).any(|e| {
            env[*slot] = e;
            eval(body, fr, env)
        }),
        Node::Forall { slot, size, body } => (0..*size).all(|e| {
            env[*slot] = e;
            eval(body, fr, env)
        }),
        Node::Next(x) => {
            let (i, n) = fr.position();
            i + 1 < n && eval(x, &fr.at(i + 1), env)
        }
        Node::WeakNext(x) => {
            let (i, n) = fr.position();
            i + 1 >= n || eval(x, &fr.at(i + 1), env)
        }
        Node::Yesterday(x) => {
            let (i, _) = fr.position();
            i > 0 && eval(x, &fr.at(i - 1), env)
        }
        Node::WeakYesterday(x) => {
            let (i, _) = fr.position();
            i == 0 || eval(x, &fr.at(i - 1), env)
        }
        Node::Until(a, b) => {
            let (i, n) = fr.position();
            for k in i..n {
                if eval(b, &fr.at(k), env) {
                    return true;
                }
                if !eval(a, &fr.at(k), env) {
                    return false;
                }
            }
            false
        }
        Node::Release(a, b) => {
            // ¬(¬a U ¬b)
            let (i, n) = fr.position();
            for k in i..n {
                if !eval(b, &fr.at(k), env) {
                    return false;
                }
                if eval(a, &fr.at(k), env) {
                    return true;
                }
            }
            true
        }
        Node::Since(a, b) => {
            let (i, _) = fr.position();
            for k in (0..=i).rev() {
                if eval(b, &fr.at(k), env) {
                    return true;
                }
                if !eval(a, &fr.at(k), env) {
                    return false;
                }
            }
            false
        }
        Node::Triggered(a, b) => {
            let (i, _) = fr.position();
            for k in (0..=i).rev() {
                if !eval(b, &fr.at(k), env) {
                    return false;
                }
                if eval(a, &fr.at(k), env) {
                    return true;
                }
            }
            true
        }
    }
}

impl Compiled {
    /// Compiles a first-order formula over the union of `layers`, searched
    /// in order. `free` lists the variables the environment must provide.
    pub fn first_order(phi: &Formula, layers: &[&Signature], domains: &Domains, free: &[Var]) -> Result<Compiled> {
        Compiled::build(phi, layers, domains, free, false)
    }

    /// Compiles a formula with temporal operators for evaluation on words.
    pub fn temporal(phi: &Formula, sig: &Signature, domains: &Domains, free: &[Var]) -> Result<Compiled> {
        Compiled::build(phi, &[sig], domains, free, true)
    }

    fn build(phi: &Formula, layers: &[&Signature], domains: &Domains, free: &[Var], temporal: bool) -> Result<Compiled> {
        let mut c = Compiler {
            layers,
            domains,
            scope: free.iter().enumerate().map(|(i, v)| (v.name.clone(), i)).collect(),
            slots: free.len(),
            allow_temporal: temporal,
        };
        let root = c.node(phi)?;
        Ok(Compiled {
            root,
            slots: c.slots,
            free: free.to_vec(),
            temporal,
        })
    }

    pub fn free_vars(&self) -> &[Var] {
        &self.free
    }

    /// Evaluates on structures laid out as the compile-time layers; `args`
    /// assigns the free variables in order.
    pub fn eval_layers(&self, layers: &[&Structure], args: &[u32]) -> bool {
        debug_assert!(!self.temporal);
        let mut env = vec![0u32; self.slots.max(1)];
        env[..args.len()].copy_from_slice(args);
        eval(&self.root, &Frame::Layers(layers), &mut env)
    }

    pub fn eval_word(&self, letters: &[Structure], position: usize, args: &[u32]) -> bool {
        debug_assert!(self.temporal);
        let mut env = vec![0u32; self.slots.max(1)];
        env[..args.len()].copy_from_slice(args);
        eval(&self.root, &Frame::Word(letters, position), &mut env)
    }
}

/// Classical first-order truth of `phi` in `structure` under `env`.
pub fn eval_fo(structure: &Structure, phi: &Formula, env: &Environment) -> Result<bool> {
    phi.require_first_order()?;
    let free = phi.free_vars();
    let args = env.slots(&free, structure.domains())?;
    let c = Compiled::first_order(phi, &[structure.signature()], structure.domains(), &free)?;
    Ok(c.eval_layers(&[structure], &args))
}

/// `word, env, i ⊨ phi` under the finite-word semantics.
pub fn satisfies(word: &Word, phi: &Formula, i: usize, env: &Environment) -> Result<bool> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    if i >= word.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: word.len(),
        });
    }
    let free = phi.free_vars();
    let args = env.slots(&free, word.domains())?;
    let c = Compiled::temporal(phi, word.signature(), word.domains(), &free)?;
    Ok(c.eval_word(word.letters(), i, &args))
}

/// Sentence-level satisfaction at position 0.
pub fn satisfies_sentence(word: &Word, phi: &Formula) -> Result<bool> {
    phi.require_sentence()?;
    satisfies(word, phi, 0, &Environment::new())
}

/// Pure-past satisfaction, evaluated at the last position.
pub fn satisfies_pure_past(word: &Word, phi: &Formula) -> Result<bool> {
    if !phi.is_pure_past() {
        return Err(Error::NotPurePast(phi.to_string()));
    }
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    phi.require_sentence()?;
    satisfies(word, phi, word.len() - 1, &Environment::new())
}
