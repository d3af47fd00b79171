//! Exhaustive acceptance on finite domains.
//!
//! Every state structure over the given domains is enumerated once; runs are
//! simulated forward as sets of state indices. Successors of a
//! `(state, letter)` pair are computed on first use and cached.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;
use std::sync::Arc;

use fixedbitset::FixedBitSet;

use super::Automaton;
use crate::error::{Error, Result};
use crate::eval::Compiled;
use crate::signature::Signature;
use crate::structure::{enumerate_structures, structure_count, Domains, Interp, Structure};
use crate::theory::Theory;
use crate::word::{validate_word, Word};

/// Enumeration budgets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum number of state structures.
    pub states: u128,
    /// Maximum number of letters in a word space.
    pub letters: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            states: 1 << 14,
            letters: 1 << 16,
        }
    }
}

fn rigid_key(s: &Structure) -> Vec<Interp> {
    s.signature()
        .symbols()
        .iter()
        .zip(s.interps())
        .filter(|(sym, _)| sym.rigid)
        .map(|(_, i)| i.clone())
        .collect()
}

fn budget(what: &str, sig: &Signature, domains: &Domains, limit: u128) -> Result<()> {
    match structure_count(sig, domains)? {
        Some(n) if n <= limit => Ok(()),
        n => Err(Error::Budget {
            what: what.to_string(),
            needed: n.unwrap_or(u128::MAX),
            limit,
        }),
    }
}

/// All letters over a word signature and fixed domains that satisfy the
/// theory, grouped by the interpretation of the rigid symbols. Words of the
/// space draw all their letters from one group.
#[derive(Clone, Debug)]
pub struct WordSpace {
    sigma: Arc<Signature>,
    domains: Arc<Domains>,
    groups: Vec<Vec<Structure>>,
}

impl WordSpace {
    pub fn new(sigma: &Signature, domains: &Domains, theory: &Theory, limits: Limits) -> Result<Self> {
        let domains = Arc::new(domains.for_signature(sigma)?);
        budget("letters", sigma, &domains, limits.letters)?;
        let sigma = Arc::new(sigma.clone());
        let axioms = theory
            .axioms()
            .iter()
            .map(|a| Compiled::first_order(a, &[&sigma], &domains, &[]))
            .collect::<Result<Vec<_>>>()?;
        let mut groups: Vec<Vec<Structure>> = Vec::new();
        let mut index: HashMap<Vec<Interp>, usize> = HashMap::new();
        for letter in enumerate_structures(sigma.clone(), domains.clone())? {
            if !axioms.iter().all(|a| a.eval_layers(&[&letter], &[])) {
                continue;
            }
            let g = *index.entry(rigid_key(&letter)).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[g].push(letter);
        }
        Ok(WordSpace { sigma, domains, groups })
    }

    pub fn signature(&self) -> &Signature {
        &self.sigma
    }

    pub fn domains(&self) -> &Domains {
        &self.domains
    }

    pub fn groups(&self) -> &[Vec<Structure>] {
        &self.groups
    }

    /// Every word of length at most `max_len`: the empty word first, then
    /// group by group in depth-first preorder.
    pub fn words(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty(self.sigma.clone(), self.domains.clone())];
        for group in &self.groups {
            let mut stack = Vec::new();
            self.collect(group, max_len, &mut stack, &mut out);
        }
        out
    }

    fn collect(&self, group: &[Structure], max_len: usize, prefix: &mut Vec<Structure>, out: &mut Vec<Word>) {
        if prefix.len() == max_len {
            return;
        }
        for l in group {
            prefix.push(l.clone());
            out.push(Word::new(self.sigma.clone(), self.domains.clone(), prefix.clone()).expect("letters fit"));
            self.collect(group, max_len, prefix, out);
            prefix.pop();
        }
    }
}

/// A sequence of state structures, one more than the letters read.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub states: Vec<Structure>,
}

impl Run {
    /// Whether this is an accepting run of `a` on `word`: the states share
    /// the word's domains, keep the rigid state symbols fixed, start in
    /// `φ₀`, follow `φ_T` letter by letter and end in `φ_F`.
    pub fn is_accepting(&self, a: &Automaton, word: &Word) -> Result<bool> {
        if self.states.len() != word.len() + 1 {
            return Ok(false);
        }
        let Some(first) = self.states.first() else {
            return Ok(false);
        };
        if self
            .states
            .iter()
            .any(|s| s.signature() != a.state_signature() || !s.domains().agrees_with(word.domains()))
        {
            return Ok(false);
        }
        if self.states.iter().any(|s| rigid_key(s) != rigid_key(first)) {
            return Ok(false);
        }
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        let domains = first.domains().merge(word.domains())?;
        let rigid_sigma = Arc::new(a.word_signature().restrict(|s| s.rigid));
        let gamma = a.state_signature();
        let primed = gamma.prime_signature();
        let rigid = word.letters()[0].reduct(rigid_sigma.clone())?;
        let init = Compiled::first_order(a.init(), &[gamma, &rigid_sigma], &domains, &[])?;
        let fin = Compiled::first_order(a.fin(), &[gamma, &rigid_sigma], &domains, &[])?;
        let last = self.states.last().expect("nonempty");
        if !init.eval_layers(&[first, &rigid], &[]) || !fin.eval_layers(&[last, &rigid], &[]) {
            return Ok(false);
        }
        let trans = Compiled::first_order(a.trans(), &[gamma, a.word_signature(), &primed], &domains, &[])?;
        Ok(word
            .letters()
            .iter()
            .enumerate()
            .all(|(i, l)| trans.eval_layers(&[&self.states[i], l, &self.states[i + 1]], &[])))
    }
}

struct Boundary {
    init: FixedBitSet,
    fin: FixedBitSet,
}

/// Brute-force acceptance for one automaton over fixed domains.
pub struct Oracle<'a> {
    automaton: &'a Automaton,
    domains: Arc<Domains>,
    rigid_sigma: Arc<Signature>,
    states: Vec<Structure>,
    state_group: Vec<usize>,
    groups: Vec<Vec<u32>>,
    init: Compiled,
    fin: Compiled,
    trans: Compiled,
    letters: RefCell<Vec<Structure>>,
    letter_ids: RefCell<HashMap<Structure, usize>>,
    letter_boundary: RefCell<Vec<usize>>,
    boundaries: RefCell<Vec<Boundary>>,
    boundary_ids: RefCell<HashMap<Vec<Interp>, usize>>,
    successors: RefCell<SuccessorCache>,
}

/// Successor state indices per (state, letter).
type SuccessorCache = HashMap<(u32, usize), Rc<[u32]>>;

impl<'a> Oracle<'a> {
    /// `domains` must cover the sorts of both signatures.
    pub fn new(automaton: &'a Automaton, domains: &Domains) -> Result<Self> {
        Oracle::with_limits(automaton, domains, Limits::default())
    }

    pub fn with_limits(automaton: &'a Automaton, domains: &Domains, limits: Limits) -> Result<Self> {
        let gamma = automaton.state_signature();
        let sigma = automaton.word_signature();
        let domains = Arc::new(domains.for_signature(&gamma.union(sigma)?)?);
        let state_domains = Arc::new(domains.for_signature(gamma)?);
        budget("state structures", gamma, &state_domains, limits.states)?;
        let states: Vec<Structure> = enumerate_structures(Arc::new(gamma.clone()), state_domains)?.collect();
        let mut group_ids: HashMap<Vec<Interp>, usize> = HashMap::new();
        let mut groups: Vec<Vec<u32>> = Vec::new();
        let mut state_group = Vec::with_capacity(states.len());
        for (i, s) in states.iter().enumerate() {
            let g = *group_ids.entry(rigid_key(s)).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[g].push(i as u32);
            state_group.push(g);
        }
        let rigid_sigma = Arc::new(sigma.restrict(|s| s.rigid));
        let primed = gamma.prime_signature();
        let init = Compiled::first_order(automaton.init(), &[gamma, &rigid_sigma], &domains, &[])?;
        let fin = Compiled::first_order(automaton.fin(), &[gamma, &rigid_sigma], &domains, &[])?;
        let trans = Compiled::first_order(automaton.trans(), &[gamma, sigma, &primed], &domains, &[])?;
        Ok(Oracle {
            automaton,
            domains,
            rigid_sigma,
            states,
            state_group,
            groups,
            init,
            fin,
            trans,
            letters: RefCell::default(),
            letter_ids: RefCell::default(),
            letter_boundary: RefCell::default(),
            boundaries: RefCell::default(),
            boundary_ids: RefCell::default(),
            successors: RefCell::default(),
        })
    }

    pub fn states(&self) -> &[Structure] {
        &self.states
    }

    pub fn domains(&self) -> &Domains {
        &self.domains
    }

    fn boundary_for(&self, rigid_part: &Structure) -> usize {
        let key = rigid_key(rigid_part);
        if let Some(&b) = self.boundary_ids.borrow().get(&key) {
            return b;
        }
        let n = self.states.len();
        let mut init = FixedBitSet::with_capacity(n);
        let mut fin = FixedBitSet::with_capacity(n);
        for (i, s) in self.states.iter().enumerate() {
            init.set(i, self.init.eval_layers(&[s, rigid_part], &[]));
            fin.set(i, self.fin.eval_layers(&[s, rigid_part], &[]));
        }
        let mut boundaries = self.boundaries.borrow_mut();
        boundaries.push(Boundary { init, fin });
        self.boundary_ids.borrow_mut().insert(key, boundaries.len() - 1);
        boundaries.len() - 1
    }

    /// Interns a letter; the letter must be a structure over the word
    /// signature with domains agreeing with the oracle's.
    pub fn intern(&self, letter: &Structure) -> Result<usize> {
        if let Some(&id) = self.letter_ids.borrow().get(letter) {
            return Ok(id);
        }
        if letter.signature() != self.automaton.word_signature() {
            return Err(Error::Structure("letter is not over the word signature".into()));
        }
        if !letter.domains().agrees_with(&self.domains) {
            return Err(Error::Domain("letter domains differ from the state domains".into()));
        }
        let b = self.boundary_for(&letter.reduct(self.rigid_sigma.clone())?);
        let mut letters = self.letters.borrow_mut();
        letters.push(letter.clone());
        self.letter_boundary.borrow_mut().push(b);
        self.letter_ids.borrow_mut().insert(letter.clone(), letters.len() - 1);
        Ok(letters.len() - 1)
    }

    /// States reachable from `state` by reading the interned letter.
    pub fn successors(&self, state: u32, letter: usize) -> Rc<[u32]> {
        if let Some(s) = self.successors.borrow().get(&(state, letter)) {
            return s.clone();
        }
        let letters = self.letters.borrow();
        let l = &letters[letter];
        let from = &self.states[state as usize];
        let succ: Rc<[u32]> = self.groups[self.state_group[state as usize]]
            .iter()
            .copied()
            .filter(|&t| self.trans.eval_layers(&[from, l, &self.states[t as usize]], &[]))
            .collect();
        self.successors.borrow_mut().insert((state, letter), succ.clone());
        succ
    }

    /// States satisfying `φ₀` under the rigid part of the interned letter.
    pub fn initial_states(&self, letter: usize) -> Vec<u32> {
        self.initial_set(letter).ones().map(|s| s as u32).collect()
    }

    /// Whether `state` satisfies `φ_F` under the rigid part of the letter.
    pub fn is_final(&self, state: u32, letter: usize) -> bool {
        let b = self.letter_boundary.borrow()[letter];
        self.boundaries.borrow()[b].fin.contains(state as usize)
    }

    fn initial_set(&self, letter: usize) -> FixedBitSet {
        let b = self.letter_boundary.borrow()[letter];
        self.boundaries.borrow()[b].init.clone()
    }

    fn step(&self, set: &FixedBitSet, letter: usize) -> FixedBitSet {
        let mut next = FixedBitSet::with_capacity(self.states.len());
        for s in set.ones() {
            for &t in self.successors(s as u32, letter).iter() {
                next.insert(t as usize);
            }
        }
        next
    }

    fn accepting(&self, set: &FixedBitSet, letter: usize) -> bool {
        let b = self.letter_boundary.borrow()[letter];
        !set.is_disjoint(&self.boundaries.borrow()[b].fin)
    }

    /// Whether the empty word is accepted: some interpretation of the rigid
    /// word symbols and some state satisfy both `φ₀` and `φ_F`.
    pub fn accepts_empty(&self) -> Result<bool> {
        let rigid_domains = Arc::new(self.domains.for_signature(&self.rigid_sigma)?);
        for r in enumerate_structures(self.rigid_sigma.clone(), rigid_domains)? {
            let b = self.boundary_for(&r);
            let boundaries = self.boundaries.borrow();
            if !boundaries[b].init.is_disjoint(&boundaries[b].fin) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn accepts(&self, word: &Word) -> Result<bool> {
        if word.is_empty() {
            return self.accepts_empty();
        }
        let ids = self.intern_word(word)?;
        let mut set = self.initial_set(ids[0]);
        for &l in &ids {
            set = self.step(&set, l);
            if set.is_clear() {
                return Ok(false);
            }
        }
        Ok(self.accepting(&set, *ids.last().expect("nonempty")))
    }

    fn intern_word(&self, word: &Word) -> Result<Vec<usize>> {
        if let Err(v) = validate_word(word, &Theory::empty())? {
            return Err(Error::Structure(format!("not a word: {v}")));
        }
        word.letters().iter().map(|l| self.intern(l)).collect()
    }

    /// An accepting run on a nonempty word, if there is one.
    pub fn run(&self, word: &Word) -> Result<Option<Run>> {
        if word.is_empty() {
            return Err(Error::EmptyWord);
        }
        let ids = self.intern_word(word)?;
        let mut sets = vec![self.initial_set(ids[0])];
        for &l in &ids {
            let next = self.step(sets.last().expect("nonempty"), l);
            sets.push(next);
        }
        let b = self.letter_boundary.borrow()[*ids.last().expect("nonempty")];
        let last = sets.last().expect("nonempty");
        let Some(mut t) = last.ones().find(|&t| self.boundaries.borrow()[b].fin.contains(t)) else {
            return Ok(None);
        };
        let mut path = vec![t];
        for i in (0..ids.len()).rev() {
            t = sets[i]
                .ones()
                .find(|&s| self.successors(s as u32, ids[i]).contains(&(t as u32)))
                .expect("forward sets only hold states with successors on the path");
            path.push(t);
        }
        path.reverse();
        Ok(Some(Run {
            states: path.into_iter().map(|i| self.states[i].clone()).collect(),
        }))
    }

    /// Acceptance of every word of `space` up to `max_len`, in the order of
    /// [`WordSpace::words`].
    pub fn language(&self, space: &WordSpace, max_len: usize) -> Result<Vec<bool>> {
        let mut out = vec![self.accepts_empty()?];
        for group in space.groups() {
            let ids = group.iter().map(|l| self.intern(l)).collect::<Result<Vec<_>>>()?;
            // Initial sets depend only on the rigid part, shared by the group.
            let Some(&first) = ids.first() else { continue };
            self.explore(&ids, &self.initial_set(first), max_len, &mut out);
        }
        Ok(out)
    }

    fn explore(&self, ids: &[usize], set: &FixedBitSet, depth: usize, out: &mut Vec<bool>) {
        if depth == 0 {
            return;
        }
        for &l in ids {
            let next = self.step(set, l);
            out.push(self.accepting(&next, l));
            self.explore(ids, &next, depth - 1, out);
        }
    }
}

/// Whether `a` accepts `word` with states over `domains`.
pub fn accepts_oracle(a: &Automaton, word: &Word, domains: &Domains) -> Result<bool> {
    Oracle::new(a, domains)?.accepts(word)
}
