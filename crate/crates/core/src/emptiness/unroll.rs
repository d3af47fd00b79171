//! Step-indexed unrolling of an automaton.

use std::collections::BTreeMap;

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::names;
use crate::signature::{Signature, Symbol};

/// Separator between a base name and its step in mangled names. It never
/// occurs in signature names.
pub const STEP_MARK: char = '@';

/// `(c, 2)` becomes `c@2`; printed to the solver as the quoted `|c@2|`.
pub fn mangle(base: &str, step: usize) -> String {
    format!("{base}{STEP_MARK}{step}")
}

/// `(base, step)` of a mangled name, `None` for unindexed names.
pub fn demangle(name: &str) -> Option<(&str, usize)> {
    let (base, step) = name.rsplit_once(STEP_MARK)?;
    Some((base, step.parse().ok()?))
}

/// A solver-level declaration: a signature symbol at a step, or rigid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepSymbol {
    pub base: String,
    pub step: Option<usize>,
    /// The symbol under its mangled name.
    pub symbol: Symbol,
}

/// `⟦A⟧ₖ = φ₀⁰ ∧ ⋀_{i<k} φ_Tⁱ`, optionally with `φ_Fᵏ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnrolledFormula {
    k: usize,
    with_final: bool,
    sigma: Signature,
    gamma: Signature,
    init: Formula,
    steps: Vec<Formula>,
    fin: Option<Formula>,
    extra: Vec<Formula>,
}

/// Renaming of the non-rigid symbols of `sig` to step `i`; primed names to
/// step `i + 1` when `primes` is set.
fn step_map(sig: &Signature, i: usize, primes: bool, out: &mut BTreeMap<String, String>) {
    for s in sig.symbols().iter().filter(|s| !s.rigid) {
        out.insert(s.name.clone(), mangle(&s.name, i));
        if primes {
            out.insert(names::primed(&s.name), mangle(&s.name, i + 1));
        }
    }
}

/// A state or word condition renamed to step `i`.
pub fn at_step(phi: &Formula, sigma: &Signature, gamma: &Signature, i: usize) -> Formula {
    let mut m = BTreeMap::new();
    step_map(sigma, i, false, &mut m);
    step_map(gamma, i, true, &mut m);
    phi.rename_symbols(&m)
}

pub fn unroll(a: &Automaton, k: usize, with_final: bool) -> UnrolledFormula {
    let (sigma, gamma) = (a.word_signature(), a.state_signature());
    UnrolledFormula {
        k,
        with_final,
        sigma: sigma.clone(),
        gamma: gamma.clone(),
        init: at_step(a.init(), sigma, gamma, 0),
        steps: (0..k).map(|i| at_step(a.trans(), sigma, gamma, i)).collect(),
        fin: with_final.then(|| at_step(a.fin(), sigma, gamma, k)),
        extra: Vec::new(),
    }
}

impl UnrolledFormula {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn with_final(&self) -> bool {
        self.with_final
    }

    pub fn word_signature(&self) -> &Signature {
        &self.sigma
    }

    pub fn state_signature(&self) -> &Signature {
        &self.gamma
    }

    /// Adds a conjunct over step-indexed names.
    pub fn and_also(mut self, phi: Formula) -> Self {
        self.extra.push(phi);
        self
    }

    /// Conjuncts in order: `φ₀⁰`, `φ_T⁰ … φ_Tᵏ⁻¹`, `φ_Fᵏ`, extra conjuncts.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        let mut out = vec![&self.init];
        out.extend(&self.steps);
        out.extend(&self.fin);
        out.extend(&self.extra);
        out
    }

    pub fn formula(&self) -> Formula {
        Formula::and(self.conjuncts().into_iter().cloned().collect())
    }

    /// Declarations: rigid symbols once (word then state signature), then
    /// for each step the state symbols and, before the last step, the word
    /// symbols. `extra_word_step` also declares the word symbols at step `k`.
    pub fn symbols(&self, extra_word_step: bool) -> Vec<StepSymbol> {
        let mut out = Vec::new();
        for s in self.sigma.symbols().iter().chain(self.gamma.symbols()).filter(|s| s.rigid) {
            out.push(StepSymbol {
                base: s.name.clone(),
                step: None,
                symbol: s.clone(),
            });
        }
        for i in 0..=self.k {
            let word_here = i < self.k || extra_word_step;
            let state = self.gamma.symbols().iter();
            let word = self.sigma.symbols().iter().filter(|_| word_here);
            for s in state.chain(word).filter(|s| !s.rigid) {
                out.push(StepSymbol {
                    base: s.name.clone(),
                    step: Some(i),
                    symbol: s.renamed(mangle(&s.name, i)),
                });
            }
        }
        out
    }

    /// Mangled name of `base` at `step`, if declared.
    pub fn name_of(&self, base: &str, step: usize) -> Option<String> {
        let sym = self.sigma.get(base).or_else(|| self.gamma.get(base))?;
        if sym.rigid {
            Some(base.to_string())
        } else {
            Some(mangle(base, step))
        }
    }
}

/// `φ_P^k = ⋁_{i=0}^{k} ⋁_{j=i+1}^{k−1} ⋀_{p∈Γ} (pⁱ ↔ pʲ)`.
pub fn loop_formula(gamma: &Signature, k: usize) -> Result<Formula> {
    if let Some(s) = gamma.symbols().iter().find(|s| !s.is_proposition()) {
        return Err(Error::Precondition(format!("state symbol `{}` is not a proposition", s.name)));
    }
    let flexible: Vec<&Symbol> = gamma.symbols().iter().filter(|s| !s.rigid).collect();
    let mut disjuncts = Vec::new();
    for i in 0..=k {
        for j in i + 1..k {
            disjuncts.push(Formula::and(
                flexible
                    .iter()
                    .map(|p| Formula::iff(Formula::prop(&mangle(&p.name, i)), Formula::prop(&mangle(&p.name, j))))
                    .collect(),
            ));
        }
    }
    Ok(Formula::or(disjuncts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mangling_round_trips() {
        assert_eq!(mangle("c", 2), "c@2");
        assert_eq!(demangle("c@2"), Some(("c", 2)));
        assert_eq!(demangle("xs#ab@10"), Some(("xs#ab", 10)));
        assert_eq!(demangle("c"), None);
    }

    #[test]
    fn loop_formula_bounds() {
        let g = Signature::new(
            Vec::<String>::new(),
            vec![Symbol::proposition("p", false), Symbol::proposition("q", false)],
        )
        .unwrap();
        let one = Signature::new(Vec::<String>::new(), vec![Symbol::proposition("p", false)]).unwrap();
        let iff = |i, j| Formula::iff(Formula::prop(&mangle("p", i)), Formula::prop(&mangle("p", j)));
        assert_eq!(loop_formula(&one, 2).unwrap(), iff(0, 1));
        assert_eq!(loop_formula(&one, 1).unwrap(), Formula::False);
        let Formula::Or(ds) = loop_formula(&g, 3).unwrap() else { panic!() };
        let pairs: Vec<_> = ds
            .iter()
            .map(|d| {
                let Formula::And(cs) = d else { panic!() };
                let Formula::Iff(a, b) = &cs[0] else { panic!() };
                let idx = |f: &Formula| match f {
                    Formula::Atom(n, _) => demangle(n).unwrap().1,
                    _ => panic!(),
                };
                (idx(a), idx(b))
            })
            .collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (1, 2)]);
        let c = Signature::new(["S"], vec![Symbol::constant("c", "S", false)]).unwrap();
        assert!(loop_formula(&c, 2).is_err());
    }
}
