//! Data-aware processes modulo theories: data variables updated by
//! existentially quantified constraints over their read and write copies.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::automaton::Automaton;
use crate::error::{Error, Result};
use crate::formula::{parse_formula_with_vars, Formula, ParseMode, Term, Var};
use crate::names;
use crate::signature::{Signature, Symbol};

const READ: &str = "_r";
const WRITE: &str = "_w";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionFile {
    pub name: String,
    /// Formula over `Π` whose free variables are `v_r` and `v_w` for the
    /// data variables `v`.
    pub constraint: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DmtFile {
    pub signature: Signature,
    /// Data variable name to sort.
    pub variables: BTreeMap<String, String>,
    /// Data variable name to a rigid constant of `signature`.
    pub initial: BTreeMap<String, String>,
    #[serde(default)]
    pub actions: Vec<ActionFile>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Action {
    pub name: String,
    /// Constraint with `v_r` replaced by `v` and `v_w` by `v'`.
    pub constraint: Formula,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dmt {
    signature: Signature,
    variables: Vec<(String, String)>,
    initial: Vec<(String, String)>,
    actions: Vec<Action>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DmtOptions {
    /// Require exactly one action proposition per step.
    pub exactly_one: bool,
    /// Final condition over the data variables and rigid `Π` symbols.
    pub fin: String,
}

impl Default for DmtOptions {
    fn default() -> Self {
        DmtOptions {
            exactly_one: true,
            fin: "true".into(),
        }
    }
}

fn schema(field: &str, msg: impl std::fmt::Display) -> Error {
    Error::Schema(format!("{field}: {msg}"))
}

fn is_literal(f: &Formula) -> bool {
    match f {
        Formula::Not(g) => matches!(**g, Formula::Atom(..) | Formula::Eq(..)),
        Formula::Atom(..) | Formula::Eq(..) | Formula::True | Formula::False => true,
        _ => false,
    }
}

/// `∃u₁…u_l. ℓ₁ ∧ … ∧ ℓ_m`.
fn is_constraint(f: &Formula) -> bool {
    match f {
        Formula::Exists(_, g) => is_constraint(g),
        Formula::And(fs) => fs.iter().all(is_literal),
        g => is_literal(g),
    }
}

impl DmtFile {
    pub fn into_dmt(self) -> Result<Dmt> {
        let sig = self.signature;
        let mut taken: Vec<String> = sig.symbol_names().map(str::to_string).collect();
        let mut vars = Vec::new();
        for (v, sort) in &self.variables {
            let field = format!("variables.{v}");
            if !names::is_user_identifier(v) {
                return Err(schema(&field, "not an identifier"));
            }
            if !sig.has_sort(sort) {
                return Err(schema(&field, format!("unknown sort `{sort}`")));
            }
            for name in [v.clone(), format!("{v}{READ}"), format!("{v}{WRITE}")] {
                if taken.contains(&name) {
                    return Err(schema(&field, format!("`{name}` is already a symbol")));
                }
                taken.push(name);
            }
            vars.push(Var::new(format!("{v}{READ}"), sort.clone()));
            vars.push(Var::new(format!("{v}{WRITE}"), sort.clone()));
        }
        let mut initial = Vec::new();
        for (v, sort) in &self.variables {
            let field = format!("initial.{v}");
            let c = self.initial.get(v).ok_or_else(|| schema(&field, "missing initial value"))?;
            match sig.get(c) {
                Some(s) if s.is_constant() && s.rigid && s.result_sort() == Some(sort) => {}
                _ => return Err(schema(&field, format!("`{c}` is not a rigid constant of sort `{sort}`"))),
            }
            initial.push((v.clone(), c.clone()));
        }
        if let Some(v) = self.initial.keys().find(|v| !self.variables.contains_key(*v)) {
            return Err(schema("initial", format!("undeclared variable `{v}`")));
        }
        let subst: BTreeMap<String, Term> = self
            .variables
            .keys()
            .flat_map(|v| {
                [
                    (format!("{v}{READ}"), Term::constant(v)),
                    (format!("{v}{WRITE}"), Term::constant(&names::primed(v))),
                ]
            })
            .collect();
        let mut actions: Vec<Action> = Vec::new();
        for (i, a) in self.actions.iter().enumerate() {
            let field = format!("actions[{i}]");
            if !names::is_user_identifier(&a.name) || taken.contains(&a.name) {
                return Err(schema(&field, format!("`{}` is not a fresh name", a.name)));
            }
            taken.push(a.name.clone());
            let phi = parse_formula_with_vars(&a.constraint, &sig, &vars, ParseMode::User)
                .map_err(|e| schema(&field, e))?;
            phi.require_first_order().map_err(|e| schema(&field, e))?;
            if !is_constraint(&phi) {
                return Err(schema(&field, "not an existentially quantified conjunction of literals"));
            }
            actions.push(Action {
                name: a.name.clone(),
                constraint: phi.substitute(&subst),
            });
        }
        Ok(Dmt {
            signature: sig,
            variables: self.variables.into_iter().collect(),
            initial,
            actions,
        })
    }
}

pub fn load_dmt(json: &str) -> Result<Dmt> {
    let file: DmtFile = serde_json::from_str(json)?;
    file.into_dmt()
}

impl Dmt {
    pub fn variables(&self) -> &[(String, String)] {
        &self.variables
    }

    pub fn actions(&self) -> &[Action] {
        &self.actions
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }
}

pub fn encode_dmt(b: &Dmt) -> Result<Automaton> {
    encode_dmt_with(b, &DmtOptions::default())
}

/// Data-control automaton with one state constant per data variable and one
/// action proposition per action in the word signature.
///
/// With `exactly_one`, `φ_T = EO(p_a) ∧ ⋀ (p_a → a)`; otherwise the bare
/// disjunction `⋁ (p_a → a)`. Without actions `φ_T = ⊤`. Variables an
/// action does not write are unconstrained in its steps.
pub fn encode_dmt_with(b: &Dmt, opts: &DmtOptions) -> Result<Automaton> {
    let gamma = Signature::new(
        b.signature.sorts().to_vec(),
        b.variables.iter().map(|(v, s)| Symbol::constant(v, s, false)).collect(),
    )?
    .prune_sorts();
    let mut sigma = b.signature.clone();
    for a in &b.actions {
        sigma.add_symbol(Symbol::proposition(&a.name, false))?;
    }
    let init = Formula::and(
        b.initial
            .iter()
            .map(|(v, c)| Formula::eq(Term::constant(v), Term::constant(c)))
            .collect(),
    );
    let guarded: Vec<Formula> = b
        .actions
        .iter()
        .map(|a| Formula::implies(Formula::prop(&a.name), a.constraint.clone()))
        .collect();
    let trans = if b.actions.is_empty() {
        Formula::True
    } else if opts.exactly_one {
        let one = Formula::or(
            (0..b.actions.len())
                .map(|i| {
                    Formula::and(
                        b.actions
                            .iter()
                            .enumerate()
                            .map(|(j, a)| {
                                let p = Formula::prop(&a.name);
                                if i == j {
                                    p
                                } else {
                                    Formula::not(p)
                                }
                            })
                            .collect(),
                    )
                })
                .collect(),
        );
        Formula::and2(one, Formula::and(guarded))
    } else {
        Formula::or(guarded)
    };
    let fin_sig = gamma.union(&sigma.restrict(|s| s.rigid))?;
    let fin = parse_formula_with_vars(&opts.fin, &fin_sig, &[], ParseMode::User)
        .map_err(|e| schema("final", e))?;
    Automaton::new(sigma, gamma, init, trans, fin)
}
