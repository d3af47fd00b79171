//! First-order automata over finite words of first-order structures.
//!
//! The crate compiles first-order linear temporal logic (FOLTL) into
//! symbolic automata whose states are first-order structures, implements
//! their closure operations, and checks emptiness either by brute force on
//! small finite domains or by bounded unrolling into SMT-LIB.

pub mod automaton;
pub mod compile;
pub mod emptiness;
pub mod error;
pub mod eval;
pub mod foltl;
pub mod formula;
pub mod frontends;
pub mod names;
pub mod signature;
pub mod structure;
pub mod theory;
pub mod word;

pub use automaton::{Automaton, ControlClass, Sigma11Automaton};
pub use error::{Error, Result};
pub use eval::{eval_fo, satisfies, satisfies_pure_past, satisfies_sentence, Environment};
pub use formula::{parse_formula, rename_formula, Formula, Term, Var};
pub use signature::{prime_signature, Signature, Symbol, SymbolKind};
pub use structure::{enumerate_structures, join_structures, Domains, Structure};
pub use theory::{SmtConfig, Theory};
pub use word::{validate_word, Word};
