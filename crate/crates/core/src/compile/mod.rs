//! Encodings of temporal formulas into automata, and the abstraction of
//! monadic automata into finite-control ones.

mod monadic;
mod temporal;

pub use monadic::{
    abstract_states, entails_initial, entails_initial_with, gamma_state, gamma_type, monadic_to_finite_control,
    restrict_formula, type_proposition, types_of, AbstractState, Assumption, MonadicVocabulary, TypeSet,
};
pub use temporal::{encode_foltl, encode_foltl_uniform, encode_pure_past, EncodingReport};
