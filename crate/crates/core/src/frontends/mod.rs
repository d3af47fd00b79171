//! Lowerings of symbolic finite automata and data-aware processes into
//! first-order automata.

mod dmt;
mod sfa;

pub use dmt::{encode_dmt, encode_dmt_with, load_dmt, Action, Dmt, DmtFile, DmtOptions};
pub use sfa::{encode_sfa, load_sfa, sfa_word, simulate_sfa, Sfa, SfaFile, Transition};
