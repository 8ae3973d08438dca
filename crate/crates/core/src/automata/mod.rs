//! Explicit-state multi-track automata.
//!
//! Every tape is read least significant digit first and digit 0 doubles as
//! padding. Automata are stored deterministic, trimmed and minimal.

mod automaton;
pub(crate) mod dfa;
mod format;
mod minimize;
mod ops;
mod regex;
mod signature;

pub use automaton::{zip_tracks, Automaton, BooleanOp, OutputAutomaton, TupleWord};
pub use dfa::{Dfa, Edge};
pub use format::{parse_automaton, to_dot, write_automaton, ParsedAutomaton};
pub use ops::Nfa;
pub use regex::{compile_regex, compile_regex_str, RegexPattern};
pub use signature::{lsd_digits, lsd_value, Signature, Track, MAX_ALPHABET};

