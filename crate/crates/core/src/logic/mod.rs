//! First-order formulas over the naturals and their compilation to automata.

pub mod ast;
pub mod compile;
pub mod parser;
pub mod script;

pub use ast::{CmpOp, Formula, OutputOperand, OutputRef, Term};
pub use compile::{compile, eval_sentence, Entry, Env};
pub use parser::{parse_formula, parse_script, Script, Statement, StatementKind};
pub use script::{run_script, run_script_with, Library, ScriptOutcome, StatementReport};
