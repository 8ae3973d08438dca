//! Catalog of predicates on coded words, theorem reproductions, and
//! word-level oracles.

mod catalog;
mod oracle;
mod tails;
mod theorems;

pub use catalog::{
    Catalog, CATALOG, ENUMERATION_SCRIPT, HEAVY, LEXLEAST_SCRIPT, OVERLAP_SCRIPT, POWER73_SCRIPT,
    SQUARES_SCRIPT,
};
pub use oracle::{
    backtrack_lexleast, has_factor_with_period, has_overlap_axaxa, large_overlap_census,
    large_overlap_code, lexleast_reference, naive_word_checks, Census, WordReport,
};
pub use tails::{
    accepted_codes, infinite_one_tail_states, maxexp_family, one_tail_states, subset_of_ones_then_zeros,
};
pub use theorems::{run_theorem, Check, TheoremReport, LOG2_ZETA, TABLE_ONE, THEOREMS, ZETA};
