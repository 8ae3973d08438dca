//! Automata-based decision procedure for binary words coded by finite
//! Restivo codes.
//!
//! A code `c0 c1 ... ct` over the digits 1..=5 names the binary word
//! `g(c0) mu(g(c1)) mu^2(g(c2)) ...` where `mu` is the Thue-Morse morphism.
//! Predicates about such words are first-order formulas over the natural
//! numbers; [`logic`] compiles them into multi-track automata read least
//! significant digit first, and [`restivo`] supplies the lookup automaton
//! `LOOK` that gives access to the bits of the coded word.

pub mod applications;
pub mod automata;
pub mod cli;
pub mod enumeration;
pub mod error;
pub mod logic;
pub mod numeration;
pub mod restivo;

pub use error::{Error, Result};
