//! Random automata and brute-force oracles shared by the test targets.
#![allow(dead_code)]

use proptest::prelude::*;
use restivo::automata::{Automaton, Nfa, Signature};

/// Transitions as (from, letter, to) triples over a fixed signature.
#[derive(Clone, Debug)]
pub struct RawNfa {
    pub states: usize,
    pub initial: Vec<u32>,
    pub accepting: Vec<bool>,
    pub edges: Vec<(u32, u32, u32)>,
}

pub fn raw_nfa(max_states: usize, alphabet: u32, max_edges: usize) -> impl Strategy<Value = RawNfa> {
    (1..=max_states).prop_flat_map(move |n| {
        let s = n as u32;
        (
            proptest::collection::vec(0..s, 1..=2),
            proptest::collection::vec(any::<bool>(), n),
            proptest::collection::vec((0..s, 0..alphabet, 0..s), 0..=max_edges),
        )
            .prop_map(move |(initial, accepting, edges)| RawNfa { states: n, initial, accepting, edges })
    })
}

pub fn build(raw: &RawNfa, sig: &Signature) -> Nfa {
    let mut nfa = Nfa::new(sig.clone());
    for &acc in &raw.accepting {
        nfa.add_state(acc);
    }
    for &s in &raw.initial {
        nfa.set_initial(s);
    }
    for &(from, sym, to) in &raw.edges {
        nfa.add_transition(from, &sig.decode(sym), to).unwrap();
    }
    nfa
}

/// Deterministic variant: the first edge for each (state, letter) wins.
pub fn build_dfa_like(raw: &RawNfa, sig: &Signature) -> Automaton {
    let mut seen = std::collections::HashSet::new();
    let mut nfa = Nfa::new(sig.clone());
    for &acc in &raw.accepting {
        nfa.add_state(acc);
    }
    nfa.set_initial(0);
    for &(from, sym, to) in &raw.edges {
        if seen.insert((from, sym)) {
            nfa.add_transition(from, &sig.decode(sym), to).unwrap();
        }
    }
    Automaton::from_dfa(&nfa.determinize())
}

/// Direct set simulation of the raw NFA.
pub fn simulate(raw: &RawNfa, word: &[u32]) -> bool {
    let mut current = vec![false; raw.states];
    for &s in &raw.initial {
        current[s as usize] = true;
    }
    for &sym in word {
        let mut next = vec![false; raw.states];
        for &(from, a, to) in &raw.edges {
            if a == sym && current[from as usize] {
                next[to as usize] = true;
            }
        }
        current = next;
    }
    (0..raw.states).any(|s| current[s] && raw.accepting[s])
}

pub fn words(alphabet: u32, max_len: usize) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for a in 0..alphabet {
                let mut v: Vec<u32> = w.clone();
                v.push(a);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn letters(sig: &Signature, w: &[u32]) -> Vec<Vec<u8>> {
    w.iter().map(|&s| sig.decode(s)).collect()
}

pub fn xy() -> Signature {
    Signature::from_pairs(&[("x", 2), ("y", 3)]).unwrap()
}

pub fn xyz() -> Signature {
    Signature::from_pairs(&[("x", 2), ("y", 2), ("z", 2)]).unwrap()
}
