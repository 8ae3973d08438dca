//! Partial deterministic automata with per-state outputs.
//!
//! A missing transition leads to an implicit sink whose output is 0 and which
//! never leaves. Acceptors use outputs {0, 1}; automata with output use any
//! small value. State 0 is always the initial state.

use std::collections::VecDeque;

use rustc_hash::FxHashMap;

use super::signature::Signature;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub sym: u32,
    pub to: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    pub(crate) sig: Signature,
    pub(crate) outputs: Vec<u8>,
    pub(crate) offsets: Vec<u32>,
    pub(crate) edges: Vec<Edge>,
}

/// Appends states in id order; edges are sorted on push.
pub(crate) struct DfaBuilder {
    sig: Signature,
    outputs: Vec<u8>,
    offsets: Vec<u32>,
    edges: Vec<Edge>,
}

impl DfaBuilder {
    pub fn new(sig: Signature) -> Self {
        DfaBuilder {
            sig,
            outputs: Vec::new(),
            offsets: vec![0],
            edges: Vec::new(),
        }
    }

    pub fn push_state(&mut self, output: u8, mut edges: Vec<Edge>) {
        edges.sort_unstable();
        debug_assert!(edges.windows(2).all(|w| w[0].sym != w[1].sym));
        self.outputs.push(output);
        self.edges.extend(edges);
        self.offsets.push(self.edges.len() as u32);
    }

    pub fn finish(self) -> Dfa {
        let mut dfa = Dfa {
            sig: self.sig,
            outputs: self.outputs,
            offsets: self.offsets,
            edges: self.edges,
        };
        if dfa.outputs.is_empty() {
            dfa.outputs.push(0);
            dfa.offsets.push(0);
        }
        dfa
    }
}

impl Dfa {
    /// The automaton whose every run ends in the implicit sink (output 0).
    pub fn empty(sig: Signature) -> Dfa {
        DfaBuilder::new(sig).finish()
    }

    /// One state with a self loop on every letter and the given output.
    pub fn constant(sig: Signature, output: u8) -> Dfa {
        let n = sig.alphabet_size();
        let mut b = DfaBuilder::new(sig);
        if output == 0 {
            b.push_state(0, Vec::new());
        } else {
            b.push_state(output, (0..n).map(|sym| Edge { sym, to: 0 }).collect());
        }
        b.finish()
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn num_states(&self) -> usize {
        self.outputs.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn output(&self, state: u32) -> u8 {
        self.outputs[state as usize]
    }

    pub fn edges_of(&self, state: u32) -> &[Edge] {
        let s = state as usize;
        &self.edges[self.offsets[s] as usize..self.offsets[s + 1] as usize]
    }

    pub fn step(&self, state: u32, sym: u32) -> Option<u32> {
        let edges = self.edges_of(state);
        edges
            .binary_search_by_key(&sym, |e| e.sym)
            .ok()
            .map(|i| edges[i].to)
    }

    /// Final state of the run on `syms`; `None` once the run falls into the sink.
    pub fn run(&self, syms: impl IntoIterator<Item = u32>) -> Option<u32> {
        let mut s = 0u32;
        for sym in syms {
            s = self.step(s, sym)?;
        }
        Some(s)
    }

    pub fn output_of(&self, syms: impl IntoIterator<Item = u32>) -> u8 {
        self.run(syms).map_or(0, |s| self.output(s))
    }

    pub fn is_complete(&self) -> bool {
        let n = self.sig.alphabet_size() as usize;
        (0..self.num_states()).all(|s| self.edges_of(s as u32).len() == n)
    }

    /// Makes the implicit sink explicit when some transition is missing.
    pub fn complete(&self) -> Dfa {
        if self.is_complete() {
            return self.clone();
        }
        let alpha = self.sig.alphabet_size();
        let sink = self.num_states() as u32;
        let mut b = DfaBuilder::new(self.sig.clone());
        for s in 0..self.num_states() as u32 {
            let own = self.edges_of(s);
            let mut edges = Vec::with_capacity(alpha as usize);
            let mut k = 0;
            for sym in 0..alpha {
                if k < own.len() && own[k].sym == sym {
                    edges.push(own[k]);
                    k += 1;
                } else {
                    edges.push(Edge { sym, to: sink });
                }
            }
            b.push_state(self.outputs[s as usize], edges);
        }
        b.push_state(0, (0..alpha).map(|sym| Edge { sym, to: sink }).collect());
        b.finish()
    }

    /// Replaces every output (including the sink's) by `f(output)`.
    pub fn map_outputs(&self, f: impl Fn(u8) -> u8) -> Dfa {
        let base = if f(0) != 0 {
            self.complete()
        } else {
            self.clone()
        };
        Dfa {
            outputs: base.outputs.iter().map(|&o| f(o)).collect(),
            ..base
        }
    }

    /// Distinct outputs that some run can produce, the sink included.
    pub fn output_values(&self) -> Vec<u8> {
        let mut vals: Vec<u8> = self.outputs.clone();
        if !self.is_complete() {
            vals.push(0);
        }
        vals.sort_unstable();
        vals.dedup();
        vals
    }

    /// States reachable from the initial state.
    pub(crate) fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![0u32];
        seen[0] = true;
        while let Some(s) = stack.pop() {
            for e in self.edges_of(s) {
                if !seen[e.to as usize] {
                    seen[e.to as usize] = true;
                    stack.push(e.to);
                }
            }
        }
        seen
    }

    /// States from which some nonzero output is reachable.
    pub(crate) fn productive(&self) -> Vec<bool> {
        let n = self.num_states();
        let preds = self.predecessors(|_| true);
        let mut good = vec![false; n];
        let mut stack: Vec<u32> = (0..n as u32)
            .filter(|&s| self.outputs[s as usize] != 0)
            .collect();
        for &s in &stack {
            good[s as usize] = true;
        }
        while let Some(s) = stack.pop() {
            for &p in preds.of(s) {
                if !good[p as usize] {
                    good[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        good
    }

    /// Reverse adjacency restricted to edges whose symbol satisfies `keep`.
    pub(crate) fn predecessors(&self, keep: impl Fn(u32) -> bool) -> Adjacency {
        let n = self.num_states();
        let mut count = vec![0u32; n + 1];
        for s in 0..n as u32 {
            for e in self.edges_of(s) {
                if keep(e.sym) {
                    count[e.to as usize + 1] += 1;
                }
            }
        }
        for i in 0..n {
            count[i + 1] += count[i];
        }
        let mut fill = count.clone();
        let mut items = vec![0u32; count[n] as usize];
        for s in 0..n as u32 {
            for e in self.edges_of(s) {
                if keep(e.sym) {
                    items[fill[e.to as usize] as usize] = s;
                    fill[e.to as usize] += 1;
                }
            }
        }
        Adjacency {
            offsets: count,
            items,
        }
    }

    /// Renumbers states breadth-first from the initial state, visiting
    /// transitions in ascending letter order; unreachable states are dropped.
    pub(crate) fn bfs_renumber(&self) -> Dfa {
        let n = self.num_states();
        let mut id = vec![u32::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::new();
        id[0] = 0;
        order.push(0u32);
        queue.push_back(0u32);
        while let Some(s) = queue.pop_front() {
            for e in self.edges_of(s) {
                if id[e.to as usize] == u32::MAX {
                    id[e.to as usize] = order.len() as u32;
                    order.push(e.to);
                    queue.push_back(e.to);
                }
            }
        }
        let mut b = DfaBuilder::new(self.sig.clone());
        for &s in &order {
            let edges = self
                .edges_of(s)
                .iter()
                .map(|e| Edge {
                    sym: e.sym,
                    to: id[e.to as usize],
                })
                .collect();
            b.push_state(self.outputs[s as usize], edges);
        }
        b.finish()
    }

    /// Rewrites the tape: output track `i` reads input track `map[i]`.
    ///
    /// Several output positions may not name the same input track, but one
    /// input track may be repeated in `names` (see [`Dfa::rename`]).
    fn relabel(&self, new_sig: Signature, sym_map: &[Option<u32>]) -> Dfa {
        let mut b = DfaBuilder::new(new_sig);
        for s in 0..self.num_states() as u32 {
            let edges = self
                .edges_of(s)
                .iter()
                .filter_map(|e| sym_map[e.sym as usize].map(|sym| Edge { sym, to: e.to }))
                .collect();
            b.push_state(self.outputs[s as usize], edges);
        }
        b.finish()
    }

    /// Renames tracks positionally. Repeating a name identifies the tracks:
    /// only letters whose digits agree on them are kept.
    pub fn rename(&self, names: &[&str]) -> Result<Dfa> {
        let tracks = self.sig.tracks();
        if names.len() != tracks.len() {
            return Err(Error::Arity {
                name: format!("{}", self.sig),
                expected: tracks.len(),
                found: names.len(),
            });
        }
        let mut new_tracks: Vec<super::Track> = Vec::new();
        let mut slot = Vec::with_capacity(names.len());
        for (name, t) in names.iter().zip(tracks) {
            match new_tracks.iter().position(|u| u.name == *name) {
                Some(p) => {
                    if new_tracks[p].base != t.base {
                        return Err(Error::BaseMismatch {
                            name: name.to_string(),
                            first: new_tracks[p].base,
                            second: t.base,
                        });
                    }
                    slot.push(p);
                }
                None => {
                    slot.push(new_tracks.len());
                    new_tracks.push(super::Track::new(*name, t.base));
                }
            }
        }
        let new_sig = Signature::new(new_tracks)?;
        let alpha = self.sig.alphabet_size();
        let mut map = vec![None; alpha as usize];
        let mut digits = vec![0u8; new_sig.len()];
        for (sym, m) in map.iter_mut().enumerate() {
            let old = self.sig.decode(sym as u32);
            let mut seen = vec![false; new_sig.len()];
            let mut ok = true;
            for (i, &d) in old.iter().enumerate() {
                let p = slot[i];
                if seen[p] && digits[p] != d {
                    ok = false;
                    break;
                }
                seen[p] = true;
                digits[p] = d;
            }
            if ok {
                *m = Some(new_sig.encode(&digits));
            }
        }
        Ok(self.relabel(new_sig, &map))
    }

    /// Permutes tracks into the order given by `order` (a permutation of the
    /// current track names).
    pub fn reorder(&self, order: &[&str]) -> Result<Dfa> {
        if order.len() != self.sig.len() {
            return Err(Error::Signature("reorder needs every track".into()));
        }
        let mut tracks = Vec::with_capacity(order.len());
        for name in order {
            let base = self
                .sig
                .base_of(name)
                .ok_or_else(|| Error::UnknownTrack(name.to_string()))?;
            tracks.push(super::Track::new(*name, base));
        }
        let new_sig = Signature::new(tracks)?;
        let pos: Vec<usize> = order
            .iter()
            .map(|n| self.sig.position(n).unwrap())
            .collect();
        let alpha = self.sig.alphabet_size();
        let map: Vec<Option<u32>> = (0..alpha)
            .map(|sym| {
                let old = self.sig.decode(sym);
                let new: Vec<u8> = pos.iter().map(|&p| old[p]).collect();
                Some(new_sig.encode(&new))
            })
            .collect();
        Ok(self.relabel(new_sig, &map))
    }

    /// Tracks in alphabetical order.
    pub fn sorted_tracks(&self) -> Dfa {
        let sorted = self.sig.sorted();
        if sorted == self.sig {
            return self.clone();
        }
        let names: Vec<&str> = sorted.names().collect();
        self.reorder(&names).expect("permutation of own tracks")
    }
}

pub(crate) struct Adjacency {
    offsets: Vec<u32>,
    items: Vec<u32>,
}

impl Adjacency {
    pub fn of(&self, s: u32) -> &[u32] {
        &self.items[self.offsets[s as usize] as usize..self.offsets[s as usize + 1] as usize]
    }
}

/// Interns pairs of states during product constructions.
pub(crate) struct PairIndex {
    map: FxHashMap<u64, u32>,
    pub pairs: Vec<(u32, u32)>,
}

impl PairIndex {
    pub fn new() -> Self {
        PairIndex {
            map: FxHashMap::default(),
            pairs: Vec::new(),
        }
    }

    pub fn id(&mut self, a: u32, b: u32) -> u32 {
        let key = ((a as u64) << 32) | b as u64;
        let next = self.pairs.len() as u32;
        *self.map.entry(key).or_insert_with(|| {
            self.pairs.push((a, b));
            next
        })
    }
}
