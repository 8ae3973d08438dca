//! Minimization of partial DFAs with outputs.
//!
//! Partition refinement over both states and transitions (Valmari and
//! Lehtinen), which handles partial transition functions directly once the
//! automaton has been trimmed.

use super::dfa::{Dfa, DfaBuilder, Edge};

struct Partition {
    sets: usize,
    elems: Vec<u32>,
    loc: Vec<u32>,
    set_of: Vec<u32>,
    first: Vec<u32>,
    past: Vec<u32>,
    marked: Vec<u32>,
    touched: Vec<u32>,
}

impl Partition {
    fn new(n: usize) -> Self {
        Partition {
            sets: usize::from(n > 0),
            elems: (0..n as u32).collect(),
            loc: (0..n as u32).collect(),
            set_of: vec![0; n],
            first: {
                let mut f = vec![0; n + 1];
                f[0] = 0;
                f
            },
            past: {
                let mut p = vec![0; n + 1];
                p[0] = n as u32;
                p
            },
            marked: vec![0; n + 1],
            touched: Vec::new(),
        }
    }

    fn mark(&mut self, e: u32) {
        let s = self.set_of[e as usize] as usize;
        let i = self.loc[e as usize];
        let j = self.first[s] + self.marked[s];
        if i < j {
            return;
        }
        let other = self.elems[j as usize];
        self.elems[i as usize] = other;
        self.loc[other as usize] = i;
        self.elems[j as usize] = e;
        self.loc[e as usize] = j;
        if self.marked[s] == 0 {
            self.touched.push(s as u32);
        }
        self.marked[s] += 1;
    }

    fn split(&mut self) {
        while let Some(s) = self.touched.pop() {
            let s = s as usize;
            let j = self.first[s] + self.marked[s];
            if j == self.past[s] {
                self.marked[s] = 0;
                continue;
            }
            let z = self.sets;
            if self.marked[s] <= self.past[s] - j {
                self.first[z] = self.first[s];
                self.past[z] = j;
                self.first[s] = j;
            } else {
                self.past[z] = self.past[s];
                self.first[z] = j;
                self.past[s] = j;
            }
            for i in self.first[z]..self.past[z] {
                self.set_of[self.elems[i as usize] as usize] = z as u32;
            }
            self.marked[s] = 0;
            self.marked[z] = 0;
            self.sets += 1;
        }
    }
}

/// Drops unreachable states and states equivalent to the implicit sink.
fn trim(dfa: &Dfa) -> Dfa {
    let reach = dfa.reachable();
    let prod = dfa.productive();
    let keep: Vec<bool> = reach.iter().zip(&prod).map(|(a, b)| *a && *b).collect();
    if !keep[0] {
        return Dfa::empty(dfa.sig.clone());
    }
    let mut id = vec![u32::MAX; dfa.num_states()];
    let mut next = 0u32;
    for (s, k) in keep.iter().enumerate() {
        if *k {
            id[s] = next;
            next += 1;
        }
    }
    let mut b = DfaBuilder::new(dfa.sig.clone());
    for s in 0..dfa.num_states() as u32 {
        if !keep[s as usize] {
            continue;
        }
        let edges = dfa
            .edges_of(s)
            .iter()
            .filter(|e| keep[e.to as usize])
            .map(|e| Edge {
                sym: e.sym,
                to: id[e.to as usize],
            })
            .collect();
        b.push_state(dfa.outputs[s as usize], edges);
    }
    b.finish()
}

/// Unique minimal automaton with the same output function, states numbered
/// breadth-first from the initial state.
pub(crate) fn minimize(dfa: &Dfa) -> Dfa {
    let dfa = trim(dfa);
    let n = dfa.num_states();
    let m = dfa.num_edges();
    let mut tail = Vec::with_capacity(m);
    for s in 0..n as u32 {
        for _ in dfa.edges_of(s) {
            tail.push(s);
        }
    }
    let label: Vec<u32> = dfa.edges.iter().map(|e| e.sym).collect();
    let head: Vec<u32> = dfa.edges.iter().map(|e| e.to).collect();

    let mut blocks = Partition::new(n);
    let mut values = dfa.outputs.clone();
    values.sort_unstable();
    values.dedup();
    for &v in &values {
        for s in 0..n as u32 {
            if dfa.outputs[s as usize] == v {
                blocks.mark(s);
            }
        }
        blocks.split();
    }

    let mut cords = Partition::new(m);
    if m > 0 {
        cords.elems.sort_unstable_by_key(|&t| label[t as usize]);
        cords.sets = 0;
        let mut current = label[cords.elems[0] as usize];
        cords.first[0] = 0;
        for i in 0..m {
            let t = cords.elems[i] as usize;
            if label[t] != current {
                current = label[t];
                cords.past[cords.sets] = i as u32;
                cords.sets += 1;
                cords.first[cords.sets] = i as u32;
            }
            cords.set_of[t] = cords.sets as u32;
            cords.loc[t] = i as u32;
        }
        cords.past[cords.sets] = m as u32;
        cords.sets += 1;
    }

    // incoming transitions grouped by head state
    let mut in_off = vec![0u32; n + 1];
    for &h in &head {
        in_off[h as usize + 1] += 1;
    }
    for i in 0..n {
        in_off[i + 1] += in_off[i];
    }
    let mut fill = in_off.clone();
    let mut incoming = vec![0u32; m];
    for (t, &h) in head.iter().enumerate() {
        incoming[fill[h as usize] as usize] = t as u32;
        fill[h as usize] += 1;
    }

    let mut b = 1usize;
    let mut c = 0usize;
    while c < cords.sets {
        for i in cords.first[c]..cords.past[c] {
            blocks.mark(tail[cords.elems[i as usize] as usize]);
        }
        blocks.split();
        c += 1;
        while b < blocks.sets {
            for i in blocks.first[b]..blocks.past[b] {
                let q = blocks.elems[i as usize] as usize;
                for j in in_off[q]..in_off[q + 1] {
                    cords.mark(incoming[j as usize]);
                }
            }
            cords.split();
            b += 1;
        }
    }

    let k = blocks.sets.max(1);
    let mut rep = vec![u32::MAX; k];
    for s in 0..n as u32 {
        let blk = blocks.set_of[s as usize] as usize;
        if rep[blk] == u32::MAX {
            rep[blk] = s;
        }
    }
    let mut out = DfaBuilder::new(dfa.sig.clone());
    // block of the initial state becomes state 0 after renumbering
    for &r in rep.iter().take(blocks.sets) {
        let edges = dfa
            .edges_of(r)
            .iter()
            .map(|e| Edge {
                sym: e.sym,
                to: blocks.set_of[e.to as usize],
            })
            .collect();
        out.push_state(dfa.outputs[r as usize], edges);
    }
    let quotient = out.finish();
    if blocks.sets == 0 {
        return quotient;
    }
    let init_block = blocks.set_of[0] as usize;
    swap_initial(&quotient, init_block).bfs_renumber()
}

/// Moves state `s` to index 0.
fn swap_initial(dfa: &Dfa, s: usize) -> Dfa {
    if s == 0 {
        return dfa.clone();
    }
    let perm = |q: u32| -> u32 {
        if q as usize == s {
            0
        } else if q == 0 {
            s as u32
        } else {
            q
        }
    };
    let mut b = DfaBuilder::new(dfa.sig.clone());
    for q in 0..dfa.num_states() as u32 {
        let src = perm(q);
        let edges = dfa
            .edges_of(src)
            .iter()
            .map(|e| Edge {
                sym: e.sym,
                to: perm(e.to),
            })
            .collect();
        b.push_state(dfa.outputs[src as usize], edges);
    }
    b.finish()
}
