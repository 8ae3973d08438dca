//! Product, projection and subset construction on [`Dfa`].

use rustc_hash::FxHashMap;

use super::dfa::{Dfa, DfaBuilder, Edge, PairIndex};
use super::minimize::minimize;
use super::signature::Signature;
use crate::error::{Error, Result};

/// Synchronous product over the union of both signatures; the output of a
/// pair of states is `f(output_a, output_b)`.
///
/// Shared track names are read once. When `f` maps a sink output (0) on
/// either side to 0 the construction only follows transitions present in
/// both automata; otherwise both sides are completed first.
pub(crate) fn product(a: &Dfa, b: &Dfa, f: impl Fn(u8, u8) -> u8) -> Result<Dfa> {
    let va = a.output_values();
    let vb = b.output_values();
    let strict = va.iter().all(|&x| f(x, 0) == 0) && vb.iter().all(|&y| f(0, y) == 0);
    if strict {
        join(a, b, f)
    } else {
        join(&a.complete(), &b.complete(), f)
    }
}

fn join(a: &Dfa, b: &Dfa, f: impl Fn(u8, u8) -> u8) -> Result<Dfa> {
    let usig = a.sig.union(&b.sig)?;
    let ustrides = usig.strides();
    let shared: Vec<&str> = a
        .sig
        .names()
        .filter(|n| b.sig.position(n).is_some())
        .collect();

    // per-letter tables: key over shared tracks, and contribution to the union letter
    let tables = |d: &Dfa, own_shared: bool| -> (Vec<u32>, Vec<u32>) {
        let alpha = d.sig.alphabet_size();
        let mut key = Vec::with_capacity(alpha as usize);
        let mut contrib = Vec::with_capacity(alpha as usize);
        for sym in 0..alpha {
            let digits = d.sig.decode(sym);
            let mut k = 0u32;
            let mut c = 0u32;
            for (t, &dg) in d.sig.tracks().iter().zip(&digits) {
                let is_shared = shared.contains(&t.name.as_str());
                if is_shared {
                    k = k * t.base as u32 + dg as u32;
                }
                if !is_shared || own_shared {
                    let p = usig.position(&t.name).unwrap();
                    c += dg as u32 * ustrides[p];
                }
            }
            key.push(k);
            contrib.push(c);
        }
        (key, contrib)
    };
    // shared keys are computed in each side's own track order; make them agree
    // by ordering shared tracks as in `a`.
    let b_view = if shared.is_empty() {
        b.clone()
    } else {
        let mut order: Vec<&str> = shared.clone();
        order.extend(b.sig.names().filter(|n| !shared.contains(n)));
        b.reorder(&order)?
    };
    let (key_a, contrib_a) = tables(a, true);
    let (key_b, contrib_b) = tables(&b_view, false);

    // b's edges sorted by shared key
    let mut keyed: Vec<(u32, Edge)> = Vec::with_capacity(b_view.num_edges());
    for s in 0..b_view.num_states() as u32 {
        let mut row: Vec<(u32, Edge)> = b_view
            .edges_of(s)
            .iter()
            .map(|e| (key_b[e.sym as usize], *e))
            .collect();
        row.sort_unstable_by_key(|(k, e)| (*k, e.sym));
        keyed.extend(row);
    }

    let mut index = PairIndex::new();
    index.id(0, 0);
    let mut out = DfaBuilder::new(usig);
    let mut next = 0usize;
    let mut edges = Vec::new();
    while next < index.pairs.len() {
        let (sa, sb) = index.pairs[next];
        next += 1;
        edges.clear();
        let lo = b_view.offsets[sb as usize] as usize;
        let hi = b_view.offsets[sb as usize + 1] as usize;
        let row = &keyed[lo..hi];
        for ea in a.edges_of(sa) {
            let k = key_a[ea.sym as usize];
            let start = row.partition_point(|(kb, _)| *kb < k);
            for (kb, eb) in &row[start..] {
                if *kb != k {
                    break;
                }
                let to = index.id(ea.to, eb.to);
                edges.push(Edge {
                    sym: contrib_a[ea.sym as usize] + contrib_b[eb.sym as usize],
                    to,
                });
            }
        }
        out.push_state(f(a.output(sa), b_view.output(sb)), std::mem::take(&mut edges));
    }
    Ok(minimize(&out.finish()))
}

/// Complement of an acceptor.
pub(crate) fn complement(a: &Dfa) -> Dfa {
    minimize(&a.complete().map_outputs(|o| u8::from(o == 0)))
}

/// Nondeterministic automaton without epsilon moves, used for projection,
/// regular expressions and parsed files.
#[derive(Clone, Debug)]
pub struct Nfa {
    pub(crate) sig: Signature,
    pub(crate) initial: Vec<u32>,
    pub(crate) accepting: Vec<bool>,
    pub(crate) trans: Vec<Vec<(u32, u32)>>,
}

impl Nfa {
    pub fn new(sig: Signature) -> Self {
        Nfa {
            sig,
            initial: Vec::new(),
            accepting: Vec::new(),
            trans: Vec::new(),
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn add_state(&mut self, accepting: bool) -> u32 {
        self.accepting.push(accepting);
        self.trans.push(Vec::new());
        (self.accepting.len() - 1) as u32
    }

    pub fn set_initial(&mut self, s: u32) {
        if !self.initial.contains(&s) {
            self.initial.push(s);
        }
    }

    pub fn set_accepting(&mut self, s: u32, acc: bool) {
        self.accepting[s as usize] = acc;
    }

    /// Adds a transition on the digit tuple `digits`.
    pub fn add_transition(&mut self, from: u32, digits: &[u8], to: u32) -> Result<()> {
        self.sig.check(digits)?;
        if from as usize >= self.trans.len() || to as usize >= self.trans.len() {
            return Err(Error::Invalid(format!("no state {}", from.max(to))));
        }
        let sym = self.sig.encode(digits);
        self.trans[from as usize].push((sym, to));
        Ok(())
    }

    pub(crate) fn add_sym(&mut self, from: u32, sym: u32, to: u32) {
        self.trans[from as usize].push((sym, to));
    }

    pub fn num_states(&self) -> usize {
        self.accepting.len()
    }

    /// Subset construction followed by minimization.
    pub fn determinize(&self) -> Dfa {
        subset(&self.sig, &self.initial, &self.accepting, |s, out| {
            out.extend_from_slice(&self.trans[s as usize])
        })
    }
}

/// Largest NFA for which [`subset`] computes a simulation preorder.
const SIMULATION_LIMIT: usize = 3000;

/// Direct simulation preorder: bit `q` of row `p` is set when `q` simulates
/// `p` (so the language of `p` is contained in that of `q`).
struct Simulation {
    words: usize,
    bits: Vec<u64>,
}

impl Simulation {
    fn compute(accepting: &[bool], succ: &[Vec<(u32, u32)>]) -> Simulation {
        let n = accepting.len();
        let words = n.div_ceil(64);
        let mut bits = vec![0u64; n * words];
        for p in 0..n {
            for q in 0..n {
                if !accepting[p] || accepting[q] {
                    bits[p * words + q / 64] |= 1 << (q % 64);
                }
            }
        }
        let mut sim = Simulation { words, bits };
        loop {
            let mut changed = false;
            for p in 0..n {
                for q in 0..n {
                    if p == q || !sim.get(p, q) {
                        continue;
                    }
                    let ok = succ[p].iter().all(|&(a, p2)| {
                        let lo = succ[q].partition_point(|e| e.0 < a);
                        succ[q][lo..]
                            .iter()
                            .take_while(|e| e.0 == a)
                            .any(|&(_, q2)| sim.get(p2 as usize, q2 as usize))
                    });
                    if !ok {
                        sim.bits[p * words + q / 64] &= !(1 << (q % 64));
                        changed = true;
                    }
                }
            }
            if !changed {
                return sim;
            }
        }
    }

    fn get(&self, p: usize, q: usize) -> bool {
        self.bits[p * self.words + q / 64] >> (q % 64) & 1 == 1
    }

    /// Drops members simulated by another member (keeping one of each
    /// mutually simulating group).
    fn prune(&self, set: &mut Vec<u32>) {
        if set.len() < 2 {
            return;
        }
        let keep: Vec<bool> = set
            .iter()
            .map(|&p| {
                !set.iter().any(|&q| {
                    q != p
                        && self.get(p as usize, q as usize)
                        && (q < p || !self.get(q as usize, p as usize))
                })
            })
            .collect();
        let mut k = 0;
        set.retain(|_| {
            k += 1;
            keep[k - 1]
        });
    }
}

/// Subset construction. `succ(s, out)` appends the `(letter, target)` pairs
/// leaving `s`. Small inputs are pruned with the simulation preorder, which
/// keeps the language of every subset while visiting far fewer of them.
fn subset(
    sig: &Signature,
    initial: &[u32],
    accepting: &[bool],
    succ: impl Fn(u32, &mut Vec<(u32, u32)>),
) -> Dfa {
    let n = accepting.len();
    let sim = (n <= SIMULATION_LIMIT).then(|| {
        let lists: Vec<Vec<(u32, u32)>> = (0..n as u32)
            .map(|s| {
                let mut v = Vec::new();
                succ(s, &mut v);
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        Simulation::compute(accepting, &lists)
    });
    let mut start: Vec<u32> = initial.to_vec();
    start.sort_unstable();
    start.dedup();
    if let Some(sim) = &sim {
        sim.prune(&mut start);
    }
    let mut ids: FxHashMap<Box<[u32]>, u32> = FxHashMap::default();
    let mut sets: Vec<Box<[u32]>> = Vec::new();
    let start: Box<[u32]> = start.into_boxed_slice();
    ids.insert(start.clone(), 0);
    sets.push(start);
    let mut out = DfaBuilder::new(sig.clone());
    let mut moves: Vec<(u32, u32)> = Vec::new();
    let mut target: Vec<u32> = Vec::new();
    let mut next = 0usize;
    while next < sets.len() {
        let current = sets[next].clone();
        next += 1;
        moves.clear();
        for &s in current.iter() {
            succ(s, &mut moves);
        }
        moves.sort_unstable();
        moves.dedup();
        let mut edges = Vec::new();
        let mut i = 0;
        while i < moves.len() {
            let sym = moves[i].0;
            let mut j = i;
            while j < moves.len() && moves[j].0 == sym {
                j += 1;
            }
            target.clear();
            target.extend(moves[i..j].iter().map(|m| m.1));
            if let Some(sim) = &sim {
                sim.prune(&mut target);
            }
            let id = match ids.get(target.as_slice()) {
                Some(&id) => id,
                None => {
                    let id = sets.len() as u32;
                    let key: Box<[u32]> = target.as_slice().into();
                    ids.insert(key.clone(), id);
                    sets.push(key);
                    id
                }
            };
            edges.push(Edge { sym, to: id });
            i = j;
        }
        let acc = current.iter().any(|&s| accepting[s as usize]);
        out.push_state(u8::from(acc), edges);
    }
    minimize(&out.finish())
}

/// Existential projection of the named tracks of an acceptor.
///
/// Before determinizing, every state that reaches acceptance through letters
/// that are zero on all remaining tracks becomes accepting, so the result is
/// closed under trailing zero padding whenever the input is.
pub(crate) fn project(a: &Dfa, drop: &[&str]) -> Result<Dfa> {
    for name in drop {
        if a.sig.position(name).is_none() {
            return Err(Error::UnknownTrack(name.to_string()));
        }
    }
    if drop.is_empty() {
        return Ok(a.clone());
    }
    let keep_tracks: Vec<super::Track> = a
        .sig
        .tracks()
        .iter()
        .filter(|t| !drop.contains(&t.name.as_str()))
        .cloned()
        .collect();
    let rsig = Signature::new(keep_tracks)?;
    let keep_pos: Vec<usize> = rsig.names().map(|n| a.sig.position(n).unwrap()).collect();
    let alpha = a.sig.alphabet_size();
    let reduce: Vec<u32> = (0..alpha)
        .map(|sym| {
            let d = a.sig.decode(sym);
            let kept: Vec<u8> = keep_pos.iter().map(|&p| d[p]).collect();
            rsig.encode(&kept)
        })
        .collect();

    // zero closure on the remaining tracks
    let preds = a.predecessors(|sym| reduce[sym as usize] == 0);
    let n = a.num_states();
    let mut accepting: Vec<bool> = a.outputs.iter().map(|&o| o != 0).collect();
    let mut stack: Vec<u32> = (0..n as u32).filter(|&s| accepting[s as usize]).collect();
    while let Some(s) = stack.pop() {
        for &p in preds.of(s) {
            if !accepting[p as usize] {
                accepting[p as usize] = true;
                stack.push(p);
            }
        }
    }
    Ok(subset(&rsig, &[0], &accepting, |s, out| {
        out.extend(a.edges_of(s).iter().map(|e| (reduce[e.sym as usize], e.to)))
    }))
}

/// Closure under removing and appending all-zero letters: a word is accepted
/// iff its padding-stripped form followed by some number of zero letters is.
pub(crate) fn pad_close(a: &Dfa) -> Dfa {
    let zero = 0u32;
    let n = a.num_states();
    let preds = a.predecessors(|sym| sym == zero);
    let mut accepting: Vec<bool> = a.outputs.iter().map(|&o| o != 0).collect();
    let mut stack: Vec<u32> = (0..n as u32).filter(|&s| accepting[s as usize]).collect();
    while let Some(s) = stack.pop() {
        for &p in preds.of(s) {
            if !accepting[p as usize] {
                accepting[p as usize] = true;
                stack.push(p);
            }
        }
    }
    // appended zeros lead from an accepting state to an accepting pad state
    let mut nfa = Nfa::new(a.sig.clone());
    for &acc in &accepting[..n] {
        nfa.add_state(acc);
    }
    let pad = nfa.add_state(true);
    nfa.set_initial(0);
    for s in 0..n as u32 {
        for e in a.edges_of(s) {
            nfa.add_sym(s, e.sym, e.to);
        }
        if accepting[s as usize] {
            nfa.add_sym(s, zero, pad);
        }
    }
    nfa.add_sym(pad, zero, pad);
    nfa.determinize()
}
