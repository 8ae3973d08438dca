use std::fmt;

use super::dfa::Dfa;
use super::minimize::minimize;
use super::ops;
use super::signature::Signature;
use crate::error::{Error, Result};

/// Boolean connectives accepted by [`Automaton::combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BooleanOp {
    And,
    Or,
    Not,
    Implies,
    Iff,
}

/// A tuple word: one digit tuple per position, least significant first.
pub type TupleWord = Vec<Vec<u8>>;

/// Zips per-track digit strings into a tuple word, padding shorter tracks with 0.
pub fn zip_tracks(tracks: &[&[u8]]) -> TupleWord {
    let len = tracks.iter().map(|t| t.len()).max().unwrap_or(0);
    (0..len)
        .map(|i| tracks.iter().map(|t| t.get(i).copied().unwrap_or(0)).collect())
        .collect()
}

fn encode_word(sig: &Signature, word: &[Vec<u8>]) -> Result<Vec<u32>> {
    word.iter()
        .map(|letter| {
            sig.check(letter)?;
            Ok(sig.encode(letter))
        })
        .collect()
}

/// Deterministic multi-track acceptor, always kept minimal and canonically
/// numbered, so two automata over the same signature are equal exactly when
/// their languages are.
#[derive(Clone, PartialEq, Eq)]
pub struct Automaton {
    dfa: Dfa,
}

impl fmt::Debug for Automaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Automaton({}; {} states)",
            self.dfa.signature(),
            self.dfa.num_states()
        )
    }
}

impl Automaton {
    /// Wraps a DFA, reading any nonzero output as acceptance.
    pub fn from_dfa(dfa: &Dfa) -> Self {
        Automaton {
            dfa: minimize(&dfa.map_outputs(|o| u8::from(o != 0))),
        }
    }

    pub(crate) fn from_minimal(dfa: Dfa) -> Self {
        Automaton { dfa }
    }

    pub fn empty(sig: Signature) -> Self {
        Automaton {
            dfa: Dfa::empty(sig),
        }
    }

    /// Accepts every word over `sig`.
    pub fn universal(sig: Signature) -> Self {
        Automaton {
            dfa: Dfa::constant(sig, 1),
        }
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn signature(&self) -> &Signature {
        self.dfa.signature()
    }

    pub fn accepts(&self, word: &[Vec<u8>]) -> Result<bool> {
        let syms = encode_word(self.signature(), word)?;
        Ok(self.dfa.output_of(syms) != 0)
    }

    /// Runs on per-track digit strings padded to a common length.
    pub fn accepts_tracks(&self, tracks: &[&[u8]]) -> Result<bool> {
        if tracks.len() != self.signature().len() {
            return Err(Error::Arity {
                name: self.signature().to_string(),
                expected: self.signature().len(),
                found: tracks.len(),
            });
        }
        self.accepts(&zip_tracks(tracks))
    }

    /// Runs on natural numbers written in each track's base.
    pub fn accepts_values(&self, values: &[u64]) -> Result<bool> {
        let digits: Vec<Vec<u8>> = values
            .iter()
            .zip(self.signature().tracks())
            .map(|(&v, t)| super::signature::lsd_digits(v, t.base))
            .collect();
        let refs: Vec<&[u8]> = digits.iter().map(|d| d.as_slice()).collect();
        self.accepts_tracks(&refs)
    }

    pub fn is_empty(&self) -> bool {
        self.dfa.output(0) == 0 && self.dfa.edges_of(0).is_empty()
    }

    /// True iff the empty word is accepted; for a zero-track automaton this
    /// is the truth value of the sentence it encodes.
    pub fn accepts_empty(&self) -> bool {
        self.dfa.output(0) != 0
    }

    pub fn and(&self, other: &Automaton) -> Result<Automaton> {
        self.combine(BooleanOp::And, Some(other))
    }

    pub fn or(&self, other: &Automaton) -> Result<Automaton> {
        self.combine(BooleanOp::Or, Some(other))
    }

    pub fn implies(&self, other: &Automaton) -> Result<Automaton> {
        self.combine(BooleanOp::Implies, Some(other))
    }

    pub fn not(&self) -> Automaton {
        Automaton {
            dfa: ops::complement(&self.dfa),
        }
    }

    /// Boolean combination over the union of both signatures (tracks are
    /// identified by name; `self`'s tracks come first).
    pub fn combine(&self, op: BooleanOp, other: Option<&Automaton>) -> Result<Automaton> {
        if op == BooleanOp::Not {
            return Ok(self.not());
        }
        let other = other.ok_or_else(|| Error::Invalid(format!("{op:?} needs two operands")))?;
        let f: fn(u8, u8) -> u8 = match op {
            BooleanOp::And => |a, b| u8::from(a != 0 && b != 0),
            BooleanOp::Or => |a, b| u8::from(a != 0 || b != 0),
            BooleanOp::Implies => |a, b| u8::from(a == 0 || b != 0),
            BooleanOp::Iff => |a, b| u8::from((a != 0) == (b != 0)),
            BooleanOp::Not => unreachable!(),
        };
        Ok(Automaton {
            dfa: ops::product(&self.dfa, &other.dfa, f)?,
        })
    }

    /// Existential quantification of one track.
    pub fn project(&self, track: &str) -> Result<Automaton> {
        self.project_all(&[track])
    }

    /// Existential quantification of several tracks at once.
    pub fn project_all(&self, tracks: &[&str]) -> Result<Automaton> {
        Ok(Automaton {
            dfa: ops::project(&self.dfa, tracks)?,
        })
    }

    /// Universal quantification, as the dual of [`Automaton::project_all`].
    pub fn forall(&self, tracks: &[&str]) -> Result<Automaton> {
        Ok(self.not().project_all(tracks)?.not())
    }

    pub fn rename(&self, names: &[&str]) -> Result<Automaton> {
        Ok(Automaton::from_dfa(&self.dfa.rename(names)?))
    }

    pub fn reorder(&self, order: &[&str]) -> Result<Automaton> {
        Ok(Automaton::from_dfa(&self.dfa.reorder(order)?))
    }

    pub fn sorted_tracks(&self) -> Automaton {
        let d = self.dfa.sorted_tracks();
        if d == self.dfa {
            self.clone()
        } else {
            Automaton::from_dfa(&d)
        }
    }

    /// Minimal automaton numbered breadth-first; construction already
    /// maintains this form so this is the identity.
    pub fn canonicalize(&self) -> Automaton {
        Automaton::from_dfa(&self.dfa)
    }

    /// Number of states from which some word is accepted.
    pub fn state_count(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.dfa.num_states()
        }
    }

    /// Language equality, allowing the track order to differ.
    pub fn equivalent(&self, other: &Automaton) -> bool {
        if self.signature().sorted() != other.signature().sorted() {
            return false;
        }
        self.sorted_tracks() == other.sorted_tracks()
    }

    /// Closure under adding and removing trailing all-zero letters.
    pub fn pad_closure(&self) -> Automaton {
        Automaton {
            dfa: ops::pad_close(&self.dfa),
        }
    }

    pub fn is_pad_closed(&self) -> bool {
        self.pad_closure() == *self
    }

    /// Accepted words of length at most `max_len` that do not end in an
    /// all-zero letter, in shortlex order.
    pub fn enumerate_accepted(&self, max_len: usize) -> Vec<TupleWord> {
        let sig = self.signature();
        let mut out = Vec::new();
        for len in 0..=max_len {
            let mut path = Vec::new();
            self.enumerate_len(0, len, &mut path, &mut out);
        }
        out.into_iter()
            .map(|w: Vec<u32>| w.iter().map(|&s| sig.decode(s)).collect())
            .collect()
    }

    fn enumerate_len(&self, state: u32, left: usize, path: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            if self.dfa.output(state) != 0 && path.last() != Some(&0) {
                out.push(path.clone());
            }
            return;
        }
        for e in self.dfa.edges_of(state) {
            path.push(e.sym);
            self.enumerate_len(e.to, left - 1, path, out);
            path.pop();
        }
    }
}

/// Deterministic automaton with an output value per state.
#[derive(Clone, PartialEq, Eq)]
pub struct OutputAutomaton {
    dfa: Dfa,
}

impl fmt::Debug for OutputAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "OutputAutomaton({}; {} states)",
            self.dfa.signature(),
            self.state_count()
        )
    }
}

impl OutputAutomaton {
    pub fn from_dfa(dfa: &Dfa) -> Self {
        OutputAutomaton {
            dfa: minimize(dfa),
        }
    }

    pub fn dfa(&self) -> &Dfa {
        &self.dfa
    }

    pub fn signature(&self) -> &Signature {
        self.dfa.signature()
    }

    pub fn output(&self, word: &[Vec<u8>]) -> Result<u8> {
        let syms = encode_word(self.signature(), word)?;
        Ok(self.dfa.output_of(syms))
    }

    pub fn output_tracks(&self, tracks: &[&[u8]]) -> Result<u8> {
        self.output(&zip_tracks(tracks))
    }

    pub fn output_values(&self, values: &[u64]) -> Result<u8> {
        let digits: Vec<Vec<u8>> = values
            .iter()
            .zip(self.signature().tracks())
            .map(|(&v, t)| super::signature::lsd_digits(v, t.base))
            .collect();
        let refs: Vec<&[u8]> = digits.iter().map(|d| d.as_slice()).collect();
        self.output_tracks(&refs)
    }

    /// Acceptor for the words whose output is `value`.
    pub fn slice(&self, value: u8) -> Automaton {
        Automaton::from_dfa(&self.dfa.map_outputs(|o| u8::from(o == value)))
    }

    /// Number of states of the minimal complete automaton.
    pub fn state_count(&self) -> usize {
        self.dfa.num_states() + usize::from(!self.dfa.is_complete())
    }

    pub fn rename(&self, names: &[&str]) -> Result<OutputAutomaton> {
        Ok(OutputAutomaton::from_dfa(&self.dfa.rename(names)?))
    }

    /// Acceptor over both signatures for `cmp(self(w), other(w))`.
    pub fn compare(
        &self,
        other: &OutputAutomaton,
        cmp: impl Fn(u8, u8) -> bool,
    ) -> Result<Automaton> {
        let d = ops::product(&self.dfa, &other.dfa, |a, b| u8::from(cmp(a, b)))?;
        Ok(Automaton::from_minimal(d))
    }

    /// On each word, the value of the first part whose automaton accepts it,
    /// else `default`.
    pub fn combine_outputs(parts: &[(Automaton, u8)], default: u8) -> Result<OutputAutomaton> {
        let Some((first, _)) = parts.first() else {
            return Err(Error::Invalid("combine needs at least one part".into()));
        };
        // encode "index of first accepting part + 1" and map at the end
        let mut acc = first.dfa.map_outputs(|o| u8::from(o != 0));
        for (k, (part, _)) in parts.iter().enumerate().skip(1) {
            let tag = (k + 1) as u8;
            acc = ops::product(&acc, &part.dfa, |x, y| {
                if x != 0 {
                    x
                } else if y != 0 {
                    tag
                } else {
                    0
                }
            })?;
        }
        let values: Vec<u8> = parts.iter().map(|(_, v)| *v).collect();
        Ok(OutputAutomaton::from_dfa(&acc.map_outputs(|o| {
            if o == 0 {
                default
            } else {
                values[o as usize - 1]
            }
        })))
    }
}
