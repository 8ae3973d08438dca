//! Base-k arithmetic as automata, plus the extended binary normalizer.

use crate::automata::{compile_regex_str, lsd_digits, Automaton, Nfa, Signature};
use crate::error::{Error, Result};
use crate::logic::ast::CmpOp;

/// Ordinary binary representation, least significant digit first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Bits(pub Vec<u8>);

/// Binary representation with digits 0, 1 and 2.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExtBits(pub Vec<u8>);

fn value_of(digits: &[u8]) -> u64 {
    digits.iter().rev().fold(0u64, |acc, &d| 2 * acc + d as u64)
}

fn parse_digits(s: &str, max: u8) -> Result<Vec<u8>> {
    s.chars()
        .map(|ch| match ch.to_digit(10) {
            Some(d) if d as u8 <= max => Ok(d as u8),
            _ => Err(Error::Invalid(format!("bad digit `{ch}` in `{s}`"))),
        })
        .collect()
}

impl Bits {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(Bits(parse_digits(s, 1)?))
    }

    /// Canonical representation (no trailing zeros).
    pub fn of(n: u64) -> Self {
        Bits(lsd_digits(n, 2))
    }

    pub fn value(&self) -> u64 {
        value_of(&self.0)
    }

    pub fn is_canonical(&self) -> bool {
        self.0.last() != Some(&0)
    }
}

impl ExtBits {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(ExtBits(parse_digits(s, 2)?))
    }

    pub fn value(&self) -> u64 {
        value_of(&self.0)
    }
}

/// Predicates offered by [`build_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithKind {
    /// `x = y` on tracks `x, y`.
    Eq,
    /// `x < y` on tracks `x, y`.
    Lt,
    /// `x + y = z` on tracks `x, y, z`.
    Add,
}

pub fn build_arith(kind: ArithKind, base: u8) -> Result<Automaton> {
    match kind {
        ArithKind::Eq => build_compare(CmpOp::Eq, base),
        ArithKind::Lt => build_compare(CmpOp::Lt, base),
        ArithKind::Add => build_add(base),
    }
}

/// `x op y` on tracks `x, y`. Reading least significant digits first, the
/// state is the verdict on the digits read so far; a differing higher digit
/// overrides it.
pub fn build_compare(op: CmpOp, base: u8) -> Result<Automaton> {
    let sig = Signature::from_pairs(&[("x", base), ("y", base)])?;
    let mut nfa = Nfa::new(sig);
    // 0: equal so far, 1: x < y, 2: x > y
    let verdicts = [std::cmp::Ordering::Equal, std::cmp::Ordering::Less, std::cmp::Ordering::Greater];
    for v in verdicts {
        nfa.add_state(op.eval(v, std::cmp::Ordering::Equal));
    }
    nfa.set_initial(0);
    for s in 0..3u32 {
        for a in 0..base {
            for b in 0..base {
                let t = match a.cmp(&b) {
                    std::cmp::Ordering::Equal => s,
                    std::cmp::Ordering::Less => 1,
                    std::cmp::Ordering::Greater => 2,
                };
                nfa.add_transition(s, &[a, b], t)?;
            }
        }
    }
    Ok(Automaton::from_dfa(&nfa.determinize()))
}

/// `x + y = z` on tracks `x, y, z`, with the carry as state.
pub fn build_add(base: u8) -> Result<Automaton> {
    let sig = Signature::from_pairs(&[("x", base), ("y", base), ("z", base)])?;
    let mut nfa = Nfa::new(sig);
    nfa.add_state(true);
    nfa.add_state(false);
    nfa.set_initial(0);
    for carry in 0..2u8 {
        for a in 0..base {
            for b in 0..base {
                let sum = a + b + carry;
                nfa.add_transition(carry as u32, &[a, b, sum % base], (sum / base) as u32)?;
            }
        }
    }
    Ok(Automaton::from_dfa(&nfa.determinize()))
}

/// `x = value` on track `x`.
pub fn build_constant(value: u64, base: u8) -> Result<Automaton> {
    let sig = Signature::from_pairs(&[("x", base)])?;
    let digits = lsd_digits(value, base);
    let mut nfa = Nfa::new(sig);
    let mut prev = nfa.add_state(digits.is_empty());
    nfa.set_initial(prev);
    for (i, &d) in digits.iter().enumerate() {
        let next = nfa.add_state(i + 1 == digits.len());
        nfa.add_transition(prev, &[d], next)?;
        prev = next;
    }
    nfa.add_transition(prev, &[0], prev)?;
    Ok(Automaton::from_dfa(&nfa.determinize()))
}

/// Accepts `(l, n)` with `l` in extended binary (base 3 track) and `n` in
/// binary when both have the same value. State 0 is "no carry", state 1
/// "carry expected".
pub fn build_normalizer() -> Automaton {
    let sig = Signature::from_pairs(&[("l", 3), ("n", 2)]).expect("fixed signature");
    let mut nfa = Nfa::new(sig);
    nfa.add_state(true);
    nfa.add_state(false);
    nfa.set_initial(0);
    for carry in 0..2u8 {
        for a in 0..3u8 {
            let s = a + carry;
            nfa.add_transition(carry as u32, &[a, s % 2], (s / 2) as u32)
                .expect("digits in range");
        }
    }
    Automaton::from_dfa(&nfa.determinize())
}

/// Powers of two on one binary track.
pub fn build_power2() -> Automaton {
    let sig = Signature::from_pairs(&[("n", 2)]).expect("fixed signature");
    compile_regex_str("0*10*", &sig).expect("fixed pattern")
}

/// `adjacent(m, n)`: `m = 2^i, n = 2^(i-1)` or `m = 1, n = 0`, compiled from
/// its formula.
pub fn build_adjacent() -> Automaton {
    let mut env = crate::logic::Env::new();
    env.insert_acceptor("power2", build_power2());
    let (f, base) = crate::logic::parse_formula(
        "?lsd_2 ($power2(m) & $power2(n) & m=2*n) | (m=1 & n=0)",
    )
    .expect("fixed formula");
    crate::logic::compile(&f, &env, base).expect("fixed formula compiles")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn values() {
        assert_eq!(ExtBits::parse("012").unwrap().value(), 10);
        assert_eq!(Bits::parse("0101").unwrap().value(), 10);
        assert_eq!(Bits::parse("").unwrap().value(), 0);
        assert_eq!(Bits::of(10), Bits::parse("0101").unwrap());
        assert!(Bits::parse("012").is_err());
    }

    #[test]
    fn normalizer_has_two_states_and_is_exhaustively_correct() {
        let norm = build_normalizer();
        assert_eq!(norm.state_count(), 2);
        for len in 0..=8u32 {
            for code in 0..3u64.pow(len) {
                let l: Vec<u8> = (0..len).map(|i| ((code / 3u64.pow(i)) % 3) as u8).collect();
                let lv = value_of(&l);
                for n in 0..512u64 {
                    let nd = lsd_digits(n, 2);
                    if nd.len() > 9 {
                        continue;
                    }
                    let want = lv == n;
                    assert_eq!(norm.accepts_tracks(&[&l, &nd]).unwrap(), want);
                }
            }
        }
        assert!(norm.accepts_tracks(&[&[0, 1, 2], &[0, 1, 0, 1]]).unwrap());
        assert!(!norm.accepts_tracks(&[&[2], &[1]]).unwrap());
        assert!(norm.accepts_tracks(&[&[2], &[0, 1]]).unwrap());
        assert!(norm.accepts_tracks(&[&[], &[]]).unwrap());
    }

    #[test]
    fn add_is_the_graph_of_addition() {
        for base in [2u8, 3, 6] {
            let add = build_add(base).unwrap();
            let limit = if base == 2 { 64 } else { 40 };
            for x in 0..limit {
                for y in 0..limit {
                    assert!(add.accepts_values(&[x, y, x + y]).unwrap());
                    assert!(!add.accepts_values(&[x, y, x + y + 1]).unwrap());
                    if x + y > 0 {
                        assert!(!add.accepts_values(&[x, y, x + y - 1]).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn comparisons_match_integers() {
        let ops = [CmpOp::Lt, CmpOp::Le, CmpOp::Eq, CmpOp::Ge, CmpOp::Gt, CmpOp::Ne];
        for base in [2u8, 6] {
            for op in ops {
                let a = build_compare(op, base).unwrap();
                for x in 0..=64u64 {
                    for y in 0..=64u64 {
                        assert_eq!(a.accepts_values(&[x, y]).unwrap(), op.eval(x, y));
                    }
                }
            }
        }
        let lt = build_arith(ArithKind::Lt, 2).unwrap();
        let eq = build_arith(ArithKind::Eq, 2).unwrap();
        for n in 0..=64 {
            assert!(!lt.accepts_values(&[n, n]).unwrap());
            assert!(eq.accepts_values(&[n, n]).unwrap());
        }
    }

    #[test]
    fn constants() {
        for base in [2u8, 3, 6] {
            for c in 0..50 {
                let a = build_constant(c, base).unwrap();
                for v in 0..60 {
                    assert_eq!(a.accepts_values(&[v]).unwrap(), v == c);
                }
            }
        }
    }

    #[test]
    fn power2_and_adjacent() {
        let p = build_power2();
        for v in 0..=1024u64 {
            assert_eq!(p.accepts_values(&[v]).unwrap(), v.is_power_of_two());
        }
        assert!(p.accepts_tracks(&[&[0, 0, 1]]).unwrap());
        assert!(!p.accepts_tracks(&[&[0, 1, 1, 0]]).unwrap());
        let adj = build_adjacent();
        for m in 0..=256u64 {
            for n in 0..=256u64 {
                let want = (m.is_power_of_two() && n.is_power_of_two() && m == 2 * n)
                    || (m == 1 && n == 0);
                assert_eq!(adj.accepts_values(&[m, n]).unwrap(), want, "{m} {n}");
            }
        }
    }
}
