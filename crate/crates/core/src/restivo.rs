//! Restivo codes, the words they name, and the lookup automaton `LOOK`.
//!
//! A code `c0 c1 ... ct` over 1..=5, possibly followed by padding zeros,
//! names `g(c0) mu(g(c1)) mu^2(g(c2)) ...` with `g` mapping 1..=5 to
//! `"", "0", "1", "00", "11"` and `mu` the Thue-Morse morphism.

use std::fmt;

use crate::automata::{Automaton, Edge, OutputAutomaton, Signature};
use crate::automata::dfa::DfaBuilder;
use crate::error::{Error, Result};
use crate::logic::{parse_script, Entry, Env, Library};
use crate::numeration::build_normalizer;

/// The listing that builds `LOOK` and its parts.
pub const LOOKUP_SCRIPT: &str = include_str!("../scripts/lookup.wal");

/// `g(d)`.
pub fn g(d: u8) -> &'static [u8] {
    match d {
        1 => &[],
        2 => &[0],
        3 => &[1],
        4 => &[0, 0],
        5 => &[1, 1],
        _ => &[],
    }
}

/// `h(d) = |g(d)|`, with `h(0) = 0`.
pub fn h(d: u8) -> u8 {
    g(d).len() as u8
}

/// Bit `n` of the Thue-Morse word `t = 0110 1001 ...`.
pub fn thue_morse_bit(n: u64) -> u8 {
    (n.count_ones() % 2) as u8
}

/// `mu(w)`: 0 -> 01, 1 -> 10.
pub fn mu(word: &[u8]) -> Vec<u8> {
    word.iter().flat_map(|&b| [b, 1 - b]).collect()
}

/// `mu^j(w)`; the image of a letter `a` is `a` xor the first `2^j` bits of `t`.
pub fn mu_pow(word: &[u8], j: u32) -> Vec<u8> {
    let block = 1u64 << j;
    let mut out = Vec::with_capacity(word.len() << j);
    for &a in word {
        out.extend((0..block).map(|k| a ^ thue_morse_bit(k)));
    }
    out
}

/// A code: digits 0..=5, least significant (first block) first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Code(Vec<u8>);

impl Code {
    pub fn new(digits: Vec<u8>) -> Result<Code> {
        if let Some(&d) = digits.iter().find(|&&d| d > 5) {
            return Err(Error::InvalidCode(format!("digit {d} is not a code digit")));
        }
        Ok(Code(digits))
    }

    pub fn parse(s: &str) -> Result<Code> {
        let digits = s
            .chars()
            .map(|ch| {
                ch.to_digit(6)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::InvalidCode(format!("`{s}`")))
            })
            .collect::<Result<Vec<u8>>>()?;
        Code::new(digits)
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    /// Digits in 1..=5 followed only by zeros.
    pub fn is_valid(&self) -> bool {
        let body = self.0.iter().take_while(|&&d| d != 0).count();
        self.0[body..].iter().all(|&d| d == 0)
    }

    /// The code without its padding zeros.
    pub fn trimmed(&self) -> Code {
        let mut d = self.0.clone();
        while d.last() == Some(&0) {
            d.pop();
        }
        Code(d)
    }

    /// Length of the coded word, `sum h(c_i) 2^i`.
    pub fn word_len(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &d)| (h(d) as u64) << i)
            .sum()
    }

    /// The coded word; see [`expand_code`].
    pub fn word(&self) -> Result<Vec<u8>> {
        expand_code(self)
    }

    /// Value of the code read as a base-6 number, least significant first.
    pub fn value(&self) -> u64 {
        self.0.iter().rev().fold(0, |acc, &d| acc * 6 + d as u64)
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.0 {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// Explicit expansion by the definition, the reference for everything the
/// automata compute.
pub fn expand_code(code: &Code) -> Result<Vec<u8>> {
    if !code.is_valid() {
        return Err(Error::InvalidCode(format!("`{code}` has an interior 0")));
    }
    let mut out = Vec::with_capacity(code.word_len() as usize);
    for (i, &d) in code.digits().iter().enumerate() {
        out.extend(mu_pow(g(d), i as u32));
    }
    Ok(out)
}

/// The block holding position `n` of the coded word: the `i` with
/// `|R(c0..c_{i-1})| <= n < |R(c0..c_i)|`, and the offset of `n` in it.
pub fn block_of(code: &Code, n: u64) -> Option<(usize, u64)> {
    let mut start = 0u64;
    for (i, &d) in code.digits().iter().enumerate() {
        let end = start + ((h(d) as u64) << i);
        if n < end {
            return Some((i, n - start));
        }
        start = end;
    }
    None
}

/// All codes over 1..=5 with at most `max_len` digits, shortest first.
pub fn codes_up_to(max_len: usize) -> Vec<Code> {
    let mut out = vec![Code::default()];
    let mut layer = vec![Vec::<u8>::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * 5);
        for c in &layer {
            for d in 1..=5 {
                let mut e = c.clone();
                e.push(d);
                next.push(e);
            }
        }
        out.extend(next.iter().cloned().map(Code));
        layer = next;
    }
    out
}

/// `T[n]`: bit `n` of the Thue-Morse word, 2 states.
pub fn build_t() -> OutputAutomaton {
    let sig = Signature::from_pairs(&[("n", 2)]).expect("fixed signature");
    let mut b = DfaBuilder::new(sig);
    b.push_state(0, vec![Edge { sym: 0, to: 0 }, Edge { sym: 1, to: 1 }]);
    b.push_state(1, vec![Edge { sym: 0, to: 1 }, Edge { sym: 1, to: 0 }]);
    OutputAutomaton::from_dfa(&b.finish())
}

/// `CODE[p][c]`: the digit `c_i` when `p = 2^i`, else 0.
pub fn build_code() -> OutputAutomaton {
    let sig = Signature::from_pairs(&[("p", 2), ("c", 6)]).expect("fixed signature");
    let enc = |p: u8, c: u8| sig.encode(&[p, c]);
    let mut b = DfaBuilder::new(sig.clone());
    // state 0: before the 1 of p; state 1 + d: after it, having read digit d
    b.push_state(
        0,
        (0..6u8)
            .flat_map(|d| [Edge { sym: enc(0, d), to: 0 }, Edge { sym: enc(1, d), to: 1 + d as u32 }])
            .collect(),
    );
    for d in 0..6u8 {
        b.push_state(
            d,
            (0..6u8)
                .map(|e| Edge {
                    sym: enc(0, e),
                    to: 1 + d as u32,
                })
                .collect(),
        );
    }
    OutputAutomaton::from_dfa(&b.finish())
}

/// Environment with the builtin automata `normalize`, `T` and `CODE`.
pub fn builtin_env() -> Env {
    let mut env = Env::new();
    env.insert_acceptor("normalize", build_normalizer());
    env.insert_output("T", build_t());
    env.insert_output("CODE", build_code());
    env
}

/// Library with the builtins and the lookup listing.
pub fn lookup_library() -> Library {
    let mut lib = Library::new(builtin_env());
    lib.add_script(&parse_script(LOOKUP_SCRIPT).expect("lookup listing parses"));
    lib
}

/// Names [`build_named`] accepts.
pub const NAMED: &[&str] = &[
    "normalize", "T", "CODE", "power2", "adjacent", "hmorph", "validcode", "prefix", "length",
    "look1", "look2", "LOOK",
];

/// Builds one of [`NAMED`] from the lookup listing.
pub fn build_named(name: &str) -> Result<Entry> {
    if !NAMED.contains(&name) {
        return Err(Error::UnknownEntry(name.to_string()));
    }
    Ok(lookup_library().build(name)?.clone())
}

/// The lookup automaton: bit `n` of the word coded by `c`, or 2 when `c` is
/// invalid or `n` is out of range.
pub fn build_look() -> Result<OutputAutomaton> {
    match build_named("LOOK")? {
        Entry::Output(o) => Ok(o),
        Entry::Acceptor(_) => Err(Error::Invalid("LOOK is not an automaton with output".into())),
    }
}

/// Acceptor view of a named entry.
pub fn acceptor(entry: &Entry) -> Result<&Automaton> {
    match entry {
        Entry::Acceptor(a) => Ok(a),
        Entry::Output(_) => Err(Error::Invalid("expected an acceptor".into())),
    }
}

/// Reads the output of `o` on the code digits and a binary index.
pub fn look_at(o: &OutputAutomaton, code: &Code, n: u64) -> Result<u8> {
    let nd = crate::automata::lsd_digits(n, 2);
    o.output_tracks(&[code.digits(), &nd])
}


#[cfg(test)]
mod tests {
    use super::*;

    fn code(s: &str) -> Code {
        Code::parse(s).unwrap()
    }

    #[test]
    fn expansions() {
        assert_eq!(expand_code(&code("2")).unwrap(), vec![0]);
        assert_eq!(expand_code(&code("3")).unwrap(), vec![1]);
        assert_eq!(expand_code(&code("23")).unwrap(), vec![0, 1, 0]);
        assert_eq!(expand_code(&code("25")).unwrap(), vec![0, 1, 0, 1, 0]);
        assert_eq!(expand_code(&code("2500")).unwrap(), vec![0, 1, 0, 1, 0]);
        assert!(matches!(expand_code(&code("205")), Err(Error::InvalidCode(_))));
        assert!(Code::parse("16").is_err());
    }

    #[test]
    fn morphism_lengths() {
        for d in 1..=5u8 {
            for j in 0..=10u32 {
                assert_eq!(mu_pow(g(d), j).len() as u64, (1u64 << j) * h(d) as u64);
            }
        }
        let mut w = vec![0u8];
        for j in 0..=10u32 {
            assert_eq!(mu_pow(&[0], j), w);
            w = mu(&w);
        }
    }

    #[test]
    fn thue_morse_prefixes() {
        let t: Vec<u8> = (0..8).map(thue_morse_bit).collect();
        assert_eq!(t, vec![0, 1, 1, 0, 1, 0, 0, 1]);
        for i in 0..=10u32 {
            let n = 1u64 << i;
            let t: Vec<u8> = (0..n).map(thue_morse_bit).collect();
            assert_eq!(t, mu_pow(&[0], i));
            let tbar: Vec<u8> = t.iter().map(|b| 1 - b).collect();
            assert_eq!(tbar, mu_pow(&[1], i));
        }
        let a = build_t();
        assert_eq!(a.state_count(), 2);
        for n in 0..1024 {
            assert_eq!(a.output_values(&[n]).unwrap(), thue_morse_bit(n));
        }
    }

    #[test]
    fn code_automaton() {
        let a = build_code();
        for c in codes_up_to(4) {
            for p in 0..40u64 {
                let want = if p.is_power_of_two() {
                    c.digits().get(p.trailing_zeros() as usize).copied().unwrap_or(0)
                } else {
                    0
                };
                let pd = crate::automata::lsd_digits(p, 2);
                assert_eq!(a.output_tracks(&[&pd, c.digits()]).unwrap(), want);
            }
        }
    }

    #[test]
    fn block_location_matches_expansion() {
        for c in codes_up_to(5) {
            let mut starts = Vec::new();
            let mut pos = 0u64;
            for (i, &d) in c.digits().iter().enumerate() {
                starts.push(pos);
                pos += (h(d) as u64) << i;
            }
            for n in 0..c.word_len() {
                let (i, off) = block_of(&c, n).unwrap();
                assert!(starts[i] <= n && n < starts[i] + ((h(c.digits()[i]) as u64) << i));
                assert_eq!(off, n - starts[i]);
            }
            assert_eq!(block_of(&c, c.word_len()), None);
        }
    }
}

#[cfg(test)]
mod look_tests {
    use super::*;

    #[test]
    fn look_has_17_states_and_matches_expansion() {
        let mut lib = lookup_library();
        lib.build("LOOK").unwrap();
        let Some(Entry::Output(look)) = lib.env().get("LOOK") else { panic!() };
        assert_eq!(look.state_count(), 17);
        for c in codes_up_to(6) {
            let w = expand_code(&c).unwrap();
            for n in 0..w.len() as u64 + 3 {
                let want = w.get(n as usize).copied().unwrap_or(2);
                assert_eq!(look_at(look, &c, n).unwrap(), want, "{c} {n}");
            }
        }
        assert_eq!(look_at(look, &Code::parse("205").unwrap(), 0).unwrap(), 2);
    }
}
