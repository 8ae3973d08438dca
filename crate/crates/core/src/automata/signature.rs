use std::fmt;

use crate::error::{Error, Result};

/// Largest alphabet (product of track bases) an automaton may use.
pub const MAX_ALPHABET: u64 = 1 << 30;

/// One named tape of a multi-track automaton.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Track {
    pub name: String,
    pub base: u8,
}

impl Track {
    pub fn new(name: impl Into<String>, base: u8) -> Self {
        Track {
            name: name.into(),
            base,
        }
    }
}

/// Ordered list of tracks read in parallel.
///
/// A letter of the automaton is a tuple with one digit per track. Tuples are
/// packed into a single `u32` symbol in mixed radix with the first track as
/// the most significant position, so ascending symbols enumerate tuples in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Signature {
    tracks: Vec<Track>,
}

impl Signature {
    pub fn new(tracks: Vec<Track>) -> Result<Self> {
        let mut size: u64 = 1;
        for (i, t) in tracks.iter().enumerate() {
            if t.base < 2 {
                return Err(Error::Signature(format!(
                    "track `{}` has base {} (< 2)",
                    t.name, t.base
                )));
            }
            if tracks[..i].iter().any(|u| u.name == t.name) {
                return Err(Error::Signature(format!("duplicate track `{}`", t.name)));
            }
            size *= t.base as u64;
            if size > MAX_ALPHABET {
                return Err(Error::Signature("alphabet too large".into()));
            }
        }
        Ok(Signature { tracks })
    }

    /// Convenience constructor from `(name, base)` pairs.
    pub fn from_pairs<S: AsRef<str>>(pairs: &[(S, u8)]) -> Result<Self> {
        Self::new(
            pairs
                .iter()
                .map(|(n, b)| Track::new(n.as_ref(), *b))
                .collect(),
        )
    }

    pub fn empty() -> Self {
        Signature { tracks: Vec::new() }
    }

    pub fn tracks(&self) -> &[Track] {
        &self.tracks
    }

    pub fn len(&self) -> usize {
        self.tracks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tracks.is_empty()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.tracks.iter().map(|t| t.name.as_str())
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.tracks.iter().position(|t| t.name == name)
    }

    pub fn base_of(&self, name: &str) -> Option<u8> {
        self.tracks.iter().find(|t| t.name == name).map(|t| t.base)
    }

    pub fn alphabet_size(&self) -> u32 {
        self.tracks.iter().map(|t| t.base as u32).product()
    }

    /// Place value of each track inside a packed symbol.
    pub fn strides(&self) -> Vec<u32> {
        let mut strides = vec![0; self.tracks.len()];
        let mut acc = 1u32;
        for i in (0..self.tracks.len()).rev() {
            strides[i] = acc;
            acc *= self.tracks[i].base as u32;
        }
        strides
    }

    pub fn check(&self, digits: &[u8]) -> Result<()> {
        if digits.len() != self.tracks.len() {
            return Err(Error::Signature(format!(
                "tuple of width {} for signature of width {}",
                digits.len(),
                self.tracks.len()
            )));
        }
        for (d, t) in digits.iter().zip(&self.tracks) {
            if *d >= t.base {
                return Err(Error::DigitOutOfRange {
                    track: t.name.clone(),
                    base: t.base,
                    digit: *d,
                });
            }
        }
        Ok(())
    }

    /// Packs a digit tuple. Digits are assumed to be in range.
    pub fn encode(&self, digits: &[u8]) -> u32 {
        digits
            .iter()
            .zip(&self.tracks)
            .fold(0u32, |acc, (d, t)| acc * t.base as u32 + *d as u32)
    }

    pub fn decode(&self, mut sym: u32) -> Vec<u8> {
        let mut out = vec![0u8; self.tracks.len()];
        for i in (0..self.tracks.len()).rev() {
            let b = self.tracks[i].base as u32;
            out[i] = (sym % b) as u8;
            sym /= b;
        }
        out
    }

    /// Signature with `other`'s tracks appended after ours (shared names are
    /// identified and must agree on their base).
    pub fn union(&self, other: &Signature) -> Result<Signature> {
        let mut tracks = self.tracks.clone();
        for t in &other.tracks {
            match self.base_of(&t.name) {
                Some(b) if b != t.base => {
                    return Err(Error::BaseMismatch {
                        name: t.name.clone(),
                        first: b,
                        second: t.base,
                    })
                }
                Some(_) => {}
                None => tracks.push(t.clone()),
            }
        }
        Signature::new(tracks)
    }

    /// Same tracks, sorted by name.
    pub fn sorted(&self) -> Signature {
        let mut tracks = self.tracks.clone();
        tracks.sort();
        Signature { tracks }
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .tracks
            .iter()
            .map(|t| format!("{}:{}", t.name, t.base))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// LSD-first digits of `value` in `base`, without trailing zeros.
pub fn lsd_digits(mut value: u64, base: u8) -> Vec<u8> {
    let mut out = Vec::new();
    while value > 0 {
        out.push((value % base as u64) as u8);
        value /= base as u64;
    }
    out
}

/// Positional value of LSD-first digits.
pub fn lsd_value(digits: &[u8], base: u8) -> u64 {
    digits
        .iter()
        .rev()
        .fold(0u64, |acc, d| acc * base as u64 + *d as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn encode_decode_and_order() {
        let sig = Signature::from_pairs(&[("c", 6), ("n", 2)]).unwrap();
        assert_eq!(sig.alphabet_size(), 12);
        assert_eq!(sig.encode(&[0, 1]), 1);
        assert_eq!(sig.encode(&[1, 0]), 2);
        for s in 0..12 {
            assert_eq!(sig.encode(&sig.decode(s)), s);
        }
        assert_eq!(sig.strides(), vec![2, 1]);
    }

    #[test]
    fn rejects_duplicates_and_small_bases() {
        assert!(Signature::from_pairs(&[("x", 2), ("x", 2)]).is_err());
        assert!(Signature::from_pairs(&[("x", 1)]).is_err());
        let a = Signature::from_pairs(&[("x", 2)]).unwrap();
        let b = Signature::from_pairs(&[("x", 3)]).unwrap();
        assert!(matches!(a.union(&b), Err(Error::BaseMismatch { .. })));
    }

    #[test]
    fn digits_roundtrip() {
        assert_eq!(lsd_digits(10, 2), vec![0, 1, 0, 1]);
        assert_eq!(lsd_value(&[0, 1, 2], 2), 10);
        assert_eq!(lsd_digits(0, 2), Vec::<u8>::new());
    }
}
