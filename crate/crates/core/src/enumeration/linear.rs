//! Linear representations counting the values of one track.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::IntMatrix;
use crate::automata::{lsd_digits, Automaton};
use crate::error::{Error, Result};

/// Padding steps tried by [`LinearRepresentation::evaluate`].
pub const MAX_PADS: usize = 64;

/// `count(x) = v gamma(x_0) gamma(x_1) ... w` for an LSD-first word `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRepresentation {
    pub v: Vec<BigInt>,
    /// One square matrix per input digit.
    pub gamma: Vec<IntMatrix>,
    pub w: Vec<BigInt>,
}

/// Counts, for each value of the other track, the words on `count_track`
/// accepted with it. The automaton must have exactly two tracks.
pub fn to_linear_representation(a: &Automaton, count_track: &str) -> Result<LinearRepresentation> {
    let sig = a.signature();
    if sig.len() != 2 {
        return Err(Error::Signature(format!(
            "expected two tracks, found {}",
            sig
        )));
    }
    let ci = sig
        .position(count_track)
        .ok_or_else(|| Error::UnknownTrack(count_track.to_string()))?;
    let base = sig.tracks()[1 - ci].base as usize;
    let dfa = a.dfa();
    let n = dfa.num_states();
    let mut gamma = vec![vec![vec![BigInt::zero(); n]; n]; base];
    for s in 0..n as u32 {
        for e in dfa.edges_of(s) {
            let digits = sig.decode(e.sym);
            gamma[digits[1 - ci] as usize][s as usize][e.to as usize] += 1;
        }
    }
    let mut v = vec![BigInt::zero(); n];
    v[0] = BigInt::one();
    let w = (0..n as u32)
        .map(|s| BigInt::from(u8::from(dfa.output(s) != 0)))
        .collect();
    Ok(LinearRepresentation { v, gamma, w })
}

fn times(row: &[BigInt], m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); row.len()];
    for (x, r) in row.iter().zip(m) {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(r) {
            if !y.is_zero() {
                *o += x * y;
            }
        }
    }
    out
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

impl LinearRepresentation {
    pub fn rank(&self) -> usize {
        self.v.len()
    }

    pub fn digits(&self) -> usize {
        self.gamma.len()
    }

    fn check(&self) -> Result<()> {
        let r = self.rank();
        let square = |m: &IntMatrix| m.len() == r && m.iter().all(|row| row.len() == r);
        if self.w.len() != r || self.gamma.is_empty() || !self.gamma.iter().all(square) {
            return Err(Error::Invalid("inconsistent linear representation dimensions".into()));
        }
        Ok(())
    }

    /// `v gamma(word) w` with no padding.
    pub fn evaluate_word(&self, word: &[u8]) -> BigInt {
        let row = word
            .iter()
            .fold(self.v.clone(), |row, &d| times(&row, &self.gamma[d as usize]));
        dot(&row, &self.w)
    }

    /// The count for `n`: start from the canonical digits of `n` and pad with
    /// zeros until the value repeats twice in a row.
    pub fn evaluate(&self, n: u64) -> Result<BigInt> {
        let mut row = lsd_digits(n, self.digits() as u8)
            .into_iter()
            .fold(self.v.clone(), |row, d| times(&row, &self.gamma[d as usize]));
        let mut value = dot(&row, &self.w);
        let mut same = 0;
        for _ in 0..MAX_PADS {
            row = times(&row, &self.gamma[0]);
            let next = dot(&row, &self.w);
            if next == value {
                same += 1;
                if same == 2 {
                    return Ok(value);
                }
            } else {
                same = 0;
                value = next;
            }
        }
        Err(Error::NoStabilization(MAX_PADS))
    }

    /// Dimension of a minimal equivalent representation over the rationals:
    /// the rank of the product of the reachable and co-reachable spaces.
    pub fn minimal_rank(&self) -> usize {
        let to_q = |v: &[BigInt]| -> Vec<BigRational> {
            v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
        };
        let transposed: Vec<IntMatrix> = self
            .gamma
            .iter()
            .map(|m| (0..m.len()).map(|j| m.iter().map(|r| r[j].clone()).collect()).collect())
            .collect();
        let forward = reachable_space(&self.v, &self.gamma);
        let backward = reachable_space(&self.w, &transposed);
        let product: Vec<Vec<BigRational>> = forward
            .iter()
            .map(|f| {
                backward
                    .iter()
                    .map(|b| to_q(f).iter().zip(to_q(b)).map(|(x, y)| x * y).sum())
                    .collect()
            })
            .collect();
        rank_q(product)
    }

    /// Plain-text form: rank, v, one matrix per digit, w.
    pub fn to_text(&self) -> String {
        let line = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        let mut out = String::new();
        writeln!(out, "rank {}", self.rank()).unwrap();
        writeln!(out, "digits {}", self.digits()).unwrap();
        writeln!(out, "v").unwrap();
        writeln!(out, "{}", line(&self.v)).unwrap();
        for (d, m) in self.gamma.iter().enumerate() {
            writeln!(out, "gamma {d}").unwrap();
            for row in m {
                writeln!(out, "{}", line(row)).unwrap();
            }
        }
        writeln!(out, "w").unwrap();
        writeln!(out, "{}", line(&self.w)).unwrap();
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap().trim()))
            .filter(|(_, l)| !l.is_empty());
        let mut last = 0;
        let mut next = |what: &str| -> Result<(usize, &str)> {
            let got = lines.next().ok_or_else(|| Error::Format {
                line: last + 1,
                message: format!("expected {what}"),
            })?;
            last = got.0;
            Ok(got)
        };
        let header = |(line, l): (usize, &str), key: &str| -> Result<usize> {
            let mut parts = l.split_whitespace();
            match (parts.next(), parts.next().map(str::parse::<usize>), parts.next()) {
                (Some(k), Some(Ok(v)), None) if k == key => Ok(v),
                _ => Err(Error::Format { line, message: format!("expected `{key} <n>`") }),
            }
        };
        let keyword = |(line, l): (usize, &str), key: &str| -> Result<()> {
            if l == key {
                Ok(())
            } else {
                Err(Error::Format { line, message: format!("expected `{key}`") })
            }
        };
        let row = |(line, l): (usize, &str), r: usize| -> Result<Vec<BigInt>> {
            let v = l
                .split_whitespace()
                .map(|t| t.parse::<BigInt>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| Error::Format { line, message: e.to_string() })?;
            if v.len() != r {
                return Err(Error::Format { line, message: format!("expected {r} entries") });
            }
            Ok(v)
        };
        let r = header(next("rank")?, "rank")?;
        let digits = header(next("digits")?, "digits")?;
        if digits < 2 {
            return Err(Error::Format { line: last, message: "need at least two digits".into() });
        }
        keyword(next("v")?, "v")?;
        let v = row(next("row")?, r)?;
        let mut gamma = Vec::new();
        for d in 0..digits {
            let (line, l) = next("gamma")?;
            if l != format!("gamma {d}") {
                return Err(Error::Format { line, message: format!("expected `gamma {d}`") });
            }
            let mut m = Vec::new();
            for _ in 0..r {
                m.push(row(next("row")?, r)?);
            }
            gamma.push(m);
        }
        keyword(next("w")?, "w")?;
        let w = row(next("row")?, r)?;
        if let Ok((line, _)) = next("end") {
            return Err(Error::Format { line, message: "trailing input".into() });
        }
        let lr = LinearRepresentation { v, gamma, w };
        lr.check()?;
        Ok(lr)
    }
}

/// A basis of the span of `start gamma(x)` over all words `x`.
fn reachable_space(start: &[BigInt], gamma: &[IntMatrix]) -> Vec<Vec<BigInt>> {
    let mut echelon: Vec<(Vec<BigRational>, usize)> = Vec::new();
    let mut basis = Vec::new();
    let mut queue = vec![start.to_vec()];
    while let Some(vec) = queue.pop() {
        let mut u: Vec<BigRational> = vec.iter().map(|x| BigRational::from_integer(x.clone())).collect();
        for (row, pivot) in &echelon {
            if u[*pivot].is_zero() {
                continue;
            }
            let f = &u[*pivot] / &row[*pivot];
            for (x, y) in u.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let Some(pivot) = u.iter().position(|x| !x.is_zero()) else {
            continue;
        };
        echelon.push((u, pivot));
        for m in gamma {
            queue.push(times(&vec, m));
        }
        basis.push(vec);
    }
    basis
}

fn rank_q(mut m: Vec<Vec<BigRational>>) -> usize {
    let mut rank = 0;
    let cols = m.first().map_or(0, |r| r.len());
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] / &m[rank][c];
            let (above, below) = m.split_at_mut(i);
            for (x, p) in below[0][c..].iter_mut().zip(&above[rank][c..]) {
                *x -= &f * p;
            }
        }
        rank += 1;
    }
    rank
}

/// Table of `n` and the count at `n`, tab separated with a header.
pub fn table_tsv(rows: &[(u64, BigInt)]) -> String {
    let mut out = String::from("n\tE(n)\n");
    for (n, e) in rows {
        writeln!(out, "{n}\t{e}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Signature;

    fn full() -> LinearRepresentation {
        let sig = Signature::from_pairs(&[("c", 6), ("n", 2)]).unwrap();
        to_linear_representation(&Automaton::universal(sig), "c").unwrap()
    }

    #[test]
    fn full_language() {
        let lr = full();
        assert_eq!(lr.rank(), 1);
        assert_eq!(lr.gamma[0], vec![vec![BigInt::from(6)]]);
        assert_eq!(lr.gamma[1], vec![vec![BigInt::from(6)]]);
        assert_eq!(lr.evaluate_word(&lsd_digits(5, 2)), BigInt::from(216));
        // Every padding step multiplies by 6, so nothing stabilizes.
        assert_eq!(lr.evaluate(5), Err(Error::NoStabilization(MAX_PADS)));
    }

    #[test]
    fn text_round_trip() {
        let lr = LinearRepresentation {
            v: vec![1.into(), 0.into()],
            gamma: vec![
                vec![vec![1.into(), 1.into()], vec![0.into(), 1.into()]],
                vec![vec![2.into(), 0.into()], vec![(-3).into(), 1.into()]],
            ],
            w: vec![0.into(), 1.into()],
        };
        let text = lr.to_text();
        assert_eq!(LinearRepresentation::parse(&text).unwrap(), lr);
        assert!(LinearRepresentation::parse(&text.replace("gamma 1", "gamma 2")).is_err());
        assert!(LinearRepresentation::parse("rank 1\ndigits 2\nv\n1 2\n").is_err());
        assert_eq!(lr.minimal_rank(), 2);
    }

    #[test]
    fn duplicated_states_reduce() {
        // Two copies of the same one-state counter.
        let one = |x: i64| BigInt::from(x);
        let lr = LinearRepresentation {
            v: vec![one(1), one(1)],
            gamma: vec![
                vec![vec![one(2), one(0)], vec![one(0), one(2)]],
                vec![vec![one(3), one(0)], vec![one(0), one(3)]],
            ],
            w: vec![one(1), one(1)],
        };
        assert_eq!(lr.minimal_rank(), 1);
        assert_eq!(full().minimal_rank(), 1);
    }

    #[test]
    fn tsv() {
        assert_eq!(table_tsv(&[(1, 2.into()), (2, 4.into())]), "n\tE(n)\n1\t2\n2\t4\n");
    }
}
