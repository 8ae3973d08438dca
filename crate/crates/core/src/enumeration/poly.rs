//! Exact polynomials and the matrix polynomials of counting matrices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Polynomial with integer coefficients, lowest degree first. The zero
/// polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactPolynomial {
    coeffs: Vec<BigInt>,
}

type QPoly = Vec<BigRational>;

fn q(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

fn trim_q(p: &mut QPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn mul_q(a: &[BigRational], b: &[BigRational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Remainder of `a` by nonzero `b`.
fn rem_q(a: &[BigRational], b: &[BigRational]) -> QPoly {
    div_rem_q(a, b).1
}

fn div_rem_q(a: &[BigRational], b: &[BigRational]) -> (QPoly, QPoly) {
    let mut r: QPoly = a.to_vec();
    trim_q(&mut r);
    let db = b.len() - 1;
    let lead = &b[db];
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut quot = vec![BigRational::zero(); r.len() - db];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / lead;
        for (i, c) in b.iter().enumerate() {
            r[shift + i] -= &f * c;
        }
        quot[shift] = f;
        r.pop();
        trim_q(&mut r);
    }
    (quot, r)
}

fn gcd_q(a: &[BigRational], b: &[BigRational]) -> QPoly {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim_q(&mut x);
    trim_q(&mut y);
    while !y.is_empty() {
        let r = rem_q(&x, &y);
        x = y;
        y = r;
    }
    x
}

fn eval_q(p: &[BigRational], x: &BigRational) -> BigRational {
    p.iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

impl ExactPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ExactPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `X - r`.
    pub fn linear(r: i64) -> Self {
        Self::from_i64(&[-r, 1])
    }

    /// Scales a rational polynomial to a primitive integer one with positive
    /// leading coefficient.
    fn from_rational(p: &[BigRational]) -> Self {
        let den = p
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut ints: Vec<BigInt> = p.iter().map(|c| (c * q(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if !g.is_zero() {
            for c in &mut ints {
                *c /= &g;
            }
        }
        if ints.last().is_some_and(|c| c.is_negative()) {
            for c in &mut ints {
                *c = -&*c;
            }
        }
        Self::new(ints)
    }

    fn to_rational(&self) -> QPoly {
        self.coeffs.iter().map(|c| q(c.clone())).collect()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Whether `self` divides `other` over the rationals.
    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        rem_q(&other.to_rational(), &self.to_rational()).is_empty()
    }

    /// Exact quotient over the rationals, scaled back to a primitive
    /// polynomial; `None` when the division leaves a remainder.
    pub fn quotient(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        let (quot, r) = div_rem_q(&self.to_rational(), &divisor.to_rational());
        r.is_empty().then(|| Self::from_rational(&quot))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Self) -> Self {
        Self::from_rational(&gcd_q(&self.to_rational(), &other.to_rational()))
    }

    /// The product of the distinct irreducible factors.
    pub fn square_free(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.quotient(&g).expect("gcd divides")
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        eval_q(&self.to_rational(), x)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for ExactPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = !mag.is_one() || i == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{i}")?,
            }
        }
        Ok(())
    }
}

/// Square matrix with integer entries, row major.
pub type IntMatrix = Vec<Vec<BigInt>>;

/// Characteristic polynomial `det(X - M)` and minimal polynomial of `m`.
///
/// The characteristic polynomial is the product over the diagonal blocks of
/// the strongly connected components of `m` (a permutation makes `m` block
/// triangular), each reduced to Hessenberg form over the rationals. The
/// minimal polynomial is grown one basis vector at a time: with `p` the
/// annihilator found so far, the Krylov minimal polynomial of `e_i p(M)` is
/// multiplied in whenever that vector is nonzero.
pub fn char_and_min_poly(m: &[Vec<BigInt>]) -> (ExactPolynomial, ExactPolynomial) {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    let mut chr = ExactPolynomial::one();
    for block in components(m) {
        let sub: Vec<Vec<BigRational>> = block
            .iter()
            .map(|&i| block.iter().map(|&j| q(m[i][j].clone())).collect())
            .collect();
        chr = chr.mul(&hessenberg_charpoly(sub));
    }
    (chr, min_poly(m))
}

/// Strongly connected components of the nonzero pattern (Tarjan).
fn components(m: &[Vec<BigInt>]) -> Vec<Vec<usize>> {
    let n = m.len();
    let succ: Vec<Vec<usize>> = m
        .iter()
        .map(|row| (0..n).filter(|&j| !row[j].is_zero()).collect())
        .collect();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut out = Vec::new();
    let mut counter = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut work: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = counter;
        low[root] = counter;
        counter += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut k)) = work.last_mut() {
            if *k < succ[v].len() {
                let w = succ[v][*k];
                *k += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    work.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                work.pop();
                if let Some(&(u, _)) = work.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    out.push(comp);
                }
            }
        }
    }
    out
}

fn hessenberg_charpoly(mut h: Vec<Vec<BigRational>>) -> ExactPolynomial {
    let n = h.len();
    for m in 1..n.saturating_sub(1) {
        let Some(p) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else {
            continue;
        };
        if p != m {
            h.swap(p, m);
            for row in h.iter_mut() {
                row.swap(p, m);
            }
        }
        let t = h[m][m - 1].clone();
        for i in m + 1..n {
            if h[i][m - 1].is_zero() {
                continue;
            }
            let u = &h[i][m - 1] / &t;
            let (above, below) = h.split_at_mut(i);
            for (x, y) in below[0].iter_mut().zip(&above[m]) {
                *x -= &u * y;
            }
            for row in h.iter_mut() {
                let d = &u * &row[i];
                row[m] += d;
            }
        }
    }
    let mut polys: Vec<QPoly> = vec![vec![q(1)]];
    for m in 1..=n {
        let mut pm = mul_q(&[-h[m - 1][m - 1].clone(), q(1)], &polys[m - 1]);
        let mut t = q(1);
        for i in 1..m {
            t *= &h[m - i][m - i - 1];
            let f = &t * &h[m - i - 1][m - 1];
            if f.is_zero() {
                continue;
            }
            for (k, c) in polys[m - i - 1].iter().enumerate() {
                pm[k] -= &f * c;
            }
        }
        polys.push(pm);
    }
    ExactPolynomial::from_rational(&polys[n])
}

fn row_times(v: &[BigRational], m: &[Vec<BigInt>]) -> Vec<BigRational> {
    let n = m.len();
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in m[i].iter().enumerate() {
            if !y.is_zero() {
                out[j] += x * q(y.clone());
            }
        }
    }
    out
}

/// `v p(M)` by Horner's rule.
fn apply_poly(v: &[BigRational], p: &[BigRational], m: &[Vec<BigInt>]) -> Vec<BigRational> {
    let mut acc = vec![BigRational::zero(); v.len()];
    for c in p.iter().rev() {
        acc = row_times(&acc, m);
        for (a, x) in acc.iter_mut().zip(v) {
            *a += c * x;
        }
    }
    acc
}

/// Monic polynomial of least degree with `v p(M) = 0`.
fn krylov_min_poly(v: Vec<BigRational>, m: &[Vec<BigInt>]) -> QPoly {
    // Echelon rows, their pivots, and each row as a combination of powers.
    let mut basis: Vec<(Vec<BigRational>, usize, QPoly)> = Vec::new();
    let mut current = v;
    let mut k = 0;
    loop {
        let mut u = current.clone();
        let mut combo = vec![BigRational::zero(); k + 1];
        combo[k] = q(1);
        for (row, pivot, c) in &basis {
            if u[*pivot].is_zero() {
                continue;
            }
            let f = &u[*pivot] / &row[*pivot];
            for (x, y) in u.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (x, y) in combo.iter_mut().zip(c) {
                *x -= &f * y;
            }
        }
        match u.iter().position(|x| !x.is_zero()) {
            None => return combo,
            Some(pivot) => basis.push((u, pivot, combo)),
        }
        current = row_times(&current, m);
        k += 1;
    }
}

fn min_poly(m: &[Vec<BigInt>]) -> ExactPolynomial {
    let n = m.len();
    let mut p: QPoly = vec![q(1)];
    for i in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[i] = q(1);
        let w = apply_poly(&e, &p, m);
        if w.iter().all(|x| x.is_zero()) {
            continue;
        }
        p = mul_q(&p, &krylov_min_poly(w, m));
    }
    ExactPolynomial::from_rational(&p)
}

/// Largest real root, bracketed by exact dyadic rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn value(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / q(2);
        mid.to_f64().unwrap_or(f64::NAN)
    }

    pub fn width(&self) -> f64 {
        (&self.hi - &self.lo).to_f64().unwrap_or(f64::NAN)
    }

    /// `log2` of the root, the growth exponent of a sequence whose values at
    /// powers of two grow like the root.
    pub fn growth_exponent(&self) -> f64 {
        self.value().log2()
    }
}

/// Sturm chain of a square-free polynomial.
fn sturm_chain(p: &ExactPolynomial) -> Vec<QPoly> {
    let mut chain = vec![p.to_rational(), p.derivative().to_rational()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_empty() {
            chain.pop();
            return chain;
        }
        let r: QPoly = rem_q(&chain[n - 2], &chain[n - 1])
            .into_iter()
            .map(|c| -c)
            .collect();
        chain.push(r);
    }
}

fn sign_changes(values: impl Iterator<Item = i8>) -> usize {
    let mut last = 0i8;
    let mut changes = 0;
    for s in values.filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

fn sign(x: &BigRational) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Largest real root of `p`, bisected with a Sturm chain until the bracket
/// is narrower than `1e-15`. Fails when `p` has no real root above 1.
pub fn dominant_root(p: &ExactPolynomial) -> Result<RootInterval> {
    if p.degree().unwrap_or(0) == 0 {
        return Err(Error::Invalid("dominant root of a constant polynomial".into()));
    }
    let sf = p.square_free();
    let chain = sturm_chain(&sf);
    let changes_at = |x: &BigRational| sign_changes(chain.iter().map(|c| sign(&eval_q(c, x))));
    // Cauchy bound: every root is below 1 + max |a_i / a_n|.
    let c = sf.to_rational();
    let lead = c.last().unwrap().abs();
    let bound = c
        .iter()
        .map(|a| a.abs() / &lead)
        .fold(BigRational::zero(), |m, x| if x > m { x } else { m })
        + q(1);
    let at_bound = changes_at(&bound);
    let above = |x: &BigRational| changes_at(x) - at_bound;
    let mut lo = q(1);
    let mut hi = bound;
    if above(&lo) == 0 {
        return Err(Error::Invalid(format!("{p} has no real root above 1")));
    }
    let width = BigRational::new(BigInt::one(), BigInt::from(10u64.pow(15)));
    while &hi - &lo > width {
        let mid = (&lo + &hi) / q(2);
        if above(&mid) > 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(RootInterval { lo, hi })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&[i64]]) -> IntMatrix {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn identity_and_nilpotent() {
        let (c, m) = char_and_min_poly(&mat(&[&[1, 0], &[0, 1]]));
        assert_eq!(c, ExactPolynomial::linear(1).pow(2));
        assert_eq!(m, ExactPolynomial::linear(1));
        let (c, m) = char_and_min_poly(&mat(&[&[0, 1], &[0, 0]]));
        assert_eq!(c, ExactPolynomial::from_i64(&[0, 0, 1]));
        assert_eq!(m, ExactPolynomial::from_i64(&[0, 0, 1]));
    }

    #[test]
    fn companion_matrix() {
        // Companion of X^3 - 2X^2 + 3X - 5 with a scrambled basis.
        let (c, m) = char_and_min_poly(&mat(&[&[0, 0, 5], &[1, 0, -3], &[0, 1, 2]]));
        let expected = ExactPolynomial::from_i64(&[-5, 3, -2, 1]);
        assert_eq!(c, expected);
        assert_eq!(m, expected);
        let (c, m) = char_and_min_poly(&mat(&[&[2, 1, 0], &[1, 2, 0], &[0, 0, 3]]));
        assert_eq!(c, ExactPolynomial::from_i64(&[-9, 15, -7, 1]));
        assert_eq!(m, ExactPolynomial::from_i64(&[3, -4, 1]));
    }

    #[test]
    fn divisibility_and_display() {
        let quartic = ExactPolynomial::from_i64(&[-2, 2, -1, -2, 1]);
        assert_eq!(quartic.to_string(), "X^4 - 2X^3 - X^2 + 2X - 2");
        let prod = quartic.mul(&ExactPolynomial::linear(-1).pow(2));
        assert!(quartic.divides(&prod));
        assert!(!ExactPolynomial::linear(3).divides(&prod));
        assert_eq!(prod.quotient(&quartic), Some(ExactPolynomial::linear(-1).pow(2)));
        assert_eq!(prod.square_free(), quartic.mul(&ExactPolynomial::linear(-1)));
    }

    #[test]
    fn roots() {
        let r = dominant_root(&ExactPolynomial::linear(2)).unwrap();
        assert!((r.value() - 2.0).abs() < 1e-15);
        let quartic = ExactPolynomial::from_i64(&[-2, 2, -1, -2, 1]);
        let r = dominant_root(&quartic).unwrap();
        assert!(r.width() <= 1e-15);
        let closed = (1.0 + (5.0 + 4.0 * 3f64.sqrt()).sqrt()) / 2.0;
        assert!((r.value() - closed).abs() < 1e-14);
        // Repeated roots do not upset the chain.
        let r = dominant_root(&quartic.mul(&quartic).mul(&ExactPolynomial::linear(1))).unwrap();
        assert!((r.value() - closed).abs() < 1e-14);
        assert!(dominant_root(&ExactPolynomial::from_i64(&[1, 0, 1])).is_err());
        assert!(dominant_root(&ExactPolynomial::one()).is_err());
    }
}
