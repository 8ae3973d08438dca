use std::collections::BTreeSet;

use crate::restivo::{expand_code, thue_morse_bit, Code};

/// Direct scans of a binary word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordReport {
    pub has_overlap: bool,
    pub has_73_power: bool,
    pub has_4th_power: bool,
    /// Largest `n` with a square `xx`, `|x| = n`; 0 when square-free.
    pub max_square_order: usize,
    /// Periods `n >= 1` of factors of length `2n + 1`.
    pub overlap_period_set: BTreeSet<usize>,
}

/// Longest run of `w[k] = w[k+n]` starting at each position, for one `n`.
fn agreement_runs(w: &[u8], n: usize) -> Vec<usize> {
    let len = w.len();
    let mut run = vec![0usize; len + 1];
    if n >= len {
        return run;
    }
    for k in (0..len - n).rev() {
        run[k] = if w[k] == w[k + n] { run[k + 1] + 1 } else { 0 };
    }
    run
}

/// Does some factor of length `len` have period `p`?
pub fn has_factor_with_period(w: &[u8], len: usize, p: usize) -> bool {
    if len > w.len() || p == 0 {
        return false;
    }
    if len <= p {
        return true;
    }
    let run = agreement_runs(w, p);
    (0..=w.len() - len).any(|i| run[i] >= len - p)
}

pub fn naive_word_checks(w: &[u8]) -> WordReport {
    let len = w.len();
    let mut r = WordReport {
        has_overlap: false,
        has_73_power: false,
        has_4th_power: false,
        max_square_order: 0,
        overlap_period_set: BTreeSet::new(),
    };
    for n in 1..=len / 2 {
        let run = agreement_runs(w, n);
        let best = run.iter().copied().max().unwrap_or(0);
        // a factor of length n + best has period n
        if best >= n {
            r.max_square_order = n;
        }
        if best > n {
            r.has_overlap = true;
            r.overlap_period_set.insert(n);
        }
        // exponent >= 7/3: length >= 7n/3, i.e. 3 * best >= 4n
        if 3 * best >= 4 * n {
            r.has_73_power = true;
        }
        if best >= 3 * n {
            r.has_4th_power = true;
        }
    }
    r
}

/// Overlap detection by looking for `axaxa` literally.
pub fn has_overlap_axaxa(w: &[u8]) -> bool {
    let len = w.len();
    for i in 0..len {
        for x in 0..len {
            let n = x + 1; // |ax|
            if i + 2 * n + 1 > len {
                break;
            }
            let f = &w[i..i + 2 * n + 1];
            let (a, xs) = (f[0], &f[1..n]);
            if f[n] == a && &f[n + 1..2 * n] == xs && f[2 * n] == a {
                return true;
            }
        }
    }
    false
}

fn ends_with_overlap(w: &[u8]) -> bool {
    let len = w.len();
    (1..).take_while(|n| 2 * n < len).any(|n| {
        let s = len - 2 * n - 1;
        (0..=n).all(|t| w[s + t] == w[s + t + n])
    })
}

/// Lexicographically least overlap-free binary word of length `n`, by
/// depth-first search.
pub fn backtrack_lexleast(n: usize) -> Vec<u8> {
    fn go(w: &mut Vec<u8>, n: usize) -> bool {
        if w.len() == n {
            return true;
        }
        for b in 0..2u8 {
            w.push(b);
            if !ends_with_overlap(w) && go(w, n) {
                return true;
            }
            w.pop();
        }
        false
    }
    let mut w = Vec::with_capacity(n);
    assert!(go(&mut w, n), "overlap-free words of every length exist");
    w
}

/// `001001` followed by the complement of the Thue-Morse word, cut to `n`.
pub fn lexleast_reference(n: usize) -> Vec<u8> {
    let mut w = vec![0, 0, 1, 0, 0, 1];
    w.extend((0..).map(|k| 1 - thue_morse_bit(k)).take(n.saturating_sub(6)));
    w.truncate(n);
    w
}

/// The code `212 (12)^a (1112)^b` with `a + b = i`, alternating the two
/// blocks starting with `12`.
pub fn large_overlap_code(i: usize) -> Code {
    let mut d = vec![2, 1, 2];
    for k in 0..i {
        if k % 2 == 0 {
            d.extend([1, 2]);
        } else {
            d.extend([1, 1, 1, 2]);
        }
    }
    Code::new(d).expect("digits in range")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub code: Code,
    pub periods: BTreeSet<usize>,
    pub has_73_power: bool,
}

/// Overlap periods of the word coded by [`large_overlap_code`]`(i)`.
pub fn large_overlap_census(i: usize) -> Census {
    let code = large_overlap_code(i);
    let w = expand_code(&code).expect("valid code");
    let r = naive_word_checks(&w);
    Census {
        code,
        periods: r.overlap_period_set,
        has_73_power: r.has_73_power,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::restivo::mu_pow;

    #[test]
    fn small_words() {
        let r = naive_word_checks(&[0, 1, 0, 1, 0]);
        assert!(r.has_overlap);
        assert_eq!(r.overlap_period_set, BTreeSet::from([2]));
        let r = naive_word_checks(&[0, 0]);
        assert!(!r.has_overlap);
        assert_eq!(r.max_square_order, 1);
        assert!(!naive_word_checks(&mu_pow(&[0], 5)).has_overlap);
        assert!(naive_word_checks(&[0, 0, 0, 0]).has_4th_power);
        assert!(!naive_word_checks(&[0, 0, 0]).has_4th_power);
        assert!(naive_word_checks(&[0, 0, 0]).has_73_power);
    }

    #[test]
    fn both_overlap_definitions_agree() {
        for len in 0..=14usize {
            for bits in 0..(1u32 << len) {
                let w: Vec<u8> = (0..len).map(|k| ((bits >> k) & 1) as u8).collect();
                assert_eq!(naive_word_checks(&w).has_overlap, has_overlap_axaxa(&w), "{w:?}");
            }
        }
    }

    #[test]
    fn lexleast_prefixes() {
        assert_eq!(backtrack_lexleast(1), vec![0]);
        assert_eq!(backtrack_lexleast(6), vec![0, 0, 1, 0, 0, 1]);
        assert_eq!(backtrack_lexleast(64), lexleast_reference(64));
    }

    #[test]
    fn census() {
        for i in 0..=3 {
            let c = large_overlap_census(i);
            assert_eq!(c.periods.len(), i, "{}", c.code);
            assert!(!c.has_73_power);
        }
    }

    #[test]
    fn factor_periods() {
        assert!(has_factor_with_period(&[0, 1, 0, 1, 0], 5, 2));
        assert!(!has_factor_with_period(&[0, 1, 1, 0, 1], 5, 2));
        assert!(has_factor_with_period(&[0, 1, 1, 0, 1], 4, 3));
    }
}
