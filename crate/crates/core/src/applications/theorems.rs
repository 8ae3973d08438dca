//! Each reproduced claim as a named, self-checking job.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use super::catalog::Catalog;
use super::oracle::{
    backtrack_lexleast, has_factor_with_period, has_overlap_axaxa, large_overlap_census,
    lexleast_reference, naive_word_checks,
};
use super::tails::{accepted_codes, infinite_one_tail_states, maxexp_family, subset_of_ones_then_zeros};
use crate::automata::Automaton;
use crate::enumeration::{asymptotics, extensible_counts, growth_quartic, minmat_representation, ExactPolynomial};
use crate::error::{Error, Result};
use crate::logic::Entry;
use crate::restivo::{build_look, codes_up_to, expand_code, look_at, Code};

/// Theorem ids and what each one checks.
pub const THEOREMS: &[(&str, &str)] = &[
    ("look-states", "LOOK has 17 states and agrees with code expansion"),
    ("overlap-free", "ovlfg has 14 states, 3 of them with only 1-tails"),
    ("power-73", "avoid73g has 16 states, 1 of them with only 1-tails"),
    ("squares", "square and fourth-power statements"),
    ("changebits", "codes of the Thue-Morse word are 1*"),
    ("maxexp", "codes with a factor of length 2^t-1 and period 2^(t-2)"),
    ("large-overlaps", "7/3-power-free words with i overlap lengths"),
    ("enumeration", "extensible word counts and their growth rate"),
    ("lexleast", "least overlap-free word is 001001 followed by the complemented Thue-Morse word"),
];

pub const TABLE_ONE: [u64; 16] = [2, 4, 6, 10, 14, 18, 22, 26, 32, 36, 40, 44, 48, 52, 58, 64];

/// Published growth constant and its base-2 logarithm.
pub const ZETA: f64 = 2.226_861_548_465_562;
pub const LOG2_ZETA: f64 = 1.155_011_863_670_664_8;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremReport {
    pub id: String,
    pub claim: String,
    pub verified: bool,
    pub checks: Vec<Check>,
    pub state_counts: BTreeMap<String, usize>,
    pub elapsed_ms: u128,
    /// Automata worth writing out alongside the report.
    #[serde(skip)]
    pub automata: Vec<(String, Entry)>,
}

impl TheoremReport {
    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    fn keep(&mut self, name: &str, entry: Entry) {
        let states = match &entry {
            Entry::Acceptor(a) => a.state_count(),
            Entry::Output(o) => o.state_count(),
        };
        self.state_counts.insert(name.to_string(), states);
        self.automata.push((name.to_string(), entry));
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn codes_of(list: &[Code]) -> String {
    list.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn accepts(a: &Automaton, code: &Code) -> bool {
    a.accepts_tracks(&[code.digits()]).unwrap_or(false)
}

pub fn run_theorem(id: &str, catalog: &mut Catalog) -> Result<TheoremReport> {
    let (id, claim) = THEOREMS
        .iter()
        .find(|(t, _)| *t == id)
        .ok_or_else(|| Error::UnknownEntry(id.to_string()))?;
    let start = Instant::now();
    let mut r = TheoremReport {
        id: id.to_string(),
        claim: claim.to_string(),
        verified: false,
        checks: Vec::new(),
        state_counts: BTreeMap::new(),
        elapsed_ms: 0,
        automata: Vec::new(),
    };
    match *id {
        "look-states" => look_states(&mut r)?,
        "overlap-free" => tail_theorem(&mut r, catalog, "ovlf", "ovlfg", 14, 3, |w| {
            let naive = naive_word_checks(w).has_overlap;
            (naive == has_overlap_axaxa(w)).then_some(!naive)
        })?,
        "power-73" => tail_theorem(&mut r, catalog, "avoid73", "avoid73g", 16, 1, |w| {
            Some(!naive_word_checks(w).has_73_power)
        })?,
        "squares" => squares(&mut r, catalog)?,
        "changebits" => {
            let a = catalog.acceptor("changebits")?;
            let ones = Code::parse("1111111").unwrap();
            r.check("subset of 1*0*", subset_of_ones_then_zeros(&a), format!("{} states", a.state_count()));
            r.check("nonempty", accepts(&a, &ones), "accepts 1111111");
            r.keep("changebits", Entry::Acceptor(a));
        }
        "maxexp" => maxexp(&mut r, catalog)?,
        "large-overlaps" => large_overlaps(&mut r, catalog)?,
        "enumeration" => enumeration(&mut r, catalog)?,
        "lexleast" => lexleast(&mut r, catalog)?,
        _ => unreachable!(),
    }
    r.verified = r.checks.iter().all(|c| c.passed);
    r.elapsed_ms = start.elapsed().as_millis();
    Ok(r)
}

fn look_states(r: &mut TheoremReport) -> Result<()> {
    let look = build_look()?;
    r.check("state count", look.state_count() == 17, format!("{} states", look.state_count()));
    let codes = codes_up_to(6);
    let mut bad = Vec::new();
    let mut positions = 0u64;
    for c in &codes {
        let w = expand_code(c)?;
        for n in 0..w.len() as u64 + 2 {
            positions += 1;
            let want = w.get(n as usize).copied().unwrap_or(2);
            if look_at(&look, c, n)? != want && bad.len() < 5 {
                bad.push(format!("{c}@{n}"));
            }
        }
    }
    r.check(
        "agrees with expansion",
        bad.is_empty(),
        format!("{} codes, {positions} positions, mismatches [{}]", codes.len(), bad.join(" ")),
    );
    r.keep("LOOK", Entry::Output(look));
    Ok(())
}

/// `oracle(word)` is `Some(property holds)`, or `None` when two oracles
/// disagree.
fn tail_theorem(
    r: &mut TheoremReport,
    catalog: &mut Catalog,
    base: &str,
    good: &str,
    states: usize,
    tails: usize,
    oracle: impl Fn(&[u8]) -> Option<bool>,
) -> Result<()> {
    let g = catalog.acceptor(good)?;
    r.check("state count", g.state_count() == states, format!("{} states", g.state_count()));
    let t = infinite_one_tail_states(&g);
    r.check(
        "1-tail states",
        t.len() == tails,
        format!("states {t:?} only continue forever with 1s"),
    );
    let a = catalog.acceptor(base)?;
    let codes = codes_up_to(6);
    let mut bad = Vec::new();
    for c in &codes {
        let w = expand_code(c)?;
        if oracle(&w) != Some(accepts(&a, c)) && bad.len() < 5 {
            bad.push(c.to_string());
        }
    }
    r.check(
        &format!("{base} matches word scan"),
        bad.is_empty(),
        format!("{} codes up to length 6, mismatches [{}]", codes.len(), bad.join(" ")),
    );
    r.keep(good, Entry::Acceptor(g));
    r.keep(base, Entry::Acceptor(a));
    Ok(())
}

fn squares(r: &mut TheoremReport, catalog: &mut Catalog) -> Result<()> {
    for (name, want) in [("fourthr", false), ("squ", true), ("squaresin", true)] {
        let v = catalog.eval(name)?;
        r.check(name, v == want, (if v { "TRUE" } else { "FALSE" }).to_string());
    }
    for (name, pattern) in [("squ4g", ["4", "32", "13"]), ("squr4g", ["", "5", "312"])] {
        let a = catalog.acceptor(name)?;
        let codes: Vec<Code> = (0..4)
            .map(|i| Code::parse(&format!("{}{}{}", pattern[0], pattern[1].repeat(i), pattern[2])).unwrap())
            .collect();
        let missing: Vec<String> = codes
            .iter()
            .filter(|c| !accepts(&a, c))
            .map(|c| {
                let w = expand_code(c).unwrap_or_default();
                let order = naive_word_checks(&w).max_square_order;
                format!("{c} (length {}, largest square order {order})", w.len())
            })
            .collect();
        r.check(
            &format!("{name} family"),
            missing.is_empty(),
            format!("tried {}, rejected [{}]", codes_of(&codes), missing.join(", ")),
        );
        // Largest square of order exactly l/6 (overlap-free) or (l+2)/7.
        let mut bad = Vec::new();
        let codes = codes_up_to(5);
        for c in &codes {
            let w = expand_code(c)?;
            let scan = naive_word_checks(&w);
            let want = if name == "squ4g" {
                !scan.has_overlap && 6 * scan.max_square_order == w.len()
            } else {
                !w.is_empty() && 7 * scan.max_square_order == w.len() + 2
            };
            if want != accepts(&a, c) && bad.len() < 5 {
                bad.push(c.to_string());
            }
        }
        r.check(
            &format!("{name} matches word scan"),
            bad.is_empty(),
            format!("{} codes up to length 5, mismatches [{}]", codes.len(), bad.join(" ")),
        );
        r.keep(name, Entry::Acceptor(a));
    }
    Ok(())
}

fn maxexp(r: &mut TheoremReport, catalog: &mut Catalog) -> Result<()> {
    let a = catalog.acceptor("maxexp")?;
    for t in 3..=5usize {
        let got = accepted_codes(&a, t);
        let want = maxexp_family(t);
        r.check(
            &format!("length {t} codes"),
            got == want,
            format!("accepted [{}]", codes_of(&got)),
        );
        let (len, period) = ((1usize << t) - 1, 1usize << (t - 2));
        let lacking: Vec<Code> = got
            .iter()
            .filter(|c| !expand_code(c).is_ok_and(|w| has_factor_with_period(&w, len, period)))
            .cloned()
            .collect();
        r.check(
            &format!("length {t} factors"),
            lacking.is_empty(),
            format!("period {period}, length {len}, lacking [{}]", codes_of(&lacking)),
        );
    }
    r.keep("maxexp", Entry::Acceptor(a));
    Ok(())
}

fn large_overlaps(r: &mut TheoremReport, catalog: &mut Catalog) -> Result<()> {
    let a = catalog.acceptor("large_overl")?;
    for i in 0..4 {
        let census = large_overlap_census(i);
        let w = expand_code(&census.code)?;
        let accepted: Vec<usize> = (1..w.len())
            .filter(|&n| {
                a.accepts_tracks(&[census.code.digits(), &crate::automata::lsd_digits(n as u64, 2)])
                    .unwrap_or(false)
            })
            .collect();
        let periods: Vec<usize> = census.periods.iter().copied().collect();
        r.check(
            &format!("i = {i}"),
            !census.has_73_power && periods.len() == i && accepted == periods,
            format!(
                "code {}, 7/3-power {}, overlap periods {periods:?}, automaton {accepted:?}",
                census.code, census.has_73_power
            ),
        );
    }
    r.keep("large_overl", Entry::Acceptor(a));
    Ok(())
}

fn enumeration(r: &mut TheoremReport, catalog: &mut Catalog) -> Result<()> {
    let lr = minmat_representation(catalog)?;
    r.state_counts.insert("representation rank".into(), lr.rank());
    let values: Vec<String> = extensible_counts(&lr, 16)?.into_iter().map(|(_, e)| e.to_string()).collect();
    let want: Vec<String> = TABLE_ONE.iter().map(|e| e.to_string()).collect();
    r.check("E(1..16)", values == want, values.join(","));
    let a = asymptotics(&lr)?;
    r.check(
        "quartic divides minimal polynomial",
        growth_quartic().divides(&a.minimal),
        format!("minimal polynomial {}", a.minimal),
    );
    let published = ExactPolynomial::from_i64(&[0, 0, 0, 0, 1])
        .mul(&growth_quartic())
        .mul(&ExactPolynomial::linear(1).pow(2))
        .mul(&ExactPolynomial::linear(-1).pow(2));
    r.check(
        "minimal polynomial factorization",
        a.minimal == published,
        format!("X^4 ({}) (X - 1)^2 (X + 1)^2 = {published}", growth_quartic()),
    );
    let closed = (1.0 + (5.0 + 4.0 * 3f64.sqrt()).sqrt()) / 2.0;
    let zeta = a.root.value();
    r.check(
        "dominant root",
        (zeta - closed).abs() < 1e-12 && (zeta - ZETA).abs() < 1e-12,
        format!("{zeta:.17}, bracket width {:.1e}", a.root.width()),
    );
    let c = a.root.growth_exponent();
    r.check("growth exponent", (c - LOG2_ZETA).abs() < 1e-9, format!("{c:.17}"));
    r.keep("minmat", Entry::Acceptor(catalog.acceptor("minmat")?));
    Ok(())
}

fn lexleast(r: &mut TheoremReport, catalog: &mut Catalog) -> Result<()> {
    let w = backtrack_lexleast(64);
    let bits = |w: &[u8]| w.iter().map(|b| char::from(b'0' + b)).collect::<String>();
    r.check(
        "backtracking prefix",
        w == lexleast_reference(64),
        format!("length 64: {}", bits(&w)),
    );
    match catalog.acceptor("lexleast") {
        Err(Error::HeavyRefused(_)) => {}
        Err(e) => return Err(e),
        Ok(a) => {
            let mut bad = Vec::new();
            for len in 5..=12 {
                let tail: Vec<Code> = accepted_codes(&a, len)
                    .into_iter()
                    .filter(|c| c.digits().last() != Some(&1))
                    .collect();
                let want = Code::parse(&format!("413{}3", "1".repeat(len - 4))).unwrap();
                if tail != [want] {
                    bad.push(format!("{len}: [{}]", codes_of(&tail)));
                }
            }
            r.check(
                "long codes not ending in 1",
                bad.is_empty(),
                format!("4131*3 for lengths 5..12, {} states, mismatches [{}]", a.state_count(), bad.join(" ")),
            );
            r.keep("lexleast", Entry::Acceptor(a));
        }
    }
    Ok(())
}
