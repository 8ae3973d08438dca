//! One line per acceptance criterion. Exits nonzero if any criterion fails.
//!
//! Set `RESTIVO_HEAVY=1` to include the optional lexleast automaton build.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::test_runner::{Config, TestCaseError, TestError, TestRunner};

use restivo::applications::{run_theorem, Catalog, ZETA};
use restivo::automata::{lsd_digits, Automaton};
use restivo::enumeration::{extensible_counts, minmat_representation};
use restivo::numeration::build_normalizer;

mod common;
use common::*;

type Criterion = Box<dyn FnMut(&mut Catalog) -> Verdict>;

struct Verdict {
    passed: bool,
    detail: String,
}

fn from_theorems(catalog: &mut Catalog, ids: &[&str]) -> Verdict {
    let mut passed = true;
    let mut notes = Vec::new();
    for id in ids {
        match run_theorem(id, catalog) {
            Ok(r) => {
                passed &= r.verified;
                let failed: Vec<String> = r.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
                if failed.is_empty() {
                    notes.push(format!("{id}: {} checks", r.checks.len()));
                } else {
                    notes.push(format!("{id}: {}", failed.join("; ")));
                }
            }
            Err(e) => {
                passed = false;
                notes.push(format!("{id}: error: {e}"));
            }
        }
    }
    Verdict { passed, detail: notes.join(" | ") }
}

/// Growth checks on E beyond the first sixteen values.
fn growth_of_counts(catalog: &mut Catalog) -> Verdict {
    let lr = match minmat_representation(catalog) {
        Ok(lr) => lr,
        Err(e) => return Verdict { passed: false, detail: e.to_string() },
    };
    let e: Vec<BigInt> = match extensible_counts(&lr, 200) {
        Ok(rows) => rows.into_iter().map(|(_, v)| v).collect(),
        Err(err) => return Verdict { passed: false, detail: err.to_string() },
    };
    let nondecreasing = e.windows(2).all(|w| w[0] <= w[1]);
    let increasing = e[..16].windows(2).all(|w| w[0] < w[1]);
    let ratios: Vec<f64> = (0..=20u32)
        .map(|k| {
            let v = lr.evaluate(1u64 << k).unwrap().to_f64().unwrap();
            v / ZETA.powi(k as i32)
        })
        .collect();
    let lo = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = ratios.iter().cloned().fold(0.0, f64::max);
    Verdict {
        passed: nondecreasing && increasing && hi <= 2.0 * lo,
        detail: format!(
            "nondecreasing on 1..200: {nondecreasing}, increasing on 1..16: {increasing}, E(2^k)/zeta^k in [{lo:.4}, {hi:.4}] for k <= 20"
        ),
    }
}

fn property(name: &str, notes: &mut Vec<String>, result: Result<(), TestError<RawNfa>>) -> bool {
    match result {
        Ok(()) => {
            notes.push(format!("{name} ok"));
            true
        }
        Err(e) => {
            notes.push(format!("{name}: {e}"));
            false
        }
    }
}

fn check(cond: bool, what: &str) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

fn engine_properties() -> Verdict {
    let mut runner = TestRunner::new(Config { cases: 48, failure_persistence: None, ..Config::default() });
    let mut notes = Vec::new();
    let mut passed = true;

    let r = runner.run(&raw_nfa(5, 6, 20), |raw| {
        let sig = xy();
        let a = build_dfa_like(&raw, &sig);
        let p = a.pad_closure();
        check(p.is_pad_closed(), "not pad closed")?;
        for w in words(6, 3) {
            let l = letters(&sig, &w);
            let mut base = l.clone();
            while base.last() == Some(&vec![0, 0]) {
                base.pop();
            }
            let mut any = false;
            for _ in 0..=a.state_count() + 1 {
                any |= a.accepts(&base).unwrap();
                base.push(vec![0, 0]);
            }
            check(p.accepts(&l).unwrap() == any, "closure disagrees with padding")?;
        }
        Ok(())
    });
    passed &= property("pad-closure", &mut notes, r);

    let r = runner.run(&raw_nfa(6, 6, 24), |raw| {
        let sig = xy();
        let a = Automaton::from_dfa(&build(&raw, &sig).determinize());
        for w in words(6, 4) {
            check(a.accepts(&letters(&sig, &w)).unwrap() == simulate(&raw, &w), "language changed")?;
        }
        Ok(())
    });
    passed &= property("determinize/minimize", &mut notes, r);

    let r = runner.run(&raw_nfa(5, 8, 24), |raw| {
        let a = build_dfa_like(&raw, &xyz()).pad_closure();
        let xy_ = a.project("x").unwrap().project("y").unwrap();
        let yx = a.project("y").unwrap().project("x").unwrap();
        check(xy_ == yx, "exists order matters")?;
        let fxy = a.forall(&["x"]).unwrap().forall(&["y"]).unwrap();
        let fyx = a.forall(&["y"]).unwrap().forall(&["x"]).unwrap();
        check(fxy == fyx, "forall order matters")
    });
    passed &= property("quantifier order", &mut notes, r);

    let norm = build_normalizer();
    let mut normalizer_ok = norm.state_count() == 2;
    for len in 0..=8u32 {
        for code in 0..3u64.pow(len) {
            let l: Vec<u8> = (0..len).map(|i| ((code / 3u64.pow(i)) % 3) as u8).collect();
            let lv = l.iter().rev().fold(0u64, |acc, &d| 2 * acc + d as u64);
            for n in 0..512u64 {
                let nd = lsd_digits(n, 2);
                normalizer_ok &= norm.accepts_tracks(&[&l, &nd]).unwrap() == (lv == n);
            }
        }
    }
    notes.push(format!("normalizer {}", if normalizer_ok { "ok" } else { "wrong" }));
    passed &= normalizer_ok;

    Verdict { passed, detail: notes.join(", ") }
}

fn main() {
    let heavy = std::env::var("RESTIVO_HEAVY").is_ok_and(|v| v == "1");
    let mut catalog = Catalog::new(heavy);
    let criteria: Vec<(u32, Criterion)> = vec![
        (1, Box::new(|c| from_theorems(c, &["look-states"]))),
        (2, Box::new(|c| from_theorems(c, &["overlap-free"]))),
        (3, Box::new(|c| from_theorems(c, &["power-73"]))),
        (4, Box::new(|c| from_theorems(c, &["squares"]))),
        (5, Box::new(|c| from_theorems(c, &["changebits"]))),
        (6, Box::new(|c| from_theorems(c, &["maxexp"]))),
        (7, Box::new(|c| from_theorems(c, &["large-overlaps"]))),
        (
            8,
            Box::new(|c| {
                let a = from_theorems(c, &["enumeration"]);
                let b = growth_of_counts(c);
                Verdict { passed: a.passed && b.passed, detail: format!("{} | {}", a.detail, b.detail) }
            }),
        ),
        (9, Box::new(|c| from_theorems(c, &["lexleast"]))),
        (10, Box::new(|_| engine_properties())),
    ];
    let mut failed = 0;
    for (n, mut f) in criteria {
        let t = Instant::now();
        let v = f(&mut catalog);
        println!(
            "criterion {n}: {} ({:.1}s) {}",
            if v.passed { "PASS" } else { "FAIL" },
            t.elapsed().as_secs_f64(),
            v.detail
        );
        failed += usize::from(!v.passed);
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
