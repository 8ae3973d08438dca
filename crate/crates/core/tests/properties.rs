//! Property suites for the engine, each against a brute-force oracle.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use restivo::automata::{lsd_digits, Automaton, Nfa, Signature};
use restivo::enumeration::{char_and_min_poly, dominant_root, to_linear_representation, ExactPolynomial, LinearRepresentation};
use restivo::logic::{compile, parse_formula, Env};

mod common;
use common::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinize_and_minimize_keep_the_language(raw in raw_nfa(6, 6, 24)) {
        let sig = xy();
        let a = Automaton::from_dfa(&build(&raw, &sig).determinize());
        for w in words(6, 4) {
            prop_assert_eq!(a.accepts(&letters(&sig, &w)).unwrap(), simulate(&raw, &w), "{:?}", w);
        }
    }

    #[test]
    fn renumbering_states_gives_the_same_automaton(raw in raw_nfa(6, 6, 24), seed in any::<u64>()) {
        let sig = xy();
        let n = raw.states as u32;
        // a rotation of the state ids
        let k = (seed % n as u64) as u32;
        let mv = |s: u32| (s + k) % n;
        let mut moved = raw.clone();
        moved.initial = raw.initial.iter().map(|&s| mv(s)).collect();
        moved.accepting = (0..n).map(|s| raw.accepting[((s + n - k) % n) as usize]).collect();
        moved.edges = raw.edges.iter().map(|&(f, a, t)| (mv(f), a, mv(t))).collect();
        let a = Automaton::from_dfa(&build(&raw, &sig).determinize());
        let b = Automaton::from_dfa(&build(&moved, &sig).determinize());
        prop_assert_eq!(a, b);
    }

    #[test]
    fn pad_closure_accepts_exactly_the_padded_words(raw in raw_nfa(5, 6, 20)) {
        let sig = xy();
        let a = build_dfa_like(&raw, &sig);
        let p = a.pad_closure();
        prop_assert!(p.is_pad_closed());
        prop_assert_eq!(p.pad_closure(), p.clone());
        let bound = a.state_count() + 1;
        for w in words(6, 3) {
            let letters_w = letters(&sig, &w);
            let mut padded = letters_w.clone();
            while padded.last() == Some(&vec![0, 0]) {
                padded.pop();
            }
            let mut any = false;
            for _ in 0..=bound {
                any |= a.accepts(&padded).unwrap();
                padded.push(vec![0, 0]);
            }
            prop_assert_eq!(p.accepts(&letters_w).unwrap(), any, "{:?}", w);
        }
    }

    #[test]
    fn de_morgan(ra in raw_nfa(4, 6, 16), rb in raw_nfa(4, 6, 16)) {
        let sig = xy();
        let a = Automaton::from_dfa(&build(&ra, &sig).determinize());
        let b = Automaton::from_dfa(&build(&rb, &sig).determinize());
        prop_assert_eq!(a.and(&b).unwrap().not(), a.not().or(&b.not()).unwrap());
        prop_assert_eq!(a.or(&b).unwrap().not(), a.not().and(&b.not()).unwrap());
        prop_assert_eq!(a.not().not(), a.clone());
        for w in words(6, 3) {
            let l = letters(&sig, &w);
            let (x, y) = (simulate(&ra, &w), simulate(&rb, &w));
            prop_assert_eq!(a.and(&b).unwrap().accepts(&l).unwrap(), x && y);
            prop_assert_eq!(a.or(&b).unwrap().accepts(&l).unwrap(), x || y);
        }
    }

    #[test]
    fn quantifiers_commute(raw in raw_nfa(5, 8, 24)) {
        let sig = xyz();
        let a = build_dfa_like(&raw, &sig).pad_closure();
        let xy_ = a.project("x").unwrap().project("y").unwrap();
        let yx = a.project("y").unwrap().project("x").unwrap();
        prop_assert_eq!(&xy_, &yx);
        prop_assert_eq!(&xy_, &a.project_all(&["x", "y"]).unwrap());
        let fxy = a.forall(&["x"]).unwrap().forall(&["y"]).unwrap();
        let fyx = a.forall(&["y"]).unwrap().forall(&["x"]).unwrap();
        prop_assert_eq!(fxy, fyx);
    }

    #[test]
    fn projection_matches_a_witness_search(raw in raw_nfa(4, 4, 16)) {
        let sig = Signature::from_pairs(&[("x", 2), ("y", 2)]).unwrap();
        let a = build_dfa_like(&raw, &sig).pad_closure();
        let e = a.project("x").unwrap();
        // a witness, if any, needs at most |y| + states digits
        for y in 0..16u64 {
            let len = lsd_digits(y, 2).len() + a.state_count() + 1;
            let found = (0..1u64 << len).any(|x| a.accepts_values(&[x, y]).unwrap());
            prop_assert_eq!(e.accepts_values(&[y]).unwrap(), found, "y = {}", y);
        }
    }

    #[test]
    fn renaming_and_reordering_tracks(raw in raw_nfa(5, 6, 20)) {
        let sig = xy();
        let a = build_dfa_like(&raw, &sig);
        let renamed = a.rename(&["p", "q"]).unwrap();
        prop_assert_eq!(renamed.rename(&["x", "y"]).unwrap(), a.clone());
        let swapped = a.reorder(&["y", "x"]).unwrap();
        for x in 0..8u64 {
            for y in 0..9u64 {
                prop_assert_eq!(a.accepts_values(&[x, y]).unwrap(), swapped.accepts_values(&[y, x]).unwrap());
            }
        }
    }

    #[test]
    fn linear_formulas_match_arithmetic(
        base in prop::sample::select(vec![2u8, 3, 6]),
        p in 1u64..4, q in 0u64..4, r in 0u64..5, op in 0usize..3,
    ) {
        let ops = ["=", "<", ">="];
        let text = format!("?lsd_{base} {p}*x + {q}*y + {r} {} z", ops[op]);
        let (f, b) = parse_formula(&text).unwrap();
        let a = compile(&f, &Env::new(), b).unwrap().reorder(&["x", "y", "z"]).unwrap();
        for x in 0..12u64 {
            for y in 0..6u64 {
                for z in 0..30u64 {
                    let lhs = p * x + q * y + r;
                    let want = [lhs == z, lhs < z, lhs >= z][op];
                    prop_assert_eq!(a.accepts_values(&[x, y, z]).unwrap(), want, "{} at {},{},{}", text, x, y, z);
                }
            }
        }
    }

    #[test]
    fn quantified_residues(base in prop::sample::select(vec![2u8, 3, 6]), p in 1u64..6, r in 0u64..6) {
        let r = r % p;
        let (f, b) = parse_formula(&format!("?lsd_{base} Ey x = {p}*y + {r}")).unwrap();
        let a = compile(&f, &Env::new(), b).unwrap();
        let (g, b2) = parse_formula(&format!("?lsd_{base} Ey Ew w = y & x = {p}*w + {r}")).unwrap();
        let (h, b3) = parse_formula(&format!("?lsd_{base} Ew Ey w = y & x = {p}*w + {r}")).unwrap();
        prop_assert_eq!(compile(&g, &Env::new(), b2).unwrap(), compile(&h, &Env::new(), b3).unwrap());
        for x in 0..80u64 {
            prop_assert_eq!(a.accepts_values(&[x]).unwrap(), x >= r && (x - r) % p == 0);
        }
    }
}

/// `c` has no more digits than `n`; keeps every count finite.
fn length_guard() -> Automaton {
    let sig = Signature::from_pairs(&[("c", 6), ("n", 2)]).unwrap();
    let mut nfa = Nfa::new(sig);
    nfa.add_state(true);
    nfa.add_state(false);
    nfa.set_initial(0);
    for s in 0..2u32 {
        for c in 0..6u8 {
            for n in 0..2u8 {
                let to = if n != 0 { 0 } else if c != 0 { 1 } else { s };
                nfa.add_transition(s, &[c, n], to).unwrap();
            }
        }
    }
    Automaton::from_dfa(&nfa.determinize())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn path_counts_equal_brute_force_counts(raw in raw_nfa(10, 12, 80)) {
        let sig = Signature::from_pairs(&[("c", 6), ("n", 2)]).unwrap();
        let a = build_dfa_like(&raw, &sig).pad_closure().and(&length_guard()).unwrap();
        let lr = to_linear_representation(&a, "c").unwrap();
        for n in 1..=64u64 {
            let len = lsd_digits(n, 2).len() as u32;
            let count = (0..6u64.pow(len)).filter(|&c| a.accepts_values(&[c, n]).unwrap()).count();
            prop_assert_eq!(lr.evaluate(n).unwrap(), BigInt::from(count), "n = {}", n);
        }
    }
}

fn q(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Faddeev-LeVerrier, an independent route to the characteristic polynomial.
fn leverrier(m: &[Vec<i64>]) -> Vec<BigRational> {
    let n = m.len();
    let a: Vec<Vec<BigRational>> = m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    let mul = |x: &Vec<Vec<BigRational>>, y: &Vec<Vec<BigRational>>| -> Vec<Vec<BigRational>> {
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| &x[i][k] * &y[k][j]).sum()).collect())
            .collect()
    };
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::one();
    let mut mk: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { q(1) } else { q(0) }).collect())
        .collect();
    for k in 1..=n {
        let am = mul(&a, &mk);
        let tr: BigRational = (0..n).map(|i| am[i][i].clone()).sum();
        let c = -tr / q(k as i64);
        coeffs[n - k] = c.clone();
        mk = am;
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] += &c;
        }
    }
    coeffs
}

fn eval_at_matrix(p: &ExactPolynomial, m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    let n = m.len();
    let mut acc = vec![vec![BigInt::zero(); n]; n];
    for c in p.coeffs().iter().rev() {
        let mut next = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    next[i][j] += &acc[i][k] * m[k][j];
                }
            }
            next[i][i] += c;
        }
        acc = next;
    }
    acc
}

fn matrix(max_n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_n).prop_flat_map(|n| proptest::collection::vec(proptest::collection::vec(-3i64..4, n), n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn characteristic_and_minimal_polynomials(m in matrix(6), sparse in any::<bool>()) {
        let m: Vec<Vec<i64>> = if sparse {
            m.iter().enumerate().map(|(i, r)| r.iter().enumerate().map(|(j, &x)| if (i + 2 * j) % 3 == 0 { x } else { 0 }).collect()).collect()
        } else {
            m
        };
        let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let (chr, min) = char_and_min_poly(&big);
        let want: Vec<BigRational> = leverrier(&m);
        let got: Vec<BigRational> = chr.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect();
        prop_assert_eq!(got, want);
        prop_assert!(min.divides(&chr));
        prop_assert!(eval_at_matrix(&min, &m).iter().flatten().all(|x| x.is_zero()));
        prop_assert!(eval_at_matrix(&chr, &m).iter().flatten().all(|x| x.is_zero()));
        // no proper factor X - r, with r an integer root, can be dropped
        for r in -12i64..=12 {
            let lin = ExactPolynomial::linear(r);
            if let Some(smaller) = min.quotient(&lin) {
                prop_assert!(!eval_at_matrix(&smaller, &m).iter().flatten().all(|x| x.is_zero()));
            }
        }
    }

    #[test]
    fn dominant_root_of_integer_roots(roots in proptest::collection::vec(-5i64..9, 1..6)) {
        let p = roots.iter().fold(ExactPolynomial::one(), |acc, &r| acc.mul(&ExactPolynomial::linear(r)));
        let top = *roots.iter().max().unwrap();
        match dominant_root(&p) {
            Ok(root) => {
                prop_assert!(top > 1);
                prop_assert!(root.width() <= 1e-15);
                prop_assert!((root.value() - top as f64).abs() < 1e-12);
            }
            Err(_) => prop_assert!(top <= 1),
        }
    }

    #[test]
    fn linear_representation_text_round_trip(
        r in 1usize..5, digits in 2usize..4, seed in proptest::collection::vec(-20i64..20, 64),
    ) {
        let mut it = seed.iter().cycle().map(|&x| BigInt::from(x));
        let mut take = |k: usize| -> Vec<BigInt> { (0..k).map(|_| it.next().unwrap()).collect() };
        let lr = LinearRepresentation {
            v: take(r),
            gamma: (0..digits).map(|_| (0..r).map(|_| take(r)).collect()).collect(),
            w: take(r),
        };
        prop_assert_eq!(LinearRepresentation::parse(&lr.to_text()).unwrap(), lr);
    }
}
