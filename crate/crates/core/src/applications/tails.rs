use crate::automata::Automaton;
use crate::restivo::Code;

/// Live states whose accepted continuations all lie in `1*0*`, for a
/// one-track code automaton.
pub fn one_tail_states(a: &Automaton) -> Vec<u32> {
    let d = a.dfa();
    let n = d.num_states() as u32;
    let live = productive(a);
    // zeros[s]: every live continuation is in 0*; ones[s]: in 1*0*
    let mut zeros: Vec<bool> = live.clone();
    let mut ones: Vec<bool> = live.clone();
    loop {
        let mut changed = false;
        for s in 0..n {
            let edges = d.edges_of(s);
            let z = zeros[s as usize]
                && edges
                    .iter()
                    .filter(|e| live[e.to as usize])
                    .all(|e| e.sym == 0 && zeros[e.to as usize]);
            let o = ones[s as usize]
                && edges.iter().filter(|e| live[e.to as usize]).all(|e| {
                    (e.sym == 0 && zeros[e.to as usize]) || (e.sym == 1 && ones[e.to as usize])
                });
            if z != zeros[s as usize] || o != ones[s as usize] {
                zeros[s as usize] = z;
                ones[s as usize] = o;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    (0..n).filter(|&s| ones[s as usize]).collect()
}

/// Live states with an infinite continuation, all of whose infinite
/// continuations end in `1^w`: every cycle reachable from such a state reads
/// only the digit 1.
pub fn infinite_one_tail_states(a: &Automaton) -> Vec<u32> {
    let d = a.dfa();
    let n = d.num_states();
    let live = productive(a);
    let reach: Vec<Vec<bool>> = (0..n)
        .map(|s| {
            let mut seen = vec![false; n];
            let mut stack = vec![s];
            seen[s] = live[s];
            while let Some(u) = stack.pop() {
                for e in d.edges_of(u as u32) {
                    let t = e.to as usize;
                    if live[t] && !seen[t] {
                        seen[t] = true;
                        stack.push(t);
                    }
                }
            }
            seen
        })
        .collect();
    // (source, digit) of every edge lying on a cycle
    let cyclic: Vec<(usize, u32)> = (0..n)
        .filter(|&u| live[u])
        .flat_map(|u| d.edges_of(u as u32).iter().map(move |e| (u, e)))
        .filter(|(u, e)| reach[e.to as usize][*u])
        .map(|(u, e)| (u, e.sym))
        .collect();
    (0..n)
        .filter(|&s| live[s])
        .filter(|&s| {
            let mut on = cyclic.iter().filter(|(u, _)| reach[s][*u]).peekable();
            on.peek().is_some() && on.all(|&(_, sym)| sym == 1)
        })
        .map(|s| s as u32)
        .collect()
}

fn productive(a: &Automaton) -> Vec<bool> {
    let d = a.dfa();
    let n = d.num_states();
    let mut live: Vec<bool> = (0..n as u32).map(|s| d.output(s) != 0).collect();
    loop {
        let mut changed = false;
        for s in 0..n as u32 {
            if !live[s as usize] && d.edges_of(s).iter().any(|e| live[e.to as usize]) {
                live[s as usize] = true;
                changed = true;
            }
        }
        if !changed {
            return live;
        }
    }
}

/// Is the language of a one-track automaton contained in `1*0*`?
pub fn subset_of_ones_then_zeros(a: &Automaton) -> bool {
    a.is_empty() || one_tail_states(a).contains(&0)
}

/// Codes with exactly `len` nonzero digits accepted by a one-track code
/// automaton.
pub fn accepted_codes(a: &Automaton, len: usize) -> Vec<Code> {
    a.enumerate_accepted(len)
        .into_iter()
        .filter(|w| w.len() == len)
        .map(|w| Code::new(w.into_iter().map(|l| l[0]).collect()).expect("code digits"))
        .filter(|c| c.is_valid() && c.digits().iter().all(|&d| d != 0))
        .collect()
}

/// The four length-`t` code families with a factor of length `2^t - 1` and
/// period `2^(t-2)`: `2^(t-2)5{3,5}`, `3^(t-2)4{2,4}`, `42^(t-3)5{3,5}`,
/// `53^(t-3)4{2,4}`.
pub fn maxexp_family(t: usize) -> Vec<Code> {
    assert!(t >= 3);
    let mut out = Vec::new();
    let rep = |d: u8, k: usize| std::iter::repeat_n(d, k);
    for last in [3u8, 5] {
        out.push(rep(2, t - 2).chain([5, last]).collect::<Vec<u8>>());
        out.push([4].into_iter().chain(rep(2, t - 3)).chain([5, last]).collect());
    }
    for last in [2u8, 4] {
        out.push(rep(3, t - 2).chain([4, last]).collect());
        out.push([5].into_iter().chain(rep(3, t - 3)).chain([4, last]).collect());
    }
    let mut codes: Vec<Code> = out.into_iter().map(|d| Code::new(d).unwrap()).collect();
    codes.sort();
    codes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{compile_regex_str, Signature};

    fn one_track(p: &str) -> Automaton {
        compile_regex_str(p, &Signature::from_pairs(&[("c", 6)]).unwrap()).unwrap()
    }

    #[test]
    fn tails() {
        assert!(subset_of_ones_then_zeros(&one_track("1*0*")));
        assert!(subset_of_ones_then_zeros(&one_track("11")));
        assert!(!subset_of_ones_then_zeros(&one_track("1*2")));
        let a = one_track("2(1*)|3");
        // initial state is not a tail state; the state after 2 is
        assert_eq!(one_tail_states(&a).len(), 2);
    }

    #[test]
    fn families() {
        let f = maxexp_family(3);
        assert_eq!(f.len(), 8);
        assert!(f.contains(&Code::parse("253").unwrap()));
        assert!(f.contains(&Code::parse("453").unwrap()));
        assert!(accepted_codes(&one_track("(1|2)*0*"), 2).len() == 4);
    }
}
