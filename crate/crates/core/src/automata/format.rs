//! Plain-text and DOT serialization.
//!
//! Text format, one item per line, `#` starts a comment:
//!
//! ```text
//! tracks c:6 n:2
//! 0 1            state id, accepting flag
//! 1 0 2          state id, accepting flag, output (automata with output)
//! 0 [1,0] 1      transition: source, digit tuple, target
//! ```
//!
//! Missing transitions lead to a rejecting sink with output 0. Several
//! targets for one (state, tuple) pair make the file nondeterministic; it is
//! determinized on reading.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::automaton::{Automaton, OutputAutomaton};
use super::dfa::{Dfa, DfaBuilder, Edge};
use super::ops::Nfa;
use super::signature::{Signature, Track};
use crate::error::{Error, Result};

pub enum ParsedAutomaton {
    Acceptor(Automaton),
    Output(OutputAutomaton),
}

fn tuple(sig: &Signature, sym: u32) -> String {
    let d: Vec<String> = sig.decode(sym).iter().map(|x| x.to_string()).collect();
    format!("[{}]", d.join(","))
}

fn header(sig: &Signature) -> String {
    let mut s = String::from("tracks");
    for t in sig.tracks() {
        let _ = write!(s, " {}:{}", t.name, t.base);
    }
    s
}

/// Writes a minimal acceptor (trimmed) or output automaton (complete).
pub fn write_automaton(kind: &ParsedAutomaton) -> String {
    let (dfa, with_output) = match kind {
        ParsedAutomaton::Acceptor(a) => (a.dfa().clone(), false),
        ParsedAutomaton::Output(o) => (o.dfa().complete(), true),
    };
    let sig = dfa.signature();
    let mut out = header(sig);
    out.push('\n');
    for s in 0..dfa.num_states() as u32 {
        let o = dfa.output(s);
        if with_output {
            let _ = writeln!(out, "{} {} {}", s, u8::from(o != 0), o);
        } else {
            let _ = writeln!(out, "{} {}", s, o);
        }
    }
    for s in 0..dfa.num_states() as u32 {
        for e in dfa.edges_of(s) {
            let _ = writeln!(out, "{} {} {}", s, tuple(sig, e.sym), e.to);
        }
    }
    out
}

pub fn parse_automaton(text: &str) -> Result<ParsedAutomaton> {
    let err = |line: usize, message: &str| Error::Format {
        line,
        message: message.to_string(),
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, head) = lines.next().ok_or_else(|| err(0, "empty input"))?;
    let mut words = head.split_whitespace();
    if words.next() != Some("tracks") {
        return Err(err(hline, "expected `tracks` header"));
    }
    let mut tracks = Vec::new();
    for w in words {
        let (name, base) = w
            .split_once(':')
            .ok_or_else(|| err(hline, "track must be name:base"))?;
        let base: u8 = base.parse().map_err(|_| err(hline, "bad base"))?;
        tracks.push(Track::new(name, base));
    }
    let sig = Signature::new(tracks).map_err(|e| err(hline, &e.to_string()))?;

    let mut states: BTreeMap<u32, (u8, Option<u8>)> = BTreeMap::new();
    let mut trans: Vec<(u32, u32, u32, usize)> = Vec::new();
    for (ln, line) in lines {
        if let Some(open) = line.find('[') {
            let close = line.find(']').ok_or_else(|| err(ln, "unclosed tuple"))?;
            let src: u32 = line[..open].trim().parse().map_err(|_| err(ln, "bad source"))?;
            let dst: u32 = line[close + 1..]
                .trim()
                .parse()
                .map_err(|_| err(ln, "bad target"))?;
            let inner = line[open + 1..close].trim();
            let digits: Vec<u8> = if inner.is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|d| d.trim().parse::<u8>().map_err(|_| err(ln, "bad digit")))
                    .collect::<Result<_>>()?
            };
            sig.check(&digits).map_err(|e| err(ln, &e.to_string()))?;
            trans.push((src, sig.encode(&digits), dst, ln));
        } else {
            let nums: Vec<u32> = line
                .split_whitespace()
                .map(|w| w.parse::<u32>().map_err(|_| err(ln, "bad number")))
                .collect::<Result<_>>()?;
            match nums.as_slice() {
                [id, acc] if *acc <= 1 => {
                    states.insert(*id, (*acc as u8, None));
                }
                [id, acc, out] if *acc <= 1 && *out <= 255 => {
                    states.insert(*id, (*acc as u8, Some(*out as u8)));
                }
                _ => return Err(err(ln, "expected `id flag [output]`")),
            }
        }
    }
    if states.is_empty() {
        return Err(err(0, "no states"));
    }
    // dense renumbering keeping the smallest id as initial
    let ids: BTreeMap<u32, u32> = states
        .keys()
        .enumerate()
        .map(|(i, &k)| (k, i as u32))
        .collect();
    let lookup = |s: u32, ln: usize| ids.get(&s).copied().ok_or_else(|| err(ln, "unknown state"));
    let with_output = states.values().any(|(_, o)| o.is_some());

    if with_output {
        let mut rows: Vec<Vec<Edge>> = vec![Vec::new(); states.len()];
        for &(s, sym, t, ln) in &trans {
            let (s, t) = (lookup(s, ln)?, lookup(t, ln)?);
            if rows[s as usize].iter().any(|e| e.sym == sym) {
                return Err(err(ln, "automaton with output must be deterministic"));
            }
            rows[s as usize].push(Edge { sym, to: t });
        }
        let mut b = DfaBuilder::new(sig);
        for ((_, (acc, out)), row) in states.iter().zip(rows) {
            b.push_state(out.unwrap_or(*acc), row);
        }
        let dfa: Dfa = b.finish();
        Ok(ParsedAutomaton::Output(OutputAutomaton::from_dfa(&dfa)))
    } else {
        let mut nfa = Nfa::new(sig);
        for (acc, _) in states.values() {
            nfa.add_state(*acc != 0);
        }
        nfa.set_initial(0);
        for &(s, sym, t, ln) in &trans {
            let (s, t) = (lookup(s, ln)?, lookup(t, ln)?);
            nfa.add_sym(s, sym, t);
        }
        Ok(ParsedAutomaton::Acceptor(Automaton::from_dfa(&nfa.determinize())))
    }
}

/// Graphviz rendering; state labels carry the output for automata with output.
pub fn to_dot(name: &str, kind: &ParsedAutomaton) -> String {
    let (dfa, with_output) = match kind {
        ParsedAutomaton::Acceptor(a) => (a.dfa().clone(), false),
        ParsedAutomaton::Output(o) => (o.dfa().complete(), true),
    };
    let sig = dfa.signature();
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", name.replace('"', "'"));
    let _ = writeln!(out, "  rankdir = LR;");
    let _ = writeln!(out, "  node [shape = circle];");
    let _ = writeln!(out, "  init [shape = point];");
    let _ = writeln!(out, "  init -> 0;");
    for s in 0..dfa.num_states() as u32 {
        let o = dfa.output(s);
        if with_output {
            let _ = writeln!(out, "  {s} [label = \"{s}/{o}\"];");
        } else if o != 0 {
            let _ = writeln!(out, "  {s} [shape = doublecircle, label = \"{s}\"];");
        } else {
            let _ = writeln!(out, "  {s} [label = \"{s}\"];");
        }
    }
    for s in 0..dfa.num_states() as u32 {
        let mut by_target: BTreeMap<u32, Vec<String>> = BTreeMap::new();
        for e in dfa.edges_of(s) {
            by_target.entry(e.to).or_default().push(tuple(sig, e.sym));
        }
        for (t, labels) in by_target {
            let _ = writeln!(out, "  {s} -> {t} [label = \"{}\"];", labels.join(", "));
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::compile_regex_str;

    #[test]
    fn roundtrip_acceptor() {
        let sig = Signature::from_pairs(&[("c", 6), ("y", 3)]).unwrap();
        let a = compile_regex_str("([1,0]|[2,1]|[3,1]|[4,2]|[5,2])*[0,0]*", &sig).unwrap();
        let text = write_automaton(&ParsedAutomaton::Acceptor(a.clone()));
        match parse_automaton(&text).unwrap() {
            ParsedAutomaton::Acceptor(b) => assert_eq!(a, b),
            _ => panic!("kind changed"),
        }
        assert!(text.starts_with("tracks c:6 y:3\n"));
    }

    #[test]
    fn nondeterministic_input_is_determinized() {
        let text = "tracks x:2\n0 0\n1 1\n0 [0] 0\n0 [1] 0\n0 [1] 1\n";
        let ParsedAutomaton::Acceptor(a) = parse_automaton(text).unwrap() else {
            panic!()
        };
        assert!(a.accepts_tracks(&[&[0, 1]]).unwrap());
        assert!(!a.accepts_tracks(&[&[1, 0]]).unwrap());
    }

    #[test]
    fn format_errors_carry_line() {
        let e = parse_automaton("tracks x:2\n0 1\n0 [2] 0\n").err().unwrap();
        assert!(matches!(e, Error::Format { line: 3, .. }));
        assert!(parse_automaton("nonsense").is_err());
    }

    #[test]
    fn dot_labels() {
        let sig = Signature::from_pairs(&[("x", 2)]).unwrap();
        let a = compile_regex_str("0*10*", &sig).unwrap();
        let dot = to_dot("power2", &ParsedAutomaton::Acceptor(a));
        assert!(dot.contains("doublecircle"));
        assert!(dot.contains("label = \"[0]\""));
    }
}
