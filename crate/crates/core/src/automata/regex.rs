//! Regular expressions over digit tuples.
//!
//! Syntax: a single-track literal is one digit (`3`); a tuple literal is
//! written `[1,0,2]`. Operators are `|`, postfix `*`, `+`, `?`, grouping with
//! parentheses, and juxtaposition. Whitespace is ignored; the empty pattern
//! denotes the empty word.

use super::automaton::Automaton;
use super::ops::Nfa;
use super::signature::Signature;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RegexPattern {
    Empty,
    Literal(Vec<u8>),
    Concat(Vec<RegexPattern>),
    Alt(Vec<RegexPattern>),
    Star(Box<RegexPattern>),
}

impl RegexPattern {
    pub fn parse(text: &str) -> Result<RegexPattern> {
        let chars: Vec<(usize, char)> = text
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        let mut p = Parser { chars, pos: 0 };
        let r = p.alt()?;
        if p.pos < p.chars.len() {
            return Err(p.error("unexpected character"));
        }
        Ok(r)
    }

    fn check(&self, sig: &Signature) -> Result<()> {
        match self {
            RegexPattern::Empty => Ok(()),
            RegexPattern::Literal(d) => sig.check(d).map_err(|e| Error::Regex {
                offset: 0,
                message: format!("literal {d:?}: {e}"),
            }),
            RegexPattern::Concat(v) | RegexPattern::Alt(v) => v.iter().try_for_each(|r| r.check(sig)),
            RegexPattern::Star(r) => r.check(sig),
        }
    }

    /// Thompson fragment: returns (start, end) states.
    fn build(&self, g: &mut EpsGraph, sig: &Signature) -> (u32, u32) {
        match self {
            RegexPattern::Empty => {
                let s = g.state();
                (s, s)
            }
            RegexPattern::Literal(d) => {
                let s = g.state();
                let t = g.state();
                g.sym[s as usize].push((sig.encode(d), t));
                (s, t)
            }
            RegexPattern::Concat(parts) => {
                let s = g.state();
                let mut end = s;
                for p in parts {
                    let (a, b) = p.build(g, sig);
                    g.eps[end as usize].push(a);
                    end = b;
                }
                (s, end)
            }
            RegexPattern::Alt(parts) => {
                let s = g.state();
                let t = g.state();
                for p in parts {
                    let (a, b) = p.build(g, sig);
                    g.eps[s as usize].push(a);
                    g.eps[b as usize].push(t);
                }
                (s, t)
            }
            RegexPattern::Star(r) => {
                let s = g.state();
                let (a, b) = r.build(g, sig);
                g.eps[s as usize].push(a);
                g.eps[b as usize].push(s);
                (s, s)
            }
        }
    }
}

/// Compiles a pattern into the minimal automaton of exactly its language.
pub fn compile_regex(pattern: &RegexPattern, sig: &Signature) -> Result<Automaton> {
    pattern.check(sig)?;
    let mut g = EpsGraph::default();
    let (start, end) = pattern.build(&mut g, sig);
    let n = g.eps.len();
    // epsilon closures
    let closure: Vec<Vec<u32>> = (0..n as u32)
        .map(|s| {
            let mut seen = vec![false; n];
            let mut stack = vec![s];
            seen[s as usize] = true;
            let mut out = Vec::new();
            while let Some(q) = stack.pop() {
                out.push(q);
                for &r in &g.eps[q as usize] {
                    if !seen[r as usize] {
                        seen[r as usize] = true;
                        stack.push(r);
                    }
                }
            }
            out
        })
        .collect();
    let mut nfa = Nfa::new(sig.clone());
    for c in &closure {
        nfa.add_state(c.contains(&end));
    }
    nfa.set_initial(start);
    for (s, c) in closure.iter().enumerate() {
        for &q in c {
            for &(sym, t) in &g.sym[q as usize] {
                nfa.add_sym(s as u32, sym, t);
            }
        }
    }
    Ok(Automaton::from_dfa(&nfa.determinize()))
}

/// Parses and compiles in one step.
pub fn compile_regex_str(pattern: &str, sig: &Signature) -> Result<Automaton> {
    compile_regex(&RegexPattern::parse(pattern)?, sig)
}

#[derive(Default)]
struct EpsGraph {
    eps: Vec<Vec<u32>>,
    sym: Vec<Vec<(u32, u32)>>,
}

impl EpsGraph {
    fn state(&mut self) -> u32 {
        self.eps.push(Vec::new());
        self.sym.push(Vec::new());
        (self.eps.len() - 1) as u32
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn error(&self, msg: &str) -> Error {
        let offset = self.chars.get(self.pos).map_or(usize::MAX, |c| c.0);
        Error::Regex {
            offset,
            message: msg.to_string(),
        }
    }

    fn alt(&mut self) -> Result<RegexPattern> {
        let mut parts = vec![self.concat()?];
        while self.peek() == Some('|') {
            self.pos += 1;
            parts.push(self.concat()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            RegexPattern::Alt(parts)
        })
    }

    fn concat(&mut self) -> Result<RegexPattern> {
        let mut parts = Vec::new();
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            parts.push(self.postfix()?);
        }
        Ok(match parts.len() {
            0 => RegexPattern::Empty,
            1 => parts.pop().unwrap(),
            _ => RegexPattern::Concat(parts),
        })
    }

    fn postfix(&mut self) -> Result<RegexPattern> {
        let mut r = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => r = RegexPattern::Star(Box::new(r)),
                Some('+') => r = RegexPattern::Concat(vec![r.clone(), RegexPattern::Star(Box::new(r))]),
                Some('?') => r = RegexPattern::Alt(vec![r, RegexPattern::Empty]),
                _ => return Ok(r),
            }
            self.pos += 1;
        }
    }

    fn atom(&mut self) -> Result<RegexPattern> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let r = self.alt()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(r)
            }
            Some('[') => {
                self.pos += 1;
                let mut digits = Vec::new();
                loop {
                    digits.push(self.digit()?);
                    match self.peek() {
                        Some(',') => self.pos += 1,
                        Some(']') => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.error("expected `,` or `]`")),
                    }
                }
                Ok(RegexPattern::Literal(digits))
            }
            Some(c) if c.is_ascii_digit() => Ok(RegexPattern::Literal(vec![self.digit()?])),
            _ => Err(self.error("expected a literal or `(`")),
        }
    }

    fn digit(&mut self) -> Result<u8> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                self.pos += 1;
                Ok(c as u8 - b'0')
            }
            _ => Err(self.error("expected a digit")),
        }
    }
}
