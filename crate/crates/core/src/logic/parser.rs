//! Script and formula syntax.
//!
//! ```text
//! script    := statement*
//! statement := "reg" NAME ("lsd_" K)+ STRING ":"
//!            | "def" NAME NAME* STRING ":"
//!            | "eval" NAME STRING ":"
//!            | "combine" NAME (NAME "=" NUM)+ ":"
//!
//! formula   := ["?lsd_" K] iff                 (leading annotation = default base)
//! iff       := implies ("<=>" implies)*
//! implies   := or ("=>" implies)?
//! or        := and ("|" and)*
//! and       := unary ("&" unary)*
//! unary     := "~" unary | ("E" | "A") VAR ("," VAR)* iff | primary
//! primary   := "(" iff ")" | "?lsd_" K primary | "true" | "false"
//!            | "$" NAME "(" term ("," term)* ")"
//!            | output CMP (output | "@" NUM)
//!            | term CMP term
//! output    := NAME ("[" term "]")+
//! term      := product (("+" | "-") product)*
//! product   := atom (("*" | "/") atom)*          (one factor of * must be a constant)
//! atom      := NUM | VAR | "(" term ")" | "?lsd_" K atom
//! ```
//!
//! A quantifier letter may be glued to its first variable (`Ei,n`), so
//! variable names cannot start with `E` or `A`. Quantifier bodies extend as
//! far to the right as possible. `#` starts a comment outside strings.

use super::ast::{CmpOp, Formula, OutputOperand, OutputRef, Term};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StatementKind {
    Reg {
        name: String,
        bases: Vec<u8>,
        pattern: String,
    },
    Def {
        name: String,
        /// Variables listed after the name; when non-empty the remaining
        /// free variables are counted rather than kept as inputs.
        inputs: Vec<String>,
        formula: Formula,
        base: u8,
    },
    Eval {
        name: String,
        formula: Formula,
        base: u8,
    },
    Combine {
        name: String,
        parts: Vec<(String, u8)>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    pub kind: StatementKind,
    pub line: usize,
    pub column: usize,
}

impl Statement {
    pub fn name(&self) -> &str {
        match &self.kind {
            StatementKind::Reg { name, .. }
            | StatementKind::Def { name, .. }
            | StatementKind::Eval { name, .. }
            | StatementKind::Combine { name, .. } => name,
        }
    }
}

impl Statement {
    /// Names this statement needs to be defined first.
    pub fn dependencies(&self) -> Vec<String> {
        match &self.kind {
            StatementKind::Reg { .. } => Vec::new(),
            StatementKind::Def { formula, .. } | StatementKind::Eval { formula, .. } => {
                formula.references()
            }
            StatementKind::Combine { parts, .. } => parts.iter().map(|p| p.0.clone()).collect(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub statements: Vec<Statement>,
}

type Pos = (usize, usize);

fn syntax(pos: Pos, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: pos.0,
        column: pos.1,
        message: message.into(),
    }
}

/// Characters with their (line, column), both 1-based.
fn positioned(text: &str, start: Pos) -> Vec<(char, Pos)> {
    let (mut line, mut col) = start;
    text.chars()
        .map(|c| {
            let p = (line, col);
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            (c, p)
        })
        .collect()
}

struct Cursor {
    chars: Vec<(char, Pos)>,
    i: usize,
    end: Pos,
}

impl Cursor {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.i).map(|c| c.0)
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.i + k).map(|c| c.0)
    }

    fn pos(&self) -> Pos {
        self.chars.get(self.i).map_or(self.end, |c| c.1)
    }

    fn skip_space(&mut self, comments: bool) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.i += 1;
            } else if comments && c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.i += 1;
                }
            } else {
                break;
            }
        }
    }

    fn ident(&mut self) -> Option<String> {
        let c = self.peek()?;
        if !(c.is_ascii_alphabetic() || c == '_') {
            return None;
        }
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                s.push(c);
                self.i += 1;
            } else {
                break;
            }
        }
        Some(s)
    }

    fn number(&mut self) -> Option<u64> {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() {
                s.push(c);
                self.i += 1;
            } else {
                break;
            }
        }
        s.parse().ok()
    }
}

fn numeration(word: &str, pos: Pos) -> Result<u8> {
    let base = word
        .strip_prefix("lsd_")
        .ok_or_else(|| syntax(pos, format!("unsupported number system `{word}` (only lsd_k)")))?;
    match base.parse::<u8>() {
        Ok(k) if k >= 2 => Ok(k),
        _ => Err(syntax(pos, format!("bad base in `{word}`"))),
    }
}

/// Parses a script. Statement terminators are `:`.
pub fn parse_script(text: &str) -> Result<Script> {
    let chars = positioned(text, (1, 1));
    let end = chars.last().map_or((1, 1), |c| (c.1 .0, c.1 .1 + 1));
    let mut cur = Cursor { chars, i: 0, end };
    let mut statements = Vec::new();
    loop {
        cur.skip_space(true);
        if cur.peek().is_none() {
            break;
        }
        let start = cur.pos();
        let kw = cur
            .ident()
            .ok_or_else(|| syntax(start, "expected `reg`, `def`, `eval` or `combine`"))?;
        cur.skip_space(true);
        let name_pos = cur.pos();
        let name = cur.ident().ok_or_else(|| syntax(name_pos, "expected a name"))?;
        let kind = match kw.as_str() {
            "reg" => {
                let mut bases = Vec::new();
                loop {
                    cur.skip_space(true);
                    if cur.peek() == Some('"') {
                        break;
                    }
                    let p = cur.pos();
                    let w = cur.ident().ok_or_else(|| syntax(p, "expected `lsd_k` or a pattern"))?;
                    bases.push(numeration(&w, p)?);
                }
                if bases.is_empty() {
                    return Err(syntax(name_pos, "reg needs at least one number system"));
                }
                let (pattern, _) = string(&mut cur)?;
                StatementKind::Reg {
                    name,
                    bases,
                    pattern,
                }
            }
            "def" | "eval" => {
                let mut inputs = Vec::new();
                loop {
                    cur.skip_space(true);
                    if cur.peek() == Some('"') {
                        break;
                    }
                    let p = cur.pos();
                    let w = cur.ident().ok_or_else(|| syntax(p, "expected a formula string"))?;
                    inputs.push(w);
                }
                if kw == "eval" && !inputs.is_empty() {
                    return Err(syntax(name_pos, "eval takes no variable list"));
                }
                let (body, body_pos) = string(&mut cur)?;
                let (formula, base) = parse_formula_at(&body, body_pos)?;
                if kw == "def" {
                    StatementKind::Def {
                        name,
                        inputs,
                        formula,
                        base,
                    }
                } else {
                    StatementKind::Eval {
                        name,
                        formula,
                        base,
                    }
                }
            }
            "combine" => {
                let mut parts = Vec::new();
                loop {
                    cur.skip_space(true);
                    if cur.peek() == Some(':') || cur.peek().is_none() {
                        break;
                    }
                    let p = cur.pos();
                    let part = cur.ident().ok_or_else(|| syntax(p, "expected `name=value`"))?;
                    cur.skip_space(true);
                    if cur.peek() != Some('=') {
                        return Err(syntax(cur.pos(), "expected `=`"));
                    }
                    cur.i += 1;
                    cur.skip_space(true);
                    let p = cur.pos();
                    let v = cur.number().ok_or_else(|| syntax(p, "expected an output value"))?;
                    if v > 255 {
                        return Err(syntax(p, "output value too large"));
                    }
                    parts.push((part, v as u8));
                }
                if parts.is_empty() {
                    return Err(syntax(name_pos, "combine needs at least one part"));
                }
                StatementKind::Combine { name, parts }
            }
            other => return Err(syntax(start, format!("unknown statement `{other}`"))),
        };
        cur.skip_space(true);
        if cur.peek() != Some(':') {
            return Err(syntax(cur.pos(), "expected `:` after statement"));
        }
        cur.i += 1;
        statements.push(Statement {
            kind,
            line: start.0,
            column: start.1,
        });
    }
    Ok(Script { statements })
}

fn string(cur: &mut Cursor) -> Result<(String, Pos)> {
    cur.skip_space(true);
    if cur.peek() != Some('"') {
        return Err(syntax(cur.pos(), "expected `\"`"));
    }
    let open = cur.pos();
    cur.i += 1;
    let start = cur.pos();
    let mut s = String::new();
    loop {
        match cur.peek() {
            None => return Err(syntax(open, "unterminated string")),
            Some('"') => {
                cur.i += 1;
                return Ok((s, start));
            }
            Some(c) => {
                s.push(c);
                cur.i += 1;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    Annot(u8),
    Quant(bool),
    Dollar,
    At,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    And,
    Or,
    Not,
    Implies,
    Iff,
    Cmp(CmpOp),
}

fn lex(text: &str, start: Pos) -> Result<(Vec<(Tok, Pos)>, Pos)> {
    let chars = positioned(text, start);
    let end = chars.last().map_or(start, |c| (c.1 .0, c.1 .1 + 1));
    let mut cur = Cursor { chars, i: 0, end };
    let mut out: Vec<(Tok, Pos)> = Vec::new();
    loop {
        cur.skip_space(false);
        let p = cur.pos();
        let Some(c) = cur.peek() else { break };
        let two = |a: char, b: char| c == a && cur.peek_at(1) == Some(b);
        let (tok, len) = if c.is_ascii_digit() {
            let n = cur.number().ok_or_else(|| syntax(p, "number too large"))?;
            out.push((Tok::Num(n), p));
            continue;
        } else if c.is_ascii_alphabetic() || c == '_' {
            let after_dollar = matches!(out.last(), Some((Tok::Dollar, _)));
            let w = cur.ident().unwrap();
            cur.skip_space(false);
            let indexed = cur.peek() == Some('[');
            let quant = !after_dollar
                && !indexed
                && (w.starts_with('E') || w.starts_with('A'));
            if quant {
                out.push((Tok::Quant(w.starts_with('E')), p));
                if w.len() > 1 {
                    out.push((Tok::Ident(w[1..].to_string()), (p.0, p.1 + 1)));
                }
            } else {
                out.push((Tok::Ident(w), p));
            }
            continue;
        } else if c == '?' {
            cur.i += 1;
            let w = cur.ident().ok_or_else(|| syntax(p, "expected a number system after `?`"))?;
            out.push((Tok::Annot(numeration(&w, p)?), p));
            continue;
        } else if c == '<' && cur.peek_at(1) == Some('=') && cur.peek_at(2) == Some('>') {
            (Tok::Iff, 3)
        } else if two('<', '=') {
            (Tok::Cmp(CmpOp::Le), 2)
        } else if two('>', '=') {
            (Tok::Cmp(CmpOp::Ge), 2)
        } else if two('=', '>') {
            (Tok::Implies, 2)
        } else if two('!', '=') || two('~', '=') {
            (Tok::Cmp(CmpOp::Ne), 2)
        } else {
            let t = match c {
                '<' => Tok::Cmp(CmpOp::Lt),
                '>' => Tok::Cmp(CmpOp::Gt),
                '=' => Tok::Cmp(CmpOp::Eq),
                '$' => Tok::Dollar,
                '@' => Tok::At,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBrack,
                ']' => Tok::RBrack,
                ',' => Tok::Comma,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '&' => Tok::And,
                '|' => Tok::Or,
                '~' | '!' => Tok::Not,
                other => return Err(syntax(p, format!("unexpected character `{other}`"))),
            };
            (t, 1)
        };
        cur.i += len;
        out.push((tok, p));
    }
    Ok((out, end))
}

/// Parses a formula; returns it with its default base (leading annotation,
/// else 2).
pub fn parse_formula(text: &str) -> Result<(Formula, u8)> {
    parse_formula_at(text, (1, 1))
}

fn parse_formula_at(text: &str, start: Pos) -> Result<(Formula, u8)> {
    let (toks, end) = lex(text, start)?;
    let mut p = FParser { toks, i: 0, end };
    let mut base = 2;
    if let Some(Tok::Annot(k)) = p.peek() {
        base = *k;
        p.i += 1;
    }
    let f = p.iff()?;
    if p.i < p.toks.len() {
        return Err(syntax(p.pos(), "unexpected token"));
    }
    Ok((f, base))
}

struct FParser {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    end: Pos,
}

impl FParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.0)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.i).map_or(self.end, |t| t.1)
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok, what: &str) -> Result<()> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(syntax(self.pos(), format!("expected {what}")))
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut f = self.implies()?;
        while self.eat(&Tok::Iff) {
            let g = self.implies()?;
            f = Formula::Iff(Box::new(f), Box::new(g));
        }
        Ok(f)
    }

    fn implies(&mut self) -> Result<Formula> {
        let f = self.or()?;
        if self.eat(&Tok::Implies) {
            let g = self.implies()?;
            return Ok(Formula::Implies(Box::new(f), Box::new(g)));
        }
        Ok(f)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut f = self.and()?;
        while self.eat(&Tok::Or) {
            let g = self.and()?;
            f = Formula::or(f, g);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while self.eat(&Tok::And) {
            let g = self.unary()?;
            f = Formula::and(f, g);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(Tok::Not) => {
                self.i += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Quant(exists)) => {
                let exists = *exists;
                self.i += 1;
                let mut vars = Vec::new();
                loop {
                    match self.peek() {
                        Some(Tok::Ident(v)) => {
                            vars.push(v.clone());
                            self.i += 1;
                        }
                        _ => return Err(syntax(self.pos(), "expected a quantified variable")),
                    }
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                }
                let body = Box::new(self.iff()?);
                Ok(if exists {
                    Formula::Exists(vars, body)
                } else {
                    Formula::Forall(vars, body)
                })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                let save = self.i;
                self.i += 1;
                if let Ok(f) = self.iff() {
                    if self.eat(&Tok::RParen) && !self.continues_term() {
                        return Ok(f);
                    }
                }
                self.i = save;
                self.comparison(None)
            }
            Some(Tok::Annot(k)) => {
                self.i += 1;
                if matches!(self.peek(), Some(Tok::Dollar) | Some(Tok::LParen)) {
                    // annotations on calls and groups only concern their arguments
                    return self.primary();
                }
                self.comparison(Some(k))
            }
            Some(Tok::Ident(w)) if w == "true" || w == "false" => {
                self.i += 1;
                Ok(if w == "true" {
                    Formula::True
                } else {
                    Formula::False
                })
            }
            Some(Tok::Dollar) => {
                self.i += 1;
                let name = match self.peek() {
                    Some(Tok::Ident(n)) => n.clone(),
                    _ => return Err(syntax(self.pos(), "expected an automaton name after `$`")),
                };
                self.i += 1;
                self.expect(&Tok::LParen, "`(`")?;
                let mut args = vec![self.term()?];
                while self.eat(&Tok::Comma) {
                    args.push(self.term()?);
                }
                self.expect(&Tok::RParen, "`)`")?;
                Ok(Formula::Call { name, args })
            }
            Some(Tok::Ident(_)) if self.toks.get(self.i + 1).map(|t| &t.0) == Some(&Tok::LBrack) => {
                let lhs = self.output_ref()?;
                let op = self.cmp_op()?;
                let rhs = if self.eat(&Tok::At) {
                    match self.peek() {
                        Some(Tok::Num(v)) if *v <= 255 => {
                            let v = *v as u8;
                            self.i += 1;
                            OutputOperand::Value(v)
                        }
                        _ => return Err(syntax(self.pos(), "expected an output value after `@`")),
                    }
                } else {
                    OutputOperand::Ref(self.output_ref()?)
                };
                Ok(Formula::Output { op, lhs, rhs })
            }
            None => Err(syntax(self.pos(), "unexpected end of formula")),
            _ => self.comparison(None),
        }
    }

    /// After a parenthesized group: does an arithmetic or comparison operator
    /// follow (so the group was a term)?
    fn continues_term(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Cmp(_)) | Some(Tok::Plus) | Some(Tok::Minus) | Some(Tok::Star) | Some(Tok::Slash)
        )
    }

    fn output_ref(&mut self) -> Result<OutputRef> {
        let name = match self.peek() {
            Some(Tok::Ident(n)) => n.clone(),
            _ => return Err(syntax(self.pos(), "expected an automaton with output")),
        };
        self.i += 1;
        let mut indices = Vec::new();
        while self.eat(&Tok::LBrack) {
            indices.push(self.term()?);
            self.expect(&Tok::RBrack, "`]`")?;
        }
        if indices.is_empty() {
            return Err(syntax(self.pos(), "expected `[`"));
        }
        Ok(OutputRef { name, indices })
    }

    fn cmp_op(&mut self) -> Result<CmpOp> {
        match self.peek() {
            Some(Tok::Cmp(op)) => {
                let op = *op;
                self.i += 1;
                Ok(op)
            }
            _ => Err(syntax(self.pos(), "expected a comparison")),
        }
    }

    fn comparison(&mut self, base: Option<u8>) -> Result<Formula> {
        let lhs = self.term()?;
        let op = self.cmp_op()?;
        let rhs = self.term()?;
        Ok(Formula::Compare { op, lhs, rhs, base })
    }

    fn term(&mut self) -> Result<Term> {
        let mut t = self.product()?;
        loop {
            if self.eat(&Tok::Plus) {
                t = Term::Add(Box::new(t), Box::new(self.product()?));
            } else if self.eat(&Tok::Minus) {
                t = Term::Sub(Box::new(t), Box::new(self.product()?));
            } else {
                return Ok(t);
            }
        }
    }

    fn product(&mut self) -> Result<Term> {
        let mut t = self.atom()?;
        loop {
            let p = self.pos();
            if self.eat(&Tok::Star) {
                let u = self.atom()?;
                t = match (t, u) {
                    (Term::Const(q), u) => Term::Mul(q, Box::new(u)),
                    (t, Term::Const(q)) => Term::Mul(q, Box::new(t)),
                    _ => return Err(syntax(p, "multiplication needs a constant factor")),
                };
            } else if self.eat(&Tok::Slash) {
                match self.atom()? {
                    Term::Const(q) if q >= 1 => t = Term::Div(Box::new(t), q),
                    _ => return Err(syntax(p, "division needs a positive constant divisor")),
                }
            } else {
                return Ok(t);
            }
        }
    }

    fn atom(&mut self) -> Result<Term> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                Ok(Term::Const(n))
            }
            Some(Tok::Ident(name)) => {
                self.i += 1;
                Ok(Term::Var { name, base: None })
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let t = self.term()?;
                self.expect(&Tok::RParen, "`)`")?;
                Ok(t)
            }
            Some(Tok::Annot(k)) => {
                self.i += 1;
                Ok(match self.atom()? {
                    Term::Var { name, .. } => Term::Var { name, base: Some(k) },
                    other => other,
                })
            }
            _ => Err(syntax(self.pos(), "expected a term")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacent_definition() {
        let s = parse_script(
            "def adjacent \"?lsd_2 ($power2(m) & $power2(n) & m=2*n) | (m=1 & n=0)\":",
        )
        .unwrap();
        let StatementKind::Def { formula, base, .. } = &s.statements[0].kind else {
            panic!()
        };
        assert_eq!(*base, 2);
        assert_eq!(formula.free_vars(), vec!["m", "n"]);
        assert!(matches!(formula, Formula::Or(..)));
    }

    #[test]
    fn glued_quantifiers() {
        let (f, base) = parse_formula("?lsd_2 Ei,n,l $length(?lsd_6 c,?lsd_2 l) & n>=1").unwrap();
        assert_eq!(base, 2);
        let Formula::Exists(vars, body) = f else { panic!() };
        assert_eq!(vars, vec!["i", "n", "l"]);
        assert!(matches!(*body, Formula::And(..)));
    }

    #[test]
    fn squ_sentence_is_closed() {
        let text = "eval squ \"?lsd_2 Ac,l ($ovlf(?lsd_6 c) & $length(?lsd_6 c,?lsd_2 l) & l>7)
   => Ei,n i+2*n<=l & 6*n>=l & $has_square(?lsd_6 c,?lsd_2 i,?lsd_2 n)\":";
        let s = parse_script(text).unwrap();
        let StatementKind::Eval { formula, .. } = &s.statements[0].kind else {
            panic!()
        };
        assert!(formula.free_vars().is_empty());
        let Formula::Forall(_, body) = formula else { panic!() };
        assert!(matches!(**body, Formula::Implies(..)));
    }

    #[test]
    fn parenthesized_terms_and_division() {
        let (f, _) = parse_formula("i+(7*n)/3<l").unwrap();
        let Formula::Compare { lhs, .. } = f else { panic!() };
        assert_eq!(lhs.to_string(), "(i+(7*n)/3)");
        let (f, _) = parse_formula("t<3*x/2-1").unwrap();
        let Formula::Compare { rhs, .. } = f else { panic!() };
        assert_eq!(rhs.to_string(), "((3*x)/2-1)");
    }

    #[test]
    fn output_atoms() {
        let (f, _) = parse_formula("LOOK[?lsd_6 c][i+t]=LOOK[?lsd_6 c][i+n+t]").unwrap();
        assert!(matches!(
            f,
            Formula::Output {
                rhs: OutputOperand::Ref(_),
                ..
            }
        ));
        let (f, _) = parse_formula("(CODE[?lsd_2 p][?lsd_6 c]=@4 & x<p & T[x]=@1)").unwrap();
        assert!(matches!(f, Formula::And(..)));
        let (f, _) = parse_formula("(?lsd_6 c1<=c2)").unwrap();
        assert!(matches!(f, Formula::Compare { base: Some(6), .. }));
    }

    #[test]
    fn statements_of_every_kind() {
        let text = "reg power2 lsd_2 \"0*10*\":\n# comment\ncombine LOOK look1=1 look2=2:\ndef minmat n \"$mincode(?lsd_6 c,?lsd_2 n)\":";
        let s = parse_script(text).unwrap();
        assert_eq!(s.statements.len(), 3);
        assert_eq!(s.statements[1].line, 3);
        match &s.statements[2].kind {
            StatementKind::Def { inputs, .. } => assert_eq!(inputs, &vec!["n".to_string()]),
            _ => panic!(),
        }
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_script("def x \"E\":").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 1, .. }), "{e:?}");
        let e = parse_script("def x \"a<\nb +\":").unwrap_err();
        assert!(matches!(e, Error::Syntax { line: 2, .. }), "{e:?}");
        assert!(parse_script("def x \"a<b\"").is_err());
        assert!(parse_script("def look2 \"?lsd_2 (~$validcode(?lsd_6 c)):").is_err());
        assert!(parse_formula("x*y<3").is_err());
    }
}
