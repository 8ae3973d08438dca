//! Compilation of formulas to automata.
//!
//! Bound variables are renamed apart, then every variable gets a base:
//! called automata and indexed automata with output fix the base of the
//! variables passed to them, variables compared with each other share a
//! base, and annotations only fill in what remains. Terms are flattened
//! into auxiliary variables constrained by addition automata, which are
//! projected away at the atom.

use std::collections::HashMap;

use super::ast::{CmpOp, Formula, OutputOperand, OutputRef, Term};
use crate::automata::{Automaton, OutputAutomaton, Signature, Track};
use crate::error::{Error, Result};
use crate::numeration::{build_add, build_compare, build_constant};

/// A named automaton available to formulas.
#[derive(Clone, Debug)]
pub enum Entry {
    /// Called as `$name(args)`, tracks in argument order.
    Acceptor(Automaton),
    /// Indexed as `NAME[a][b]`, tracks in index order.
    Output(OutputAutomaton),
}

impl Entry {
    pub fn signature(&self) -> &Signature {
        match self {
            Entry::Acceptor(a) => a.signature(),
            Entry::Output(o) => o.signature(),
        }
    }
}

/// Name to automaton bindings.
#[derive(Clone, Debug, Default)]
pub struct Env {
    entries: HashMap<String, Entry>,
}

impl Env {
    pub fn new() -> Self {
        Env::default()
    }

    pub fn insert(&mut self, name: &str, entry: Entry) {
        self.entries.insert(name.to_string(), entry);
    }

    pub fn insert_acceptor(&mut self, name: &str, a: Automaton) {
        self.insert(name, Entry::Acceptor(a));
    }

    pub fn insert_output(&mut self, name: &str, o: OutputAutomaton) {
        self.insert(name, Entry::Output(o));
    }

    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.entries.get(name)
    }

    pub fn acceptor(&self, name: &str) -> Result<&Automaton> {
        match self.get(name) {
            Some(Entry::Acceptor(a)) => Ok(a),
            Some(Entry::Output(_)) => Err(Error::Invalid(format!(
                "`{name}` has outputs; index it as {name}[..] instead"
            ))),
            None => Err(Error::Unbound(name.to_string())),
        }
    }

    pub fn output(&self, name: &str) -> Result<&OutputAutomaton> {
        match self.get(name) {
            Some(Entry::Output(o)) => Ok(o),
            Some(Entry::Acceptor(_)) => Err(Error::Invalid(format!(
                "`{name}` is an acceptor; call it as ${name}(..) instead"
            ))),
            None => Err(Error::Unbound(name.to_string())),
        }
    }

    pub fn contains(&self, name: &str) -> bool {
        self.entries.contains_key(name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(|k| k.as_str())
    }
}

/// Compiles `f` to an automaton whose tracks are its free variables in
/// alphabetical order. `default_base` applies to variables nothing else
/// constrains.
pub fn compile(f: &Formula, env: &Env, default_base: u8) -> Result<Automaton> {
    let mut counter = 0;
    let renamed = rename_bound(f, &mut HashMap::new(), &mut counter);
    let bases = infer_bases(&renamed, env, default_base)?;
    let mut c = Compiler {
        env,
        bases,
        fresh: 0,
    };
    let mut a = c.comp(&renamed)?;
    // variables that vanished (e.g. `x=x`) still get a track
    let mut missing = Vec::new();
    for v in renamed.free_vars() {
        if a.signature().position(&v).is_none() {
            missing.push(Track::new(v.clone(), c.base(&v)));
        }
    }
    if !missing.is_empty() {
        a = a.and(&Automaton::universal(Signature::new(missing)?))?;
    }
    Ok(a.sorted_tracks())
}

/// Truth value of a closed formula.
pub fn eval_sentence(f: &Formula, env: &Env, default_base: u8) -> Result<bool> {
    let free = f.free_vars();
    if !free.is_empty() {
        return Err(Error::FreeVariables(free));
    }
    Ok(compile(f, env, default_base)?.accepts_empty())
}

const SEP: char = '#';

fn rename_term(t: &Term, scope: &HashMap<String, String>) -> Term {
    match t {
        Term::Var { name, base } => Term::Var {
            name: scope.get(name).cloned().unwrap_or_else(|| name.clone()),
            base: *base,
        },
        Term::Const(c) => Term::Const(*c),
        Term::Add(a, b) => Term::Add(Box::new(rename_term(a, scope)), Box::new(rename_term(b, scope))),
        Term::Sub(a, b) => Term::Sub(Box::new(rename_term(a, scope)), Box::new(rename_term(b, scope))),
        Term::Mul(q, a) => Term::Mul(*q, Box::new(rename_term(a, scope))),
        Term::Div(a, q) => Term::Div(Box::new(rename_term(a, scope)), *q),
    }
}

fn rename_ref(r: &OutputRef, scope: &HashMap<String, String>) -> OutputRef {
    OutputRef {
        name: r.name.clone(),
        indices: r.indices.iter().map(|t| rename_term(t, scope)).collect(),
    }
}

fn rename_bound(f: &Formula, scope: &mut HashMap<String, String>, counter: &mut usize) -> Formula {
    let bx = |g: &Formula, scope: &mut HashMap<String, String>, counter: &mut usize| {
        Box::new(rename_bound(g, scope, counter))
    };
    match f {
        Formula::True => Formula::True,
        Formula::False => Formula::False,
        Formula::Compare { op, lhs, rhs, base } => Formula::Compare {
            op: *op,
            lhs: rename_term(lhs, scope),
            rhs: rename_term(rhs, scope),
            base: *base,
        },
        Formula::Call { name, args } => Formula::Call {
            name: name.clone(),
            args: args.iter().map(|t| rename_term(t, scope)).collect(),
        },
        Formula::Output { op, lhs, rhs } => Formula::Output {
            op: *op,
            lhs: rename_ref(lhs, scope),
            rhs: match rhs {
                OutputOperand::Value(v) => OutputOperand::Value(*v),
                OutputOperand::Ref(r) => OutputOperand::Ref(rename_ref(r, scope)),
            },
        },
        Formula::Not(g) => Formula::Not(bx(g, scope, counter)),
        Formula::And(a, b) => Formula::And(bx(a, scope, counter), bx(b, scope, counter)),
        Formula::Or(a, b) => Formula::Or(bx(a, scope, counter), bx(b, scope, counter)),
        Formula::Implies(a, b) => Formula::Implies(bx(a, scope, counter), bx(b, scope, counter)),
        Formula::Iff(a, b) => Formula::Iff(bx(a, scope, counter), bx(b, scope, counter)),
        Formula::Exists(vs, g) | Formula::Forall(vs, g) => {
            let saved: Vec<(String, Option<String>)> =
                vs.iter().map(|v| (v.clone(), scope.get(v).cloned())).collect();
            let mut new_vs = Vec::new();
            for v in vs {
                *counter += 1;
                let nv = format!("{v}{SEP}{counter}");
                scope.insert(v.clone(), nv.clone());
                new_vs.push(nv);
            }
            let body = bx(g, scope, counter);
            for (v, old) in saved {
                match old {
                    Some(o) => scope.insert(v, o),
                    None => scope.remove(&v),
                };
            }
            if matches!(f, Formula::Exists(..)) {
                Formula::Exists(new_vs, body)
            } else {
                Formula::Forall(new_vs, body)
            }
        }
    }
}

/// User-facing name of a (possibly renamed) variable.
fn display_name(v: &str) -> &str {
    v.split(SEP).next().unwrap_or(v)
}

#[derive(Default)]
struct BaseSolver {
    index: HashMap<String, usize>,
    names: Vec<String>,
    parent: Vec<usize>,
    fixed: Vec<Option<u8>>,
    weak: Vec<Option<u8>>,
}

impl BaseSolver {
    fn id(&mut self, v: &str) -> usize {
        if let Some(&i) = self.index.get(v) {
            return i;
        }
        let i = self.parent.len();
        self.index.insert(v.to_string(), i);
        self.names.push(v.to_string());
        self.parent.push(i);
        self.fixed.push(None);
        self.weak.push(None);
        i
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: &str, b: &str) -> Result<()> {
        let (ia, ib) = (self.id(a), self.id(b));
        let (ra, rb) = (self.find(ia), self.find(ib));
        if ra == rb {
            return Ok(());
        }
        match (self.fixed[ra], self.fixed[rb]) {
            (Some(x), Some(y)) if x != y => {
                return Err(Error::BaseMismatch {
                    name: format!("{} and {}", display_name(a), display_name(b)),
                    first: x,
                    second: y,
                })
            }
            _ => {}
        }
        self.parent[rb] = ra;
        self.fixed[ra] = self.fixed[ra].or(self.fixed[rb]);
        self.weak[ra] = self.weak[ra].or(self.weak[rb]);
        Ok(())
    }

    fn fix(&mut self, v: &str, base: u8) -> Result<()> {
        let i = self.id(v);
        let r = self.find(i);
        match self.fixed[r] {
            Some(b) if b != base => Err(Error::BaseMismatch {
                name: display_name(v).to_string(),
                first: b,
                second: base,
            }),
            _ => {
                self.fixed[r] = Some(base);
                Ok(())
            }
        }
    }

    fn suggest(&mut self, v: &str, base: u8) {
        let i = self.id(v);
        let r = self.find(i);
        self.weak[r] = self.weak[r].or(Some(base));
    }

    fn term(&mut self, t: &Term, fixed: Option<u8>, weak: Option<u8>) -> Result<()> {
        let mut vs = Vec::new();
        t.vars(&mut vs);
        annotations(t, &mut |name, b| self.suggest(name, b));
        for v in &vs {
            self.id(v);
            if let Some(b) = fixed {
                self.fix(v, b)?;
            }
            if let Some(b) = weak {
                self.suggest(v, b);
            }
        }
        for w in vs.windows(2) {
            self.union(&w[0], &w[1])?;
        }
        Ok(())
    }

    fn output_ref(&mut self, r: &OutputRef, env: &Env) -> Result<()> {
        let o = env.output(&r.name)?;
        let tracks = o.signature().tracks();
        if tracks.len() != r.indices.len() {
            return Err(Error::Arity {
                name: r.name.clone(),
                expected: tracks.len(),
                found: r.indices.len(),
            });
        }
        for (t, tr) in r.indices.iter().zip(tracks) {
            self.term(t, Some(tr.base), None)?;
        }
        Ok(())
    }

    fn walk(&mut self, f: &Formula, env: &Env) -> Result<()> {
        match f {
            Formula::True | Formula::False => Ok(()),
            Formula::Compare { lhs, rhs, base, .. } => {
                let mut vs = Vec::new();
                lhs.vars(&mut vs);
                rhs.vars(&mut vs);
                let joined = Term::Add(Box::new(lhs.clone()), Box::new(rhs.clone()));
                self.term(&joined, None, *base)
            }
            Formula::Call { name, args } => {
                let a = env.acceptor(name)?;
                let tracks = a.signature().tracks();
                if tracks.len() != args.len() {
                    return Err(Error::Arity {
                        name: name.clone(),
                        expected: tracks.len(),
                        found: args.len(),
                    });
                }
                for (t, tr) in args.iter().zip(tracks) {
                    self.term(t, Some(tr.base), None)?;
                }
                Ok(())
            }
            Formula::Output { lhs, rhs, .. } => {
                self.output_ref(lhs, env)?;
                if let OutputOperand::Ref(r) = rhs {
                    self.output_ref(r, env)?;
                }
                Ok(())
            }
            Formula::Not(g) => self.walk(g, env),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                self.walk(a, env)?;
                self.walk(b, env)
            }
            Formula::Exists(vs, g) | Formula::Forall(vs, g) => {
                for v in vs {
                    self.id(v);
                }
                self.walk(g, env)
            }
        }
    }
}

fn annotations(t: &Term, f: &mut impl FnMut(&str, u8)) {
    match t {
        Term::Var {
            name,
            base: Some(b),
        } => f(name, *b),
        Term::Var { .. } | Term::Const(_) => {}
        Term::Add(a, b) | Term::Sub(a, b) => {
            annotations(a, f);
            annotations(b, f);
        }
        Term::Mul(_, a) | Term::Div(a, _) => annotations(a, f),
    }
}

fn infer_bases(f: &Formula, env: &Env, default_base: u8) -> Result<HashMap<String, u8>> {
    let mut s = BaseSolver::default();
    s.walk(f, env)?;
    let mut out = HashMap::new();
    for i in 0..s.names.len() {
        let r = s.find(i);
        let b = s.fixed[r].or(s.weak[r]).unwrap_or(default_base);
        out.insert(s.names[i].clone(), b);
    }
    Ok(out)
}

fn has_sub(t: &Term) -> bool {
    match t {
        Term::Sub(..) => true,
        Term::Var { .. } | Term::Const(_) => false,
        Term::Add(a, b) => has_sub(a) || has_sub(b),
        Term::Mul(_, a) | Term::Div(a, _) => has_sub(a),
    }
}

fn negate(op: CmpOp) -> CmpOp {
    match op {
        CmpOp::Lt => CmpOp::Ge,
        CmpOp::Le => CmpOp::Gt,
        CmpOp::Eq => CmpOp::Ne,
        CmpOp::Ge => CmpOp::Lt,
        CmpOp::Gt => CmpOp::Le,
        CmpOp::Ne => CmpOp::Eq,
    }
}

/// A conjunct, possibly negated.
type Literal<'f> = (&'f Formula, bool);

fn conjuncts<'f>(f: &'f Formula, out: &mut Vec<Literal<'f>>) {
    match f {
        Formula::And(a, b) => {
            conjuncts(a, out);
            conjuncts(b, out);
        }
        Formula::Not(g) => negated_conjuncts(g, out),
        _ => out.push((f, false)),
    }
}

/// Conjuncts of `~f`.
fn negated_conjuncts<'f>(f: &'f Formula, out: &mut Vec<Literal<'f>>) {
    match f {
        Formula::Implies(a, b) => {
            conjuncts(a, out);
            negated_conjuncts(b, out);
        }
        Formula::Or(a, b) => {
            negated_conjuncts(a, out);
            negated_conjuncts(b, out);
        }
        Formula::Not(g) => conjuncts(g, out),
        _ => out.push((f, true)),
    }
}

struct Compiler<'e> {
    env: &'e Env,
    bases: HashMap<String, u8>,
    fresh: usize,
}

/// Constraint automata produced while flattening the terms of one atom.
#[derive(Default)]
struct Flat {
    parts: Vec<Automaton>,
    aux: Vec<String>,
}

impl Compiler<'_> {
    fn base(&self, v: &str) -> u8 {
        self.bases.get(v).copied().unwrap_or(2)
    }

    fn fresh(&mut self, flat: &mut Flat) -> String {
        self.fresh += 1;
        let v = format!("_{}", self.fresh);
        flat.aux.push(v.clone());
        v
    }

    fn add(&mut self, flat: &mut Flat, x: &str, y: &str, z: &str, base: u8) -> Result<()> {
        flat.parts.push(build_add(base)?.rename(&[x, y, z])?);
        Ok(())
    }

    fn constant(&mut self, flat: &mut Flat, c: u64, base: u8) -> Result<String> {
        let z = self.fresh(flat);
        flat.parts.push(build_constant(c, base)?.rename(&[&z])?);
        Ok(z)
    }

    /// `q * x` by balanced doubling.
    fn multiple(&mut self, flat: &mut Flat, q: u64, x: &str, base: u8) -> Result<String> {
        match q {
            0 => self.constant(flat, 0, base),
            1 => Ok(x.to_string()),
            _ if q.is_multiple_of(2) => {
                let h = self.multiple(flat, q / 2, x, base)?;
                let r = self.fresh(flat);
                self.add(flat, &h, &h, &r, base)?;
                Ok(r)
            }
            _ => {
                let h = self.multiple(flat, q - 1, x, base)?;
                let r = self.fresh(flat);
                self.add(flat, &h, x, &r, base)?;
                Ok(r)
            }
        }
    }

    /// Variable standing for the value of `t`.
    fn term_var(&mut self, t: &Term, base: u8, flat: &mut Flat) -> Result<String> {
        match t {
            Term::Var { name, .. } => {
                let b = self.base(name);
                if b != base {
                    return Err(Error::BaseMismatch {
                        name: display_name(name).to_string(),
                        first: b,
                        second: base,
                    });
                }
                Ok(name.clone())
            }
            Term::Const(c) => self.constant(flat, *c, base),
            Term::Add(a, b) => {
                let x = self.term_var(a, base, flat)?;
                let y = self.term_var(b, base, flat)?;
                let r = self.fresh(flat);
                self.add(flat, &x, &y, &r, base)?;
                Ok(r)
            }
            Term::Sub(a, b) => {
                let x = self.term_var(a, base, flat)?;
                let y = self.term_var(b, base, flat)?;
                let r = self.fresh(flat);
                self.add(flat, &r, &y, &x, base)?;
                Ok(r)
            }
            Term::Mul(q, a) => {
                let x = self.term_var(a, base, flat)?;
                self.multiple(flat, *q, &x, base)
            }
            Term::Div(a, q) => {
                // r = a / q  iff  q*r + d = a with d < q
                let x = self.term_var(a, base, flat)?;
                let r = self.fresh(flat);
                let s = self.multiple(flat, *q, &r, base)?;
                let d = self.fresh(flat);
                self.add(flat, &s, &d, &x, base)?;
                let e = self.constant(flat, *q, base)?;
                flat.parts.push(build_compare(CmpOp::Lt, base)?.rename(&[&d, &e])?);
                Ok(r)
            }
        }
    }

    /// Conjoins the atom with its constraints, projecting each auxiliary
    /// variable once nothing later mentions it.
    fn close(&self, atom: Automaton, flat: Flat) -> Result<Automaton> {
        let Flat { mut parts, aux } = flat;
        parts.push(atom);
        let mut acc: Option<Automaton> = None;
        for k in 0..parts.len() {
            let next = match acc {
                None => parts[k].clone(),
                Some(a) => a.and(&parts[k])?,
            };
            let done: Vec<&str> = aux
                .iter()
                .map(|s| s.as_str())
                .filter(|v| next.signature().position(v).is_some())
                .filter(|v| parts[k + 1..].iter().all(|p| p.signature().position(v).is_none()))
                .collect();
            acc = Some(next.project_all(&done)?);
        }
        Ok(acc.expect("at least the atom"))
    }

    fn atom_base(&self, lhs: &Term, rhs: &Term, annotated: Option<u8>) -> u8 {
        let mut vs = Vec::new();
        lhs.vars(&mut vs);
        rhs.vars(&mut vs);
        vs.first()
            .map(|v| self.base(v))
            .or(annotated)
            .unwrap_or(2)
    }

    fn compare(&mut self, op: CmpOp, lhs: &Term, rhs: &Term, base: u8) -> Result<Automaton> {
        if let (Term::Const(a), Term::Const(b)) = (lhs, rhs) {
            return Ok(truth(op.eval(a, b)));
        }
        let mut flat = Flat::default();
        let x = self.term_var(lhs, base, &mut flat)?;
        let y = self.term_var(rhs, base, &mut flat)?;
        let atom = build_compare(op, base)?.rename(&[&x, &y])?;
        self.close(atom, flat)
    }

    fn index_vars(&mut self, r: &OutputRef, flat: &mut Flat) -> Result<(OutputAutomaton, Vec<String>)> {
        let o = self.env.output(&r.name)?.clone();
        let bases: Vec<u8> = o.signature().tracks().iter().map(|t| t.base).collect();
        if bases.len() != r.indices.len() {
            return Err(Error::Arity {
                name: r.name.clone(),
                expected: bases.len(),
                found: r.indices.len(),
            });
        }
        let mut vars = Vec::new();
        for (t, b) in r.indices.iter().zip(bases) {
            vars.push(self.term_var(t, b, flat)?);
        }
        Ok((o, vars))
    }

    fn output_atom(&mut self, op: CmpOp, lhs: &OutputRef, rhs: &OutputOperand) -> Result<Automaton> {
        let mut flat = Flat::default();
        let (lo, lvars) = self.index_vars(lhs, &mut flat)?;
        let lnames: Vec<&str> = lvars.iter().map(|s| s.as_str()).collect();
        let atom = match rhs {
            OutputOperand::Value(v) => {
                let v = *v;
                let sel = lo.dfa().map_outputs(|o| u8::from(op.eval(o, v)));
                Automaton::from_dfa(&sel.rename(&lnames)?)
            }
            OutputOperand::Ref(r) => {
                let (ro, rvars) = self.index_vars(r, &mut flat)?;
                let rnames: Vec<&str> = rvars.iter().map(|s| s.as_str()).collect();
                let l = lo.rename(&lnames)?;
                let r = ro.rename(&rnames)?;
                l.compare(&r, |a, b| op.eval(a, b))?
            }
        };
        self.close(atom, flat)
    }

    fn call(&mut self, name: &str, args: &[Term]) -> Result<Automaton> {
        let a = self.env.acceptor(name)?.clone();
        let bases: Vec<u8> = a.signature().tracks().iter().map(|t| t.base).collect();
        if bases.len() != args.len() {
            return Err(Error::Arity {
                name: name.to_string(),
                expected: bases.len(),
                found: args.len(),
            });
        }
        let mut flat = Flat::default();
        let mut vars = Vec::new();
        for (t, b) in args.iter().zip(bases) {
            vars.push(self.term_var(t, b, &mut flat)?);
        }
        let names: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
        let atom = a.rename(&names)?;
        self.close(atom, flat)
    }

    fn comp(&mut self, f: &Formula) -> Result<Automaton> {
        match f {
            Formula::True => Ok(truth(true)),
            Formula::False => Ok(truth(false)),
            Formula::Compare { op, lhs, rhs, base } => {
                let b = self.atom_base(lhs, rhs, *base);
                self.compare(*op, lhs, rhs, b)
            }
            Formula::Call { name, args } => self.call(name, args),
            Formula::Output { op, lhs, rhs } => self.output_atom(*op, lhs, rhs),
            Formula::Not(g) => self.comp_neg(g),
            Formula::And(..) => {
                let mut lits = Vec::new();
                conjuncts(f, &mut lits);
                self.exists_conj(&[], &lits)
            }
            Formula::Or(a, b) => self.comp(a)?.or(&self.comp(b)?),
            Formula::Implies(..) => Ok(self.comp_neg(f)?.not()),
            Formula::Iff(a, b) => {
                let (x, y) = (self.comp(a)?, self.comp(b)?);
                x.combine(crate::automata::BooleanOp::Iff, Some(&y))
            }
            Formula::Exists(vs, g) => {
                let mut lits = Vec::new();
                conjuncts(g, &mut lits);
                self.exists_conj(vs, &lits)
            }
            Formula::Forall(..) => Ok(self.comp_neg(f)?.not()),
        }
    }

    /// Automaton of `~f`, pushing the negation inward where that is exact.
    fn comp_neg(&mut self, f: &Formula) -> Result<Automaton> {
        match f {
            Formula::True => Ok(truth(false)),
            Formula::False => Ok(truth(true)),
            Formula::Compare { op, lhs, rhs, base } if !has_sub(lhs) && !has_sub(rhs) => {
                let b = self.atom_base(lhs, rhs, *base);
                self.compare(negate(*op), lhs, rhs, b)
            }
            Formula::Output { op, lhs, rhs }
                if !lhs.indices.iter().any(has_sub)
                    && !matches!(rhs, OutputOperand::Ref(r) if r.indices.iter().any(has_sub)) =>
            {
                self.output_atom(negate(*op), lhs, rhs)
            }
            Formula::Not(g) => self.comp(g),
            Formula::Or(..) | Formula::Implies(..) => {
                let mut lits = Vec::new();
                negated_conjuncts(f, &mut lits);
                self.exists_conj(&[], &lits)
            }
            Formula::Forall(vs, g) => {
                let mut lits = Vec::new();
                negated_conjuncts(g, &mut lits);
                self.exists_conj(vs, &lits)
            }
            _ => Ok(self.comp(f)?.not()),
        }
    }

    fn literal(&mut self, (f, neg): Literal<'_>) -> Result<Automaton> {
        if neg {
            self.comp_neg(f)
        } else {
            self.comp(f)
        }
    }

    /// `E vs (l1 & l2 & ...)`, conjoining left to right and projecting each
    /// quantified variable as soon as the remaining literals do not use it.
    fn exists_conj(&mut self, vs: &[String], lits: &[Literal<'_>]) -> Result<Automaton> {
        let free: Vec<Vec<String>> = lits.iter().map(|(f, _)| f.free_vars()).collect();
        let mut acc: Option<Automaton> = None;
        let mut pending: Vec<&str> = vs.iter().map(|s| s.as_str()).collect();
        for (k, lit) in lits.iter().enumerate() {
            let a = self.literal(*lit)?;
            let next = match acc {
                None => a,
                Some(prev) => {
                    if prev.is_empty() {
                        // the conjunction is already false
                        return prev.project_all(&present(&prev, &pending));
                    }
                    prev.and(&a)?
                }
            };
            let done: Vec<&str> = pending
                .iter()
                .copied()
                .filter(|v| free[k + 1..].iter().all(|fv| !fv.iter().any(|x| x == v)))
                .collect();
            pending.retain(|v| !done.contains(v));
            acc = Some(next.project_all(&present(&next, &done))?);
        }
        let a = acc.unwrap_or_else(|| truth(true));
        a.project_all(&present(&a, &pending))
    }
}

fn present<'a>(a: &Automaton, vs: &[&'a str]) -> Vec<&'a str> {
    vs.iter()
        .copied()
        .filter(|v| a.signature().position(v).is_some())
        .collect()
}

fn truth(b: bool) -> Automaton {
    if b {
        Automaton::universal(Signature::empty())
    } else {
        Automaton::empty(Signature::empty())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;
    use crate::numeration::{build_adjacent, build_power2};

    fn env() -> Env {
        let mut e = Env::new();
        e.insert_acceptor("power2", build_power2());
        e
    }

    fn compile_str(s: &str, env: &Env) -> Result<Automaton> {
        let (f, b) = parse_formula(s)?;
        compile(&f, env, b)
    }

    fn check2(s: &str, want: impl Fn(u64, u64) -> bool) {
        let a = compile_str(s, &env()).unwrap();
        assert_eq!(a.signature().len(), 2, "{s}");
        for x in 0..48 {
            for y in 0..48 {
                assert_eq!(a.accepts_values(&[x, y]).unwrap(), want(x, y), "{s} at {x},{y}");
            }
        }
    }

    #[test]
    fn tautology_keeps_its_track() {
        let a = compile_str("x=x", &env()).unwrap();
        assert_eq!(a.signature().names().collect::<Vec<_>>(), vec!["x"]);
        assert!(a.equivalent(&Automaton::universal(a.signature().clone())));
    }

    #[test]
    fn arithmetic_terms() {
        check2("x+3=y", |x, y| x + 3 == y);
        check2("x-y=2", |x, y| x >= y && x - y == 2);
        check2("x<3*y/2-1", |x, y| (3 * y / 2).checked_sub(1).is_some_and(|r| x < r));
        check2("x/3=y", |x, y| x / 3 == y);
        check2("7*x<=y+2", |x, y| 7 * x <= y + 2);
        check2("~(x-1<y)", |x, y| !(x >= 1 && x - 1 < y));
        check2("x+y=x", |_, y| y == 0);
        check2("(x<y) <=> (y<5)", |x, y| (x < y) == (y < 5));
        check2("x>=y => Ez z+y=x & z<2", |x, y| x < y || x - y < 2);
    }

    #[test]
    fn base_six_compare() {
        let a = compile_str("?lsd_6 x<=y", &env()).unwrap();
        assert_eq!(a.signature().base_of("x"), Some(6));
        for x in 0..50 {
            for y in 0..50 {
                assert_eq!(a.accepts_values(&[x, y]).unwrap(), x <= y);
            }
        }
    }

    #[test]
    fn quantifiers() {
        let e = env();
        let (f, b) = parse_formula("Ex $power2(x)").unwrap();
        assert!(eval_sentence(&f, &e, b).unwrap());
        let (f, _) = parse_formula("Ax $power2(x)").unwrap();
        assert!(!eval_sentence(&f, &e, 2).unwrap());
        let (f, _) = parse_formula("Ax Ey y=x+1").unwrap();
        assert!(eval_sentence(&f, &e, 2).unwrap());
        let (f, _) = parse_formula("x<y").unwrap();
        assert!(matches!(eval_sentence(&f, &e, 2), Err(Error::FreeVariables(_))));
        // shadowing
        check2("x<y & Ex x=2*y", |x, y| x < y);
    }

    #[test]
    fn adjacent_matches_definition() {
        let adj = build_adjacent();
        assert_eq!(adj.signature().names().collect::<Vec<_>>(), vec!["m", "n"]);
        let proj = adj.project("n").unwrap();
        let p = build_power2();
        for m in 0..256u64 {
            assert_eq!(proj.accepts_values(&[m]).unwrap(), p.accepts_values(&[m]).unwrap());
        }
    }

    #[test]
    fn errors() {
        let e = env();
        assert!(matches!(compile_str("$nope(x)", &e), Err(Error::Unbound(_))));
        assert!(matches!(compile_str("$power2(x,y)", &e), Err(Error::Arity { .. })));
        let mut e2 = env();
        e2.insert_acceptor(
            "six",
            Automaton::universal(Signature::from_pairs(&[("c", 6)]).unwrap()),
        );
        assert!(matches!(
            compile_str("$six(x) & $power2(x)", &e2),
            Err(Error::BaseMismatch { .. })
        ));
    }
}
