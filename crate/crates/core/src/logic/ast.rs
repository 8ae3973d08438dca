use std::fmt;

/// Arithmetic term over natural numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    /// A variable; `base` is an explicit `?lsd_k` annotation, if any.
    Var { name: String, base: Option<u8> },
    Const(u64),
    Add(Box<Term>, Box<Term>),
    /// Natural subtraction: defined only when the left side is not smaller.
    Sub(Box<Term>, Box<Term>),
    /// `q * t` for a constant `q`.
    Mul(u64, Box<Term>),
    /// `t / q` rounded down, for a constant `q >= 1`.
    Div(Box<Term>, u64),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var {
            name: name.to_string(),
            base: None,
        }
    }

    pub(crate) fn vars(&self, out: &mut Vec<String>) {
        match self {
            Term::Var { name, .. } => {
                if !out.contains(name) {
                    out.push(name.clone())
                }
            }
            Term::Const(_) => {}
            Term::Add(a, b) | Term::Sub(a, b) => {
                a.vars(out);
                b.vars(out);
            }
            Term::Mul(_, t) | Term::Div(t, _) => t.vars(out),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CmpOp {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
    Ne,
}

impl CmpOp {
    pub fn eval<T: Ord>(self, a: T, b: T) -> bool {
        match self {
            CmpOp::Lt => a < b,
            CmpOp::Le => a <= b,
            CmpOp::Eq => a == b,
            CmpOp::Ge => a >= b,
            CmpOp::Gt => a > b,
            CmpOp::Ne => a != b,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Eq => "=",
            CmpOp::Ge => ">=",
            CmpOp::Gt => ">",
            CmpOp::Ne => "!=",
        }
    }
}

/// `NAME[t1][t2]...`: the output of a named automaton with output.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutputRef {
    pub name: String,
    pub indices: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OutputOperand {
    Value(u8),
    Ref(OutputRef),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    /// Comparison of two terms; `base` is an explicit annotation on the atom.
    Compare {
        op: CmpOp,
        lhs: Term,
        rhs: Term,
        base: Option<u8>,
    },
    /// `$name(args)`: a named acceptor applied positionally.
    Call { name: String, args: Vec<Term> },
    Output {
        op: CmpOp,
        lhs: OutputRef,
        rhs: OutputOperand,
    },
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Exists(Vec<String>, Box<Formula>),
    Forall(Vec<String>, Box<Formula>),
}

impl Formula {
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn exists(vars: &[&str], f: Formula) -> Formula {
        Formula::Exists(vars.iter().map(|v| v.to_string()).collect(), Box::new(f))
    }

    pub fn forall(vars: &[&str], f: Formula) -> Formula {
        Formula::Forall(vars.iter().map(|v| v.to_string()).collect(), Box::new(f))
    }

    pub fn call(name: &str, args: &[&str]) -> Formula {
        Formula::Call {
            name: name.to_string(),
            args: args.iter().map(|a| Term::var(a)).collect(),
        }
    }

    pub fn compare(op: CmpOp, lhs: Term, rhs: Term) -> Formula {
        Formula::Compare {
            op,
            lhs,
            rhs,
            base: None,
        }
    }

    /// Names of the automata the formula calls or indexes, in order of
    /// first occurrence.
    pub fn references(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_refs(&mut out);
        out
    }

    fn collect_refs(&self, out: &mut Vec<String>) {
        let mut add = |n: &String| {
            if !out.contains(n) {
                out.push(n.clone())
            }
        };
        match self {
            Formula::True | Formula::False | Formula::Compare { .. } => {}
            Formula::Call { name, .. } => add(name),
            Formula::Output { lhs, rhs, .. } => {
                add(&lhs.name);
                if let OutputOperand::Ref(r) = rhs {
                    add(&r.name);
                }
            }
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => f.collect_refs(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_refs(out);
                b.collect_refs(out);
            }
        }
    }

    /// Free variables in order of first occurrence.
    pub fn free_vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<String>, out: &mut Vec<String>) {
        let add_term = |t: &Term, bound: &Vec<String>, out: &mut Vec<String>| {
            let mut vs = Vec::new();
            t.vars(&mut vs);
            for v in vs {
                if !bound.contains(&v) && !out.contains(&v) {
                    out.push(v);
                }
            }
        };
        match self {
            Formula::True | Formula::False => {}
            Formula::Compare { lhs, rhs, .. } => {
                add_term(lhs, bound, out);
                add_term(rhs, bound, out);
            }
            Formula::Call { args, .. } => {
                for a in args {
                    add_term(a, bound, out);
                }
            }
            Formula::Output { lhs, rhs, .. } => {
                for t in &lhs.indices {
                    add_term(t, bound, out);
                }
                if let OutputOperand::Ref(r) = rhs {
                    for t in &r.indices {
                        add_term(t, bound, out);
                    }
                }
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Exists(vs, f) | Formula::Forall(vs, f) => {
                let before = bound.len();
                bound.extend(vs.iter().cloned());
                f.collect_free(bound, out);
                bound.truncate(before);
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var { name, .. } => write!(f, "{name}"),
            Term::Const(c) => write!(f, "{c}"),
            Term::Add(a, b) => write!(f, "({a}+{b})"),
            Term::Sub(a, b) => write!(f, "({a}-{b})"),
            Term::Mul(q, t) => write!(f, "{q}*{t}"),
            Term::Div(t, q) => write!(f, "({t})/{q}"),
        }
    }
}

impl fmt::Display for OutputRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)?;
        for t in &self.indices {
            write!(f, "[{t}]")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Compare { op, lhs, rhs, .. } => write!(f, "{lhs}{}{rhs}", op.symbol()),
            Formula::Call { name, args } => {
                let a: Vec<String> = args.iter().map(|t| t.to_string()).collect();
                write!(f, "${name}({})", a.join(","))
            }
            Formula::Output { op, lhs, rhs } => match rhs {
                OutputOperand::Value(v) => write!(f, "{lhs}{}@{v}", op.symbol()),
                OutputOperand::Ref(r) => write!(f, "{lhs}{}{r}", op.symbol()),
            },
            Formula::Not(a) => write!(f, "~({a})"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::Implies(a, b) => write!(f, "({a} => {b})"),
            Formula::Iff(a, b) => write!(f, "({a} <=> {b})"),
            Formula::Exists(v, a) => write!(f, "(E{} {a})", v.join(",")),
            Formula::Forall(v, a) => write!(f, "(A{} {a})", v.join(",")),
        }
    }
}
