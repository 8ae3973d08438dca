//! Running scripts statement by statement against an environment.

use std::time::{Duration, Instant};

use super::compile::{compile, Entry, Env};
use super::parser::{Script, Statement, StatementKind};
use crate::automata::{compile_regex_str, Automaton, OutputAutomaton, Signature, Track};
use crate::error::{Error, Result};

/// What one statement produced.
#[derive(Clone, Debug, PartialEq)]
pub struct StatementReport {
    pub name: String,
    pub line: usize,
    pub kind: &'static str,
    pub tracks: String,
    pub states: usize,
    /// Truth value of an `eval`.
    pub value: Option<bool>,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct ScriptOutcome {
    pub reports: Vec<StatementReport>,
}

impl ScriptOutcome {
    pub fn report(&self, name: &str) -> Option<&StatementReport> {
        self.reports.iter().rev().find(|r| r.name == name)
    }
}

/// Track names given to the tracks of a `reg` automaton.
pub fn reg_track_names(count: usize) -> Vec<String> {
    (0..count).map(|i| format!("r{i}")).collect()
}

/// Runs every statement in order. Definitions are added to `env`, replacing
/// earlier ones of the same name.
pub fn run_script(script: &Script, env: &mut Env) -> Result<ScriptOutcome> {
    run_script_with(script, env, |_| {})
}

/// As [`run_script`], calling `progress` after each statement.
pub fn run_script_with(
    script: &Script,
    env: &mut Env,
    mut progress: impl FnMut(&StatementReport),
) -> Result<ScriptOutcome> {
    let mut out = ScriptOutcome::default();
    for st in &script.statements {
        let report = run_statement(st, env).map_err(|e| Error::Statement {
            name: st.name().to_string(),
            line: st.line,
            source: Box::new(e),
        })?;
        progress(&report);
        out.reports.push(report);
    }
    Ok(out)
}

fn run_statement(st: &Statement, env: &mut Env) -> Result<StatementReport> {
    let start = Instant::now();
    let (kind, entry, value) = match &st.kind {
        StatementKind::Reg { bases, pattern, .. } => {
            let names = reg_track_names(bases.len());
            let tracks = names
                .iter()
                .zip(bases)
                .map(|(n, &b)| Track::new(n.clone(), b))
                .collect();
            let a = compile_regex_str(pattern, &Signature::new(tracks)?)?;
            ("reg", Some(Entry::Acceptor(a)), None)
        }
        StatementKind::Def { formula, base, .. } => {
            ("def", Some(Entry::Acceptor(compile(formula, env, *base)?)), None)
        }
        StatementKind::Eval { formula, base, .. } => {
            let free = formula.free_vars();
            if !free.is_empty() {
                return Err(Error::FreeVariables(free));
            }
            let a = compile(formula, env, *base)?;
            ("eval", None, Some(a.accepts_empty()))
        }
        StatementKind::Combine { parts, .. } => {
            let mut acceptors: Vec<(Automaton, u8)> = Vec::new();
            for (name, v) in parts {
                acceptors.push((env.acceptor(name)?.clone(), *v));
            }
            let o = OutputAutomaton::combine_outputs(&acceptors, 0)?;
            let o = OutputAutomaton::from_dfa(&o.dfa().sorted_tracks());
            ("combine", Some(Entry::Output(o)), None)
        }
    };
    let (tracks, states) = match &entry {
        Some(Entry::Acceptor(a)) => (a.signature().to_string(), a.state_count()),
        Some(Entry::Output(o)) => (o.signature().to_string(), o.state_count()),
        None => (String::new(), 0),
    };
    if let Some(e) = entry {
        env.insert(st.name(), e);
    }
    Ok(StatementReport {
        name: st.name().to_string(),
        line: st.line,
        kind,
        tracks,
        states,
        value,
        elapsed: start.elapsed(),
    })
}

/// Statements from several scripts, built on demand together with whatever
/// they depend on. The first statement defining a name wins.
#[derive(Clone, Debug)]
pub struct Library {
    statements: Vec<Statement>,
    env: Env,
    values: std::collections::HashMap<String, bool>,
    built: std::collections::HashSet<String>,
    reports: Vec<StatementReport>,
}

impl Library {
    /// `env` holds the builtin automata.
    pub fn new(env: Env) -> Self {
        Library {
            statements: Vec::new(),
            env,
            values: Default::default(),
            built: Default::default(),
            reports: Vec::new(),
        }
    }

    pub fn add_script(&mut self, script: &Script) {
        for st in &script.statements {
            if self.statement(st.name()).is_none() {
                self.statements.push(st.clone());
            }
        }
    }

    pub fn statement(&self, name: &str) -> Option<&Statement> {
        self.statements.iter().find(|s| s.name() == name)
    }

    pub fn statements(&self) -> &[Statement] {
        &self.statements
    }

    pub fn env(&self) -> &Env {
        &self.env
    }

    /// Reports of the statements run so far, in order.
    pub fn reports(&self) -> &[StatementReport] {
        &self.reports
    }

    /// Builds `name` and its dependencies.
    pub fn build(&mut self, name: &str) -> Result<&Entry> {
        self.ensure(name, &mut |_| {})?;
        self.env.get(name).ok_or_else(|| Error::Invalid(format!("`{name}` is an eval")))
    }

    /// As [`Library::build`], calling `progress` after each statement run.
    pub fn build_with(&mut self, name: &str, progress: &mut dyn FnMut(&StatementReport)) -> Result<()> {
        self.ensure(name, progress)
    }

    /// Truth value of an `eval` statement.
    pub fn eval(&mut self, name: &str) -> Result<bool> {
        self.ensure(name, &mut |_| {})?;
        self.values
            .get(name)
            .copied()
            .ok_or_else(|| Error::Invalid(format!("`{name}` is not an eval")))
    }

    /// Names `name` depends on, transitively, in build order (ending with `name`).
    pub fn closure(&self, name: &str) -> Result<Vec<String>> {
        let mut order = Vec::new();
        self.visit(name, &mut Vec::new(), &mut order)?;
        Ok(order)
    }

    fn visit(&self, name: &str, stack: &mut Vec<String>, order: &mut Vec<String>) -> Result<()> {
        if order.iter().any(|n| n == name) {
            return Ok(());
        }
        let Some(st) = self.statement(name) else {
            if self.env.contains(name) {
                return Ok(());
            }
            return Err(Error::Unbound(name.to_string()));
        };
        if stack.iter().any(|n| n == name) {
            return Err(Error::Invalid(format!("`{name}` depends on itself")));
        }
        stack.push(name.to_string());
        for dep in st.dependencies() {
            self.visit(&dep, stack, order).map_err(|e| Error::Statement {
                name: name.to_string(),
                line: st.line,
                source: Box::new(e),
            })?;
        }
        stack.pop();
        order.push(name.to_string());
        Ok(())
    }

    fn ensure(&mut self, name: &str, progress: &mut dyn FnMut(&StatementReport)) -> Result<()> {
        for n in self.closure(name)? {
            if self.built.contains(&n) || (self.statement(&n).is_none() && self.env.contains(&n)) {
                continue;
            }
            let st = self.statement(&n).expect("closure only lists known names").clone();
            let report = run_statement(&st, &mut self.env).map_err(|e| Error::Statement {
                name: n.clone(),
                line: st.line,
                source: Box::new(e),
            })?;
            if let Some(v) = report.value {
                self.values.insert(n.clone(), v);
            }
            progress(&report);
            self.reports.push(report);
            self.built.insert(n);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_script;

    #[test]
    fn small_script() {
        let text = "reg power2 lsd_2 \"0*10*\":
def adjacent \"?lsd_2 ($power2(m) & $power2(n) & m=2*n) | (m=1 & n=0)\":
eval some \"Ex $power2(x)\":
eval none \"Ax $power2(x)\":
combine P power2=1:";
        let mut env = Env::new();
        let out = run_script(&parse_script(text).unwrap(), &mut env).unwrap();
        assert_eq!(out.report("some").unwrap().value, Some(true));
        assert_eq!(out.report("none").unwrap().value, Some(false));
        assert!(env.acceptor("adjacent").unwrap().accepts_values(&[4, 2]).unwrap());
        assert_eq!(env.output("P").unwrap().output_values(&[8]).unwrap(), 1);
    }

    #[test]
    fn use_before_definition_reports_the_line() {
        let text = "def a \"$b(x)\":\nreg b lsd_2 \"1*\":";
        let err = run_script(&parse_script(text).unwrap(), &mut Env::new()).unwrap_err();
        match err {
            Error::Statement { line, source, .. } => {
                assert_eq!(line, 1);
                assert!(matches!(*source, Error::Unbound(_)));
            }
            other => panic!("{other:?}"),
        }
    }
}

#[cfg(test)]
mod library_tests {
    use super::*;
    use crate::logic::parse_script;

    #[test]
    fn builds_dependencies_on_demand() {
        let text = "reg power2 lsd_2 \"0*10*\":
def two \"$power2(x) & x<3\":
eval t \"Ex $two(x)\":
reg unused lsd_2 \"(((\":";
        let mut lib = Library::new(Env::new());
        lib.add_script(&parse_script(text).unwrap());
        assert_eq!(lib.closure("t").unwrap(), vec!["power2", "two", "t"]);
        assert!(lib.eval("t").unwrap());
        assert_eq!(lib.reports().len(), 3);
        assert!(lib.build("unused").is_err());
        assert!(matches!(lib.build("missing"), Err(Error::Unbound(_))));
    }
}
