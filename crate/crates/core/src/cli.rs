//! Command-line jobs. Every job writes its artifacts and a JSON report into
//! the output directory and maps its outcome to an exit status: 0 verified,
//! 1 verification failed, 2 usage or configuration error.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::applications::{
    backtrack_lexleast, has_overlap_axaxa, large_overlap_census, lexleast_reference, naive_word_checks,
    run_theorem, Catalog, TheoremReport, TABLE_ONE, THEOREMS,
};
use crate::automata::{parse_automaton, to_dot, write_automaton, ParsedAutomaton};
use crate::enumeration::{asymptotics, extensible_counts, minmat_representation, table_tsv};
use crate::error::{Error, Result};
use crate::logic::{parse_script, Entry, StatementKind};
use crate::restivo::{codes_up_to, expand_code};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Oracle checks runnable without building any automaton.
pub const ORACLES: &[&str] = &["lexleast", "large-overlaps", "overlap-scans"];

#[derive(Debug, Parser)]
#[command(name = "restivo", version, about = "Decide statements about words coded by Restivo codes")]
pub struct Cli {
    /// Directory for automata, DOT files and reports.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    /// Directory of cached automata (default: OUT/cache).
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Allow constructions known to be expensive.
    #[arg(long, global = true)]
    pub allow_heavy: bool,
    /// Build afresh, and compare against any cached copy.
    #[arg(long, global = true)]
    pub no_cache: bool,
    #[command(subcommand)]
    pub job: Job,
}

#[derive(Debug, Subcommand)]
pub enum Job {
    /// Build a named automaton (or evaluate a named sentence).
    Build { name: String },
    /// Run every statement of a script file.
    Script { file: PathBuf },
    /// Reproduce a theorem; `all` runs every one.
    Theorem { id: String },
    /// Count extensible words E(1..max) and analyze their growth.
    Enumerate {
        #[arg(long, default_value_t = 16)]
        max: u64,
    },
    /// Run a word-level oracle check.
    Oracle {
        check: String,
        /// Size bound: word length for lexleast, i for large-overlaps, code
        /// length for overlap-scans.
        #[arg(long)]
        max: Option<usize>,
    },
    /// Write a named automaton as Graphviz DOT.
    ExportDot { name: String },
}

/// What a job hands back to [`run`].
pub struct Outcome {
    pub verified: bool,
    pub report: Value,
}

struct Context {
    out: PathBuf,
    cache: PathBuf,
    allow_heavy: bool,
    no_cache: bool,
}

/// Parses `args` and runs the job, returning the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    match run(&cli) {
        Ok(o) if o.verified => EXIT_OK,
        Ok(_) => EXIT_FAILED,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    let cx = Context {
        out: cli.out.clone(),
        cache: cli.cache.clone().unwrap_or_else(|| cli.out.join("cache")),
        allow_heavy: cli.allow_heavy,
        no_cache: cli.no_cache,
    };
    fs::create_dir_all(&cx.out)?;
    let start = Instant::now();
    let (name, mut outcome) = match &cli.job {
        Job::Build { name } => (format!("build-{name}"), build(&cx, name)?),
        Job::Script { file } => {
            let stem = file.file_stem().and_then(|s| s.to_str()).unwrap_or("script");
            (format!("script-{stem}"), script(&cx, file)?)
        }
        Job::Theorem { id } => (format!("theorem-{id}"), theorem(&cx, id)?),
        Job::Enumerate { max } => ("enumerate".to_string(), enumerate(&cx, *max)?),
        Job::Oracle { check, max } => (format!("oracle-{check}"), oracle(check, *max)?),
        Job::ExportDot { name } => (format!("dot-{name}"), export_dot(&cx, name)?),
    };
    if let Value::Object(map) = &mut outcome.report {
        map.insert("verified".into(), json!(outcome.verified));
        map.insert("elapsed_ms".into(), json!(start.elapsed().as_millis()));
    }
    let path = cx.out.join(format!("{name}.json"));
    fs::write(&path, serde_json::to_string_pretty(&outcome.report).expect("json") + "\n")?;
    println!(
        "{}: {} ({})",
        name,
        if outcome.verified { "ok" } else { "FAILED" },
        path.display()
    );
    Ok(outcome)
}

fn parsed(entry: &Entry) -> ParsedAutomaton {
    match entry {
        Entry::Acceptor(a) => ParsedAutomaton::Acceptor(a.clone()),
        Entry::Output(o) => ParsedAutomaton::Output(o.clone()),
    }
}

fn states_of(entry: &Entry) -> usize {
    match entry {
        Entry::Acceptor(a) => a.state_count(),
        Entry::Output(o) => o.state_count(),
    }
}

/// Writes `NAME.aut` and `NAME.dot`.
fn write_artifacts(dir: &Path, name: &str, entry: &Entry) -> Result<()> {
    let p = parsed(entry);
    fs::write(dir.join(format!("{name}.aut")), write_automaton(&p))?;
    fs::write(dir.join(format!("{name}.dot")), to_dot(name, &p))?;
    Ok(())
}

/// A catalog entry, through the cache. The second value says what the cache
/// did: `hit`, `stored`, `verified` or `mismatch`.
fn cached_entry(cx: &Context, catalog: &mut Catalog, name: &str) -> Result<(Entry, &'static str)> {
    catalog.gate(name)?;
    let path = cx.cache.join(format!("{name}.aut"));
    let stored = fs::read_to_string(&path).ok();
    if !cx.no_cache {
        if let Some(text) = &stored {
            let entry = match parse_automaton(text)? {
                ParsedAutomaton::Acceptor(a) => Entry::Acceptor(a),
                ParsedAutomaton::Output(o) => Entry::Output(o),
            };
            return Ok((entry, "hit"));
        }
    }
    let entry = catalog.build(name)?.clone();
    let text = write_automaton(&parsed(&entry));
    let status = match (&stored, cx.no_cache) {
        (Some(old), true) if *old == text => "verified",
        (Some(_), true) => "mismatch",
        _ => {
            fs::create_dir_all(&cx.cache)?;
            fs::write(&path, &text)?;
            "stored"
        }
    };
    Ok((entry, status))
}

fn build(cx: &Context, name: &str) -> Result<Outcome> {
    let mut catalog = Catalog::new(cx.allow_heavy);
    if !catalog.contains(name) {
        return Err(Error::UnknownEntry(name.to_string()));
    }
    if catalog.is_eval(name) {
        let value = catalog.eval(name)?;
        return Ok(Outcome {
            verified: true,
            report: json!({ "job": "build", "name": name, "kind": "eval", "value": value }),
        });
    }
    let (entry, cache) = cached_entry(cx, &mut catalog, name)?;
    write_artifacts(&cx.out, name, &entry)?;
    Ok(Outcome {
        verified: cache != "mismatch",
        report: json!({
            "job": "build",
            "name": name,
            "tracks": entry.signature().to_string(),
            "states": states_of(&entry),
            "cache": cache,
        }),
    })
}

fn script(cx: &Context, file: &Path) -> Result<Outcome> {
    let text = fs::read_to_string(file)?;
    let script = parse_script(&text)?;
    let mut catalog = Catalog::with_script(&script, cx.allow_heavy);
    let mut statements = Vec::new();
    for st in &script.statements {
        let name = st.name();
        let t = Instant::now();
        let mut report = json!({ "name": name, "line": st.line });
        if matches!(st.kind, StatementKind::Eval { .. }) {
            let v = catalog.eval(name)?;
            report["value"] = json!(v);
            println!("{name}: {}", if v { "TRUE" } else { "FALSE" });
        } else {
            let entry = catalog.build(name)?.clone();
            write_artifacts(&cx.out, name, &entry)?;
            report["tracks"] = json!(entry.signature().to_string());
            report["states"] = json!(states_of(&entry));
            println!("{name}: {} states over {}", states_of(&entry), entry.signature());
        }
        report["elapsed_ms"] = json!(t.elapsed().as_millis());
        statements.push(report);
    }
    Ok(Outcome {
        verified: true,
        report: json!({ "job": "script", "file": file.display().to_string(), "statements": statements }),
    })
}

fn theorem(cx: &Context, id: &str) -> Result<Outcome> {
    let ids: Vec<&str> = if id == "all" {
        THEOREMS.iter().map(|t| t.0).collect()
    } else if THEOREMS.iter().any(|t| t.0 == id) {
        vec![id]
    } else {
        let known: Vec<&str> = THEOREMS.iter().map(|t| t.0).collect();
        return Err(Error::Invalid(format!(
            "unknown theorem `{id}`; available: all, {}",
            known.join(", ")
        )));
    };
    let mut catalog = Catalog::new(cx.allow_heavy);
    let mut reports: Vec<TheoremReport> = Vec::new();
    for id in ids {
        let r = run_theorem(id, &mut catalog)?;
        for c in &r.checks {
            println!("  [{}] {id}: {}: {}", if c.passed { "pass" } else { "FAIL" }, c.name, c.detail);
        }
        for (name, entry) in &r.automata {
            write_artifacts(&cx.out, name, entry)?;
        }
        reports.push(r);
    }
    let verified = reports.iter().all(|r| r.verified);
    Ok(Outcome {
        verified,
        report: json!({ "job": "theorem", "theorems": reports }),
    })
}

fn enumerate(cx: &Context, max: u64) -> Result<Outcome> {
    if max == 0 {
        return Err(Error::Invalid("--max must be at least 1".into()));
    }
    let mut catalog = Catalog::new(cx.allow_heavy);
    let lr = minmat_representation(&mut catalog)?;
    let rows = extensible_counts(&lr, max)?;
    let tsv = table_tsv(&rows);
    print!("{tsv}");
    fs::write(cx.out.join("table.tsv"), &tsv)?;
    fs::write(cx.out.join("minmat.linrep"), lr.to_text())?;
    let matches_table = rows
        .iter()
        .zip(TABLE_ONE)
        .all(|((_, e), want)| *e == want.into());
    let a = asymptotics(&lr)?;
    let values: Vec<String> = rows.iter().map(|(_, e)| e.to_string()).collect();
    Ok(Outcome {
        verified: matches_table,
        report: json!({
            "job": "enumerate",
            "max": max,
            "values": values,
            "matches_table": matches_table,
            "rank": lr.rank(),
            "minimal_rank": lr.minimal_rank(),
            "characteristic_polynomial": a.characteristic.to_string(),
            "minimal_polynomial": a.minimal.to_string(),
            "zeta": a.root.value(),
            "zeta_bracket": [a.root.lo.to_string(), a.root.hi.to_string()],
            "growth_exponent": a.root.growth_exponent(),
        }),
    })
}

fn oracle(check: &str, max: Option<usize>) -> Result<Outcome> {
    let (verified, detail) = match check {
        "lexleast" => {
            let n = max.unwrap_or(64);
            let w = backtrack_lexleast(n);
            let bits: String = w.iter().map(|b| char::from(b'0' + b)).collect();
            (w == lexleast_reference(n), json!({ "length": n, "word": bits }))
        }
        "large-overlaps" => {
            let top = max.unwrap_or(3);
            let rows: Vec<Value> = (0..=top)
                .map(|i| {
                    let c = large_overlap_census(i);
                    json!({
                        "i": i,
                        "code": c.code.to_string(),
                        "periods": c.periods,
                        "has_73_power": c.has_73_power,
                        "ok": !c.has_73_power && c.periods.len() == i,
                    })
                })
                .collect();
            (rows.iter().all(|r| r["ok"] == json!(true)), json!(rows))
        }
        "overlap-scans" => {
            let len = max.unwrap_or(6);
            let codes = codes_up_to(len);
            let mut disagreements = Vec::new();
            for c in &codes {
                let w = expand_code(c)?;
                if naive_word_checks(&w).has_overlap != has_overlap_axaxa(&w) {
                    disagreements.push(c.to_string());
                }
            }
            (
                disagreements.is_empty(),
                json!({ "codes": codes.len(), "disagreements": disagreements }),
            )
        }
        _ => {
            return Err(Error::Invalid(format!(
                "unknown oracle `{check}`; available: {}",
                ORACLES.join(", ")
            )));
        }
    };
    Ok(Outcome {
        verified,
        report: json!({ "job": "oracle", "check": check, "result": detail }),
    })
}

fn export_dot(cx: &Context, name: &str) -> Result<Outcome> {
    let mut catalog = Catalog::new(cx.allow_heavy);
    if !catalog.contains(name) || catalog.is_eval(name) {
        return Err(Error::UnknownEntry(name.to_string()));
    }
    let (entry, cache) = cached_entry(cx, &mut catalog, name)?;
    let path = cx.out.join(format!("{name}.dot"));
    fs::write(&path, to_dot(name, &parsed(&entry)))?;
    Ok(Outcome {
        verified: cache != "mismatch",
        report: json!({
            "job": "export-dot",
            "name": name,
            "states": states_of(&entry),
            "dot": path.display().to_string(),
            "cache": cache,
        }),
    })
}
