//! Runs the named theorem checks (all of them by default).
//!
//!     cargo run --release --example theorems -- maxexp enumeration

use restivo::applications::{run_theorem, Catalog, THEOREMS};

fn main() -> restivo::Result<()> {
    let mut ids: Vec<String> = std::env::args().skip(1).collect();
    if ids.is_empty() {
        ids = THEOREMS.iter().map(|t| t.0.to_string()).collect();
    }
    let mut catalog = Catalog::new(false);
    for id in &ids {
        let r = run_theorem(id, &mut catalog)?;
        println!("{id}: {} ({} ms)", if r.verified { "verified" } else { "FAILED" }, r.elapsed_ms);
        for c in &r.checks {
            println!("  {} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
        }
    }
    Ok(())
}
