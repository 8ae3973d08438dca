//! Builds catalog entries (default: a few small ones) and prints a line per
//! statement run, with its state count and time.
//!
//!     cargo run --release --example catalog -- ovlfg avoid73g

use restivo::applications::Catalog;
use restivo::logic::Entry;

fn main() -> restivo::Result<()> {
    let mut names: Vec<String> = std::env::args().skip(1).collect();
    if names.is_empty() {
        names = ["ovlfg", "avoid73g", "squ4g"].map(String::from).to_vec();
    }
    let mut catalog = Catalog::new(std::env::var_os("ALLOW_HEAVY").is_some());
    for name in &names {
        if catalog.is_eval(name) {
            let v = catalog.eval(name)?;
            println!("{name}: {}", if v { "TRUE" } else { "FALSE" });
            continue;
        }
        let entry = catalog.build_with(name, &mut |r| {
            println!("  {:<12} {:>6} states  {:>10.3?}", r.name, r.states, r.elapsed)
        })?;
        match entry {
            Entry::Acceptor(a) => println!("{name}: {} live states over {}", a.state_count(), a.signature()),
            Entry::Output(o) => println!("{name}: {} states over {}", o.state_count(), o.signature()),
        }
    }
    Ok(())
}
