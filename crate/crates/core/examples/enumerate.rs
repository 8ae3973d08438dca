//! Counts extensible words: builds `minmat`, extracts its linear
//! representation over `n`, prints `E(1..max)` as TSV and the growth data.
//!
//!     cargo run --release --example enumerate -- 16

use restivo::applications::Catalog;
use restivo::enumeration::{asymptotics, extensible_counts, growth_quartic, minmat_representation, table_tsv};

fn main() -> restivo::Result<()> {
    let max = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(16);
    let mut catalog = Catalog::new(false);
    let lr = minmat_representation(&mut catalog)?;
    print!("{}", table_tsv(&extensible_counts(&lr, max)?));
    let a = asymptotics(&lr)?;
    eprintln!("rank {} (minimal over Q: {})", lr.rank(), lr.minimal_rank());
    eprintln!("minimal polynomial of gamma(0): {}", a.minimal);
    eprintln!("divisible by {}: {}", growth_quartic(), growth_quartic().divides(&a.minimal));
    eprintln!("zeta = {:.17} (bracket width {:.1e})", a.root.value(), a.root.width());
    eprintln!("log2 zeta = {:.17}", a.root.growth_exponent());
    Ok(())
}
