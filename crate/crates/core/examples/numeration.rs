//! Arithmetic automata in bases 2, 3 and 6, read least significant digit
//! first.

use restivo::numeration::{build_add, build_compare, build_constant, build_normalizer, ExtBits};
use restivo::logic::CmpOp;

pub fn run() -> restivo::Result<()> {
    for base in [2, 3, 6] {
        let add = build_add(base)?;
        let lt = build_compare(CmpOp::Lt, base)?;
        println!(
            "base {base}: add {} states, less-than {} states, 17+25=42 {}, 17<25 {}",
            add.state_count(),
            lt.state_count(),
            add.accepts_values(&[17, 25, 42])?,
            lt.accepts_values(&[17, 25])?,
        );
    }
    let seven = build_constant(7, 2)?;
    println!("x = 7: {} states", seven.state_count());

    // Extended binary allows the digit 2; the normalizer relates it to binary.
    let norm = build_normalizer();
    let l = ExtBits::parse("212")?;
    let n = l.value();
    let n_digits = restivo::automata::lsd_digits(n, 2);
    println!(
        "normalize: 212 (lsd first) has value {n}, accepted with {n}: {}",
        norm.accepts_tracks(&[&l.0, &n_digits])?
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> restivo::Result<()> {
    run()
}
