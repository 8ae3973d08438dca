//! Word-level oracles: no automata involved, only explicit words.

use restivo::applications::{
    backtrack_lexleast, large_overlap_census, lexleast_reference, naive_word_checks,
};
use restivo::restivo::{expand_code, Code};

fn bits(w: &[u8]) -> String {
    w.iter().map(|b| char::from(b'0' + b)).collect()
}

pub fn run() -> restivo::Result<()> {
    let w = backtrack_lexleast(40);
    println!("least overlap-free word of length 40: {}", bits(&w));
    println!("matches 001001 + complement of Thue-Morse: {}", w == lexleast_reference(40));

    for i in 0..4 {
        let c = large_overlap_census(i);
        println!("{:<12} overlap periods {:?}, 7/3-power {}", c.code.to_string(), c.periods, c.has_73_power);
    }

    for s in ["4323213", "5312", "22253"] {
        let w = expand_code(&Code::parse(s)?)?;
        let r = naive_word_checks(&w);
        println!(
            "{s:<8} length {:>3}, overlap {}, largest square order {}",
            w.len(),
            r.has_overlap,
            r.max_square_order
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> restivo::Result<()> {
    run()
}
