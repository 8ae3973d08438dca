//! Builds the lookup automaton and reads a few coded words through it.
//!
//!     cargo run --release --example lookup

use restivo::restivo::{build_look, expand_code, look_at, Code};

pub fn run() -> restivo::Result<()> {
    let look = build_look()?;
    println!("LOOK: {} states over {}", look.state_count(), look.signature());
    for s in ["413", "2153", "1111", "55"] {
        let code = Code::parse(s)?;
        let word = expand_code(&code)?;
        let read: Vec<u8> = (0..word.len() as u64 + 2)
            .map(|n| look_at(&look, &code, n))
            .collect::<restivo::Result<_>>()?;
        // 2 past the end of the word
        let text: String = read.iter().map(|b| char::from(b'0' + b)).collect();
        println!("{s:>5} -> {text}");
        assert_eq!(&read[..word.len()], &word[..]);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> restivo::Result<()> {
    run()
}
