//! Text and DOT output for automata, and the plain-text linear
//! representation format.

use restivo::automata::{parse_automaton, to_dot, write_automaton, ParsedAutomaton};
use restivo::enumeration::{to_linear_representation, LinearRepresentation};
use restivo::logic::{compile, parse_formula, Env};

pub fn run() -> restivo::Result<()> {
    let (f, base) = parse_formula("?lsd_2 2*c <= n")?;
    let a = compile(&f, &Env::new(), base)?;
    let text = write_automaton(&ParsedAutomaton::Acceptor(a.clone()));
    print!("{text}");
    let back = match parse_automaton(&text)? {
        ParsedAutomaton::Acceptor(b) => b,
        ParsedAutomaton::Output(_) => unreachable!(),
    };
    assert_eq!(back, a);
    println!("{}", to_dot("half", &ParsedAutomaton::Acceptor(a.clone())));

    let lr = to_linear_representation(&a, "c")?;
    let serialized = lr.to_text();
    print!("{serialized}");
    assert_eq!(LinearRepresentation::parse(&serialized)?, lr);
    let counts: Vec<String> = (1..=12)
        .map(|n| lr.evaluate(n).map(|e| e.to_string()))
        .collect::<restivo::Result<_>>()?;
    // floor(n/2) + 1
    println!("c with 2c <= n, n = 1..12: {}", counts.join(" "));
    Ok(())
}

#[allow(dead_code)]
fn main() -> restivo::Result<()> {
    run()
}
