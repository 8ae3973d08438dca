//! Compiles first-order formulas over the naturals and runs a short script
//! that uses the lookup automaton.

use restivo::logic::{compile, eval_sentence, parse_formula, parse_script, run_script, Env};
use restivo::restivo::lookup_library;

const SCRIPT: &str = r#"
# positions where the word coded by c has a square of order n starting at i
def sq "?lsd_2 El $length(?lsd_6 c,l) & n>=1 & i+2*n<=l &
   At (t<n) => LOOK[?lsd_6 c][i+t]=LOOK[?lsd_6 c][i+t+n]":
def sqany "?lsd_2 Ei,n $sq(?lsd_6 c,i,n)":
eval allsquare "?lsd_2 Ac,l ($validcode(?lsd_6 c) & $length(?lsd_6 c,l) & l>=4) => $sqany(?lsd_6 c)":
"#;

pub fn run() -> restivo::Result<()> {
    let env = Env::new();
    let (f, base) = parse_formula("?lsd_3 Ey x = 2*y + 1")?;
    let odd = compile(&f, &env, base)?;
    println!("odd numbers in base 3: {} states, 7 odd {}", odd.state_count(), odd.accepts_values(&[7])?);

    let (f, base) = parse_formula("Ax Ey y > x")?;
    println!("Ax Ey y > x: {}", eval_sentence(&f, &env, base)?);

    let mut lib = lookup_library();
    lib.build("LOOK")?;
    let mut env = lib.env().clone();
    let outcome = run_script(&parse_script(SCRIPT)?, &mut env)?;
    for r in &outcome.reports {
        match r.value {
            Some(v) => println!("{:<10} {v}", r.name),
            None => println!("{:<10} {} states over {}", r.name, r.states, r.tracks),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> restivo::Result<()> {
    run()
}
