//! Every library example runs to completion.

#[path = "../examples/lookup.rs"]
mod lookup;
#[path = "../examples/numeration.rs"]
mod numeration;
#[path = "../examples/formulas.rs"]
mod formulas;
#[path = "../examples/oracles.rs"]
mod oracles;
#[path = "../examples/formats.rs"]
mod formats;

#[test]
fn lookup_example() {
    lookup::run().unwrap();
}

#[test]
fn numeration_example() {
    numeration::run().unwrap();
}

#[test]
fn formulas_example() {
    formulas::run().unwrap();
}

#[test]
fn oracles_example() {
    oracles::run().unwrap();
}

#[test]
fn formats_example() {
    formats::run().unwrap();
}
