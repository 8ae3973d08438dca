//! Counting accepted words with linear representations, and the exact
//! asymptotics of the counts.
//!
//! [`extensible_counts`] builds `minmat` from the catalog, turns it into a
//! linear representation over the `n` track, and evaluates it.

mod linear;
mod poly;

pub use linear::{table_tsv, to_linear_representation, LinearRepresentation, MAX_PADS};
pub use poly::{char_and_min_poly, dominant_root, ExactPolynomial, IntMatrix, RootInterval};

use num_bigint::BigInt;

use crate::applications::Catalog;
use crate::error::{Error, Result};

/// Linear representation of the `minmat` automaton, counting its `c` track.
pub fn minmat_representation(catalog: &mut Catalog) -> Result<LinearRepresentation> {
    let a = catalog.acceptor("minmat")?;
    to_linear_representation(&a, "c")
}

/// `E(1)..E(max)`.
pub fn extensible_counts(lr: &LinearRepresentation, max: u64) -> Result<Vec<(u64, BigInt)>> {
    (1..=max).map(|n| Ok((n, lr.evaluate(n)?))).collect()
}

/// The quartic whose largest root governs the growth of `E`.
pub fn growth_quartic() -> ExactPolynomial {
    ExactPolynomial::from_i64(&[-2, 2, -1, -2, 1])
}

/// Summary of the asymptotic analysis of `gamma(0)`.
#[derive(Clone, Debug)]
pub struct Asymptotics {
    pub characteristic: ExactPolynomial,
    pub minimal: ExactPolynomial,
    pub root: RootInterval,
}

pub fn asymptotics(lr: &LinearRepresentation) -> Result<Asymptotics> {
    let zero = lr
        .gamma
        .first()
        .ok_or_else(|| Error::Invalid("representation without matrices".into()))?;
    let (characteristic, minimal) = char_and_min_poly(zero);
    let root = dominant_root(&minimal)?;
    Ok(Asymptotics { characteristic, minimal, root })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minmat_counts_and_growth() {
        let mut catalog = Catalog::new(false);
        let lr = minmat_representation(&mut catalog).unwrap();
        let values: Vec<u64> = extensible_counts(&lr, 16)
            .unwrap()
            .into_iter()
            .map(|(_, e)| u64::try_from(e).unwrap())
            .collect();
        assert_eq!(values, [2, 4, 6, 10, 14, 18, 22, 26, 32, 36, 40, 44, 48, 52, 58, 64]);
        let a = asymptotics(&lr).unwrap();
        assert!(growth_quartic().divides(&a.minimal));
        assert!(a.minimal.divides(&a.characteristic));
        let zeta = (1.0 + (5.0 + 4.0 * 3f64.sqrt()).sqrt()) / 2.0;
        assert!((a.root.value() - zeta).abs() < 1e-12);
    }
}
