//! Finitely presented groups: parsing, coset enumeration and abelianization.

pub mod coset;
pub mod presentation;
pub mod smith;
pub mod tietze;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

pub use coset::{coset_table_to_group, evaluate_word, todd_coxeter, CosetTable, DEFAULT_MAX_COSETS};
pub use presentation::{parse_presentation, parse_word, FpPresentation, Letter, ParsedPresentation, Word};
pub use smith::{smith_normal_form, IntegerMatrix};

use crate::abelian::AbelianInvariants;

/// Abelianization of a presented group: torsion invariants plus free rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abelianization {
    pub torsion: AbelianInvariants,
    pub free_rank: usize,
}

impl Abelianization {
    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }
}

impl std::fmt::Display for Abelianization {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.free_rank == 0 {
            write!(f, "{}", self.torsion)
        } else {
            write!(f, "{} + Z^{}", self.torsion, self.free_rank)
        }
    }
}

/// Smith normal form of the relator exponent-sum matrix.
pub fn abelianized_invariants(pres: &FpPresentation) -> Abelianization {
    let n = pres.generator_count();
    let mut m = IntegerMatrix::<BigInt>::zeros(pres.relators().len(), n);
    for (i, r) in pres.relators().iter().enumerate() {
        for (j, s) in pres.exponent_sums(r).into_iter().enumerate() {
            m.set(i, j, BigInt::from(s));
        }
    }
    let diag = smith_normal_form(&m);
    let rank = diag.iter().filter(|d| !d.is_zero()).count();
    let torsion = AbelianInvariants::from_cyclic_factors(
        diag.iter()
            .filter(|d| !d.is_zero())
            .map(|d| d.to_u64().expect("invariant factor fits in u64")),
    );
    Abelianization {
        torsion,
        free_rank: n - rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab(s: &str) -> Abelianization {
        abelianized_invariants(&parse_presentation(s).unwrap().presentation)
    }

    #[test]
    fn cyclic() {
        assert_eq!(ab("<a | a^3>").torsion.divisors(), &[3]);
    }

    #[test]
    fn symmetric_group() {
        let a = ab("<a,b | a^2, b^2, (a b)^3>");
        assert_eq!(a.torsion.divisors(), &[2]);
        assert!(a.is_finite());
    }

    #[test]
    fn free_group() {
        let a = ab("<a,b | >");
        assert!(a.torsion.is_trivial());
        assert_eq!(a.free_rank, 2);
    }
}
