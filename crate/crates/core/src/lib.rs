//! Computational toolkit for pairs of finite groups: permutation groups,
//! coset enumeration, Schur multipliers of pairs, relative central
//! extensions, covering pairs and isoclinism.

pub mod abelian;
pub mod catalog;
pub mod covering;
pub mod error;
pub mod fp;
pub mod group;
pub mod hom;
pub mod isoclinism;
pub mod multiplier;
pub mod pair;
pub mod perm;
pub mod structure;
pub mod verify;

pub use abelian::AbelianInvariants;
pub use error::{GroupError, Result};
pub use group::FiniteGroup;
pub use hom::GroupHom;
pub use perm::Permutation;

/// Arbitrary-precision integer matrix.
pub type BigMatrix = fp::smith::IntegerMatrix<num_bigint::BigInt>;
/// Machine-integer matrix; reductions on it report overflow instead of wrapping.
pub type SmallMatrix = fp::smith::IntegerMatrix<i64>;
