//! Exact integer and rational linear algebra plus free-word machinery.

pub mod hnf;
pub mod lattice;
pub mod matrix;
pub mod word;

pub use hnf::{hermite_normal_form, HermiteForm};
pub use lattice::{canonical_residue, lattice_membership, Monomorphism, ResidueConvention};
pub use matrix::{IntMatrix, LatticeVector, RatMatrix};
pub use word::{free_reduce, reduced_words_of_length, reduced_words_up_to, FreeWord, Letter, Sign};
