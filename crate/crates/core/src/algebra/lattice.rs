//! Injective endomorphisms of Z^d and coset arithmetic for their images.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::hnf::{hermite_normal_form, HermiteForm};
use super::matrix::{IntMatrix, LatticeVector, RatMatrix};
use crate::error::{Error, Result};

/// How coset representatives are chosen along each Hermite pivot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResidueConvention {
    /// `0 ≤ r_k < h_kk`
    NonNegative,
    /// `-h_kk/2 < r_k ≤ h_kk/2`
    Centered,
}

/// A monomorphism `Z^d → Z^d` given by a nonsingular integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Monomorphism {
    matrix: IntMatrix,
    determinant: BigInt,
    hermite: HermiteForm,
    inverse: RatMatrix,
}

impl Monomorphism {
    pub fn new(matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let determinant = matrix.determinant();
        if determinant.is_zero() {
            return Err(Error::Singular(matrix.rows()));
        }
        let hermite = hermite_normal_form(&matrix);
        let inverse = matrix
            .to_rational()
            .inverse()
            .expect("nonzero determinant implies invertible over Q");
        Ok(Monomorphism {
            matrix,
            determinant,
            hermite,
            inverse,
        })
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Monomorphism::new(IntMatrix::from_i64_rows(rows)?)
    }

    pub fn scalar(k: i64) -> Result<Self> {
        Monomorphism::new(IntMatrix::diagonal(&[k]))
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn determinant(&self) -> &BigInt {
        &self.determinant
    }

    /// Index of the image lattice, `|det|`.
    pub fn index(&self) -> BigInt {
        self.determinant.abs()
    }

    pub fn hermite(&self) -> &HermiteForm {
        &self.hermite
    }

    pub fn inverse(&self) -> &RatMatrix {
        &self.inverse
    }

    pub fn apply(&self, v: &LatticeVector) -> LatticeVector {
        self.matrix.mul_vec(v)
    }

    pub fn power(&self, exponent: u32) -> Monomorphism {
        Monomorphism::new(self.matrix.pow(exponent)).expect("powers of a monomorphism are injective")
    }

    pub fn compose(&self, other: &Monomorphism) -> Monomorphism {
        Monomorphism::new(self.matrix.mul(&other.matrix)).expect("composition of monomorphisms")
    }

    /// The unique `x` with `L·x = v`, if `v` lies in the image.
    pub fn preimage(&self, v: &LatticeVector) -> Option<LatticeVector> {
        let h = &self.hermite.h;
        let d = self.rank();
        let mut y = LatticeVector::zero(d);
        for k in 0..d {
            let mut acc = v.0[k].clone();
            for j in 0..k {
                acc -= h.get(k, j) * &y.0[j];
            }
            let (q, rem) = acc.div_rem(h.get(k, k));
            if !rem.is_zero() {
                return None;
            }
            y.0[k] = q;
        }
        Some(self.hermite.u.mul_vec(&y))
    }

    pub fn contains(&self, v: &LatticeVector) -> bool {
        self.preimage(v).is_some()
    }

    /// Splits `v = L·x + r` with `r` the canonical coset representative.
    pub fn residue(&self, v: &LatticeVector) -> (LatticeVector, LatticeVector) {
        self.residue_with(v, ResidueConvention::NonNegative)
    }

    pub fn residue_with(
        &self,
        v: &LatticeVector,
        convention: ResidueConvention,
    ) -> (LatticeVector, LatticeVector) {
        let h = &self.hermite.h;
        let d = self.rank();
        let mut w = v.clone();
        let mut y = LatticeVector::zero(d);
        for k in 0..d {
            let p = h.get(k, k);
            let q = match convention {
                ResidueConvention::NonNegative => w.0[k].div_floor(p),
                ResidueConvention::Centered => {
                    // ceil((2w - p) / 2p)
                    let num: BigInt = BigInt::from(2) * &w.0[k] - p;
                    let den: BigInt = BigInt::from(2) * p;
                    num.div_ceil(&den)
                }
            };
            if !q.is_zero() {
                for r in k..d {
                    let delta = &q * h.get(r, k);
                    w.0[r] -= delta;
                }
            }
            y.0[k] = q;
        }
        (w, self.hermite.u.mul_vec(&y))
    }
}

/// `lattice_membership`: exact preimage under `L`, if any.
pub fn lattice_membership(l: &Monomorphism, v: &LatticeVector) -> Option<LatticeVector> {
    l.preimage(v)
}

/// `canonical_residue`: `(r, x)` with `v = L·x + r`.
pub fn canonical_residue(l: &Monomorphism, v: &LatticeVector) -> (LatticeVector, LatticeVector) {
    l.residue(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn v(c: &[i64]) -> LatticeVector {
        LatticeVector::from_i64(c)
    }

    #[test]
    fn scalar_membership() {
        let l = Monomorphism::scalar(2).unwrap();
        assert_eq!(lattice_membership(&l, &v(&[4])), Some(v(&[2])));
        assert_eq!(lattice_membership(&l, &v(&[3])), None);
    }

    #[test]
    fn diagonal_membership() {
        let l = Monomorphism::new(IntMatrix::diagonal(&[2, 3])).unwrap();
        assert_eq!(lattice_membership(&l, &v(&[2, 3])), Some(v(&[1, 1])));
    }

    #[test]
    fn scalar_residues() {
        let l = Monomorphism::scalar(2).unwrap();
        assert_eq!(canonical_residue(&l, &v(&[5])), (v(&[1]), v(&[2])));
        let l = Monomorphism::scalar(3).unwrap();
        assert_eq!(canonical_residue(&l, &v(&[-1])), (v(&[2]), v(&[-1])));
        let l = Monomorphism::scalar(-3).unwrap();
        let (r, x) = canonical_residue(&l, &v(&[7]));
        assert_eq!(r, v(&[1]));
        assert_eq!(&l.apply(&x) + &r, v(&[7]));
    }

    #[test]
    fn centered_residues() {
        let l = Monomorphism::scalar(3).unwrap();
        for (input, expect) in [(-1, -1), (2, -1), (1, 1), (0, 0), (4, 1), (5, -1)] {
            let (r, x) = l.residue_with(&v(&[input]), ResidueConvention::Centered);
            assert_eq!(r, v(&[expect]), "input {input}");
            assert_eq!(&l.apply(&x) + &r, v(&[input]));
        }
    }

    #[test]
    fn rejects_singular_and_rectangular() {
        assert!(matches!(Monomorphism::scalar(0), Err(Error::Singular(1))));
        assert!(matches!(
            Monomorphism::from_i64_rows(&[vec![1, 2]]),
            Err(Error::NotSquare { .. })
        ));
    }

    fn mono_strategy() -> impl Strategy<Value = Monomorphism> {
        prop::collection::vec(-5i64..=5, 4)
            .prop_filter_map("singular", |e| {
                Monomorphism::from_i64_rows(&[vec![e[0], e[1]], vec![e[2], e[3]]]).ok()
            })
    }

    proptest! {
        #[test]
        fn membership_of_images(l in mono_strategy(), x in prop::collection::vec(-50i64..=50, 2)) {
            let x = v(&x);
            prop_assert_eq!(lattice_membership(&l, &l.apply(&x)), Some(x));
        }

        #[test]
        fn residue_decomposes(l in mono_strategy(), w in prop::collection::vec(-50i64..=50, 2)) {
            let w = v(&w);
            let (r, x) = canonical_residue(&l, &w);
            prop_assert_eq!(&l.apply(&x) + &r, w);
            for k in 0..2 {
                let p = l.hermite().h.get(k, k);
                prop_assert!(!r.0[k].is_negative() && &r.0[k] < p);
            }
        }

        #[test]
        fn residue_is_coset_invariant(l in mono_strategy(),
                                      w in prop::collection::vec(-50i64..=50, 2),
                                      shift in prop::collection::vec(-20i64..=20, 2)) {
            let w = v(&w);
            let moved = &w + &l.apply(&v(&shift));
            prop_assert_eq!(canonical_residue(&l, &w).0, canonical_residue(&l, &moved).0);
        }

        #[test]
        fn residue_count_bounded_by_index(l in mono_strategy()) {
            let mut seen = HashSet::new();
            for a in -12i64..=12 {
                for b in -12i64..=12 {
                    seen.insert(canonical_residue(&l, &v(&[a, b])).0);
                }
            }
            prop_assert!(BigInt::from(seen.len()) <= l.index());
        }
    }
}
