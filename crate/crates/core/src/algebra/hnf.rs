//! Column-style Hermite normal form over the integers.
//!
//! For a `d × n` matrix `M` the reduction returns `H = M·U` with `U`
//! unimodular and `H` in lower column-echelon form: each pivot is positive,
//! entries to the right of a pivot in its row are zero, and entries to the
//! left of a pivot lie in `[0, pivot)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermiteForm {
    /// `M·U`
    pub h: IntMatrix,
    /// Unimodular column transform.
    pub u: IntMatrix,
    /// `(row, column)` of each pivot, in order.
    pub pivots: Vec<(usize, usize)>,
}

impl HermiteForm {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Leading `rows × rank` block of `H`.
    pub fn pivot_block(&self) -> IntMatrix {
        self.h.columns(0..self.rank())
    }
}

/// `(g, s, t)` with `g = s·a + t·b` and `g ≥ 0`.
pub(crate) fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let nr = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, nr);
        let ns = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, ns);
        let nt = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, nt);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

pub fn hermite_normal_form(m: &IntMatrix) -> HermiteForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut u = IntMatrix::identity(cols);
    let mut pivots = Vec::new();
    let mut pc = 0;
    for row in 0..rows {
        if pc == cols {
            break;
        }
        for j in pc + 1..cols {
            if h.get(row, j).is_zero() {
                continue;
            }
            let a = h.get(row, pc).clone();
            let b = h.get(row, j).clone();
            let (g, s, t) = extended_gcd(&a, &b);
            let bg = -(&b / &g);
            let ag = &a / &g;
            // det [[s, bg], [t, ag]] = (s·a + t·b)/g = 1
            h.combine_cols(pc, j, &s, &t, &bg, &ag);
            u.combine_cols(pc, j, &s, &t, &bg, &ag);
        }
        if h.get(row, pc).is_zero() {
            continue;
        }
        if h.get(row, pc).is_negative() {
            h.negate_col(pc);
            u.negate_col(pc);
        }
        let pivot = h.get(row, pc).clone();
        for j in 0..pc {
            let q = h.get(row, j).div_floor(&pivot);
            h.sub_col_multiple(j, pc, &q);
            u.sub_col_multiple(j, pc, &q);
        }
        pivots.push((row, pc));
        pc += 1;
    }
    HermiteForm { h, u, pivots }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check_shape(f: &HermiteForm) {
        for &(row, col) in &f.pivots {
            let p = f.h.get(row, col);
            assert!(p.is_positive());
            for j in col + 1..f.h.cols() {
                assert!(f.h.get(row, j).is_zero());
            }
            for j in 0..col {
                let x = f.h.get(row, j);
                assert!(!x.is_negative() && x < p);
            }
        }
    }

    #[test]
    fn identity_is_fixed() {
        let id = IntMatrix::identity(3);
        let f = hermite_normal_form(&id);
        assert_eq!(f.h, id);
        assert_eq!(f.u, id);
    }

    #[test]
    fn coprime_row() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 3]]).unwrap();
        let f = hermite_normal_form(&m);
        assert_eq!(f.pivot_block(), IntMatrix::identity(1));
        assert_eq!(m.mul(&f.u), f.h);
        assert_eq!(f.u.determinant().abs(), BigInt::one());
    }

    #[test]
    fn non_coprime_row() {
        let m = IntMatrix::from_i64_rows(&[vec![2, 4]]).unwrap();
        let f = hermite_normal_form(&m);
        assert_eq!(f.pivot_block(), IntMatrix::from_i64_rows(&[vec![2]]).unwrap());
    }

    #[test]
    fn rank_deficient() {
        let m = IntMatrix::from_i64_rows(&[vec![0, 0], vec![1, 2]]).unwrap();
        let f = hermite_normal_form(&m);
        assert_eq!(f.rank(), 1);
        assert_eq!(m.mul(&f.u), f.h);
    }

    fn matrix_strategy(rows: usize, cols: usize) -> impl Strategy<Value = IntMatrix> {
        prop::collection::vec(-5i64..=5, rows * cols).prop_map(move |v| {
            let rs: Vec<Vec<i64>> = v.chunks(cols).map(<[i64]>::to_vec).collect();
            IntMatrix::from_i64_rows(&rs).unwrap()
        })
    }

    // product of elementary column operations
    fn unimodular_strategy(n: usize) -> impl Strategy<Value = IntMatrix> {
        prop::collection::vec((0..n, 0..n, -3i64..=3), 0..8).prop_map(move |ops| {
            let mut u = IntMatrix::identity(n);
            for (a, b, q) in ops {
                if a != b {
                    u.sub_col_multiple(a, b, &BigInt::from(q));
                } else {
                    u.negate_col(a);
                }
            }
            u
        })
    }

    proptest! {
        #[test]
        fn square_nonsingular(m in matrix_strategy(2, 2).prop_filter("det != 0", |m| !m.determinant().is_zero())) {
            let f = hermite_normal_form(&m);
            prop_assert_eq!(m.mul(&f.u), f.h.clone());
            prop_assert_eq!(f.u.determinant().abs(), BigInt::one());
            check_shape(&f);
            // diagonal product recovers |det|
            let prod = f.h.get(0, 0) * f.h.get(1, 1);
            prop_assert_eq!(prod, m.determinant().abs());
        }

        #[test]
        fn rectangular(m in matrix_strategy(2, 4)) {
            let f = hermite_normal_form(&m);
            prop_assert_eq!(m.mul(&f.u), f.h.clone());
            prop_assert_eq!(f.u.determinant().abs(), BigInt::one());
            check_shape(&f);
        }

        #[test]
        fn invariant_under_unimodular(m in matrix_strategy(2, 3).prop_filter("full rank", |m| hermite_normal_form(m).rank() == 2),
                                      u in unimodular_strategy(3)) {
            let a = hermite_normal_form(&m);
            let b = hermite_normal_form(&m.mul(&u));
            prop_assert_eq!(a.h, b.h);
        }
    }
}
