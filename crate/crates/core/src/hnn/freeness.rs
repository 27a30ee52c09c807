//! Bounded certificates that two elements generate a free subgroup.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::britton::BrittonForm;
use super::group::HnnGroup;
use crate::algebra::{FreeWord, LatticeVector, Letter, Monomorphism, Sign};
use crate::oracle::MarkedGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreenessCertificate {
    /// No nonempty reduced word of length ≤ `max_length` is trivial.
    pub holds: bool,
    pub max_length: usize,
    pub words_checked: usize,
    /// First trivial word found, as a word in the two test elements.
    pub counterexample: Option<FreeWord>,
}

impl HnnGroup {
    /// Checks every nonempty reduced word of length ≤ `max_length` in
    /// `{u, w}^{±1}` for nontriviality in `G`.
    ///
    /// This is a necessary condition for `⟨u, w⟩` to be free of rank two,
    /// not a proof.
    pub fn free_subgroup_certificate(
        &self,
        u: &FreeWord,
        w: &FreeWord,
        max_length: usize,
    ) -> FreenessCertificate {
        let gens = [self.britton_reduce(u), self.britton_reduce(w)];
        let invs = [self.invert(&gens[0]), self.invert(&gens[1])];
        let mut words_checked = 0;
        let mut counterexample = None;
        // depth-first over reduced words, carrying the prefix product
        let mut stack: Vec<(Vec<Letter>, BrittonForm)> = vec![(Vec::new(), self.identity())];
        while let Some((prefix, value)) = stack.pop() {
            if !prefix.is_empty() {
                words_checked += 1;
                if value.is_identity() {
                    counterexample = Some(FreeWord::new(2, prefix.iter().copied()).expect("rank two"));
                    break;
                }
            }
            if prefix.len() == max_length {
                continue;
            }
            for generator in (0..2).rev() {
                for sign in [Sign::Neg, Sign::Pos] {
                    let l = Letter::new(generator, sign);
                    if prefix.last() == Some(&l.inverse()) {
                        continue;
                    }
                    let factor = match sign {
                        Sign::Pos => &gens[generator],
                        Sign::Neg => &invs[generator],
                    };
                    let mut next = prefix.clone();
                    next.push(l);
                    stack.push((next, self.multiply(&value, factor)));
                }
            }
        }
        FreenessCertificate {
            holds: counterexample.is_none(),
            max_length,
            words_checked,
            counterexample,
        }
    }

    /// A vector outside `λ(Z^d) ∪ μ(Z^d)`, searching max-norm shells in
    /// increasing order and each shell in descending lexicographic order.
    ///
    /// Returns `None` only when one image is all of `Z^d`.
    pub fn outside_union_witness(&self) -> Option<LatticeVector> {
        outside_union_search(&self.lambda, &self.mu, None)
    }
}

/// Shell search for a vector outside `λ(Z^d) ∪ μ(Z^d)`; `max_norm` bounds the
/// search when given. Without a bound the search only runs when both images
/// are proper, which guarantees termination.
pub fn outside_union_search(
    lambda: &Monomorphism,
    mu: &Monomorphism,
    max_norm: Option<u64>,
) -> Option<LatticeVector> {
    let one = BigInt::one();
    let unbounded = lambda.determinant().abs() > one && mu.determinant().abs() > one;
    if !unbounded && max_norm.is_none() {
        return None;
    }
    let d = lambda.rank();
    let limit = max_norm.unwrap_or(u64::MAX);
    let mut n: u64 = 1;
    while n <= limit {
        for v in shell_descending(d, n as i64) {
            if !lambda.contains(&v) && !mu.contains(&v) {
                return Some(v);
            }
        }
        n += 1;
    }
    None
}

/// Vectors of max-norm exactly `n`, in descending lexicographic order.
pub fn shell_descending(d: usize, n: i64) -> Vec<LatticeVector> {
    let mut out = Vec::new();
    let mut coords = vec![n; d];
    loop {
        if coords.iter().any(|c| c.abs() == n) {
            out.push(LatticeVector::from_i64(&coords));
        }
        // decrement odometer
        let mut k = d;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if coords[k] > -n {
                coords[k] -= 1;
                for c in coords.iter_mut().skip(k + 1) {
                    *c = n;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::IntMatrix;

    fn word(g: &HnnGroup, text: &str) -> FreeWord {
        FreeWord::parse(text, g.names()).unwrap()
    }

    #[test]
    fn t_and_conjugate_are_free_to_length_six() {
        let g = HnnGroup::baumslag_solitar(2, 3).unwrap();
        let cert = g.free_subgroup_certificate(&word(&g, "t"), &word(&g, "a^-1 t a"), 6);
        assert!(cert.holds);
        assert_eq!(cert.words_checked, 2 * 3usize.pow(6) - 2);
    }

    #[test]
    fn abelian_pair_is_not_free() {
        let g = HnnGroup::baumslag_solitar(2, 3).unwrap();
        let cert = g.free_subgroup_certificate(&word(&g, "a"), &word(&g, "a^2"), 3);
        assert!(!cert.holds);
        let cx = cert.counterexample.unwrap();
        assert_eq!(cx.len(), 3);
        // no relation of length two between a and a²
        assert!(g.free_subgroup_certificate(&word(&g, "a"), &word(&g, "a^2"), 2).holds);
    }

    #[test]
    fn equal_pair_is_not_free() {
        let g = HnnGroup::baumslag_solitar(2, 3).unwrap();
        let cert = g.free_subgroup_certificate(&word(&g, "t"), &word(&g, "t"), 2);
        assert!(!cert.holds);
        assert_eq!(cert.counterexample.unwrap().len(), 2);
    }

    #[test]
    fn witnesses() {
        let g = HnnGroup::baumslag_solitar(2, 3).unwrap();
        assert_eq!(g.outside_union_witness(), Some(LatticeVector::from_i64(&[1])));
        let g = HnnGroup::baumslag_solitar(2, 5).unwrap();
        assert_eq!(g.outside_union_witness(), Some(LatticeVector::from_i64(&[1])));
        let l = Monomorphism::new(IntMatrix::diagonal(&[2, 2])).unwrap();
        let m = Monomorphism::new(IntMatrix::diagonal(&[3, 3])).unwrap();
        let g = HnnGroup::new(l, m).unwrap();
        assert_eq!(g.outside_union_witness(), Some(LatticeVector::from_i64(&[1, 1])));
    }

    #[test]
    fn shell_sizes() {
        for n in 1..4 {
            assert_eq!(shell_descending(2, n).len() as i64, (2 * n + 1).pow(2) - (2 * n - 1).pow(2));
        }
        assert_eq!(shell_descending(1, 2), vec![LatticeVector::from_i64(&[2]), LatticeVector::from_i64(&[-2])]);
    }
}
