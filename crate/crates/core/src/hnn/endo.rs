//! The endomorphism `φ : t ↦ t, a ↦ λ(a)` and its kernel filtration.

use super::britton::BrittonForm;
use super::group::HnnGroup;
use crate::algebra::{FreeWord, LatticeVector, Letter, Sign};
use crate::oracle::Remarked;

impl HnnGroup {
    pub fn phi(&self, g: &BrittonForm) -> BrittonForm {
        let mut f = BrittonForm::identity(self.rank());
        self.push_vector(&mut f, &self.lambda.apply(&g.head));
        for (sign, block) in &g.tail {
            self.push_t(&mut f, *sign);
            self.push_vector(&mut f, &self.lambda.apply(block));
        }
        f
    }

    pub fn phi_power(&self, g: &BrittonForm, i: usize) -> BrittonForm {
        (0..i).fold(g.clone(), |acc, _| self.phi(&acc))
    }

    fn vector_word(&self, v: &LatticeVector, letters: &mut Vec<Letter>) {
        for (j, c) in v.0.iter().enumerate() {
            let n: i64 = c.try_into().expect("preimage exponent fits in i64");
            let sign = if n < 0 { Sign::Neg } else { Sign::Pos };
            for _ in 0..n.unsigned_abs() {
                letters.push(Letter::new(j + 1, sign));
            }
        }
    }

    /// A word `w` over `{t, a_j}` with `φ(w) = g`.
    ///
    /// Each abelian block `v` is split as `λ(x) + μ(y)`; since
    /// `μ(y) = t⁻¹λ(y)t = φ(t⁻¹ a^y t)` its preimage is `a^x · t⁻¹ a^y t`.
    pub fn phi_preimage(&self, g: &BrittonForm) -> FreeWord {
        let mut letters = Vec::new();
        let block = |v: &LatticeVector, letters: &mut Vec<Letter>| {
            if v.is_zero() {
                return;
            }
            let (x, y) = self.split_joint(v);
            self.vector_word(&x, letters);
            if !y.is_zero() {
                letters.push(Letter::neg(0));
                self.vector_word(&y, letters);
                letters.push(Letter::pos(0));
            }
        };
        block(&g.head, &mut letters);
        for (sign, v) in &g.tail {
            letters.push(Letter::new(0, *sign));
            block(v, &mut letters);
        }
        FreeWord::new(self.rank() + 1, letters).expect("letters within the marking")
    }

    /// Membership of `w` in `N_i = ker φ^i`.
    pub fn in_kernel(&self, w: &FreeWord, i: usize) -> bool {
        self.phi_power(&self.britton_reduce(w), i).is_identity()
    }

    /// Least `i ≤ max_index` with `φ^i(w) = 1`.
    pub fn least_kernel_index(&self, w: &FreeWord, max_index: usize) -> Option<usize> {
        let mut g = self.britton_reduce(w);
        for i in 0..=max_index {
            if g.is_identity() {
                return Some(i);
            }
            if i < max_index {
                g = self.phi(&g);
            }
        }
        None
    }

    /// `G` marked by `{t, λ^i(a_1), …, λ^i(a_d)}`, which is `F/N_i` with its
    /// standard marking.
    pub fn marking_at(&self, i: usize) -> Remarked<&HnnGroup> {
        let power = self.lambda.power(i as u32);
        let d = self.rank();
        let mut names = vec!["t".to_string()];
        let mut generators = vec![self.t_element()];
        for j in 0..d {
            let base = &self.names[j + 1];
            names.push(if i == 0 {
                base.clone()
            } else {
                format!("phi{i}({base})")
            });
            generators.push(self.vector_element(&power.apply(&LatticeVector::unit(d, j))));
        }
        Remarked::new(self, names, generators)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{IntMatrix, Monomorphism};
    use crate::oracle::MarkedGroup;

    fn bs23() -> HnnGroup {
        HnnGroup::baumslag_solitar(2, 3).unwrap()
    }

    fn word(g: &HnnGroup, text: &str) -> FreeWord {
        FreeWord::parse(text, g.names()).unwrap()
    }

    #[test]
    fn phi_on_generators() {
        let g = bs23();
        let a = g.generator(1);
        assert_eq!(g.phi(&a), g.vector_element(&LatticeVector::from_i64(&[2])));
        let t = g.generator(0);
        assert_eq!(g.phi(&t), t);
    }

    #[test]
    fn phi_kills_relator() {
        let g = bs23();
        let r = g.britton_reduce(&word(&g, "t^-1 a^2 t a^-3"));
        assert!(r.is_identity());
        // relator as a free word: φ of the word image
        let w = word(&g, "t^-1 a^2 t a^-3");
        let img = g.britton_reduce(&w);
        assert!(g.phi(&img).is_identity());
    }

    #[test]
    fn preimage_of_a() {
        let g = bs23();
        let p = g.phi_preimage(&g.generator(1));
        assert_eq!(p, word(&g, "a^-1 t^-1 a t"));
        assert_eq!(g.phi(&g.britton_reduce(&p)), g.generator(1));
        assert_eq!(g.phi_preimage(&g.generator(0)), word(&g, "t"));
    }

    #[test]
    fn kernel_membership() {
        let g = bs23();
        let c = word(&g, "t^-1 a^-1 t a^-1 t^-1 a t a");
        assert!(g.in_kernel(&c, 1));
        assert!(!g.in_kernel(&c, 0));
        assert!(g.in_kernel(&FreeWord::empty(2), 0));
        assert_eq!(g.least_kernel_index(&c, 5), Some(1));
        assert_eq!(g.least_kernel_index(&word(&g, "a"), 5), None);
    }

    #[test]
    fn deeper_commutators_enter_later() {
        let g = bs23();
        // [a^{t^i}, a] ∈ N_i \ N_{i-1}
        for i in 1..=4usize {
            let ti = FreeWord::parse("t", g.names()).unwrap().pow(i as i64);
            let a = word(&g, "a");
            let conj = a.conjugate_by(&ti);
            let c = FreeWord::commutator(&conj, &a);
            assert_eq!(g.least_kernel_index(&c, 6), Some(i), "i = {i}");
        }
    }

    #[test]
    fn rank_two_preimage() {
        let l = Monomorphism::new(IntMatrix::diagonal(&[2, 3])).unwrap();
        let m = Monomorphism::new(IntMatrix::diagonal(&[3, 2])).unwrap();
        let g = HnnGroup::new(l, m).unwrap();
        let h = g.britton_reduce(&word(&g, "a1 t^-1 a2 t a1^3 t a2^-1"));
        let p = g.phi_preimage(&h);
        assert_eq!(g.phi(&g.britton_reduce(&p)), h);
    }

    #[test]
    fn marking_at_index() {
        let g = bs23();
        let m = g.marking_at(2);
        assert_eq!(m.generator(1), g.vector_element(&LatticeVector::from_i64(&[4])));
        assert_eq!(m.marking()[1], "phi2(a)");
    }
}
