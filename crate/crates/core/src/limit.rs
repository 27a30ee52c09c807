//! The limit group `Ḡ = G / ⋃ N_i` realized inside `Q^d ⋊ Z`.
//!
//! Elements are pairs `(x, k)` with `x ∈ Q^d`, multiplied by
//! `(x, k)·(y, l) = (x + T^{-k} y, k + l)` where `T = μλ⁻¹`. The generators
//! are `a_j ↦ (e_j, 0)` and `t ↦ (0, 1)`, so `t⁻¹·(v, 0)·t = (T v, 0)` and the
//! defining relation `t⁻¹λ(a)t = μ(a)` holds. Since `(x, k) ↦ (λx, k)` is an
//! automorphism intertwining `φ`, every `N_i` dies in the model; that the
//! kernel is exactly `⋃ N_i` is cross-checked, not assumed.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algebra::{FreeWord, Letter, RatMatrix, Sign};
use crate::hnn::{BrittonForm, HnnGroup};
use crate::oracle::{CanonicalKey, KeyWriter, MarkedGroup};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModelElement {
    pub translation: Vec<BigRational>,
    pub shift: i64,
}

impl ModelElement {
    pub fn identity(dim: usize) -> Self {
        ModelElement {
            translation: vec![BigRational::zero(); dim],
            shift: 0,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.shift == 0 && self.translation.iter().all(Zero::is_zero)
    }

    /// Least common denominator of the translation.
    pub fn denominator(&self) -> BigInt {
        use num_integer::Integer;
        self.translation
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
    }
}

/// Exact oracle for `Ḡ` marked by `{t, a_1, …, a_d}`.
#[derive(Debug)]
pub struct LimitGroup {
    dim: usize,
    names: Vec<String>,
    /// `T = μλ⁻¹`
    forward: RatMatrix,
    /// `T⁻¹ = λμ⁻¹`
    backward: RatMatrix,
    /// `T^{-k}` by `k`
    powers: Mutex<HashMap<i64, Arc<RatMatrix>>>,
    lambda: RatMatrix,
}

impl LimitGroup {
    pub fn new(group: &HnnGroup) -> Self {
        let lambda = group.lambda().matrix().to_rational();
        let mu = group.mu().matrix().to_rational();
        let forward = mu.mul(group.lambda().inverse());
        let backward = lambda.mul(group.mu().inverse());
        LimitGroup {
            dim: group.rank(),
            names: group.names().to_vec(),
            forward,
            backward,
            powers: Mutex::new(HashMap::new()),
            lambda,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `T = μλ⁻¹`
    pub fn twist(&self) -> &RatMatrix {
        &self.forward
    }

    /// `T^{-k}`, cached.
    fn inverse_power(&self, k: i64) -> Arc<RatMatrix> {
        if let Some(m) = self.powers.lock().expect("power cache").get(&k) {
            return m.clone();
        }
        let base = if k >= 0 { &self.backward } else { &self.forward };
        let mut m = RatMatrix::identity(self.dim);
        for _ in 0..k.unsigned_abs() {
            m = m.mul(base);
        }
        let m = Arc::new(m);
        self.powers
            .lock()
            .expect("power cache")
            .insert(k, m.clone());
        m
    }

    pub fn compose(&self, g: &ModelElement, h: &ModelElement) -> ModelElement {
        let moved = if g.shift == 0 {
            h.translation.clone()
        } else {
            self.inverse_power(g.shift).mul_vec(&h.translation)
        };
        ModelElement {
            translation: g
                .translation
                .iter()
                .zip(moved)
                .map(|(a, b)| a + b)
                .collect(),
            shift: g.shift + h.shift,
        }
    }

    /// `(x, k)⁻¹ = (-T^{k} x, -k)`
    pub fn inverse_of(&self, g: &ModelElement) -> ModelElement {
        let moved = if g.shift == 0 {
            g.translation.clone()
        } else {
            self.inverse_power(-g.shift).mul_vec(&g.translation)
        };
        ModelElement {
            translation: moved.into_iter().map(|q| -q).collect(),
            shift: -g.shift,
        }
    }

    /// Image of a word over `{t, a_j}`.
    pub fn model_map(&self, word: &FreeWord) -> ModelElement {
        self.evaluate(word)
    }

    /// Image of a Britton normal form of the parent HNN group.
    pub fn from_britton(&self, g: &BrittonForm) -> ModelElement {
        let vector = |v: &crate::algebra::LatticeVector| ModelElement {
            translation: v.to_rational(),
            shift: 0,
        };
        let t = |sign: Sign| ModelElement {
            translation: vec![BigRational::zero(); self.dim],
            shift: sign.as_i64(),
        };
        let mut acc = vector(g.head());
        for (sign, block) in g.tail() {
            acc = self.compose(&acc, &t(*sign));
            acc = self.compose(&acc, &vector(block));
        }
        acc
    }

    /// The model automorphism `(x, k) ↦ (λx, k)` matching `φ`.
    pub fn phi(&self, g: &ModelElement) -> ModelElement {
        ModelElement {
            translation: self.lambda.mul_vec(&g.translation),
            shift: g.shift,
        }
    }

    pub fn format_model(&self, g: &ModelElement) -> String {
        let coords: Vec<String> = g.translation.iter().map(|q| q.to_string()).collect();
        format!("({};{})", coords.join(";"), g.shift)
    }
}

impl MarkedGroup for LimitGroup {
    type Element = ModelElement;

    fn marking(&self) -> &[String] {
        &self.names
    }

    fn identity(&self) -> ModelElement {
        ModelElement::identity(self.dim)
    }

    fn generator(&self, index: usize) -> ModelElement {
        let mut e = ModelElement::identity(self.dim);
        if index == 0 {
            e.shift = 1;
        } else {
            e.translation[index - 1] = BigRational::one();
        }
        e
    }

    fn multiply(&self, g: &ModelElement, h: &ModelElement) -> ModelElement {
        self.compose(g, h)
    }

    fn invert(&self, g: &ModelElement) -> ModelElement {
        self.inverse_of(g)
    }

    fn is_identity(&self, g: &ModelElement) -> bool {
        g.is_identity()
    }

    fn canonical_key(&self, g: &ModelElement) -> CanonicalKey {
        let mut k = KeyWriter::new();
        k.u32(self.dim as u32).i64(g.shift);
        for q in &g.translation {
            k.bigint(q.numer()).bigint(q.denom());
        }
        k.finish()
    }

    fn mul_letter(&self, g: &ModelElement, letter: Letter) -> ModelElement {
        if letter.generator == 0 {
            let mut out = g.clone();
            out.shift += letter.sign.as_i64();
            return out;
        }
        // g·(±e_j, 0) adds ±column j of T^{-k}
        let j = letter.generator - 1;
        let p = self.inverse_power(g.shift);
        let mut out = g.clone();
        for (r, x) in out.translation.iter_mut().enumerate() {
            match letter.sign {
                Sign::Pos => *x += p.get(r, j),
                Sign::Neg => *x -= p.get(r, j),
            }
        }
        out
    }

    fn format_element(&self, g: &ModelElement) -> String {
        self.format_model(g)
    }
}

/// Bounded semi-decision for membership in `N = ⋃ N_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiltrationVerdict {
    /// Least `i` with `φ^i(w) = 1`.
    InKernel(usize),
    /// `φ^i(w) ≠ 1` for all `i ≤` the bound.
    NotInKernelUpTo(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LimitVerdict {
    pub filtration: FiltrationVerdict,
    pub model: ModelElement,
    pub model_trivial: bool,
    /// Both channels say the same thing.
    pub agree: bool,
}

/// Decides `w ∈ N` up to `max_index` via the filtration and records the
/// model's verdict alongside.
pub fn limit_is_identity(
    group: &HnnGroup,
    limit: &LimitGroup,
    word: &FreeWord,
    max_index: usize,
) -> LimitVerdict {
    assert!(max_index >= 1);
    let filtration = match group.least_kernel_index(word, max_index) {
        Some(i) => FiltrationVerdict::InKernel(i),
        None => FiltrationVerdict::NotInKernelUpTo(max_index),
    };
    let model = limit.model_map(word);
    let model_trivial = model.is_identity();
    let agree = matches!(filtration, FiltrationVerdict::InKernel(_)) == model_trivial;
    LimitVerdict {
        filtration,
        model,
        model_trivial,
        agree,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{IntMatrix, Monomorphism};
    use num_traits::Signed;

    fn setup() -> (HnnGroup, LimitGroup) {
        let g = HnnGroup::baumslag_solitar(2, 3).unwrap();
        let l = LimitGroup::new(&g);
        (g, l)
    }

    fn word(g: &HnnGroup, text: &str) -> FreeWord {
        FreeWord::parse(text, g.names()).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn relation_holds_in_model() {
        let (g, l) = setup();
        let lhs = l.model_map(&word(&g, "t^-1 a^2 t"));
        assert_eq!(lhs, ModelElement { translation: vec![q(3, 1)], shift: 0 });
        assert_eq!(lhs, l.model_map(&word(&g, "a^3")));
        assert!(l.model_map(&word(&g, "t^-1 a^2 t a^-3")).is_identity());
    }

    #[test]
    fn commutator_dies() {
        let (g, l) = setup();
        assert!(l.model_map(&word(&g, "t^-1 a^-1 t a^-1 t^-1 a t a")).is_identity());
        assert!(!l.model_map(&word(&g, "a")).is_identity());
        assert_eq!(l.model_map(&word(&g, "a")).translation, vec![q(1, 1)]);
    }

    #[test]
    fn conjugates_of_a_are_powers_of_the_twist() {
        let (g, l) = setup();
        let m = l.model_map(&word(&g, "t^-2 a t^2"));
        assert_eq!(m.translation, vec![q(9, 4)]);
        let m = l.model_map(&word(&g, "t a t^-1"));
        assert_eq!(m.translation, vec![q(2, 3)]);
    }

    #[test]
    fn verdicts() {
        let (g, l) = setup();
        let v = limit_is_identity(&g, &l, &word(&g, "t^-1 a^-1 t a^-1 t^-1 a t a"), 10);
        assert_eq!(v.filtration, FiltrationVerdict::InKernel(1));
        assert!(v.model_trivial && v.agree);
        let v = limit_is_identity(&g, &l, &word(&g, "a"), 10);
        assert_eq!(v.filtration, FiltrationVerdict::NotInKernelUpTo(10));
        assert!(!v.model_trivial && v.agree);
    }

    #[test]
    fn britton_image_matches_word_image() {
        let (g, l) = setup();
        let w = word(&g, "a^5 t^-1 a t a^-2 t a t^-1 t^-1 a^3");
        assert_eq!(l.from_britton(&g.britton_reduce(&w)), l.model_map(&w));
    }

    #[test]
    fn phi_intertwines() {
        let (g, l) = setup();
        let w = word(&g, "a t^-1 a^3 t^2 a^-1");
        let img = g.phi(&g.britton_reduce(&w));
        assert_eq!(l.from_britton(&img), l.phi(&l.model_map(&w)));
    }

    #[test]
    fn denominators_divide_powers_of_det_product() {
        let (g, l) = setup();
        let w = word(&g, "t^3 a t^-5 a^-1 t a t a t^-2");
        let den = l.model_map(&w).denominator();
        // 6^k divisible by den for some small k
        let six_pow = BigInt::from(6).pow(8);
        assert!((six_pow % den).is_zero());
        let _ = g;
    }

    #[test]
    fn rank_two_model() {
        let lam = Monomorphism::new(IntMatrix::diagonal(&[2, 3])).unwrap();
        let mu = Monomorphism::new(IntMatrix::diagonal(&[3, 2])).unwrap();
        let g = HnnGroup::new(lam, mu).unwrap();
        let l = LimitGroup::new(&g);
        assert!(l.model_map(&word(&g, "t^-1 a1^2 t a1^-3")).is_identity());
        assert!(l.model_map(&word(&g, "t^-1 a2^3 t a2^-2")).is_identity());
        let m = l.model_map(&word(&g, "a1 a2 t"));
        assert!(m.translation.iter().all(|x| !x.is_negative()));
        assert!(l.is_identity(&l.multiply(&m, &l.invert(&m))));
    }
}
