//! Britton normal forms and the group law on them.
//!
//! An element is stored as `a₀ t^{ε₁} a₁ … t^{εₙ} aₙ` where each `a_k`
//! (k ≥ 1) is the canonical residue modulo `λ(Z^d)` when `ε_k = -1` and
//! modulo `μ(Z^d)` when `ε_k = +1`. Lattice parts are pushed leftward with
//! `t⁻¹·λ(x) = μ(x)·t⁻¹` and `t·μ(x) = λ(x)·t`, so the head carries the
//! accumulated abelian part. With every residue normalized, a pinch can only
//! appear as `t^{-ε}·0·t^{ε}`, and such pairs are never stored.

use std::fmt::Write as _;

use num_traits::{One, Zero};

use super::group::HnnGroup;
use crate::algebra::{FreeWord, LatticeVector, Letter, Sign};
use crate::oracle::{CanonicalKey, KeyWriter, MarkedGroup};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BrittonForm {
    pub(crate) head: LatticeVector,
    pub(crate) tail: Vec<(Sign, LatticeVector)>,
}

impl BrittonForm {
    pub fn identity(dim: usize) -> Self {
        BrittonForm {
            head: LatticeVector::zero(dim),
            tail: Vec::new(),
        }
    }

    pub fn head(&self) -> &LatticeVector {
        &self.head
    }

    pub fn tail(&self) -> &[(Sign, LatticeVector)] {
        &self.tail
    }

    /// Number of stable letters.
    pub fn t_length(&self) -> usize {
        self.tail.len()
    }

    /// Exponent sum of `t`.
    pub fn t_exponent(&self) -> i64 {
        self.tail.iter().map(|(s, _)| s.as_i64()).sum()
    }

    pub fn is_identity(&self) -> bool {
        self.tail.is_empty() && self.head.is_zero()
    }
}

impl HnnGroup {
    fn last_vector_mut<'a>(&self, f: &'a mut BrittonForm) -> &'a mut LatticeVector {
        match f.tail.last_mut() {
            Some((_, v)) => v,
            None => &mut f.head,
        }
    }

    /// Renormalizes blocks right-to-left starting at the last one.
    fn absorb_left(&self, f: &mut BrittonForm) {
        let mut k = f.tail.len();
        while k > 0 {
            let (sign, block) = &f.tail[k - 1];
            let (residue, quotient) = match sign {
                Sign::Neg => self.lambda.residue(block),
                Sign::Pos => self.mu.residue(block),
            };
            if quotient.is_zero() {
                break;
            }
            let pushed = match sign {
                Sign::Neg => self.mu.apply(&quotient),
                Sign::Pos => self.lambda.apply(&quotient),
            };
            f.tail[k - 1].1 = residue;
            if k == 1 {
                f.head.add_assign(&pushed);
            } else {
                f.tail[k - 2].1.add_assign(&pushed);
            }
            k -= 1;
        }
    }

    /// `f ← f · v` for `v ∈ Z^d`.
    pub(crate) fn push_vector(&self, f: &mut BrittonForm, v: &LatticeVector) {
        if v.is_zero() {
            return;
        }
        self.last_vector_mut(f).add_assign(v);
        self.absorb_left(f);
    }

    /// `f ← f · t^{sign}`
    pub(crate) fn push_t(&self, f: &mut BrittonForm, sign: Sign) {
        if let Some((last, block)) = f.tail.last() {
            if *last == sign.inverse() && block.is_zero() {
                f.tail.pop();
                return;
            }
        }
        f.tail.push((sign, LatticeVector::zero(self.rank())));
    }

    fn push_letter(&self, f: &mut BrittonForm, letter: Letter) {
        if letter.generator == 0 {
            self.push_t(f, letter.sign);
        } else {
            let mut v = LatticeVector::zero(self.rank());
            v.0[letter.generator - 1] = letter.sign.as_i64().into();
            self.push_vector(f, &v);
        }
    }

    /// Canonical form of the element named by a word over `{t, a_1, …, a_d}`.
    pub fn britton_reduce(&self, word: &FreeWord) -> BrittonForm {
        assert_eq!(word.rank(), self.rank() + 1, "word over the wrong marking");
        let mut f = BrittonForm::identity(self.rank());
        for &l in word.letters() {
            self.push_letter(&mut f, l);
        }
        f
    }

    pub(crate) fn multiply_into(&self, f: &mut BrittonForm, h: &BrittonForm) {
        self.push_vector(f, &h.head);
        for (sign, block) in &h.tail {
            self.push_t(f, *sign);
            self.push_vector(f, block);
        }
    }

    pub fn multiply_forms(&self, g: &BrittonForm, h: &BrittonForm) -> BrittonForm {
        let mut f = g.clone();
        self.multiply_into(&mut f, h);
        f
    }

    pub fn invert_form(&self, g: &BrittonForm) -> BrittonForm {
        let mut f = BrittonForm::identity(self.rank());
        for (sign, block) in g.tail.iter().rev() {
            self.push_vector(&mut f, &-block);
            self.push_t(&mut f, sign.inverse());
        }
        self.push_vector(&mut f, &-&g.head);
        f
    }

    /// `a^v` as a normal form.
    pub fn vector_element(&self, v: &LatticeVector) -> BrittonForm {
        BrittonForm {
            head: v.clone(),
            tail: Vec::new(),
        }
    }

    pub fn t_element(&self) -> BrittonForm {
        let mut f = BrittonForm::identity(self.rank());
        self.push_t(&mut f, Sign::Pos);
        f
    }

    /// A word over `{t, a_j}` spelling the normal form literally.
    pub fn form_to_word(&self, g: &BrittonForm) -> FreeWord {
        let rank = self.rank() + 1;
        let mut letters = Vec::new();
        let vector_letters = |v: &LatticeVector, letters: &mut Vec<Letter>| {
            for (j, c) in v.0.iter().enumerate() {
                let sign = if c < &num_bigint::BigInt::zero() {
                    Sign::Neg
                } else {
                    Sign::Pos
                };
                let n: u64 = c.magnitude().try_into().expect("exponent fits in u64");
                for _ in 0..n {
                    letters.push(Letter::new(j + 1, sign));
                }
            }
        };
        vector_letters(&g.head, &mut letters);
        for (sign, block) in &g.tail {
            letters.push(Letter::new(0, *sign));
            vector_letters(block, &mut letters);
        }
        FreeWord::new(rank, letters).expect("letters within the marking")
    }

    fn format_vector(&self, v: &LatticeVector, out: &mut String) {
        if v.is_zero() {
            return;
        }
        if !out.is_empty() {
            out.push(' ');
        }
        if self.rank() == 1 {
            let c = &v.0[0];
            if c.is_one() {
                out.push('a');
            } else {
                let _ = write!(out, "a^{c}");
            }
        } else {
            let _ = write!(out, "a{v}");
        }
    }

    pub fn format_form(&self, g: &BrittonForm) -> String {
        let mut out = String::new();
        self.format_vector(&g.head, &mut out);
        for (sign, block) in &g.tail {
            if !out.is_empty() {
                out.push(' ');
            }
            out.push_str(match sign {
                Sign::Pos => "t",
                Sign::Neg => "t^-1",
            });
            self.format_vector(block, &mut out);
        }
        if out.is_empty() {
            out.push('e');
        }
        out
    }
}

impl MarkedGroup for HnnGroup {
    type Element = BrittonForm;

    fn marking(&self) -> &[String] {
        &self.names
    }

    fn identity(&self) -> BrittonForm {
        BrittonForm::identity(self.rank())
    }

    fn generator(&self, index: usize) -> BrittonForm {
        if index == 0 {
            self.t_element()
        } else {
            self.vector_element(&LatticeVector::unit(self.rank(), index - 1))
        }
    }

    fn multiply(&self, g: &BrittonForm, h: &BrittonForm) -> BrittonForm {
        self.multiply_forms(g, h)
    }

    fn invert(&self, g: &BrittonForm) -> BrittonForm {
        self.invert_form(g)
    }

    fn is_identity(&self, g: &BrittonForm) -> bool {
        g.is_identity()
    }

    /// `(d, head, #tail, (sign, block)*)` with length-prefixed integers.
    fn canonical_key(&self, g: &BrittonForm) -> CanonicalKey {
        let mut k = KeyWriter::new();
        k.u32(self.rank() as u32);
        for c in &g.head.0 {
            k.bigint(c);
        }
        k.u32(g.tail.len() as u32);
        for (sign, block) in &g.tail {
            k.byte(match sign {
                Sign::Neg => 0,
                Sign::Pos => 1,
            });
            for c in &block.0 {
                k.bigint(c);
            }
        }
        k.finish()
    }

    fn mul_letter(&self, g: &BrittonForm, letter: Letter) -> BrittonForm {
        let mut f = g.clone();
        self.push_letter(&mut f, letter);
        f
    }

    fn evaluate(&self, word: &FreeWord) -> BrittonForm {
        self.britton_reduce(word)
    }

    fn format_element(&self, g: &BrittonForm) -> String {
        self.format_form(g)
    }
}
