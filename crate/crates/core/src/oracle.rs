//! The marked-group oracle contract and the simplest realizations of it.

use std::fmt::{self, Debug};
use std::hash::Hash;

use crate::algebra::{FreeWord, Letter, Sign};

/// Byte serialization of a group element, injective on the group.
///
/// Ordering is plain lexicographic byte order; it is stable across runs so
/// ball orderings are reproducible.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(pub Vec<u8>);

impl CanonicalKey {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Helper for building keys with fixed-width length prefixes.
#[derive(Default)]
pub struct KeyWriter(Vec<u8>);

impl KeyWriter {
    pub fn new() -> Self {
        KeyWriter(Vec::new())
    }

    pub fn u32(&mut self, v: u32) -> &mut Self {
        self.0.extend_from_slice(&v.to_be_bytes());
        self
    }

    pub fn i64(&mut self, v: i64) -> &mut Self {
        // offset so byte order matches numeric order
        self.0.extend_from_slice(&((v as u64) ^ (1 << 63)).to_be_bytes());
        self
    }

    pub fn bigint(&mut self, v: &num_bigint::BigInt) -> &mut Self {
        let bytes = v.to_signed_bytes_be();
        self.u32(bytes.len() as u32);
        self.0.extend_from_slice(&bytes);
        self
    }

    pub fn byte(&mut self, b: u8) -> &mut Self {
        self.0.push(b);
        self
    }

    pub fn finish(self) -> CanonicalKey {
        CanonicalKey(self.0)
    }
}

/// A group `F_m / N` presented through an oracle for its elements together
/// with an ordered marking.
pub trait MarkedGroup: Sync {
    type Element: Clone + Eq + Hash + Debug + Send + Sync;

    /// Names of the marking, in order.
    fn marking(&self) -> &[String];

    fn identity(&self) -> Self::Element;

    /// The element named by marking entry `index`.
    fn generator(&self, index: usize) -> Self::Element;

    fn multiply(&self, g: &Self::Element, h: &Self::Element) -> Self::Element;

    fn invert(&self, g: &Self::Element) -> Self::Element;

    fn canonical_key(&self, g: &Self::Element) -> CanonicalKey;

    fn is_identity(&self, g: &Self::Element) -> bool {
        *g == self.identity()
    }

    fn rank(&self) -> usize {
        self.marking().len()
    }

    /// `g · s^{±1}` for a marking entry `s`.
    fn mul_letter(&self, g: &Self::Element, letter: Letter) -> Self::Element {
        let s = self.generator(letter.generator);
        match letter.sign {
            Sign::Pos => self.multiply(g, &s),
            Sign::Neg => self.multiply(g, &self.invert(&s)),
        }
    }

    /// Image of a word in the marking under `F_m → G`.
    fn evaluate(&self, word: &FreeWord) -> Self::Element {
        word.letters()
            .iter()
            .fold(self.identity(), |g, &l| self.mul_letter(&g, l))
    }

    fn format_element(&self, g: &Self::Element) -> String {
        format!("{g:?}")
    }
}

impl<T: MarkedGroup> MarkedGroup for &T {
    type Element = T::Element;

    fn marking(&self) -> &[String] {
        (**self).marking()
    }
    fn identity(&self) -> Self::Element {
        (**self).identity()
    }
    fn generator(&self, index: usize) -> Self::Element {
        (**self).generator(index)
    }
    fn multiply(&self, g: &Self::Element, h: &Self::Element) -> Self::Element {
        (**self).multiply(g, h)
    }
    fn invert(&self, g: &Self::Element) -> Self::Element {
        (**self).invert(g)
    }
    fn canonical_key(&self, g: &Self::Element) -> CanonicalKey {
        (**self).canonical_key(g)
    }
    fn is_identity(&self, g: &Self::Element) -> bool {
        (**self).is_identity(g)
    }
    fn mul_letter(&self, g: &Self::Element, letter: Letter) -> Self::Element {
        (**self).mul_letter(g, letter)
    }
    fn format_element(&self, g: &Self::Element) -> String {
        (**self).format_element(g)
    }
}

fn default_names(prefix: &str, rank: usize) -> Vec<String> {
    (1..=rank).map(|i| format!("{prefix}{i}")).collect()
}

/// The free group `F_m`; elements are reduced words.
#[derive(Clone, Debug)]
pub struct FreeGroup {
    names: Vec<String>,
}

impl FreeGroup {
    pub fn new(rank: usize) -> Self {
        let names = if rank == 1 {
            vec!["x".to_string()]
        } else {
            default_names("x", rank)
        };
        FreeGroup { names }
    }

    pub fn with_names(names: Vec<String>) -> Self {
        FreeGroup { names }
    }
}

impl MarkedGroup for FreeGroup {
    type Element = FreeWord;

    fn marking(&self) -> &[String] {
        &self.names
    }
    fn identity(&self) -> FreeWord {
        FreeWord::empty(self.names.len())
    }
    fn generator(&self, index: usize) -> FreeWord {
        FreeWord::letter(self.names.len(), Letter::pos(index)).expect("generator in range")
    }
    fn multiply(&self, g: &FreeWord, h: &FreeWord) -> FreeWord {
        g.mul(h)
    }
    fn invert(&self, g: &FreeWord) -> FreeWord {
        g.inverse()
    }
    fn is_identity(&self, g: &FreeWord) -> bool {
        g.is_empty()
    }
    fn canonical_key(&self, g: &FreeWord) -> CanonicalKey {
        let mut k = KeyWriter::new();
        k.u32(g.len() as u32);
        for l in g.letters() {
            k.u32(l.generator as u32).byte(match l.sign {
                Sign::Pos => 0,
                Sign::Neg => 1,
            });
        }
        k.finish()
    }
    fn mul_letter(&self, g: &FreeWord, letter: Letter) -> FreeWord {
        let mut out = g.clone();
        out.push(letter);
        out
    }
    fn evaluate(&self, word: &FreeWord) -> FreeWord {
        word.clone()
    }
    fn format_element(&self, g: &FreeWord) -> String {
        g.format_with(&self.names)
    }
}

/// `Z/n` marked by `1` (n = 0 gives `Z`, n = 1 the trivial group with a
/// trivial generator).
#[derive(Clone, Debug)]
pub struct CyclicGroup {
    order: u64,
    names: Vec<String>,
}

impl CyclicGroup {
    pub fn new(order: u64) -> Self {
        CyclicGroup {
            order,
            names: vec!["x".to_string()],
        }
    }

    fn normalize(&self, v: i64) -> i64 {
        if self.order == 0 {
            v
        } else {
            v.rem_euclid(self.order as i64)
        }
    }
}

impl MarkedGroup for CyclicGroup {
    type Element = i64;

    fn marking(&self) -> &[String] {
        &self.names
    }
    fn identity(&self) -> i64 {
        0
    }
    fn generator(&self, _index: usize) -> i64 {
        self.normalize(1)
    }
    fn multiply(&self, g: &i64, h: &i64) -> i64 {
        self.normalize(g + h)
    }
    fn invert(&self, g: &i64) -> i64 {
        self.normalize(-g)
    }
    fn canonical_key(&self, g: &i64) -> CanonicalKey {
        let mut k = KeyWriter::new();
        k.i64(*g);
        k.finish()
    }
    fn format_element(&self, g: &i64) -> String {
        g.to_string()
    }
}

/// Re-marks an oracle with an arbitrary ordered list of its elements.
pub struct Remarked<O: MarkedGroup> {
    base: O,
    names: Vec<String>,
    generators: Vec<O::Element>,
    inverses: Vec<O::Element>,
}

impl<O: MarkedGroup> Remarked<O> {
    pub fn new(base: O, names: Vec<String>, generators: Vec<O::Element>) -> Self {
        assert_eq!(names.len(), generators.len());
        let inverses = generators.iter().map(|g| base.invert(g)).collect();
        Remarked {
            base,
            names,
            generators,
            inverses,
        }
    }

    /// Same group with the marking entries permuted: entry `k` of the new
    /// marking is entry `order[k]` of the old one.
    pub fn permuted(base: O, order: &[usize]) -> Self {
        let names = order.iter().map(|&i| base.marking()[i].clone()).collect();
        let generators = order.iter().map(|&i| base.generator(i)).collect();
        Remarked::new(base, names, generators)
    }

    pub fn base(&self) -> &O {
        &self.base
    }
}

impl<O: MarkedGroup> MarkedGroup for Remarked<O> {
    type Element = O::Element;

    fn marking(&self) -> &[String] {
        &self.names
    }
    fn identity(&self) -> O::Element {
        self.base.identity()
    }
    fn generator(&self, index: usize) -> O::Element {
        self.generators[index].clone()
    }
    fn multiply(&self, g: &O::Element, h: &O::Element) -> O::Element {
        self.base.multiply(g, h)
    }
    fn invert(&self, g: &O::Element) -> O::Element {
        self.base.invert(g)
    }
    fn canonical_key(&self, g: &O::Element) -> CanonicalKey {
        self.base.canonical_key(g)
    }
    fn is_identity(&self, g: &O::Element) -> bool {
        self.base.is_identity(g)
    }
    fn mul_letter(&self, g: &O::Element, letter: Letter) -> O::Element {
        match letter.sign {
            Sign::Pos => self.base.multiply(g, &self.generators[letter.generator]),
            Sign::Neg => self.base.multiply(g, &self.inverses[letter.generator]),
        }
    }
    fn format_element(&self, g: &O::Element) -> String {
        self.base.format_element(g)
    }
}

impl<O: MarkedGroup + Debug> Debug for Remarked<O> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Remarked")
            .field("base", &self.base)
            .field("names", &self.names)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_injective_on_free_words() {
        let f = FreeGroup::new(2);
        let words = crate::algebra::reduced_words_up_to(2, 4);
        let keys: std::collections::HashSet<_> =
            words.iter().map(|w| f.canonical_key(w)).collect();
        assert_eq!(keys.len(), words.len());
    }

    #[test]
    fn i64_key_order_matches_numeric_order() {
        let z = CyclicGroup::new(0);
        let mut vals = vec![5i64, -3, 0, -100, 7];
        let mut by_key = vals.clone();
        by_key.sort_by_key(|v| z.canonical_key(v));
        vals.sort();
        assert_eq!(vals, by_key);
    }

    #[test]
    fn cyclic_wraps() {
        let c = CyclicGroup::new(5);
        assert_eq!(c.multiply(&3, &4), 2);
        assert_eq!(c.invert(&2), 3);
        assert!(c.is_identity(&c.multiply(&2, &3)));
    }

    #[test]
    fn remarked_evaluates_with_new_generators() {
        let z = CyclicGroup::new(0);
        let view = Remarked::new(z, vec!["two".into()], vec![2]);
        let w = FreeWord::from_pairs(1, &[(0, 1), (0, 1), (0, 1)]).unwrap();
        assert_eq!(view.evaluate(&w), 6);
        let w = FreeWord::from_pairs(1, &[(0, -1)]).unwrap();
        assert_eq!(view.evaluate(&w), -2);
    }
}
