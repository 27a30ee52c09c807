//! Reduced words in a free group of finite rank.

use std::fmt;

use crate::error::{Error, Result};

/// Exponent sign of a single letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn inverse(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }
}

/// A generator of the marking together with an exponent sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn new(generator: usize, sign: Sign) -> Self {
        Letter { generator, sign }
    }

    pub fn pos(generator: usize) -> Self {
        Letter::new(generator, Sign::Pos)
    }

    pub fn neg(generator: usize) -> Self {
        Letter::new(generator, Sign::Neg)
    }

    pub fn inverse(self) -> Self {
        Letter::new(self.generator, self.sign.inverse())
    }

    fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.sign != other.sign
    }
}

/// A freely reduced word over a marking of size `rank`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn empty(rank: usize) -> Self {
        FreeWord {
            rank,
            letters: Vec::new(),
        }
    }

    /// Freely reduces `raw`, rejecting letters outside the marking.
    pub fn new(rank: usize, raw: impl IntoIterator<Item = Letter>) -> Result<Self> {
        let mut letters: Vec<Letter> = Vec::new();
        for letter in raw {
            if letter.generator >= rank {
                return Err(Error::InvalidGenerator {
                    index: letter.generator,
                    rank,
                });
            }
            push_reduced(&mut letters, letter);
        }
        Ok(FreeWord { rank, letters })
    }

    pub fn letter(rank: usize, letter: Letter) -> Result<Self> {
        FreeWord::new(rank, [letter])
    }

    /// Builds a word from `(generator, ±1)` pairs.
    pub fn from_pairs(rank: usize, pairs: &[(usize, i64)]) -> Result<Self> {
        let mut letters = Vec::with_capacity(pairs.len());
        for &(generator, e) in pairs {
            let sign = Sign::from_i64(e).ok_or(Error::InvalidExponent(e))?;
            letters.push(Letter::new(generator, sign));
        }
        FreeWord::new(rank, letters)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Concatenation followed by free reduction.
    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        assert_eq!(self.rank, other.rank, "words over different markings");
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut letters, l);
        }
        FreeWord {
            rank: self.rank,
            letters,
        }
    }

    pub fn push(&mut self, letter: Letter) {
        assert!(letter.generator < self.rank);
        push_reduced(&mut self.letters, letter);
    }

    pub fn pow(&self, exponent: i64) -> FreeWord {
        let base = if exponent < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut out = FreeWord::empty(self.rank);
        for _ in 0..exponent.unsigned_abs() {
            out = out.mul(&base);
        }
        out
    }

    /// `self⁻¹ · other · self`
    pub fn conjugate_by(&self, conjugator: &FreeWord) -> FreeWord {
        conjugator.inverse().mul(self).mul(conjugator)
    }

    /// `[u, v] = u⁻¹ v⁻¹ u v`
    pub fn commutator(u: &FreeWord, v: &FreeWord) -> FreeWord {
        u.inverse().mul(&v.inverse()).mul(u).mul(v)
    }

    /// Number of occurrences of `generator` with either sign.
    pub fn count_generator(&self, generator: usize) -> usize {
        self.letters
            .iter()
            .filter(|l| l.generator == generator)
            .count()
    }

    /// Renders the word with the given generator names, `e` for the empty word.
    pub fn format_with(&self, names: &[String]) -> String {
        if self.letters.is_empty() {
            return "e".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            let name = names
                .get(l.generator)
                .cloned()
                .unwrap_or_else(|| format!("x{}", l.generator + 1));
            let exp = run as i64 * l.sign.as_i64();
            if exp == 1 {
                parts.push(name);
            } else {
                parts.push(format!("{name}^{exp}"));
            }
            i += run;
        }
        parts.join(" ")
    }

    /// Parses a whitespace-separated word such as `t^-1 a^2 t`.
    ///
    /// Each token is a generator name optionally followed by `^k`; `e` and
    /// `1` denote the identity.
    pub fn parse(text: &str, names: &[String]) -> Result<FreeWord> {
        let rank = names.len();
        let mut letters = Vec::new();
        for token in text.split(|c: char| c.is_whitespace() || c == '*' || c == '.') {
            if token.is_empty() || token == "e" || token == "1" {
                continue;
            }
            let (name, exp) = match token.split_once('^') {
                Some((n, e)) => {
                    let e: i64 = e
                        .trim_start_matches('(')
                        .trim_end_matches(')')
                        .parse()
                        .map_err(|_| Error::WordSyntax(token.to_string()))?;
                    (n, e)
                }
                None => (token, 1),
            };
            let generator = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::WordSyntax(token.to_string()))?;
            let sign = if exp < 0 { Sign::Neg } else { Sign::Pos };
            for _ in 0..exp.unsigned_abs() {
                letters.push(Letter::new(generator, sign));
            }
        }
        FreeWord::new(rank, letters)
    }
}

fn push_reduced(letters: &mut Vec<Letter>, letter: Letter) {
    match letters.last() {
        Some(&last) if last.cancels(letter) => {
            letters.pop();
        }
        _ => letters.push(letter),
    }
}

/// Free reduction of an arbitrary sequence of signed letters.
pub fn free_reduce(rank: usize, raw: &[Letter]) -> Result<FreeWord> {
    FreeWord::new(rank, raw.iter().copied())
}

/// Enumerates every reduced word of length exactly `len` in shortlex order.
pub fn reduced_words_of_length(rank: usize, len: usize) -> Vec<FreeWord> {
    let mut out = vec![FreeWord::empty(rank)];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * 2 * rank);
        for w in &out {
            for generator in 0..rank {
                for sign in [Sign::Pos, Sign::Neg] {
                    let l = Letter::new(generator, sign);
                    if w.letters.last().is_some_and(|last| last.cancels(l)) {
                        continue;
                    }
                    let mut letters = w.letters.clone();
                    letters.push(l);
                    next.push(FreeWord { rank, letters });
                }
            }
        }
        out = next;
    }
    out
}

/// Every reduced word of length at most `max_len`, shortest first.
pub fn reduced_words_up_to(rank: usize, max_len: usize) -> Vec<FreeWord> {
    (0..=max_len)
        .flat_map(|n| reduced_words_of_length(rank, n))
        .collect()
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.rank).map(|i| format!("x{}", i + 1)).collect();
        f.write_str(&self.format_with(&names))
    }
}
