//! Letters and words in a free group on indexed generators.
//!
//! A [`Letter`] is a generator or its formal inverse. [`Word`] is a plain
//! sequence of letters; nothing is reduced unless asked for. Words order by
//! shortlex with each generator immediately followed by its inverse, which is
//! the canonical key order used throughout the crate.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Generator `g` is encoded as `g + 1`, its inverse as `-(g + 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Letter(i32);

impl Letter {
    pub fn gen(g: usize) -> Self {
        Letter(g as i32 + 1)
    }

    pub fn inv(g: usize) -> Self {
        Letter(-(g as i32 + 1))
    }

    /// `gen(g)` for exponent `+1`, `inv(g)` for `-1`.
    pub fn with_sign(g: usize, sign: i64) -> Self {
        if sign < 0 {
            Letter::inv(g)
        } else {
            Letter::gen(g)
        }
    }

    pub fn from_code(code: i32) -> Option<Self> {
        (code != 0).then_some(Letter(code))
    }

    pub fn code(self) -> i32 {
        self.0
    }

    pub fn generator(self) -> usize {
        (self.0.unsigned_abs() - 1) as usize
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn exponent(self) -> i64 {
        if self.0 < 0 {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }

    /// Position in the interleaved alphabet `g0 G0 g1 G1 ...`.
    pub fn rank(self) -> usize {
        2 * self.generator() + usize::from(self.is_inverse())
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank().cmp(&other.rank())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![Letter::gen(g)])
    }

    /// Builds a word from signed codes (`k` for generator `k-1`, `-k` for its inverse).
    ///
    /// Panics on a zero code.
    pub fn from_codes(codes: &[i32]) -> Self {
        Word(
            codes
                .iter()
                .map(|&c| Letter::from_code(c).expect("zero letter code"))
                .collect(),
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    /// Concatenation without reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// `self^n`, using the inverse for negative `n`.
    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Word(v)
    }

    /// Free reduction: cancels adjacent `x x^-1` pairs.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.0 {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Free and cyclic reduction (conjugation-invariant form used for relators).
    pub fn cyclically_reduced(&self) -> Word {
        let mut w = self.reduced().0;
        while w.len() >= 2 && w[0] == w[w.len() - 1].inverse() {
            w.pop();
            w.remove(0);
        }
        Word(w)
    }

    pub fn exponent_sum(&self) -> i64 {
        self.0.iter().map(|l| l.exponent()).sum()
    }

    /// Exponent vector over `n` generators (the abelianization image).
    pub fn exponent_vector(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        for l in &self.0 {
            v[l.generator()] += l.exponent();
        }
        v
    }

    /// Number of occurrences of generator `g`, either sign.
    pub fn occurrences(&self, g: usize) -> usize {
        self.0.iter().filter(|l| l.generator() == g).count()
    }

    /// Replaces every occurrence of each generator by its image word.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut v = Vec::new();
        for l in &self.0 {
            let img = &images[l.generator()];
            if l.is_inverse() {
                v.extend(img.0.iter().rev().map(|x| x.inverse()));
            } else {
                v.extend_from_slice(&img.0);
            }
        }
        Word(v)
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.0.iter().map(|l| l.generator()).max()
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortlex with the interleaved letter order.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ε");
        }
        let codes: Vec<i32> = self.0.iter().map(|l| l.code()).collect();
        write!(f, "{codes:?}")
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl std::ops::Mul for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        self.concat(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_reduction_cancels_nested_pairs() {
        let w = Word::from_codes(&[1, 2, -2, -1, 3]);
        assert_eq!(w.reduced(), Word::from_codes(&[3]));
        assert_eq!(Word::from_codes(&[1, -1]).reduced(), Word::identity());
    }

    #[test]
    fn cyclic_reduction_strips_conjugation() {
        let w = Word::from_codes(&[2, 1, 3, -2]);
        assert_eq!(w.cyclically_reduced(), Word::from_codes(&[1, 3]));
    }

    #[test]
    fn inverse_and_pow() {
        let w = Word::from_codes(&[1, -2]);
        assert_eq!(w.inverse(), Word::from_codes(&[2, -1]));
        assert_eq!(w.pow(-2), Word::from_codes(&[2, -1, 2, -1]));
        assert_eq!(w.pow(0), Word::identity());
        assert_eq!(w.concat(&w.inverse()).reduced(), Word::identity());
    }

    #[test]
    fn shortlex_puts_inverse_next_to_generator() {
        let a = Word::from_codes(&[1]);
        let a_inv = Word::from_codes(&[-1]);
        let b = Word::from_codes(&[2]);
        assert!(a < a_inv && a_inv < b);
        assert!(b < Word::from_codes(&[1, 1]));
    }

    #[test]
    fn substitution_inverts_images() {
        let images = vec![Word::from_codes(&[1, 2]), Word::from_codes(&[2])];
        let w = Word::from_codes(&[-1, 2]);
        assert_eq!(w.substitute(&images), Word::from_codes(&[-2, -1, 2]));
    }
}
