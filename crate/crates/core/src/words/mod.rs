//! Free-group words, presentations and homomorphic evaluation.
//!
//! Generators are 1-based indices. Names only exist in [`Presentation`]
//! and in the parser.

mod hom;
mod parse;
mod presentation;
mod random;
mod stallings;

use std::fmt;

pub use hom::{evaluate_hom, FreeGroup, Group, GroupHom, HomError, SymmetricGroup};
pub use parse::{parse_word, print_word, ParseError};
pub use presentation::Presentation;
pub use random::{random_word, random_word_up_to, random_word_with, trial_rng};
pub use stallings::{is_surjective_to_f2, subgroup_is_whole_free_group};

/// A signed generator `a_gen^{±1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    /// 1-based generator index.
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(gen: usize) -> Self {
        assert!(gen >= 1, "generators are 1-based");
        Letter { gen, inverse: false }
    }

    pub fn neg(gen: usize) -> Self {
        assert!(gen >= 1, "generators are 1-based");
        Letter { gen, inverse: true }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    fn cancels(self, other: Letter) -> bool {
        self.gen == other.gen && self.inverse != other.inverse
    }
}

/// A freely reduced word. The empty word is the identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(gen: usize) -> Self {
        Word { letters: vec![Letter::pos(gen)] }
    }

    /// Freely reduces the letters.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            if out.last().is_some_and(|&last| last.cancels(l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Word from signed 1-based indices, e.g. `[1, 2, -1, -2]` is `[a,b]`.
    pub fn from_signed(indices: &[i64]) -> Self {
        Word::from_letters(indices.iter().map(|&i| {
            assert!(i != 0, "generator index 0");
            let gen = i.unsigned_abs() as usize;
            if i > 0 {
                Letter::pos(gen)
            } else {
                Letter::neg(gen)
            }
        }))
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

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index used, 0 for the identity.
    pub fn max_generator(&self) -> usize {
        self.letters.iter().map(|l| l.gen).max().unwrap_or(0)
    }

    pub fn product(&self, other: &Word) -> Word {
        let mut left = self.letters.clone();
        let mut skip = 0;
        while skip < other.letters.len() && left.last().is_some_and(|&l| l.cancels(other.letters[skip])) {
            left.pop();
            skip += 1;
        }
        left.extend_from_slice(&other.letters[skip..]);
        Word { letters: left }
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    pub fn power(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.product(&base);
        }
        out
    }

    /// `u v u⁻¹ v⁻¹`.
    pub fn commutator(&self, other: &Word) -> Word {
        self.product(other).product(&self.inverse()).product(&other.inverse())
    }

    /// `g self g⁻¹`.
    pub fn conjugate_by(&self, g: &Word) -> Word {
        g.product(self).product(&g.inverse())
    }

    /// Exponent-sum vector of length `n`.
    pub fn abelianize(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0; n];
        for l in &self.letters {
            assert!(l.gen <= n, "generator {} out of range for rank {n}", l.gen);
            v[l.gen - 1] += l.sign();
        }
        v
    }

    /// `a_1^{e_1} ... a_n^{e_n}`.
    pub fn canonical(exponents: &[i64]) -> Word {
        Word::from_letters(exponents.iter().enumerate().flat_map(|(i, &e)| {
            let l = if e < 0 { Letter::neg(i + 1) } else { Letter::pos(i + 1) };
            std::iter::repeat_n(l, e.unsigned_abs() as usize)
        }))
    }

    /// Applies a substitution `a_i ↦ images[i-1]`.
    pub fn substitute(&self, images: &[Word]) -> Word {
        self.letters.iter().fold(Word::identity(), |acc, l| {
            let img = &images[l.gen - 1];
            if l.inverse {
                acc.product(&img.inverse())
            } else {
                acc.product(img)
            }
        })
    }
}

impl fmt::Display for Word {
    /// Default names `a, b, c, ...` for the first 26 generators, `x27, ...` beyond.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.max_generator();
        write!(f, "{}", print_word(self, &default_names(n)))
    }
}

/// `a, b, c, ...` (then `x27`, `x28`, ... past 26).
pub fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| if i <= 26 { ((b'a' + (i - 1) as u8) as char).to_string() } else { format!("x{i}") }).collect()
}

/// Free product reduction of `u · v`.
pub fn word_product(u: &Word, v: &Word) -> Word {
    u.product(v)
}

pub fn word_inverse(u: &Word) -> Word {
    u.inverse()
}

pub fn word_power(u: &Word, n: i64) -> Word {
    u.power(n)
}

pub fn commutator(u: &Word, v: &Word) -> Word {
    u.commutator(v)
}

pub fn abelianize(u: &Word, n: usize) -> Vec<i64> {
    u.abelianize(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &[i64]) -> Word {
        Word::from_signed(s)
    }

    #[test]
    fn product_cancels() {
        assert_eq!(w(&[1, 2]).product(&w(&[-2, 1])), w(&[1, 1]));
        assert_eq!(w(&[1, 2, 3]).product(&w(&[-3, -2, -1])), Word::identity());
    }

    #[test]
    fn inverse_and_power() {
        assert_eq!(w(&[1, 2, 3]).inverse(), w(&[-3, -2, -1]));
        let c = w(&[1, 2]).commutator(&w(&[2]));
        assert_eq!(c.power(0), Word::identity());
        assert_eq!(w(&[1, 2]).power(-2), w(&[-2, -1, -2, -1]));
    }

    #[test]
    fn commutators() {
        assert_eq!(w(&[1]).commutator(&w(&[2])), w(&[1, 2, -1, -2]));
        assert_eq!(w(&[1]).commutator(&w(&[1])), Word::identity());
        assert_eq!(w(&[1, 2]).commutator(&w(&[1, 2])), Word::identity());
    }

    #[test]
    fn abelianization() {
        assert_eq!(w(&[1, 2, -1, -2]).abelianize(2), vec![0, 0]);
        assert_eq!(w(&[1, 1, -2]).abelianize(2), vec![2, -1]);
        assert_eq!(w(&[3, 4]).power(3).abelianize(4), vec![0, 0, 3, 3]);
    }

    #[test]
    fn reduction_on_construction() {
        assert_eq!(w(&[-1, 1, 2]), w(&[2]));
        assert_eq!(Word::canonical(&[2, 0, -1]), w(&[1, 1, -3]));
    }
}
