use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::WordFunction;
use crate::words::Word;
use crate::Rational;

/// Finitely supported element of `ℚ[F]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GroupRingElement {
    terms: BTreeMap<Word, Rational>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_word(Word::identity())
    }

    pub fn from_word(w: Word) -> Self {
        let mut x = Self::zero();
        x.add_term(w, Rational::one());
        x
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.product(v), a * b);
            }
        }
        out
    }

    /// Linear extension of `f`.
    pub fn apply<F: WordFunction + ?Sized>(&self, f: &F) -> Rational {
        self.terms.iter().map(|(w, c)| c * f.eval(w)).sum()
    }
}

/// `(γ₁ − 1) ⋯ (γ_n − 1)`.
pub fn epsilon(words: &[Word]) -> GroupRingElement {
    words.iter().fold(GroupRingElement::one(), |acc, w| {
        acc.mul(&GroupRingElement::from_word(w.clone()).sub(&GroupRingElement::one()))
    })
}

/// `f((γ₁ − 1) ⋯ (γ_n − 1))` by inclusion–exclusion over subsets.
pub fn epsilon_eval<F: WordFunction + ?Sized>(f: &F, words: &[Word]) -> Rational {
    let n = words.len();
    let mut total = Rational::zero();
    for mask in 0u32..(1 << n) {
        let mut prod = Word::identity();
        for (i, w) in words.iter().enumerate() {
            if mask & (1 << i) != 0 {
                prod = prod.product(w);
            }
        }
        let v = f.eval(&prod);
        if (n - mask.count_ones() as usize).is_multiple_of(2) {
            total += v;
        } else {
            total -= v;
        }
    }
    total
}

/// Finitely supported element of `ℚ[F] ⊗ ℚ[F]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Tensor2 {
    terms: BTreeMap<(Word, Word), Rational>,
}

impl Tensor2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn tensor(x: &GroupRingElement, y: &GroupRingElement) -> Self {
        let mut t = Self::zero();
        for (u, a) in x.terms() {
            for (v, b) in y.terms() {
                t.add_term(u.clone(), v.clone(), a * b);
            }
        }
        t
    }

    fn add_term(&mut self, u: Word, v: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (u, v);
        match self.terms.get_mut(&key) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((u, v), c) in &other.terms {
            out.add_term(u.clone(), v.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((u, v), c) in &other.terms {
            out.add_term(u.clone(), v.clone(), -c.clone());
        }
        out
    }
}

/// The parallelogram map `p(γ ⊗ δ) = γδ + γδ⁻¹ − 2γ − 2δ`, extended bilinearly.
pub fn p_map(t: &Tensor2) -> GroupRingElement {
    let two = Rational::from_integer(2.into());
    let mut out = GroupRingElement::zero();
    for ((g, d), c) in &t.terms {
        out.add_term(g.product(d), c.clone());
        out.add_term(g.product(&d.inverse()), c.clone());
        out.add_term(g.clone(), -(c * &two));
        out.add_term(d.clone(), -(c * &two));
    }
    out
}
