//! Truncated Magnus expansion `a_i ↦ 1 + X_i` in the free associative algebra.
//!
//! Variables are 0-based: `X_0` is attached to the first generator. The same
//! 0-based convention is used for [`Lambda2Vector`] keys.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::scalar::{format_rational, int};
use crate::words::Word;
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MagnusError {
    #[error("series must have constant coefficient 1 to be inverted")]
    NonUnit,
    #[error("rank or degree cap mismatch: ({0}, {1}) vs ({2}, {3})")]
    Mismatch(usize, usize, usize, usize),
    #[error("word has nonzero abelianization {0:?}")]
    NonzeroAbelianization(Vec<i64>),
    #[error("degree-2 coefficients are not antisymmetric at ({0}, {1})")]
    NotAntisymmetric(usize, usize),
}

/// Element of `ℚ⟨X_0..X_{rank-1}⟩` modulo monomials of degree `> degree_cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedTensorSeries {
    rank: usize,
    degree_cap: usize,
    coeffs: BTreeMap<Vec<usize>, Rational>,
}

impl TruncatedTensorSeries {
    pub fn zero(rank: usize, degree_cap: usize) -> Self {
        TruncatedTensorSeries { rank, degree_cap, coeffs: BTreeMap::new() }
    }

    pub fn one(rank: usize, degree_cap: usize) -> Self {
        let mut s = Self::zero(rank, degree_cap);
        s.coeffs.insert(Vec::new(), Rational::one());
        s
    }

    /// Builds a series from `(monomial, coefficient)` pairs; longer monomials are dropped.
    pub fn from_terms<I>(rank: usize, degree_cap: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<usize>, Rational)>,
    {
        let mut s = Self::zero(rank, degree_cap);
        for (k, c) in terms {
            assert!(k.iter().all(|&i| i < rank), "variable out of range");
            if k.len() <= degree_cap {
                s.add_term(k, c);
            }
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn coefficient(&self, monomial: &[usize]) -> Rational {
        self.coeffs.get(monomial).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.coeffs.iter()
    }

    fn add_term(&mut self, k: Vec<usize>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&k) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.coeffs.remove(&k);
                }
            }
            None => {
                self.coeffs.insert(k, c);
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), MagnusError> {
        if self.rank != other.rank || self.degree_cap != other.degree_cap {
            return Err(MagnusError::Mismatch(self.rank, self.degree_cap, other.rank, other.degree_cap));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, MagnusError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    /// Truncated concatenation product.
    pub fn product(&self, other: &Self) -> Result<Self, MagnusError> {
        self.check_compatible(other)?;
        let mut acc: BTreeMap<Vec<usize>, Rational> = BTreeMap::new();
        for (k1, c1) in &self.coeffs {
            for (k2, c2) in &other.coeffs {
                if k1.len() + k2.len() > self.degree_cap {
                    continue;
                }
                let mut k = k1.clone();
                k.extend_from_slice(k2);
                *acc.entry(k).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(TruncatedTensorSeries { rank: self.rank, degree_cap: self.degree_cap, coeffs: acc })
    }

    /// `(1 + N)⁻¹ = Σ (−N)^k`, which terminates because `N` has no constant term.
    pub fn inverse(&self) -> Result<Self, MagnusError> {
        if self.coefficient(&[]) != Rational::one() {
            return Err(MagnusError::NonUnit);
        }
        let mut neg_n = self.clone();
        neg_n.coeffs.remove(&Vec::new());
        for c in neg_n.coeffs.values_mut() {
            *c = -c.clone();
        }
        let mut out = Self::one(self.rank, self.degree_cap);
        let mut power = Self::one(self.rank, self.degree_cap);
        for _ in 0..self.degree_cap {
            power = power.product(&neg_n)?;
            out = out.add(&power)?;
        }
        Ok(out)
    }

    /// Right multiplication by `(1 + X_i)` or its inverse, in place of a full product.
    fn push_letter(&mut self, var: usize, inverse: bool) {
        let d = self.degree_cap;
        let mut extra: Vec<(Vec<usize>, Rational)> = Vec::new();
        for (k, c) in &self.coeffs {
            if inverse {
                // 1 - X + X^2 - ...
                let mut key = k.clone();
                let mut sign = -Rational::one();
                while key.len() < d {
                    key.push(var);
                    extra.push((key.clone(), &sign * c));
                    sign = -sign;
                }
            } else if k.len() < d {
                let mut key = k.clone();
                key.push(var);
                extra.push((key, c.clone()));
            }
        }
        for (k, c) in extra {
            self.add_term(k, c);
        }
    }

    /// Matrix of degree-2 coefficients `c_ij` of `X_i X_j`.
    pub fn degree2_matrix(&self) -> Vec<Vec<Rational>> {
        let mut m = vec![vec![Rational::zero(); self.rank]; self.rank];
        for (k, c) in &self.coeffs {
            if k.len() == 2 {
                m[k[0]][k[1]] = c.clone();
            }
        }
        m
    }
}

impl fmt::Display for TruncatedTensorSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.coeffs.iter().collect();
        terms.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then(a.0.cmp(b.0)));
        let parts: Vec<String> = terms
            .into_iter()
            .map(|(k, c)| {
                let mono: String = k.iter().map(|i| format!("X{}", i + 1)).collect();
                match (k.is_empty(), format_rational(c).as_str()) {
                    (true, s) => s.to_string(),
                    (false, "1") => mono,
                    (false, "-1") => format!("-{mono}"),
                    (false, s) => format!("{s}*{mono}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Magnus expansion of `w` in `rank` variables, truncated above degree `degree_cap`.
pub fn magnus_expand(w: &Word, rank: usize, degree_cap: usize) -> TruncatedTensorSeries {
    assert!(degree_cap >= 1, "degree cap must be positive");
    assert!(w.max_generator() <= rank, "word uses a generator beyond rank {rank}");
    let mut s = TruncatedTensorSeries::one(rank, degree_cap);
    for l in w.letters() {
        s.push_letter(l.gen - 1, l.inverse);
    }
    s
}

pub fn series_product(
    s: &TruncatedTensorSeries,
    t: &TruncatedTensorSeries,
) -> Result<TruncatedTensorSeries, MagnusError> {
    s.product(t)
}

pub fn series_inverse(s: &TruncatedTensorSeries) -> Result<TruncatedTensorSeries, MagnusError> {
    s.inverse()
}

/// Integer degree-2 Magnus coefficients of `w`, computed in one pass.
///
/// Agrees with [`TruncatedTensorSeries::degree2_matrix`] of `magnus_expand(w, rank, 2)`.
pub fn degree2_coefficients(w: &Word, rank: usize) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; rank]; rank];
    let mut prefix = vec![0i64; rank];
    for l in w.letters() {
        let j = l.gen - 1;
        let s = l.sign();
        for (i, p) in prefix.iter().enumerate() {
            m[i][j] += p * s;
        }
        if l.inverse {
            m[j][j] += 1;
        }
        prefix[j] += s;
    }
    m
}

/// Element of `Λ²ℚ^r`, keyed by 0-based pairs `i < j`.
#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct Lambda2Vector {
    #[serde(serialize_with = "serialize_pairs")]
    coeffs: BTreeMap<(usize, usize), Rational>,
}

fn serialize_pairs<S: serde::Serializer>(m: &BTreeMap<(usize, usize), Rational>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut map = s.serialize_map(Some(m.len()))?;
    for ((i, j), c) in m {
        map.serialize_entry(&format!("{},{}", i + 1, j + 1), &format_rational(c))?;
    }
    map.end()
}

impl Lambda2Vector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `e_i ∧ e_j`, with sign if `i > j`.
    pub fn basis(i: usize, j: usize) -> Self {
        let mut v = Self::zero();
        v.add_to(i, j, Rational::one());
        v
    }

    /// `x ∧ y` for coordinate vectors.
    pub fn wedge(x: &[Rational], y: &[Rational]) -> Self {
        let mut v = Self::zero();
        for i in 0..x.len() {
            for j in (i + 1)..y.len().min(x.len()) {
                v.add_to(i, j, &x[i] * &y[j] - &x[j] * &y[i]);
            }
        }
        v
    }

    /// Adds `c · e_i ∧ e_j`; antisymmetry handles `i > j`, and `i == j` is ignored.
    pub fn add_to(&mut self, i: usize, j: usize, c: Rational) {
        if i == j || c.is_zero() {
            return;
        }
        let (key, c) = if i < j { ((i, j), c) } else { ((j, i), -c) };
        let e = self.coeffs.entry(key).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    /// Antisymmetric coefficient: `coefficient(j, i) = -coefficient(i, j)`.
    pub fn coefficient(&self, i: usize, j: usize) -> Rational {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => self.coeffs.get(&(i, j)).cloned().unwrap_or_else(Rational::zero),
            std::cmp::Ordering::Greater => -self.coefficient(j, i),
            std::cmp::Ordering::Equal => Rational::zero(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &other.coeffs {
            out.add_to(i, j, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.coeffs {
            out.add_to(i, j, c * s);
        }
        out
    }

    /// Pushforward along the linear map sending `e_i` to row `i` of `p`.
    pub fn push_forward(&self, p: &[Vec<Rational>]) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.coeffs {
            let w = Self::wedge(&p[i], &p[j]);
            out = out.add(&w.scale(c));
        }
        out
    }
}

/// `λ(w) = Σ_{i<j} c_ij e_i∧e_j` from the degree-2 Magnus coefficients of a
/// word with trivial abelianization.
pub fn lambda2_class(w: &Word, rank: usize) -> Result<Lambda2Vector, MagnusError> {
    let e = w.abelianize(rank);
    if e.iter().any(|&x| x != 0) {
        return Err(MagnusError::NonzeroAbelianization(e));
    }
    lambda2_class_unchecked(&degree2_coefficients(w, rank))
}

/// Same as [`lambda2_class`] from a precomputed degree-2 matrix.
pub(crate) fn lambda2_class_unchecked(m: &[Vec<i64>]) -> Result<Lambda2Vector, MagnusError> {
    let mut v = Lambda2Vector::zero();
    for i in 0..m.len() {
        for j in i..m.len() {
            if m[i][j] != -m[j][i] {
                return Err(MagnusError::NotAntisymmetric(i, j));
            }
            if i < j {
                v.add_to(i, j, int(m[i][j]));
            }
        }
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{default_names, parse_word};

    fn w(s: &str, n: usize) -> Word {
        parse_word(s, &default_names(n)).unwrap()
    }

    #[test]
    fn commutator_expansion() {
        let s = magnus_expand(&w("[a,b]", 2), 2, 2);
        let expected =
            TruncatedTensorSeries::from_terms(2, 2, [(vec![], int(1)), (vec![0, 1], int(1)), (vec![1, 0], int(-1))]);
        assert_eq!(s, expected);
    }

    #[test]
    fn inverse_letter() {
        let s = magnus_expand(&w("a^-1", 1), 1, 2);
        let expected =
            TruncatedTensorSeries::from_terms(1, 2, [(vec![], int(1)), (vec![0], int(-1)), (vec![0, 0], int(1))]);
        assert_eq!(s, expected);
        let one_plus_x = TruncatedTensorSeries::from_terms(1, 2, [(vec![], int(1)), (vec![0], int(1))]);
        assert_eq!(one_plus_x.product(&s).unwrap(), TruncatedTensorSeries::one(1, 2));
        assert_eq!(one_plus_x.inverse().unwrap(), s);
    }

    #[test]
    fn degree_one_is_abelianization() {
        let word = w("a^2 b^-1 c a", 3);
        let s = magnus_expand(&word, 3, 3);
        let e: Vec<Rational> = (0..3).map(|i| s.coefficient(&[i])).collect();
        assert_eq!(e, vec![int(3), int(-1), int(1)]);
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda2_class(&w("[a,b]", 2), 2).unwrap(), Lambda2Vector::basis(0, 1));
        assert!(lambda2_class(&Word::identity(), 3).unwrap().is_zero());
        let v = lambda2_class(&w("c^-1 b^-1 a^-1 c b a", 3), 3).unwrap();
        let mut expected = Lambda2Vector::zero();
        expected.add_to(0, 1, int(-1));
        expected.add_to(0, 2, int(-1));
        expected.add_to(1, 2, int(-1));
        assert_eq!(v, expected);
        assert!(matches!(lambda2_class(&w("a", 2), 2), Err(MagnusError::NonzeroAbelianization(_))));
    }

    #[test]
    fn fast_degree2_agrees() {
        let word = w("a b^-2 c a^-1 [b,c]^3 a^2", 3);
        let full = magnus_expand(&word, 3, 2).degree2_matrix();
        let fast = degree2_coefficients(&word, 3);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(full[i][j], int(fast[i][j]));
            }
        }
    }

    #[test]
    fn pushforward() {
        // e0∧e1 under e0 ↦ f0 + f1, e1 ↦ f1  gives f0∧f1
        let p = vec![vec![int(1), int(1)], vec![int(0), int(1)]];
        assert_eq!(Lambda2Vector::basis(0, 1).push_forward(&p), Lambda2Vector::basis(0, 1));
        assert_eq!(Lambda2Vector::basis(1, 0), Lambda2Vector::basis(0, 1).scale(&int(-1)));
    }

    #[test]
    fn display() {
        assert_eq!(magnus_expand(&w("[a,b]", 2), 2, 2).to_string(), "1 + X1X2 + -X2X1");
    }
}
