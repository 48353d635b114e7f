//! `GL_n` pseudo-characters: the Frobenius sum over `𝔖_{n+1}`, the signed
//! cycle polynomial, and the first-order (dual number) version of the
//! Frobenius identity at the trivial character.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::linalg::Matrix;
use crate::parallelogram::WordFunction;
use crate::perm::Permutation;
use crate::scalar::{default_tolerance, Field, Ring};
use crate::words::Word;
use crate::Rational;

/// Largest `n + 1` (and cycle-polynomial degree) that is enumerated.
pub const MAX_DEGREE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PseudoCharError {
    #[error("expected {expected} words, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("degree {0} is outside 1..=8")]
    DegreeOutOfRange(usize),
    #[error("matrix {0} is not invertible")]
    Singular(usize),
    #[error("matrix {index} is not {dim}×{dim}")]
    Shape { index: usize, dim: usize },
    #[error("word uses generator {gen} but only {count} matrices are given")]
    GeneratorOutOfRange { gen: usize, count: usize },
}

/// Commutative coefficient ring with the integers embedded.
pub trait CoefficientRing: Ring {
    fn from_integer(n: i64) -> Self;

    /// Equality, up to the floating tolerance in floating modes.
    fn approx_eq(&self, other: &Self) -> bool;
}

impl<T: Field> CoefficientRing for T {
    fn from_integer(n: i64) -> Self {
        T::from_i64(n)
    }

    fn approx_eq(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_negligible(default_tolerance())
    }
}

/// `re + ε·eps` with `ε² = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dual<R> {
    pub re: R,
    pub eps: R,
}

impl<R: CoefficientRing> Dual<R> {
    pub fn new(re: R, eps: R) -> Self {
        Dual { re, eps }
    }
}

impl<R: CoefficientRing> Add for Dual<R> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual::new(self.re + o.re, self.eps + o.eps)
    }
}

impl<R: CoefficientRing> Sub for Dual<R> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual::new(self.re - o.re, self.eps - o.eps)
    }
}

impl<R: CoefficientRing> Mul for Dual<R> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let eps = self.re.clone() * o.eps + self.eps * o.re.clone();
        Dual::new(self.re * o.re, eps)
    }
}

impl<R: CoefficientRing> Neg for Dual<R> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.re, -self.eps)
    }
}

impl<R: CoefficientRing> Zero for Dual<R> {
    fn zero() -> Self {
        Dual::new(R::zero(), R::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.eps.is_zero()
    }
}

impl<R: CoefficientRing> One for Dual<R> {
    fn one() -> Self {
        Dual::new(R::one(), R::zero())
    }
}

impl<R: CoefficientRing> CoefficientRing for Dual<R> {
    fn from_integer(n: i64) -> Self {
        Dual::new(R::from_integer(n), R::zero())
    }

    fn approx_eq(&self, other: &Self) -> bool {
        self.re.approx_eq(&other.re) && self.eps.approx_eq(&other.eps)
    }
}

/// A central function `T: Γ → R` with a declared dimension `n = T(1)`.
pub trait PseudoCharacter {
    type Value: CoefficientRing;

    fn dimension(&self) -> usize;
    fn eval(&self, w: &Word) -> Self::Value;
}

/// A pseudo-character given by a closure.
pub struct FnPseudoCharacter<F> {
    pub dimension: usize,
    pub f: F,
}

impl<R: CoefficientRing, F: Fn(&Word) -> R> PseudoCharacter for FnPseudoCharacter<F> {
    type Value = R;

    fn dimension(&self) -> usize {
        self.dimension
    }

    fn eval(&self, w: &Word) -> R {
        (self.f)(w)
    }
}

/// `w ↦ Tr ρ(w)` for generator images in `GL_n(ℚ)`.
#[derive(Debug, Clone)]
pub struct MatrixTrace {
    dim: usize,
    images: Vec<Matrix<Rational>>,
    inverses: Vec<Matrix<Rational>>,
}

impl MatrixTrace {
    pub fn new(dim: usize, images: Vec<Matrix<Rational>>) -> Result<Self, PseudoCharError> {
        let mut inverses = Vec::with_capacity(images.len());
        for (index, m) in images.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(PseudoCharError::Shape { index, dim });
            }
            let mut cols = Vec::with_capacity(dim);
            for j in 0..dim {
                let e: Vec<Rational> =
                    (0..dim).map(|i| if i == j { Rational::one() } else { Rational::zero() }).collect();
                cols.push(m.solve(&e, 0.0).ok_or(PseudoCharError::Singular(index))?);
            }
            let rows = (0..dim).map(|i| (0..dim).map(|j| cols[j][i].clone()).collect()).collect();
            inverses.push(Matrix::from_rows(rows, dim));
        }
        Ok(MatrixTrace { dim, images, inverses })
    }

    pub fn matrix_of(&self, w: &Word) -> Result<Matrix<Rational>, PseudoCharError> {
        let mut m = Matrix::identity(self.dim);
        for l in w.letters() {
            let table = if l.sign() > 0 { &self.images } else { &self.inverses };
            let g = table
                .get(l.gen - 1)
                .ok_or(PseudoCharError::GeneratorOutOfRange { gen: l.gen, count: self.images.len() })?;
            m = m.mul(g);
        }
        Ok(m)
    }
}

impl PseudoCharacter for MatrixTrace {
    type Value = Rational;

    fn dimension(&self) -> usize {
        self.dim
    }

    fn eval(&self, w: &Word) -> Rational {
        let m = self.matrix_of(w).expect("word within the tuple's rank");
        (0..self.dim).map(|i| m[(i, i)].clone()).sum()
    }
}

fn cycle_product(words: &[Word], cycle: &[usize]) -> Word {
    cycle.iter().fold(Word::identity(), |acc, &i| acc.product(&words[i]))
}

/// `Σ_{σ ∈ 𝔖_{n+1}} ε(σ) Π_{cycles (i₁…i_k) of σ} T(γ_{i₁}⋯γ_{i_k})`, fixed points included.
pub fn frobenius_sum<T: PseudoCharacter>(t: &T, words: &[Word]) -> Result<T::Value, PseudoCharError> {
    let m = t.dimension() + 1;
    if words.len() != m {
        return Err(PseudoCharError::Arity { expected: m, found: words.len() });
    }
    if m > MAX_DEGREE {
        return Err(PseudoCharError::DegreeOutOfRange(m));
    }
    let mut total = T::Value::zero();
    for sigma in Permutation::all(m) {
        let mut term = T::Value::from_integer(sigma.sign());
        for cycle in sigma.cycles() {
            let value = t.eval(&cycle_product(words, &cycle));
            if cfg!(debug_assertions) && m <= 3 && cycle.len() > 1 {
                let mut rotated = cycle.clone();
                rotated.rotate_left(1);
                debug_assert!(
                    t.eval(&cycle_product(words, &rotated)).approx_eq(&value),
                    "pseudo-character is not central"
                );
            }
            term = term * value;
        }
        total = total + term;
    }
    Ok(total)
}

/// Coefficients (constant term first) of `Σ_{σ ∈ 𝔖_l} ε(σ) t^{c(σ)}`.
pub fn signed_cycle_polynomial(l: usize) -> Result<Vec<i64>, PseudoCharError> {
    if !(1..=MAX_DEGREE).contains(&l) {
        return Err(PseudoCharError::DegreeOutOfRange(l));
    }
    let mut coeffs = vec![0i64; l + 1];
    for sigma in Permutation::all(l) {
        coeffs[sigma.cycles().len()] += sigma.sign();
    }
    Ok(coeffs)
}

/// Coefficients of `t(t − 1)⋯(t − l + 1)`.
pub fn falling_factorial(l: usize) -> Vec<i64> {
    let mut p = vec![1i64];
    for j in 0..l as i64 {
        // multiply by (t − j)
        let mut next = vec![0i64; p.len() + 1];
        for (k, c) in p.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= j * c;
        }
        p = next;
    }
    p
}

/// The ε-coefficient of the Frobenius sum for `T = n + εf`.
pub fn linearized_tangent_sum<F: WordFunction + ?Sized>(
    f: &F,
    words: &[Word],
    n: usize,
) -> Result<Rational, PseudoCharError> {
    let t = FnPseudoCharacter { dimension: n, f: |w: &Word| Dual::new(Rational::from_i64(n as i64), f.eval(w)) };
    Ok(frobenius_sum(&t, words)?.eps)
}

/// `Σ_{k=1}^{n+1} Σ (−1)^k/k! f(γ_{i₁}⋯γ_{i_k})` over tuples of *distinct*
/// indices, the reading that makes it equal to `−1/n!` times
/// [`linearized_tangent_sum`].
pub fn tangent_closed_form<F: WordFunction + ?Sized>(
    f: &F,
    words: &[Word],
    n: usize,
) -> Result<Rational, PseudoCharError> {
    let m = n + 1;
    if words.len() != m {
        return Err(PseudoCharError::Arity { expected: m, found: words.len() });
    }
    if m > MAX_DEGREE {
        return Err(PseudoCharError::DegreeOutOfRange(m));
    }
    let mut total = Rational::zero();
    let mut factorial = Rational::one();
    for k in 1..=m {
        factorial *= Rational::from_i64(k as i64);
        let weight = Rational::from_i64(if k % 2 == 0 { 1 } else { -1 }) / &factorial;
        let mut tuple = Vec::with_capacity(k);
        let mut sum = Rational::zero();
        distinct_tuples(m, k, &mut tuple, &mut |idx| sum += f.eval(&cycle_product(words, idx)));
        total += weight * sum;
    }
    Ok(total)
}

fn distinct_tuples(m: usize, k: usize, tuple: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if tuple.len() == k {
        visit(tuple);
        return;
    }
    for i in 0..m {
        if !tuple.contains(&i) {
            tuple.push(i);
            distinct_tuples(m, k, tuple, visit);
            tuple.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn mat(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(), rows.len())
    }

    #[test]
    fn frobenius_on_fixed_triple() {
        let t = MatrixTrace::new(2, vec![mat(&[&[1, 1], &[0, 1]]), mat(&[&[1, 0], &[1, 1]]), mat(&[&[1, 0], &[0, 1]])])
            .unwrap();
        let words: Vec<Word> = (1..=3).map(Word::generator).collect();
        assert_eq!(frobenius_sum(&t, &words).unwrap(), int(0));
        assert!(frobenius_sum(&t, &words[..2]).is_err());
    }

    #[test]
    fn frobenius_one_dimensional() {
        let t = MatrixTrace::new(1, vec![mat(&[&[3]]), mat(&[&[-5]])]).unwrap();
        assert_eq!(frobenius_sum(&t, &[Word::generator(1), Word::generator(2)]).unwrap(), int(0));
    }

    #[test]
    fn cycle_polynomials() {
        assert_eq!(signed_cycle_polynomial(3).unwrap(), vec![0, 2, -3, 1]);
        assert_eq!(signed_cycle_polynomial(1).unwrap(), vec![0, 1]);
        for l in 1..=6 {
            assert_eq!(signed_cycle_polynomial(l).unwrap(), falling_factorial(l));
        }
        assert!(signed_cycle_polynomial(0).is_err());
        assert!(signed_cycle_polynomial(9).is_err());
    }

    #[test]
    fn tangent_sum_n1() {
        let words = [Word::from_signed(&[1, 2]), Word::from_signed(&[2, -1, 2])];
        let additive = |w: &Word| int(3 * w.abelianize(2)[0] - w.abelianize(2)[1]);
        assert_eq!(linearized_tangent_sum(&additive, &words, 1).unwrap(), int(0));
        let sq = |w: &Word| int(w.len() as i64 * w.len() as i64);
        let expected = sq(&words[0]) + sq(&words[1]) - sq(&words[0].product(&words[1]));
        assert_eq!(linearized_tangent_sum(&sq, &words, 1).unwrap(), expected);
        let zero = |_: &Word| int(0);
        assert_eq!(linearized_tangent_sum(&zero, &words, 1).unwrap(), int(0));
    }

    #[test]
    fn closed_form_matches_oracle() {
        let f = |w: &Word| {
            let e = w.abelianize(3);
            int(e[0] * e[0] - 2 * e[1] * e[2] + e[0] * e[1] * e[2])
        };
        for n in 1..=3usize {
            let words: Vec<Word> =
                (0..=n).map(|i| Word::from_signed(&[1 + (i % 3) as i64, -(((i + 1) % 3) as i64 + 1)])).collect();
            let oracle = linearized_tangent_sum(&f, &words, n).unwrap();
            let closed = tangent_closed_form(&f, &words, n).unwrap();
            let nfact: i64 = (1..=n as i64).product();
            assert_eq!(closed, -oracle / int(nfact), "n = {n}");
        }
    }
}
