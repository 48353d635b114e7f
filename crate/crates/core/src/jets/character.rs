use std::marker::PhantomData;
use std::sync::Arc;

use super::{JetError, Series};
use crate::linalg::{Mat2, Matrix};
use crate::parallelogram::WordFunction;
use crate::scalar::{default_tolerance, Ring, SeriesScalar};
use crate::words::{evaluate_hom, Group, GroupHom, Word};
use crate::Rational;

/// `SL₂` over a commutative ring, inverting by the adjugate.
#[derive(Debug, Clone, Copy, Default)]
pub struct Sl2<T>(PhantomData<T>);

impl<T> Sl2<T> {
    pub fn new() -> Self {
        Sl2(PhantomData)
    }
}

impl<T: Ring> Group for Sl2<T> {
    type Element = Mat2<T>;

    fn identity(&self) -> Mat2<T> {
        Mat2::identity()
    }

    fn mul(&self, a: &Mat2<T>, b: &Mat2<T>) -> Mat2<T> {
        a.mul(b)
    }

    fn inv(&self, a: &Mat2<T>) -> Mat2<T> {
        a.adjugate()
    }
}

type JetFn<S> = dyn Fn(&Word) -> Vec<S> + Send + Sync;

/// `w ↦ 2 + g₁(w)t + … + g_N(w)t^N`, stored as the plain coefficients.
#[derive(Clone)]
pub struct CharacterJet<S> {
    order: usize,
    rank: usize,
    eval: Arc<JetFn<S>>,
}

impl<S> std::fmt::Debug for CharacterJet<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CharacterJet").field("order", &self.order).field("rank", &self.rank).finish()
    }
}

impl<S: SeriesScalar> CharacterJet<S> {
    /// Wraps an evaluator returning `order + 1` coefficients; checks the value 2 on the identity.
    pub fn from_fn(
        rank: usize,
        order: usize,
        f: impl Fn(&Word) -> Vec<S> + Send + Sync + 'static,
    ) -> Result<Self, JetError> {
        let jet = CharacterJet { order, rank, eval: Arc::new(f) };
        let at_one = jet.coefficients(&Word::identity());
        let two = S::from_i64(2);
        if at_one.len() != order + 1
            || !(at_one[0].clone() - two).is_negligible(default_tolerance())
            || at_one[1..].iter().any(|c| !c.is_negligible(default_tolerance()))
        {
            return Err(JetError::Consistency("value on the identity word is not 2".into()));
        }
        Ok(jet)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `[2, g₁(w), …, g_N(w)]`.
    pub fn coefficients(&self, w: &Word) -> Vec<S> {
        (self.eval)(w)
    }

    pub fn g(&self, k: usize, w: &Word) -> S {
        self.coefficients(w).swap_remove(k)
    }

    pub fn trace_series(&self, w: &Word) -> Series<S> {
        Series::from_coeffs(self.coefficients(w), self.order)
    }
}

/// `g_k` of an exact jet as a word function.
pub struct JetCoefficient<'a> {
    pub jet: &'a CharacterJet<Rational>,
    pub k: usize,
}

impl WordFunction for JetCoefficient<'_> {
    fn eval(&self, w: &Word) -> Rational {
        self.jet.g(self.k, w)
    }
}

/// The trace jet of a representation with unipotent upper-triangular residue.
pub fn character_jet_from_rep<S: SeriesScalar>(
    rep: &[Mat2<Series<S>>],
    order: usize,
) -> Result<CharacterJet<S>, JetError> {
    let n = order as i64;
    let tol = default_tolerance();
    for (i, m) in rep.iter().enumerate() {
        let entries = [&m.a, &m.b, &m.c, &m.d];
        if entries.iter().any(|e| e.precision() <= n) {
            return Err(JetError::Precondition(format!("image of generator {} is not known to order {order}", i + 1)));
        }
        if entries.iter().any(|e| e.valuation().is_some_and(|v| v < 0)) {
            return Err(JetError::Precondition(format!("image of generator {} has a pole", i + 1)));
        }
        if !m.det().agrees_with(&Series::constant(S::one()), n) {
            return Err(JetError::Precondition(format!("image of generator {} has determinant ≠ 1", i + 1)));
        }
        let unipotent = (m.a.coefficient(0) - S::one()).is_negligible(tol)
            && (m.d.coefficient(0) - S::one()).is_negligible(tol)
            && m.c.coefficient(0).is_negligible(tol);
        if !unipotent {
            return Err(JetError::Precondition(format!(
                "residue of generator {} is not unipotent upper-triangular",
                i + 1
            )));
        }
    }
    let rank = rep.len();
    let hom = GroupHom::new(Sl2::<Series<S>>::new(), rep.iter().map(|m| m.map(|e| e.truncate(n))).collect());
    CharacterJet::from_fn(rank, order, move |w| {
        let m = evaluate_hom(w, &hom).expect("word within the representation's rank");
        m.trace().coefficients_to(order)
    })
}

/// Result of an exact (or tolerance) coefficient check.
#[derive(Debug, Clone, PartialEq)]
pub struct JetCheck<S> {
    pub holds: bool,
    pub residuals: Vec<S>,
    pub max_residual: f64,
}

/// `g_n(γδ) + g_n(γδ⁻¹) = 2g_n(γ) + 2g_n(δ) + Σ_{k=1}^{n−1} g_k(γ)g_{n−k}(δ)` on each pair.
pub fn verify_jet_equation<S: SeriesScalar>(
    jet: &CharacterJet<S>,
    n: usize,
    pairs: &[(Word, Word)],
) -> Result<JetCheck<S>, JetError> {
    if n > jet.order() {
        return Err(JetError::OrderTooLarge { requested: n, available: jet.order() });
    }
    let two = S::from_i64(2);
    let residuals: Vec<S> = pairs
        .iter()
        .map(|(g, d)| {
            let (cg, cd) = (jet.coefficients(g), jet.coefficients(d));
            let lhs = jet.g(n, &g.product(d)) + jet.g(n, &g.product(&d.inverse()));
            let mut rhs = two.clone() * cg[n].clone() + two.clone() * cd[n].clone();
            for k in 1..n {
                rhs = rhs + cg[k].clone() * cd[n - k].clone();
            }
            lhs - rhs
        })
        .collect();
    let tol = default_tolerance();
    let max_residual = residuals.iter().map(|r| r.magnitude()).fold(0.0, f64::max);
    Ok(JetCheck { holds: residuals.iter().all(|r| r.is_negligible(tol)), residuals, max_residual })
}

/// `⟨a_i, a_j⟩ = g₁(a_i a_j) − g₁(a_i) − g₁(a_j)`, i.e. `g₁ ∘ ε₂` on generators.
pub fn extract_bilinear<S: SeriesScalar>(jet: &CharacterJet<S>, rank: usize) -> Result<Matrix<S>, JetError> {
    if jet.order() < 1 {
        return Err(JetError::OrderTooLarge { requested: 1, available: jet.order() });
    }
    let gens: Vec<Word> = (1..=rank).map(Word::generator).collect();
    let g1: Vec<S> = gens.iter().map(|a| jet.g(1, a)).collect();
    let rows = (0..rank)
        .map(|i| (0..rank).map(|j| jet.g(1, &gens[i].product(&gens[j])) - g1[i].clone() - g1[j].clone()).collect())
        .collect();
    Ok(Matrix::from_rows(rows, rank))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn poly(c: &[i64], order: usize) -> Series<Rational> {
        Series::from_coeffs(c.iter().map(|&x| int(x)).collect(), order)
    }

    fn example() -> CharacterJet<Rational> {
        let a = Mat2::new(poly(&[1], 4), poly(&[1], 4), poly(&[0], 4), poly(&[1], 4));
        let b = Mat2::new(poly(&[1], 4), poly(&[0], 4), poly(&[0, 1], 4), poly(&[1], 4));
        character_jet_from_rep(&[a, b], 4).unwrap()
    }

    #[test]
    fn jet_values() {
        let j = example();
        assert_eq!(j.coefficients(&Word::from_signed(&[1, 2])), vec![int(2), int(1), int(0), int(0), int(0)]);
        assert_eq!(j.coefficients(&Word::identity())[0], int(2));
        assert_eq!(j.coefficients(&Word::generator(1)), vec![int(2), int(0), int(0), int(0), int(0)]);
    }

    #[test]
    fn jet_equation_and_bilinear() {
        let j = example();
        let pairs = vec![
            (Word::from_signed(&[1, 2, -1]), Word::from_signed(&[2, 2, 1])),
            (Word::from_signed(&[-2, 1]), Word::from_signed(&[1, 1, -2, -1])),
        ];
        for n in 1..=4 {
            assert!(verify_jet_equation(&j, n, &pairs).unwrap().holds);
        }
        assert!(verify_jet_equation(&j, 5, &pairs).is_err());
        assert_eq!(extract_bilinear(&j, 2).unwrap().to_rows(), vec![vec![int(0), int(1)], vec![int(1), int(0)]]);
    }

    #[test]
    fn rejects_bad_residue() {
        let a = Mat2::new(poly(&[2], 2), poly(&[0], 2), poly(&[0], 2), poly(&[1], 2));
        assert!(character_jet_from_rep(&[a], 2).is_err());
        let b = Mat2::new(poly(&[1], 2), poly(&[0], 2), poly(&[1], 2), poly(&[1], 2));
        assert!(character_jet_from_rep(&[b], 2).is_err());
    }

    #[test]
    fn constant_character() {
        let j = CharacterJet::from_fn(2, 3, |_| vec![int(2), int(0), int(0), int(0)]).unwrap();
        let pairs = vec![(Word::generator(1), Word::generator(2))];
        assert!(verify_jet_equation(&j, 3, &pairs).unwrap().holds);
        assert_eq!(extract_bilinear(&j, 2).unwrap().rank(0.0), 0);
    }
}
