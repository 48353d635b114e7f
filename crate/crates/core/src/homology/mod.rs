//! `H₁` of a presentation, the `c`-map on `H₂` generators, the space `E(Γ)`
//! of admissible triforms, and smoothness verdicts at the trivial character.
//!
//! Only the free part of `H₁` enters the `Λ`-algebra: torsion is reported
//! but never used, since bimorphisms and trimorphisms to `ℂ` kill it.

mod forms;
mod relators;
mod snf;
mod verdict;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use forms::{triples, wedge_with_basis, Lambda3Form};
pub use relators::{reduce_relators, ReducedRelator, RelatorReduction};
pub use snf::{smith_normal_form, unimodular_inverse, IntegerMatrix, SmithForm};
pub use verdict::{smoothness_verdict, F2Witness, SmoothnessVerdict, Verdict, WitnessError};

use crate::linalg::Matrix;
use crate::magnus::{lambda2_class, Lambda2Vector, MagnusError};
use crate::words::{Presentation, Word};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HomologyError {
    #[error("relator index {0} is not a trivial-abelianization relator (ell = {1}, count = {2})")]
    NotTrivialRelator(usize, usize, usize),
    #[error(transparent)]
    Magnus(#[from] MagnusError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyData {
    pub generator_count: usize,
    pub h1_rank: usize,
    /// Invariant factors `p_i ≥ 2`, each dividing the next.
    pub torsion: Vec<BigInt>,
    /// `n × r`: row `i` is the image of generator `i+1` in free `H₁` coordinates.
    pub free_basis_projection: Vec<Vec<Rational>>,
    /// `r × n`: row `a` is an integer exponent vector lifting free basis vector `a`.
    pub free_basis_lift: Vec<Vec<Rational>>,
    pub reduction: RelatorReduction,
    /// One per trivial-abelianization reduced relator, in `H₁` coordinates.
    pub c_classes: Vec<Lambda2Vector>,
}

impl HomologyData {
    pub fn ell(&self) -> usize {
        self.reduction.ell
    }

    pub fn reduced_relators(&self) -> Vec<&Word> {
        self.reduction.relators.iter().map(|r| &r.word).collect()
    }

    /// Upper bound on the number of `H₂(Γ,ℤ)` generators.
    pub fn h2_generator_bound(&self) -> usize {
        self.reduction.trivial().len()
    }

    /// Free `H₁` coordinates of a generator exponent vector.
    pub fn project(&self, e: &[i64]) -> Vec<Rational> {
        (0..self.h1_rank)
            .map(|a| {
                e.iter()
                    .zip(&self.free_basis_projection)
                    .filter(|(x, _)| **x != 0)
                    .map(|(&x, row)| Rational::from_integer(x.into()) * &row[a])
                    .sum()
            })
            .collect()
    }
}

/// Smith normal form of the abelianized relators gives rank, torsion and the
/// free-part projection; relator reduction and `c`-classes are filled in too.
pub fn compute_h1(p: &Presentation) -> HomologyData {
    let n = p.generator_count();
    let rows: Vec<Vec<i64>> = p.relators().iter().map(|r| r.abelianize(n)).collect();
    let m = IntegerMatrix::from_i64(&rows, n);
    let snf = smith_normal_form(&m);
    let s = snf.invariants.len();
    let r = n - s;
    let torsion: Vec<BigInt> = snf.invariants.iter().filter(|d| !d.is_one()).cloned().collect();
    let to_q = |x: &BigInt| Rational::from_integer(x.clone());
    // y = x·V: the last r coordinates are free.
    let free_basis_projection: Vec<Vec<Rational>> =
        (0..n).map(|i| (s..n).map(|j| to_q(snf.v.get(i, j))).collect()).collect();
    let v_inv = unimodular_inverse(&snf.v);
    let free_basis_lift: Vec<Vec<Rational>> = (s..n).map(|a| v_inv.row(a).iter().map(to_q).collect()).collect();
    let reduction = reduce_relators(p);
    let mut h = HomologyData {
        generator_count: n,
        h1_rank: r,
        torsion,
        free_basis_projection,
        free_basis_lift,
        reduction,
        c_classes: Vec::new(),
    };
    h.c_classes = (h.ell()..h.reduction.relators.len())
        .map(|j| c_class(&h, j).expect("trivial relators have a lambda class"))
        .collect();
    h
}

/// `λ` of reduced relator `j` pushed to `Λ²` of the free `H₁` basis.
pub fn c_class(h: &HomologyData, j: usize) -> Result<Lambda2Vector, HomologyError> {
    let count = h.reduction.relators.len();
    if j < h.ell() || j >= count {
        return Err(HomologyError::NotTrivialRelator(j, h.ell(), count));
    }
    let l = lambda2_class(&h.reduction.relators[j].word, h.generator_count)?;
    Ok(l.push_forward(&h.free_basis_projection))
}

/// Basis of `E = {Φ ∈ Λ³(ℚ^r)* : Φ(c_j ∧ e_m) = 0}` and its dimension.
pub fn e_space_basis(h: &HomologyData) -> (usize, Vec<Lambda3Form>) {
    let r = h.h1_rank;
    let t = triples(r).len();
    if t == 0 {
        return (0, Vec::new());
    }
    let rows: Vec<Vec<Rational>> =
        h.c_classes.iter().flat_map(|c| (0..r).map(move |m| wedge_with_basis(c, m, r))).collect();
    if rows.is_empty() {
        let basis = (0..t)
            .map(|a| {
                let mut coords = vec![Rational::zero(); t];
                coords[a] = Rational::one();
                Lambda3Form::from_coordinates(r, &coords)
            })
            .collect();
        return (t, basis);
    }
    let m = Matrix::from_rows(rows, t);
    let basis: Vec<Lambda3Form> = m.nullspace(0.0).into_iter().map(|v| Lambda3Form::from_coordinates(r, &v)).collect();
    (basis.len(), basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn pres(s: &str) -> Presentation {
        Presentation::parse(s).unwrap()
    }

    #[test]
    fn h1_examples() {
        let h = compute_h1(&pres("gens: a b c d\nrel: c^3\nrel: d^3\nrel: (c d)^3"));
        assert_eq!(h.h1_rank, 2);
        assert_eq!(h.torsion, vec![BigInt::from(3), BigInt::from(3)]);
        let h = compute_h1(&pres("gens: a b\nrel: a b a b^-1 a^-1 b^-1"));
        assert_eq!((h.h1_rank, h.torsion.len()), (1, 0));
        let h = compute_h1(&Presentation::free(&["a", "b", "c"]));
        assert_eq!((h.h1_rank, h.torsion.len()), (3, 0));
    }

    #[test]
    fn projection_and_lift_are_inverse() {
        let h = compute_h1(&pres("gens: a b c\nrel: a^2 b^3 c\nrel: [a,b]"));
        assert_eq!(h.h1_rank, 2);
        for (a, lift) in h.free_basis_lift.iter().enumerate() {
            let e: Vec<i64> = lift.iter().map(|x| x.to_integer().try_into().unwrap()).collect();
            let y = h.project(&e);
            for (b, yb) in y.iter().enumerate() {
                assert_eq!(*yb, int((a == b) as i64));
            }
        }
        // relators project to zero
        for r in h.reduced_relators() {
            assert!(h.project(&r.abelianize(3)).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn c_classes() {
        let h = compute_h1(&pres("gens: a b\nrel: [a,b]"));
        assert_eq!(h.c_classes, vec![Lambda2Vector::basis(0, 1)]);
        let h = compute_h1(&pres("gens: a1 b1 a2 b2\nrel: [a1,b1][a2,b2]"));
        assert_eq!(h.c_classes, vec![Lambda2Vector::basis(0, 1).add(&Lambda2Vector::basis(2, 3))]);
        assert!(matches!(c_class(&h, 5), Err(HomologyError::NotTrivialRelator(..))));
    }

    #[test]
    fn e_space_examples() {
        assert_eq!(e_space_basis(&compute_h1(&Presentation::free(&["a", "b", "c"]))).0, 1);
        assert_eq!(e_space_basis(&compute_h1(&Presentation::free(&["a", "b", "c", "d", "e"]))).0, 10);
        let z3 = pres("gens: a b c\nrel: [a,b]\nrel: [a,c]\nrel: [b,c]");
        assert_eq!(e_space_basis(&compute_h1(&z3)).0, 0);
        let g3 = pres("gens: a1 b1 a2 b2 a3 b3\nrel: [a1,b1][a2,b2][a3,b3]");
        let h = compute_h1(&g3);
        let (d, basis) = e_space_basis(&h);
        assert_eq!(d, 14);
        for f in &basis {
            for c in &h.c_classes {
                for m in 0..6 {
                    let mut e = vec![int(0); 6];
                    e[m] = int(1);
                    assert!(f.eval_wedge(&e, c).is_zero());
                }
            }
        }
    }
}
