//! Parallelogram functions `f(xy) + f(xy⁻¹) = 2f(x) + 2f(y)` on free and
//! finitely presented groups.
//!
//! A function on `F_n` is stored as a pair `(q, φ)` and evaluated by
//!
//! ```text
//! f(w) = q(e) + Σ_{i<j<k} e_i e_j e_k φ_ijk + 2 φ(e ∧ λ(u⁻¹w)),
//! ```
//!
//! where `e` is the abelianization of `w`, `u = a_1^{e_1} ⋯ a_n^{e_n}` and
//! `λ` reads the degree-2 Magnus coefficients. Then `f ∘ ε₃ = φ` on generator
//! triples. On a presentation the pair lives on the free part of `H₁` and is
//! lifted to the generators; descent makes the value independent of the
//! word chosen for a group element.

mod counting;
mod descent;
mod group_ring;
mod identities;
mod johnson;

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

pub use counting::{counting_f3, counting_f3_letters};
pub use descent::{descent_solve, DescentSolution};
pub use group_ring::{epsilon, epsilon_eval, p_map, GroupRingElement, Tensor2};
pub use identities::{verify_identity, Identity, IdentityCheck};
pub use johnson::johnson_action;

use crate::homology::{compute_h1, triples, HomologyData, Lambda3Form};
use crate::linalg::{Mat2, Matrix};
use crate::magnus::degree2_coefficients;
use crate::scalar::format_rational;
use crate::words::{evaluate_hom, random_word_up_to, trial_rng, Group, GroupHom, Presentation, Word};
use crate::Rational;

/// Alternating trilinear part `Φ = f ∘ ε₃`.
pub type Triform = Lambda3Form;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParallelogramError {
    #[error("quadratic form matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("word uses generator {gen} but the ambient has {rank}")]
    GeneratorOutOfRange { gen: usize, rank: usize },
    #[error("the triform does not lie in E: no quadratic correction makes it descend to the presented group")]
    NotInE,
    #[error("function is not central: {0}")]
    NotCentral(String),
    #[error("matrix {0} does not have determinant 1")]
    DeterminantNotOne(usize),
    #[error("{identity} takes {expected} words, got {found}")]
    Arity { identity: Identity, expected: usize, found: usize },
    #[error("automorphism does not act trivially on H1: generator {0}")]
    NotTorelli(usize),
    #[error("f∘φ − f disagrees with the computed form on {0}")]
    JohnsonMismatch(String),
}

/// Anything that assigns an exact value to each word.
pub trait WordFunction {
    fn eval(&self, w: &Word) -> Rational;
}

impl<F: Fn(&Word) -> Rational> WordFunction for F {
    fn eval(&self, w: &Word) -> Rational {
        self(w)
    }
}

/// `x ↦ xᵀ Q x` with `Q` symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticForm {
    matrix: Matrix<Rational>,
}

impl QuadraticForm {
    pub fn new(matrix: Matrix<Rational>) -> Result<Self, ParallelogramError> {
        if !matrix.is_symmetric() {
            return Err(ParallelogramError::NotSymmetric);
        }
        Ok(QuadraticForm { matrix })
    }

    pub fn zero(dim: usize) -> Self {
        QuadraticForm { matrix: Matrix::zeros(dim, dim) }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, ParallelogramError> {
        let n = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(ParallelogramError::DimensionMismatch { expected: n, found: r.len() });
        }
        Self::new(Matrix::from_rows(rows, n))
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.matrix
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.matrix[(i, j)]
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        let n = self.dim();
        let mut s = Rational::zero();
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if !x[j].is_zero() && !self.matrix[(i, j)].is_zero() {
                    s += &x[i] * &self.matrix[(i, j)] * &x[j];
                }
            }
        }
        s
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank(0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.to_rows().iter().flatten().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.dim();
        let rows = (0..n).map(|i| (0..n).map(|j| self.get(i, j) + other.get(i, j)).collect()).collect();
        QuadraticForm { matrix: Matrix::from_rows(rows, n) }
    }

    /// `x ↦ q(x·M)` where row `a` of `m` is the image of `e_a`.
    pub fn pull_back(&self, m: &[Vec<Rational>]) -> Self {
        let n = m.len();
        let rows = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let mut s = Rational::zero();
                        for i in 0..self.dim() {
                            for j in 0..self.dim() {
                                s += &m[a][i] * self.get(i, j) * &m[b][j];
                            }
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        QuadraticForm { matrix: Matrix::from_rows(rows, n) }
    }

    pub fn to_json(&self) -> serde_json::Value {
        self.matrix
            .to_rows()
            .iter()
            .map(|r| serde_json::Value::Array(r.iter().map(|x| serde_json::Value::from(format_rational(x))).collect()))
            .collect()
    }
}

/// Where a parallelogram function lives.
#[derive(Debug, Clone, PartialEq)]
pub enum Ambient {
    Free { rank: usize },
    Presented { presentation: Presentation, homology: Box<HomologyData> },
}

impl Ambient {
    pub fn generator_count(&self) -> usize {
        match self {
            Ambient::Free { rank } => *rank,
            Ambient::Presented { presentation, .. } => presentation.generator_count(),
        }
    }

    pub fn h1_rank(&self) -> usize {
        match self {
            Ambient::Free { rank } => *rank,
            Ambient::Presented { homology, .. } => homology.h1_rank,
        }
    }
}

/// An element of `P(Γ)`, stored on the free `H₁` basis and lifted to the generators.
#[derive(Debug, Clone, PartialEq)]
pub struct ParallelogramFunction {
    ambient: Ambient,
    q: QuadraticForm,
    phi: Triform,
    lifted_q: QuadraticForm,
    lifted_phi: Triform,
}

impl ParallelogramFunction {
    pub fn free(q: QuadraticForm, phi: Triform) -> Result<Self, ParallelogramError> {
        let rank = q.dim();
        if phi.support_dim() > rank {
            return Err(ParallelogramError::DimensionMismatch { expected: rank, found: phi.support_dim() });
        }
        Ok(ParallelogramFunction {
            ambient: Ambient::Free { rank },
            lifted_q: q.clone(),
            lifted_phi: phi.clone(),
            q,
            phi,
        })
    }

    /// `q`, `φ` on the free part of `H₁(Γ)`. Fails with `NotInE` when `φ`
    /// is not admissible.
    pub fn on_presentation(p: &Presentation, q: QuadraticForm, phi: Triform) -> Result<Self, ParallelogramError> {
        let h = compute_h1(p);
        let r = h.h1_rank;
        if q.dim() != r {
            return Err(ParallelogramError::DimensionMismatch { expected: r, found: q.dim() });
        }
        if phi.support_dim() > r {
            return Err(ParallelogramError::DimensionMismatch { expected: r, found: phi.support_dim() });
        }
        let lifted_phi = phi.pull_back(&h.free_basis_projection);
        let correction = descent::quadratic_correction(p, &h, &lifted_phi).ok_or(ParallelogramError::NotInE)?;
        let lifted_q = q.pull_back(&h.free_basis_projection).add(&correction);
        Ok(ParallelogramFunction {
            ambient: Ambient::Presented { presentation: p.clone(), homology: Box::new(h) },
            q,
            phi,
            lifted_q,
            lifted_phi,
        })
    }

    pub fn ambient(&self) -> &Ambient {
        &self.ambient
    }

    /// Quadratic part on the free `H₁` basis.
    pub fn q(&self) -> &QuadraticForm {
        &self.q
    }

    /// Triform on the free `H₁` basis.
    pub fn phi(&self) -> &Triform {
        &self.phi
    }

    /// The `(q, φ)` pair actually used on generator exponent vectors.
    pub fn lifted(&self) -> (&QuadraticForm, &Triform) {
        (&self.lifted_q, &self.lifted_phi)
    }

    pub fn try_eval(&self, w: &Word) -> Result<Rational, ParallelogramError> {
        let n = self.ambient.generator_count();
        if w.max_generator() > n {
            return Err(ParallelogramError::GeneratorOutOfRange { gen: w.max_generator(), rank: n });
        }
        Ok(free_eval(&self.lifted_q, &self.lifted_phi, w, n))
    }
}

impl WordFunction for ParallelogramFunction {
    /// Panics on generators outside the ambient; see [`ParallelogramFunction::try_eval`].
    fn eval(&self, w: &Word) -> Rational {
        self.try_eval(w).unwrap_or_else(|e| panic!("{e}"))
    }
}

pub fn eval_parallelogram(f: &ParallelogramFunction, w: &Word) -> Result<Rational, ParallelogramError> {
    f.try_eval(w)
}

/// Abelianization `e` and `λ_ij = c_ij(w) − e_i e_j` (`i < j`), the class of `u⁻¹w`.
///
/// `u⁻¹` has vanishing `c_ij` for `i < j`, so Magnus multiplicativity gives
/// `c(u⁻¹w) = c(w) − e ⊗ e` above the diagonal.
pub(crate) struct FreeData {
    e: Vec<i128>,
    lambda: Vec<Vec<i128>>,
}

impl FreeData {
    pub(crate) fn new(w: &Word, n: usize) -> Self {
        let e: Vec<i128> = w.abelianize(n).into_iter().map(i128::from).collect();
        let c = degree2_coefficients(w, n);
        let mut lambda = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let l = c[i][j] as i128 - e[i] * e[j];
                lambda[i][j] = l;
                lambda[j][i] = -l;
            }
        }
        FreeData { e, lambda }
    }

    fn phi_feature(&self, (i, j, k): (usize, usize, usize)) -> i128 {
        let e = &self.e;
        let l = &self.lambda;
        e[i] * e[j] * e[k] + 2 * (e[i] * l[j][k] - e[j] * l[i][k] + e[k] * l[i][j])
    }

    /// Coefficients of the unknowns `Q_ab` (`a ≤ b`) followed by `φ_t` (triples order).
    pub(crate) fn features(&self) -> Vec<Rational> {
        let n = self.e.len();
        let mut out = Vec::with_capacity(n * (n + 1) / 2);
        for a in 0..n {
            for b in a..n {
                let v = if a == b { self.e[a] * self.e[a] } else { 2 * self.e[a] * self.e[b] };
                out.push(Rational::from_integer(v.into()));
            }
        }
        out.extend(triples(n).into_iter().map(|t| Rational::from_integer(self.phi_feature(t).into())));
        out
    }

    fn value(&self, q: &QuadraticForm, phi: &Triform) -> Rational {
        let e: Vec<Rational> = self.e.iter().map(|&x| Rational::from_integer(x.into())).collect();
        let mut s = q.eval(&e);
        for (&t, c) in phi.terms() {
            s += c * Rational::from_integer(self.phi_feature(t).into());
        }
        s
    }
}

pub(crate) fn free_eval(q: &QuadraticForm, phi: &Triform, w: &Word, n: usize) -> Rational {
    FreeData::new(w, n).value(q, phi)
}

/// A function in `C(Γ)`: `f(1) = 0`, `f(γ) = f(γ⁻¹)`, `f(γδ) = f(δγ)`.
#[derive(Clone)]
pub struct CentralFunction {
    rank: usize,
    f: Arc<dyn Fn(&Word) -> Rational + Send + Sync>,
}

impl fmt::Debug for CentralFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CentralFunction").field("rank", &self.rank).finish_non_exhaustive()
    }
}

const CENTRAL_SPOT_CHECKS: u64 = 20;

impl CentralFunction {
    /// Wraps `f` after spot-checking the three defining identities on
    /// seeded random words over `rank` generators.
    pub fn new<F>(rank: usize, f: F) -> Result<Self, ParallelogramError>
    where
        F: Fn(&Word) -> Rational + Send + Sync + 'static,
    {
        if !f(&Word::identity()).is_zero() {
            return Err(ParallelogramError::NotCentral("f(1) ≠ 0".into()));
        }
        if rank > 0 {
            for trial in 0..CENTRAL_SPOT_CHECKS {
                let mut rng = trial_rng(0xC347_12A1, trial);
                let g = random_word_up_to(&mut rng, rank, 8);
                let d = random_word_up_to(&mut rng, rank, 8);
                if f(&g) != f(&g.inverse()) {
                    return Err(ParallelogramError::NotCentral(format!("f(w) ≠ f(w⁻¹) for w = {g}")));
                }
                if f(&g.product(&d)) != f(&d.product(&g)) {
                    return Err(ParallelogramError::NotCentral(format!("f(uv) ≠ f(vu) for u = {g}, v = {d}")));
                }
            }
        }
        Ok(CentralFunction { rank, f: Arc::new(f) })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl WordFunction for CentralFunction {
    fn eval(&self, w: &Word) -> Rational {
        (self.f)(w)
    }
}

/// 2×2 rational matrices under multiplication.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RationalSl2;

impl Group for RationalSl2 {
    type Element = Mat2<Rational>;

    fn identity(&self) -> Mat2<Rational> {
        Mat2::identity()
    }

    fn mul(&self, a: &Mat2<Rational>, b: &Mat2<Rational>) -> Mat2<Rational> {
        a.mul(b)
    }

    fn inv(&self, a: &Mat2<Rational>) -> Mat2<Rational> {
        a.adjugate()
    }
}

/// `w ↦ Tr ρ(w) − 2` for an exact `SL₂(ℚ)` representation of a free group.
pub fn trace_central_function(rep: &[Mat2<Rational>]) -> Result<CentralFunction, ParallelogramError> {
    if let Some(i) = rep.iter().position(|m| !m.det().is_one()) {
        return Err(ParallelogramError::DeterminantNotOne(i));
    }
    let h = GroupHom::new(RationalSl2, rep.to_vec());
    let two = Rational::from_integer(2.into());
    CentralFunction::new(rep.len(), move |w: &Word| {
        evaluate_hom(w, &h).expect("word within the representation's rank").trace() - &two
    })
}
