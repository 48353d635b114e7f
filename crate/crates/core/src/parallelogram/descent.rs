//! `P(Γ)` as the subspace of `P(F_n)` whose functions descend to `Γ = F_n/R`.
//!
//! For each reduced relator `r` the constraints are
//! (i) `f(r) = 0`, (ii) `f(a_m r) − f(a_m) − f(r) = 0` for every generator,
//! (iii) `φ(ā_m ∧ ā_m' ∧ r̄) = 0` for `m < m'`.
//! Together they give `f(xr) = f(x)` for every word `x`: by (iii) the map
//! `x ↦ f(xr) − f(x) − f(r)` is additive (its defect is `φ(x̄ ∧ ȳ ∧ r̄)`), it
//! vanishes on generators by (ii), hence everywhere, and (i) finishes.
//! Conjugation invariance extends this to the normal closure of the relators.

use num_traits::{One, Zero};

use super::{FreeData, QuadraticForm, Triform};
use crate::homology::{compute_h1, triples, HomologyData};
use crate::linalg::Matrix;
use crate::words::{Presentation, Word};
use crate::Rational;

#[derive(Debug, Clone, PartialEq)]
pub struct DescentSolution {
    pub generator_count: usize,
    pub dimension: usize,
    /// Basis of the kernel as `(q, φ)` pairs on the generators.
    pub basis: Vec<(QuadraticForm, Triform)>,
}

impl DescentSolution {
    /// The basis expressed on the free `H₁` basis: `q ↦ L q Lᵀ`, `φ ↦ L*φ`.
    pub fn on_h1(&self, h: &HomologyData) -> Vec<(QuadraticForm, Triform)> {
        self.basis.iter().map(|(q, phi)| (q.pull_back(&h.free_basis_lift), phi.pull_back(&h.free_basis_lift))).collect()
    }
}

fn q_unknowns(n: usize) -> usize {
    n * (n + 1) / 2
}

fn unpack(n: usize, v: &[Rational]) -> (QuadraticForm, Triform) {
    let mut rows = vec![vec![Rational::zero(); n]; n];
    let mut idx = 0;
    for a in 0..n {
        for b in a..n {
            rows[a][b] = v[idx].clone();
            rows[b][a] = v[idx].clone();
            idx += 1;
        }
    }
    let q = QuadraticForm::from_rows(rows).expect("symmetric by construction");
    (q, Triform::from_coordinates(n, &v[idx..]))
}

/// Rows of the descent system over the unknowns `Q_ab` (`a ≤ b`) then `φ_t`.
fn constraint_rows(relators: &[&Word], n: usize) -> Vec<Vec<Rational>> {
    let t = triples(n);
    let nq = q_unknowns(n);
    let mut rows = Vec::new();
    let gens: Vec<Vec<Rational>> = (1..=n).map(|m| FreeData::new(&Word::generator(m), n).features()).collect();
    for r in relators {
        let fr = FreeData::new(r, n).features();
        rows.push(fr.clone());
        for (m, fg) in gens.iter().enumerate() {
            let fx = FreeData::new(&Word::generator(m + 1).product(r), n).features();
            rows.push(fx.iter().zip(fg).zip(&fr).map(|((x, g), y)| x - g - y).collect());
        }
        let rbar: Vec<Rational> = r.abelianize(n).into_iter().map(|x| Rational::from_integer(x.into())).collect();
        for m in 0..n {
            for m2 in m + 1..n {
                let mut row = vec![Rational::zero(); nq];
                row.extend(t.iter().map(|&(i, j, k)| {
                    // det of columns (i, j, k) of the rows (e_m, e_m2, r̄)
                    let col = |c: usize| -> [Rational; 3] {
                        [
                            if c == m { Rational::one() } else { Rational::zero() },
                            if c == m2 { Rational::one() } else { Rational::zero() },
                            rbar[c].clone(),
                        ]
                    };
                    let (x, y, z) = (col(i), col(j), col(k));
                    &x[0] * (&y[1] * &z[2] - &y[2] * &z[1]) - &y[0] * (&x[1] * &z[2] - &x[2] * &z[1])
                        + &z[0] * (&x[1] * &y[2] - &x[2] * &y[1])
                }));
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    rows
}

/// Kernel of the exact descent system on the reduced relators of `p`.
pub fn descent_solve(p: &Presentation) -> DescentSolution {
    let h = compute_h1(p);
    let n = p.generator_count();
    let unknowns = q_unknowns(n) + triples(n).len();
    let relators = h.reduced_relators();
    let rows = constraint_rows(&relators, n);
    let kernel: Vec<Vec<Rational>> = if rows.is_empty() {
        (0..unknowns)
            .map(|i| (0..unknowns).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect()
    } else {
        Matrix::from_rows(rows, unknowns).nullspace(0.0)
    };
    DescentSolution {
        generator_count: n,
        dimension: kernel.len(),
        basis: kernel.iter().map(|v| unpack(n, v)).collect(),
    }
}

/// The unique `q₀` on the generators with `(q₀, φ)` descending and
/// `L q₀ Lᵀ = 0`, or `None` when `φ` admits no descending completion.
pub(crate) fn quadratic_correction(p: &Presentation, h: &HomologyData, phi: &Triform) -> Option<QuadraticForm> {
    let n = p.generator_count();
    let nq = q_unknowns(n);
    let phi_coords = phi.coordinates(n);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for row in constraint_rows(&h.reduced_relators(), n) {
        let phi_part: Rational = row[nq..].iter().zip(&phi_coords).map(|(a, b)| a * b).sum();
        rows.push(row[..nq].to_vec());
        rhs.push(-phi_part);
    }
    let l = &h.free_basis_lift;
    for a in 0..h.h1_rank {
        for b in a..h.h1_rank {
            let mut row = Vec::with_capacity(nq);
            for i in 0..n {
                for j in i..n {
                    row.push(if i == j { &l[a][i] * &l[b][i] } else { &l[a][i] * &l[b][j] + &l[a][j] * &l[b][i] });
                }
            }
            rows.push(row);
            rhs.push(Rational::zero());
        }
    }
    if rows.is_empty() {
        return Some(QuadraticForm::zero(n));
    }
    let sol = Matrix::from_rows(rows, nq).solve(&rhs, 0.0)?;
    let mut full = sol;
    full.extend(std::iter::repeat_n(Rational::zero(), triples(n).len()));
    Some(unpack(n, &full).0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::e_space_basis;
    use crate::parallelogram::free_eval;
    use crate::words::{random_word_up_to, trial_rng};

    fn pres(s: &str) -> Presentation {
        Presentation::parse(s).unwrap()
    }

    #[test]
    fn free_and_abelian() {
        assert_eq!(descent_solve(&Presentation::free(&["a", "b", "c"])).dimension, 7);
        let z3 = descent_solve(&pres("gens: a b c\nrel: [a,b]\nrel: [a,c]\nrel: [b,c]"));
        assert_eq!(z3.dimension, 6);
        assert!(z3.basis.iter().all(|(_, phi)| phi.is_zero()));
    }

    #[test]
    fn genus_two() {
        let s = descent_solve(&pres("gens: a b c d\nrel: [a,b][c,d]"));
        assert_eq!(s.dimension, 10);
        assert!(s.basis.iter().all(|(_, phi)| phi.is_zero()));
    }

    #[test]
    fn exactness_on_small_corpus() {
        for text in [
            "gens: a b c d\nrel: c^3\nrel: d^3\nrel: (c d)^3",
            "gens: a b\nrel: a b a b^-1 a^-1 b^-1",
            "gens: a b c d\nrel: [a,b]",
            "gens: a b c\nrel: a^2 [b,c]",
        ] {
            let p = pres(text);
            let h = compute_h1(&p);
            let r = h.h1_rank;
            assert_eq!(descent_solve(&p).dimension, r * (r + 1) / 2 + e_space_basis(&h).0, "{text}");
        }
    }

    /// Brute force: every basis function satisfies f(x g r g⁻¹) = f(x).
    #[test]
    fn descent_is_sufficient() {
        for text in
            ["gens: a b c d\nrel: [a,b]\nrel: c^2 d^-1", "gens: a b c\nrel: [a,b] c^2", "gens: a b c d\nrel: [a,[b,c]]"]
        {
            let p = pres(text);
            let n = p.generator_count();
            let sol = descent_solve(&p);
            assert!(sol.dimension > 0);
            for (q, phi) in &sol.basis {
                for trial in 0..60 {
                    let mut rng = trial_rng(7, trial);
                    let x = random_word_up_to(&mut rng, n, 6);
                    let g = random_word_up_to(&mut rng, n, 3);
                    for r in p.relators() {
                        let y = x.product(&r.conjugate_by(&g));
                        assert_eq!(free_eval(q, phi, &y, n), free_eval(q, phi, &x, n), "{text}: x = {x}");
                    }
                }
            }
        }
    }
}
