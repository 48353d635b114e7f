use num_traits::{One, Zero};
use serde::Serialize;

use super::{JetError, Series};
use crate::linalg::Mat2;
use crate::parallelogram::{Ambient, ParallelogramFunction, QuadraticForm};
use crate::scalar::{gaussian_sqrt, ScalarMode, SeriesScalar};
use crate::{Complex64, Gaussian, Rational};

/// How far the two necessary conditions go for the ambient at hand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ObstructionSemantics {
    /// Free groups: the conditions are also sufficient.
    NecessaryAndSufficient,
    /// Presented groups: only necessary.
    NecessaryOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionReport {
    pub order2_extendable: bool,
    pub order3_extendable: bool,
    pub rank: usize,
    pub semantics: ObstructionSemantics,
}

/// Order 2 needs `φ = 0`; order 3 also needs `rank q ≤ 2`.
pub fn obstruction_report(f: &ParallelogramFunction) -> ObstructionReport {
    let rank = f.q().rank();
    let order2 = f.phi().is_zero();
    let semantics = match f.ambient() {
        Ambient::Free { .. } => ObstructionSemantics::NecessaryAndSufficient,
        Ambient::Presented { .. } => ObstructionSemantics::NecessaryOnly,
    };
    ObstructionReport { order2_extendable: order2, order3_extendable: order2 && rank <= 2, rank, semantics }
}

/// `q = ℓ₁ℓ₂` with the linear forms given by their coefficient vectors.
#[derive(Debug, Clone, PartialEq)]
pub enum LinearFactorization {
    Exact { l1: Vec<Gaussian>, l2: Vec<Gaussian> },
    Floating { l1: Vec<Complex64>, l2: Vec<Complex64> },
}

impl LinearFactorization {
    pub fn mode(&self) -> ScalarMode {
        match self {
            LinearFactorization::Exact { .. } => ScalarMode::GaussianRational,
            LinearFactorization::Floating { .. } => ScalarMode::ComplexFloating,
        }
    }

    /// Both forms have rational coefficients.
    pub fn is_rational(&self) -> bool {
        match self {
            LinearFactorization::Exact { l1, l2 } => l1.iter().chain(l2).all(|c| c.im.is_zero()),
            LinearFactorization::Floating { .. } => false,
        }
    }

    pub fn floating(&self) -> (Vec<Complex64>, Vec<Complex64>) {
        use num_traits::ToPrimitive;
        let conv = |v: &[Gaussian]| -> Vec<Complex64> {
            v.iter()
                .map(|z| Complex64::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN)))
                .collect()
        };
        match self {
            LinearFactorization::Exact { l1, l2 } => (conv(l1), conv(l2)),
            LinearFactorization::Floating { l1, l2 } => (l1.clone(), l2.clone()),
        }
    }
}

/// Diagonalizes `xᵀQx` as `Σ d_k ℓ_k(x)²` by congruence over `ℚ`.
fn diagonalize(q: &QuadraticForm) -> Vec<(Rational, Vec<Rational>)> {
    let n = q.dim();
    let mut m = q.matrix().to_rows();
    let mut out = Vec::new();
    loop {
        if let Some(i) = (0..n).find(|&i| !m[i][i].is_zero()) {
            let d = m[i][i].clone();
            let l: Vec<Rational> = m[i].iter().map(|x| x / &d).collect();
            let row = m[i].clone();
            for a in 0..n {
                for b in 0..n {
                    let delta = &row[a] * &row[b] / &d;
                    m[a][b] -= delta;
                }
            }
            out.push((d, l));
            continue;
        }
        // zero diagonal: 2uw/m = ((u+w)² − (u−w)²)/(2m) for u, w the rows i, j
        let Some((i, j)) = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).find(|&(i, j)| !m[i][j].is_zero()) else {
            return out;
        };
        let mij = m[i][j].clone();
        let (u, w) = (m[i].clone(), m[j].clone());
        for a in 0..n {
            for b in 0..n {
                let delta = (&u[a] * &w[b] + &w[a] * &u[b]) / &mij;
                m[a][b] -= delta;
            }
        }
        let two_m = &mij + &mij;
        out.push((Rational::one() / &two_m, u.iter().zip(&w).map(|(x, y)| x + y).collect()));
        out.push((-Rational::one() / &two_m, u.iter().zip(&w).map(|(x, y)| x - y).collect()));
    }
}

fn gauss(x: &Rational) -> Gaussian {
    Gaussian::new(x.clone(), Rational::zero())
}

/// Writes a rank ≤ 2 form as a product of two linear forms, exactly over
/// `ℚ(i)` when possible and in complex floating point otherwise.
pub fn factor_quadratic_form(q: &QuadraticForm) -> Result<LinearFactorization, JetError> {
    let n = q.dim();
    let terms = diagonalize(q);
    match terms.as_slice() {
        [] => Ok(LinearFactorization::Exact { l1: vec![Gaussian::zero(); n], l2: vec![Gaussian::zero(); n] }),
        [(d, l)] => Ok(LinearFactorization::Exact {
            l1: l.iter().map(|x| gauss(&(x * d))).collect(),
            l2: l.iter().map(gauss).collect(),
        }),
        [(d1, l1), (d2, l2)] => {
            // d₁(ℓ₁ + sℓ₂)(ℓ₁ − sℓ₂) with s² = −d₂/d₁
            let ratio = -(d2 / d1);
            if let Some(s) = gaussian_sqrt(&gauss(&ratio)) {
                let f1 = l1.iter().zip(l2).map(|(a, b)| (gauss(a) + &s * gauss(b)) * gauss(d1)).collect();
                let f2 = l1.iter().zip(l2).map(|(a, b)| gauss(a) - &s * gauss(b)).collect();
                return Ok(LinearFactorization::Exact { l1: f1, l2: f2 });
            }
            use num_traits::ToPrimitive;
            let f = |x: &Rational| Complex64::new(x.to_f64().unwrap_or(f64::NAN), 0.0);
            let s = f(&ratio).sqrt();
            let d1f = f(d1);
            Ok(LinearFactorization::Floating {
                l1: l1.iter().zip(l2).map(|(a, b)| (f(a) + s * f(b)) * d1f).collect(),
                l2: l1.iter().zip(l2).map(|(a, b)| f(a) - s * f(b)).collect(),
            })
        }
        more => Err(JetError::RankTooLarge(more.len())),
    }
}

/// `ρ_t(a_i) = [[1, ℓ₁(a_i)], [0, 1]]·[[1, 0], [tℓ₂(a_i), 1]]`, exact polynomials.
pub fn build_parabolic_deformation<S: SeriesScalar>(l1: &[S], l2: &[S]) -> Vec<Mat2<Series<S>>> {
    assert_eq!(l1.len(), l2.len(), "linear forms on the same rank");
    l1.iter()
        .zip(l2)
        .map(|(x, y)| {
            Mat2::new(
                Series::polynomial(vec![S::one(), x.clone() * y.clone()]),
                Series::constant(x.clone()),
                Series::monomial(y.clone(), 1),
                Series::constant(S::one()),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::Lambda3Form;
    use crate::scalar::{int, rat};

    fn form(rows: Vec<Vec<Rational>>) -> QuadraticForm {
        QuadraticForm::from_rows(rows).unwrap()
    }

    fn check_product(q: &QuadraticForm, fac: &LinearFactorization) {
        let n = q.dim();
        let (l1, l2) = fac.floating();
        for x in [vec![1, 0, 0], vec![0, 1, 0], vec![1, 2, 3], vec![-2, 1, 5]] {
            let x = &x[..n];
            let xr: Vec<Rational> = x.iter().map(|&v| int(v)).collect();
            let expected = num_traits::ToPrimitive::to_f64(&q.eval(&xr)).unwrap();
            let dot = |l: &[Complex64]| l.iter().zip(x).map(|(c, &v)| c * v as f64).sum::<Complex64>();
            let got = dot(&l1) * dot(&l2);
            assert!((got - Complex64::new(expected, 0.0)).norm() < 1e-9, "{got} vs {expected}");
        }
    }

    #[test]
    fn obstruction_examples() {
        let f = ParallelogramFunction::free(QuadraticForm::zero(3), Lambda3Form::basis(0, 1, 2)).unwrap();
        assert!(!obstruction_report(&f).order2_extendable);
        let id = form((0..3).map(|i| (0..3).map(|j| int((i == j) as i64)).collect()).collect());
        let r = obstruction_report(&ParallelogramFunction::free(id, Lambda3Form::zero()).unwrap());
        assert_eq!((r.order2_extendable, r.order3_extendable, r.rank), (true, false, 3));
        let r = obstruction_report(&ParallelogramFunction::free(QuadraticForm::zero(3), Lambda3Form::zero()).unwrap());
        assert_eq!((r.order2_extendable, r.order3_extendable, r.rank), (true, true, 0));
        assert_eq!(r.semantics, ObstructionSemantics::NecessaryAndSufficient);
    }

    #[test]
    fn factorizations() {
        let hyperbolic = form(vec![vec![int(0), rat(1, 2)], vec![rat(1, 2), int(0)]]);
        let fac = factor_quadratic_form(&hyperbolic).unwrap();
        assert!(fac.is_rational());
        check_product(&hyperbolic, &fac);

        let square = form(vec![vec![int(1), int(0)], vec![int(0), int(0)]]);
        let fac = factor_quadratic_form(&square).unwrap();
        check_product(&square, &fac);

        let sum = form(vec![vec![int(1), int(0)], vec![int(0), int(1)]]);
        let fac = factor_quadratic_form(&sum).unwrap();
        assert_eq!(fac.mode(), ScalarMode::GaussianRational);
        assert!(!fac.is_rational());
        check_product(&sum, &fac);

        let irrational = form(vec![vec![int(1), int(0)], vec![int(0), int(2)]]);
        let fac = factor_quadratic_form(&irrational).unwrap();
        assert_eq!(fac.mode(), ScalarMode::ComplexFloating);
        check_product(&irrational, &fac);

        let rank3 = form((0..3).map(|i| (0..3).map(|j| int((i == j) as i64)).collect()).collect());
        assert_eq!(factor_quadratic_form(&rank3), Err(JetError::RankTooLarge(3)));

        let mixed =
            form(vec![vec![int(0), int(1), int(2)], vec![int(1), int(2), int(3)], vec![int(2), int(3), int(4)]]);
        assert_eq!(mixed.rank(), 2);
        check_product(&mixed, &factor_quadratic_form(&mixed).unwrap());
    }

    #[test]
    fn parabolic_trace() {
        use crate::jets::character_jet_from_rep;
        use crate::words::Word;
        let rep = build_parabolic_deformation(&[int(1), int(0)], &[int(0), int(1)]);
        let jet = character_jet_from_rep(&rep, 3).unwrap();
        assert_eq!(jet.coefficients(&Word::from_signed(&[1, 2])), vec![int(2), int(1), int(0), int(0)]);
        let trivial = build_parabolic_deformation(&[int(0)], &[int(0)]);
        assert_eq!(trivial[0], Mat2::identity());
    }
}
