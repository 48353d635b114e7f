//! Two-generator lifting: from traces `(x, y, z) = (Tr A, Tr B, Tr AB)` of a
//! character jet to matrices over Laurent series.
//!
//! Inputs known to order `N` are treated as polynomials (zero padded) while
//! solving; any exact solution for the padded data is a solution modulo
//! `t^{N+1}`. Divisions lose absolute precision, so the working precision is
//! raised until the answer is known to order `N`.

use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::{JetError, Series};
use crate::linalg::Mat2;
use crate::scalar::SeriesScalar;
use crate::{Complex64, Gaussian, Rational};

/// `(x, y, z)` together with `Δ = x² + y² + z² − xyz − 4`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceTriple<S> {
    pub x: Series<S>,
    pub y: Series<S>,
    pub z: Series<S>,
    pub delta: Series<S>,
}

impl<S: SeriesScalar> TraceTriple<S> {
    pub fn new(x: Series<S>, y: Series<S>, z: Series<S>) -> Self {
        let delta = &(&(&(&x * &x) + &(&y * &y)) + &(&z * &z)) - &(&(&(&x * &y) * &z) + &c(4));
        TraceTriple { x, y, z, delta }
    }

    /// `Δ ≡ 0 mod t^{order+1}`.
    pub fn is_degenerate(&self, order: usize) -> bool {
        self.delta.agrees_with(&Series::zero(), order as i64)
    }
}

fn c<S: SeriesScalar>(n: i64) -> Series<S> {
    Series::constant(S::from_i64(n))
}

fn half<S: SeriesScalar>() -> Series<S> {
    Series::constant(S::one() / S::from_i64(2))
}

const SLACKS: [i64; 6] = [4, 8, 16, 32, 64, 128];

/// Solves `a + d = y`, `b − c + dx = z`, `ad − bc = 1` to order `N`.
pub fn solve_trace_system<S: SeriesScalar>(
    x: &Series<S>,
    y: &Series<S>,
    z: &Series<S>,
    order: usize,
) -> Result<[Series<S>; 4], JetError> {
    let n = order as i64;
    for s in [x, y, z] {
        if s.precision() <= n {
            return Err(JetError::Precondition(format!("input known only below t^{}", s.precision())));
        }
    }
    let (x, y, z) = (x.truncate(n), y.truncate(n), z.truncate(n));
    if TraceTriple::new(x.clone(), y.clone(), z.clone()).is_degenerate(order) {
        return Err(JetError::Degenerate);
    }
    for slack in SLACKS {
        let w = n + 1 + slack * (n + 1);
        let sol = solve_padded(&x.pad_to(w), &y.pad_to(w), &z.pad_to(w))?;
        if sol.iter().all(|e| e.precision() > n) {
            let [a, b, cc, d] = sol.map(|e| e.truncate(n));
            let ok = (&a + &d).agrees_with(&y, n)
                && (&(&b - &cc) + &(&d * &x)).agrees_with(&z, n)
                && (&(&a * &d) - &(&b * &cc)).agrees_with(&c(1), n);
            if !ok {
                return Err(JetError::Consistency("back-substitution failed".into()));
            }
            return Ok([a, b, cc, d]);
        }
    }
    Err(JetError::Consistency("precision loss exceeds the working precision".into()))
}

fn solve_padded<S: SeriesScalar>(x: &Series<S>, y: &Series<S>, z: &Series<S>) -> Result<[Series<S>; 4], JetError> {
    let delta = TraceTriple::new(x.clone(), y.clone(), z.clone()).delta;
    let four_minus = &c(4) - &(x * x);
    let k = &four_minus * &c::<S>(1).scale(&(S::one() / S::from_i64(4)));
    // a′² + k b′² + b·p + 1 − y²/4 = 0 with a′ = a − bx/2 − y/2
    let p = &(&(x * y) * &half()) - z;
    let b = if k.is_zero_series() {
        // x = ±2: linear in b with a′ = 0
        let rhs = &(&(y * y) * &c::<S>(1).scale(&(S::one() / S::from_i64(4)))) - &c(1);
        rhs.div(&p)?
    } else {
        let r = delta.div(&four_minus)?;
        let vr = r.valuation().ok_or(JetError::Degenerate)?;
        let vk = k.valuation().expect("nonzero");
        let (a1, b1) = if vr.rem_euclid(2) == 0 {
            match r.sqrt() {
                Ok(root) => (root, Series::zero()),
                Err(e) if vk.rem_euclid(2) == 0 => two_squares(&r, &k).map_err(|_| e)?,
                Err(e) => return Err(e),
            }
        } else if vk.rem_euclid(2) != 0 {
            (Series::zero(), r.div(&k)?.sqrt()?)
        } else {
            two_squares(&r, &k)?
        };
        let b = &b1 - &p.div(&(&k * &c(2)))?;
        return Ok(back_substitute(a1, b, x, y, z));
    };
    Ok(back_substitute(Series::zero(), b, x, y, z))
}

/// `u² + k v² = r` via `u = (r+1)/2`, `√k·v = (r−1)/(2i)`.
fn two_squares<S: SeriesScalar>(r: &Series<S>, k: &Series<S>) -> Result<(Series<S>, Series<S>), JetError> {
    let i = S::imaginary_unit().ok_or(JetError::NeedsImaginaryUnit { mode: S::MODE })?;
    let s = k.sqrt()?;
    let u = &(r + &c(1)) * &half();
    let w = (r - &c(1)).scale(&(S::one() / (i.clone() + i)));
    Ok((u, w.div(&s)?))
}

fn back_substitute<S: SeriesScalar>(
    a1: Series<S>,
    b: Series<S>,
    x: &Series<S>,
    y: &Series<S>,
    z: &Series<S>,
) -> [Series<S>; 4] {
    let a = &a1 + &(&(&(&b * x) + y) * &half());
    let d = y - &a;
    let cc = &(&b + &(&d * x)) - z;
    [a, b, cc, d]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LiftBranch {
    /// `Δ ≢ 0`: companion form for `A`.
    Irreducible,
    /// `Δ ≡ 0`, `x ≢ ±2`: Cramer solve over Laurent series.
    Reducible,
    /// All traces `≡ 2`.
    Trivial,
}

/// Largest coefficient error in each checked relation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LiftResiduals {
    pub trace_a: f64,
    pub trace_b: f64,
    pub trace_ab: f64,
    pub det_a: f64,
    pub det_b: f64,
}

impl LiftResiduals {
    pub fn max(&self) -> f64 {
        [self.trace_a, self.trace_b, self.trace_ab, self.det_a, self.det_b].into_iter().fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lift<S> {
    pub a: Mat2<Series<S>>,
    pub b: Mat2<Series<S>>,
    pub branch: LiftBranch,
    pub order: usize,
    /// Order up to which `det B ≡ 1` was verified (lower than `order` on the reducible branch).
    pub det_verified_order: usize,
    pub residuals: LiftResiduals,
}

/// Matrices `A, B ∈ SL₂(K)` with `Tr A = x`, `Tr B = y`, `Tr AB = z` modulo `t^{N+1}`.
pub fn lift_two_generator_character<S: SeriesScalar>(
    x: &Series<S>,
    y: &Series<S>,
    z: &Series<S>,
    order: usize,
) -> Result<Lift<S>, JetError> {
    let n = order as i64;
    let two = c::<S>(2);
    for (name, s) in [("x", x), ("y", y), ("z", z)] {
        if s.precision() <= n {
            return Err(JetError::Precondition(format!("{name} known only below t^{}", s.precision())));
        }
        if !(s.coefficient(0) - S::from_i64(2)).is_negligible(crate::scalar::default_tolerance())
            || s.valuation().is_some_and(|v| v < 0)
        {
            return Err(JetError::Precondition(format!("{name} does not reduce to 2 at t = 0")));
        }
    }
    let (x, y, z) = (x.truncate(n), y.truncate(n), z.truncate(n));
    let triple = TraceTriple::new(x.clone(), y.clone(), z.clone());
    let (a, b, branch, det_order) = if !triple.is_degenerate(order) {
        let [ba, bb, bc, bd] = solve_trace_system(&x, &y, &z, order)?;
        let a = Mat2::new(Series::zero(), c(-1), c(1), x.clone());
        (a, Mat2::new(ba, bb, bc, bd), LiftBranch::Irreducible, order)
    } else if x.agrees_with(&two, n) {
        if y.agrees_with(&two, n) && z.agrees_with(&two, n) {
            (Mat2::identity(), Mat2::identity(), LiftBranch::Trivial, order)
        } else {
            return Err(JetError::UnsupportedReducible(
                "Tr A ≡ 2 with Tr B or Tr AB not ≡ 2 needs a ramified extension".into(),
            ));
        }
    } else {
        let (b, k) = reducible_branch(&x, &y, &z, n)?;
        let a = Mat2::new(Series::zero(), c(-1), c(1), x.clone());
        (a, b, LiftBranch::Reducible, (order as i64 - k).max(0) as usize)
    };
    let one = c::<S>(1);
    let ab = a.mul(&b);
    let residuals = LiftResiduals {
        trace_a: a.trace().residual(&x, n),
        trace_b: b.trace().residual(&y, n),
        trace_ab: ab.trace().residual(&z, n),
        det_a: a.det().residual(&one, n),
        det_b: b.det().residual(&one, det_order as i64),
    };
    let ok = a.trace().agrees_with(&x, n)
        && b.trace().agrees_with(&y, n)
        && ab.trace().agrees_with(&z, n)
        && a.det().agrees_with(&one, n)
        && b.det().agrees_with(&one, det_order as i64);
    if !ok {
        return Err(JetError::Consistency(format!("lift residuals {residuals:?}")));
    }
    Ok(Lift { a, b, branch, order, det_verified_order: det_order, residuals })
}

/// `B = [[u, v], [−v, u − vx]]` from `2u − xv = y`, `xu + (2 − x²)v = z`.
fn reducible_branch<S: SeriesScalar>(
    x: &Series<S>,
    y: &Series<S>,
    z: &Series<S>,
    n: i64,
) -> Result<(Mat2<Series<S>>, i64), JetError> {
    let det = &c(4) - &(x * x);
    let k = det.valuation().expect("x ≢ ±2");
    let w = n + 1 + 2 * k + 2;
    let (xp, yp, zp) = (x.pad_to(w), y.pad_to(w), z.pad_to(w));
    let det = &c(4) - &(&xp * &xp);
    let u = (&(&yp * &(&c(2) - &(&xp * &xp))) + &(&xp * &zp)).div(&det)?;
    let v = (&(&c(2) * &zp) - &(&xp * &yp)).div(&det)?;
    let d = &u - &(&v * &xp);
    let neg_v = -v.clone();
    Ok((Mat2::new(u.truncate(n), v.truncate(n), neg_v.truncate(n), d.truncate(n)), k))
}

/// A lift in whichever scalar mode first succeeds.
#[derive(Debug, Clone, PartialEq)]
pub enum LiftOutcome {
    Rational(Lift<Rational>),
    Gaussian(Lift<Gaussian>),
    Floating(Lift<Complex64>),
}

impl LiftOutcome {
    pub fn branch(&self) -> LiftBranch {
        match self {
            LiftOutcome::Rational(l) => l.branch,
            LiftOutcome::Gaussian(l) => l.branch,
            LiftOutcome::Floating(l) => l.branch,
        }
    }

    pub fn residuals(&self) -> &LiftResiduals {
        match self {
            LiftOutcome::Rational(l) => &l.residuals,
            LiftOutcome::Gaussian(l) => &l.residuals,
            LiftOutcome::Floating(l) => &l.residuals,
        }
    }

    pub fn mode(&self) -> crate::scalar::ScalarMode {
        match self {
            LiftOutcome::Rational(_) => Rational::MODE,
            LiftOutcome::Gaussian(_) => Gaussian::MODE,
            LiftOutcome::Floating(_) => Complex64::MODE,
        }
    }
}

fn needs_bigger_field(e: &JetError) -> bool {
    matches!(e, JetError::NonSquareLeading { .. } | JetError::NeedsImaginaryUnit { .. })
}

/// Tries `ℚ`, then `ℚ(i)`, then complex floating point.
pub fn lift_auto(
    x: &Series<Rational>,
    y: &Series<Rational>,
    z: &Series<Rational>,
    order: usize,
) -> Result<LiftOutcome, JetError> {
    match lift_two_generator_character(x, y, z, order) {
        Ok(l) => return Ok(LiftOutcome::Rational(l)),
        Err(e) if needs_bigger_field(&e) => {}
        Err(e) => return Err(e),
    }
    let g = |s: &Series<Rational>| s.map_scalar(|q| Gaussian::new(q.clone(), Rational::zero()));
    match lift_two_generator_character(&g(x), &g(y), &g(z), order) {
        Ok(l) => return Ok(LiftOutcome::Gaussian(l)),
        Err(e) if needs_bigger_field(&e) => {}
        Err(e) => return Err(e),
    }
    let f = |s: &Series<Rational>| s.map_scalar(|q| Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0));
    lift_two_generator_character(&f(x), &f(y), &f(z), order).map(LiftOutcome::Floating)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jets::{build_parabolic_deformation, character_jet_from_rep};
    use crate::scalar::int;
    use crate::words::Word;
    use num_traits::One;

    fn poly(c: &[i64], order: usize) -> Series<Rational> {
        Series::from_coeffs(c.iter().map(|&x| int(x)).collect(), order)
    }

    fn gpoly(c: &[i64], order: usize) -> Series<Gaussian> {
        Series::from_coeffs(c.iter().map(|&x| Gaussian::new(int(x), int(0))).collect(), order)
    }

    #[test]
    fn constant_zero_traces() {
        let z = gpoly(&[0], 4);
        let [a, b, cc, d] = solve_trace_system(&z, &z, &z, 4).unwrap();
        let i = Gaussian::new(int(0), int(1));
        assert_eq!(a, Series::constant(i.clone()).truncate(4));
        assert!(b.is_zero_series() && cc.is_zero_series());
        assert_eq!(d, Series::constant(-i).truncate(4));
        // ℚ has no i
        assert!(matches!(
            solve_trace_system(&poly(&[0], 4), &poly(&[0], 4), &poly(&[0], 4), 4),
            Err(JetError::NonSquareLeading { .. })
        ));
    }

    #[test]
    fn perturbed_trivial_traces() {
        let (x, y, z) = (gpoly(&[2, 1], 8), gpoly(&[2], 8), gpoly(&[2], 8));
        let [a, b, cc, d] = solve_trace_system(&x, &y, &z, 8).unwrap();
        assert!((&a + &d).agrees_with(&y, 8));
        assert!((&(&b - &cc) + &(&d * &x)).agrees_with(&z, 8));
        assert!((&(&a * &d) - &(&b * &cc)).agrees_with(&Series::one(), 8));
    }

    #[test]
    fn degenerate_trivial_point() {
        let two = poly(&[2], 8);
        assert_eq!(solve_trace_system(&two, &two, &two, 8), Err(JetError::Degenerate));
        let l = lift_two_generator_character(&two, &two, &two, 8).unwrap();
        assert_eq!(l.branch, LiftBranch::Trivial);
        assert_eq!(l.a, Mat2::identity());
    }

    #[test]
    fn parabolic_round_trip() {
        let rep = build_parabolic_deformation(&[int(1), int(0)], &[int(0), int(1)]);
        let jet = character_jet_from_rep(&rep, 8).unwrap();
        let tr = |s: &[i64]| jet.trace_series(&Word::from_signed(s));
        let (x, y, z) = (tr(&[1]), tr(&[2]), tr(&[1, 2]));
        let out = lift_auto(&x, &y, &z, 8).unwrap();
        assert_eq!(out.residuals().max(), 0.0);
        assert_eq!(out.branch(), LiftBranch::Irreducible);
    }

    #[test]
    fn diagonal_character_uses_reducible_branch() {
        // λ = 1 + t: x = λ + λ⁻¹, y = λ² + λ⁻², z = λ³ + λ⁻³
        let n = 6;
        let lam = poly(&[1, 1], n + 4);
        let inv = lam.inv().unwrap();
        let pw = |k: u32| {
            let mut p = Series::one();
            let mut q = Series::one();
            for _ in 0..k {
                p = &p * &lam;
                q = &q * &inv;
            }
            &p + &q
        };
        let (x, y, z) = (pw(1), pw(2), pw(3));
        let l = lift_two_generator_character(&x, &y, &z, n).unwrap();
        assert_eq!(l.branch, LiftBranch::Reducible);
        assert_eq!(l.residuals.max(), 0.0);
        assert!(l.det_verified_order < n);
    }

    #[test]
    fn unsupported_reducible() {
        let (x, y) = (poly(&[2], 4), poly(&[2, 0, 1], 4));
        assert!(matches!(lift_two_generator_character(&x, &y, &y, 4), Err(JetError::UnsupportedReducible(_))));
    }
}
