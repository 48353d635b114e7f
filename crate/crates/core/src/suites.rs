//! Seeded fuzz suites shared by the `check` command and the acceptance tests.
//!
//! Trial `i` of a suite draws from `trial_rng(seed ^ salt, i)`, so results do
//! not depend on how trials are scheduled.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::Value;

use crate::homology::{compute_h1, e_space_basis, triples, Lambda3Form};
use crate::jets::{
    build_parabolic_deformation, character_jet_from_rep, extract_bilinear, factor_quadratic_form, lift_auto,
    solve_trace_system, verify_jet_equation, CharacterJet, JetCoefficient, JetError, LinearFactorization, Series,
    TraceTriple,
};
use crate::jets::{check_matrix_identities, MatrixIdentity};
use crate::linalg::{Mat2, Matrix};
use crate::parallelogram::{
    counting_f3, descent_solve, epsilon_eval, trace_central_function, verify_identity, Identity, ParallelogramFunction,
    QuadraticForm, WordFunction,
};
use crate::pseudochar::{
    falling_factorial, frobenius_sum, linearized_tangent_sum, signed_cycle_polynomial, MatrixTrace,
};
use crate::scalar::{default_tolerance, format_rational, ScalarMode};
use crate::words::{random_word_up_to, random_word_with, trial_rng, Presentation, Word};
use crate::{Gaussian, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// The counting function against its `(q, φ)` formula.
    Counting,
    /// The identity catalog on random `(q, φ)`.
    Parallelogram,
    /// `FORMULE4`, `NOYAUP` on trace-minus-2 functions.
    Central,
    Trace,
    Gram,
    Frobenius,
    Cycles,
    Jets,
    Parabolic,
    Lift,
    Tangent,
    Descent,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Counting,
        Suite::Parallelogram,
        Suite::Central,
        Suite::Trace,
        Suite::Gram,
        Suite::Frobenius,
        Suite::Cycles,
        Suite::Jets,
        Suite::Parabolic,
        Suite::Lift,
        Suite::Tangent,
        Suite::Descent,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Counting => "counting",
            Suite::Parallelogram => "parallelogram",
            Suite::Central => "central",
            Suite::Trace => "trace",
            Suite::Gram => "gram",
            Suite::Frobenius => "frobenius",
            Suite::Cycles => "cycles",
            Suite::Jets => "jets",
            Suite::Parabolic => "parabolic",
            Suite::Lift => "lift",
            Suite::Tangent => "tangent",
            Suite::Descent => "descent",
        }
    }

    fn salt(self) -> u64 {
        0x5eed_0000 + self as u64
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteConfig {
    /// Free group rank where a suite lets it vary.
    pub rank: usize,
    pub iters: usize,
    /// Maximum random word length.
    pub len: usize,
    pub seed: u64,
    /// Matrix size for the Frobenius suite.
    pub n: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { rank: 3, iters: 100, len: 10, seed: 1, n: 2 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub trials: usize,
    pub failures: usize,
    /// `"p/q"` for exact suites, a number for floating ones.
    pub max_residual: Value,
    pub mode: ScalarMode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

struct Acc {
    trials: usize,
    failures: usize,
    max_exact: Rational,
    max_float: f64,
    first_failure: Option<String>,
}

impl Acc {
    fn new() -> Self {
        Acc { trials: 0, failures: 0, max_exact: Rational::zero(), max_float: 0.0, first_failure: None }
    }

    fn fail(&mut self, what: impl FnOnce() -> String) {
        self.failures += 1;
        if self.first_failure.is_none() {
            self.first_failure = Some(what());
        }
    }

    /// One trial with exact residuals.
    fn exact(&mut self, residuals: &[Rational], what: impl FnOnce() -> String) {
        self.trials += 1;
        let worst = residuals.iter().map(|r| r.abs()).max().unwrap_or_else(Rational::zero);
        if !worst.is_zero() {
            self.fail(what);
        }
        if worst > self.max_exact {
            self.max_exact = worst;
        }
    }

    /// One trial with floating residuals (exact-mode trials pass only at 0).
    fn float(&mut self, residual: f64, exact: bool, what: impl FnOnce() -> String) {
        self.trials += 1;
        let ok = if exact { residual == 0.0 } else { residual <= default_tolerance() };
        if !ok {
            self.fail(what);
        }
        self.max_float = self.max_float.max(residual);
    }

    fn error(&mut self, what: impl FnOnce() -> String) {
        self.trials += 1;
        self.fail(what);
    }

    fn report(self, suite: Suite, mode: ScalarMode) -> SuiteReport {
        let max_residual = if mode.is_exact() {
            Value::String(format_rational(&self.max_exact))
        } else {
            serde_json::json!(self.max_float)
        };
        SuiteReport {
            suite,
            passed: self.failures == 0,
            trials: self.trials,
            failures: self.failures,
            max_residual,
            mode,
            first_failure: self.first_failure,
        }
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> SuiteReport {
    let rng = |trial: usize| trial_rng(cfg.seed ^ suite.salt(), trial as u64);
    let mut acc = Acc::new();
    let mut mode = ScalarMode::ExactRational;
    match suite {
        Suite::Counting => counting(cfg, rng, &mut acc),
        Suite::Parallelogram => parallelogram(cfg, rng, &mut acc),
        Suite::Central => central(cfg, rng, &mut acc),
        Suite::Trace => matrix_pairs(MatrixIdentity::TraceId, cfg, rng, &mut acc),
        Suite::Gram => matrix_pairs(MatrixIdentity::Gram, cfg, rng, &mut acc),
        Suite::Frobenius => frobenius(cfg, rng, &mut acc),
        Suite::Cycles => {
            for l in 1..=6 {
                let got = signed_cycle_polynomial(l).expect("l ≤ 8");
                let diff: Vec<Rational> =
                    got.iter().zip(falling_factorial(l)).map(|(a, b)| Rational::from_integer((a - b).into())).collect();
                acc.exact(&diff, || format!("l = {l}: {got:?}"));
            }
        }
        Suite::Jets => jets(cfg, rng, &mut acc),
        Suite::Parabolic => parabolic(cfg, rng, &mut acc),
        Suite::Lift => mode = lift(cfg, rng, &mut acc),
        Suite::Tangent => tangent(cfg, rng, &mut acc),
        Suite::Descent => {
            for (name, p) in corpus() {
                let h = compute_h1(&p);
                let r = h.h1_rank;
                let expected = r * (r + 1) / 2 + e_space_basis(&h).0;
                let got = descent_solve(&p).dimension;
                let diff = Rational::from_integer((got as i64 - expected as i64).into());
                acc.exact(&[diff], || format!("{name}: descent {got}, closed form {expected}"));
            }
        }
    }
    acc.report(suite, mode)
}

/// The standard presentation corpus.
pub fn corpus() -> Vec<(&'static str, Presentation)> {
    CORPUS.iter().map(|(name, text)| (*name, Presentation::parse(text).expect("corpus presentations parse"))).collect()
}

/// Names and texts of the corpus presentations.
pub const CORPUS: [(&str, &str); 9] = [
    ("free2", "gens: a b"),
    ("free3", "gens: a b c"),
    ("free5", "gens: a b c d e"),
    ("z2", "gens: a b\nrel: [a,b]"),
    ("z3", "gens: a b c\nrel: [a,b]\nrel: [a,c]\nrel: [b,c]"),
    ("genus2", "gens: a b c d\nrel: [a,b][c,d]"),
    ("genus3", "gens: a b c d e f\nrel: [a,b][c,d][e,f]"),
    ("trefoil", "gens: a b\nrel: a b a b^-1 a^-1 b^-1"),
    ("free2_triangle333", "gens: a b c d\nrel: c^3\nrel: d^3\nrel: (c d)^3"),
];

pub fn random_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(-5i64..=5).into(), rng.gen_range(1i64..=3).into())
}

pub fn random_qphi(rng: &mut impl Rng, n: usize) -> (QuadraticForm, Lambda3Form) {
    let mut rows = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let x = random_rational(rng);
            rows[i][j] = x.clone();
            rows[j][i] = x;
        }
    }
    let coords: Vec<Rational> = triples(n).iter().map(|_| random_rational(rng)).collect();
    (QuadraticForm::from_rows(rows).expect("symmetric"), Lambda3Form::from_coordinates(n, &coords))
}

/// A product of a few elementary matrices in `SL₂(ℤ)`.
pub fn random_sl2z(rng: &mut impl Rng) -> Mat2<Rational> {
    let int = |k: i64| Rational::from_integer(k.into());
    let mut m = Mat2::identity();
    for _ in 0..rng.gen_range(1..=4) {
        let k = int(rng.gen_range(-3i64..=3));
        let e =
            if rng.gen_bool(0.5) { Mat2::new(int(1), k, int(0), int(1)) } else { Mat2::new(int(1), int(0), k, int(1)) };
        m = m.mul(&e);
    }
    m
}

/// An invertible `n × n` integer matrix with entries in `[-3, 3]`.
pub fn random_int_matrix(rng: &mut impl Rng, n: usize) -> Matrix<Rational> {
    loop {
        let rows =
            (0..n).map(|_| (0..n).map(|_| Rational::from_integer(rng.gen_range(-3i64..=3).into())).collect()).collect();
        let m = Matrix::from_rows(rows, n);
        if !m.determinant().is_zero() {
            return m;
        }
    }
}

fn random_poly(rng: &mut impl Rng, order: usize, from: usize) -> Vec<Rational> {
    (0..=order)
        .map(|k| if k < from { Rational::zero() } else { Rational::from_integer(rng.gen_range(-2i64..=2).into()) })
        .collect()
}

/// Images `[[1, u], [0, 1]]·[[1, 0], [t v, 1]]·[[λ, 0], [0, λ⁻¹]]·[[1, t w], [0, 1]]`
/// with `λ = 1 + t h`: unipotent upper-triangular residue, determinant 1.
pub fn random_unipotent_rep(rng: &mut impl Rng, rank: usize, order: usize) -> Vec<Mat2<Series<Rational>>> {
    let n = order;
    let s = |c: Vec<Rational>| Series::from_coeffs(c, n);
    (0..rank)
        .map(|_| {
            let one = s(vec![Rational::from_integer(1.into())]);
            let zero = s(vec![Rational::zero()]);
            let u = s(random_poly(rng, n, 0));
            let v = s(random_poly(rng, n, 1));
            let w = s(random_poly(rng, n, 1));
            let mut h = random_poly(rng, n, 1);
            h[0] = Rational::from_integer(1.into());
            let lam = s(h);
            let lam_inv = lam.inv().expect("unit");
            let up = Mat2::new(one.clone(), u, zero.clone(), one.clone());
            let low = Mat2::new(one.clone(), zero.clone(), v, one.clone());
            let diag = Mat2::new(lam, zero.clone(), zero.clone(), lam_inv);
            let up2 = Mat2::new(one.clone(), w, zero, one);
            up.mul(&low).mul(&diag).mul(&up2)
        })
        .collect()
}

/// A rank ≤ 2 form factoring over `ℚ(i)`: `uw`, `u²` or `c(u² + w²)`.
pub fn random_rank2_form(rng: &mut impl Rng, n: usize) -> QuadraticForm {
    let vec = |rng: &mut dyn rand::RngCore| -> Vec<Rational> {
        (0..n).map(|_| Rational::from_integer(rng.gen_range(-3i64..=3).into())).collect()
    };
    let u = vec(rng);
    let w = vec(rng);
    let kind = rng.gen_range(0..3);
    let c = random_rational(rng);
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match kind {
                    0 => (&u[i] * &w[j] + &u[j] * &w[i]) / Rational::from_integer(2.into()),
                    1 => &c * &u[i] * &u[j],
                    _ => &c * (&u[i] * &u[j] + &w[i] * &w[j]),
                })
                .collect()
        })
        .collect();
    QuadraticForm::from_rows(rows).expect("symmetric")
}

fn counting(cfg: &SuiteConfig, rng: impl Fn(usize) -> ChaCha8Rng, acc: &mut Acc) {
    let f = ParallelogramFunction::free(QuadraticForm::zero(3), Lambda3Form::basis(0, 1, 2)).expect("rank 3");
    for trial in 0..cfg.iters {
        let w = random_word_up_to(&mut rng(trial), 3, cfg.len);
        let diff = Rational::from_integer(counting_f3(&w).into()) - f.eval(&w);
        acc.exact(&[diff], || format!("w = {w}"));
    }
}

fn parallelogram(cfg: &SuiteConfig, rng: impl Fn(usize) -> ChaCha8Rng, acc: &mut Acc) {
    let n = cfg.rank.max(1);
    let ids = [Identity::Parallelogram, Identity::Elem, Identity::Cubic, Identity::Alter3, Identity::VersGgg];
    for trial in 0..cfg.iters {
        let mut r = rng(trial);
        let (q, phi) = random_qphi(&mut r, n);
        let f = ParallelogramFunction::free(q, phi).expect("matching rank");
        let mut residuals = Vec::new();
        let mut failed = None;
        for id in ids {
            let inputs: Vec<Word> = (0..id.arity()).map(|_| random_word_up_to(&mut r, n, cfg.len)).collect();
            let check = verify_identity(id, &f, &inputs).expect("arity matches");
            if !check.holds && failed.is_none() {
                failed = Some(id);
            }
            residuals.push(check.residual);
        }
        acc.exact(&residuals, || format!("trial {trial}: {} fails", failed.map(|i| i.name()).unwrap_or("?")));
    }
}

fn central(cfg: &SuiteConfig, rng: impl Fn(usize) -> ChaCha8Rng, acc: &mut Acc) {
    let len = cfg.len.min(6);
    for trial in 0..cfg.iters {
        let mut r = rng(trial);
        let rep: Vec<Mat2<Rational>> = (0..4).map(|_| random_sl2z(&mut r)).collect();
        let f = match trace_central_function(&rep) {
            Ok(f) => f,
            Err(e) => {
                acc.error(|| format!("trial {trial}: {e}"));
                continue;
            }
        };
        let words: Vec<Word> = (0..4).map(|_| random_word_up_to(&mut r, 4, len)).collect();
        let a = verify_identity(Identity::Formule4, &f, &words).expect("arity 4");
        let b = verify_identity(Identity::NoyauP, &f, &words[..3]).expect("arity 3");
        acc.exact(&[a.residual, b.residual], || format!("trial {trial}: words {words:?}"));
    }
}

fn matrix_pairs(kind: MatrixIdentity, cfg: &SuiteConfig, rng: impl Fn(usize) -> ChaCha8Rng, acc: &mut Acc) {
    for trial in 0..cfg.iters {
        let mut r = rng(trial);
        let (a, b) = (random_sl2z(&mut r), random_sl2z(&mut r));
        let rep = check_matrix_identities(kind, &a, &b);
        let diff = rep.expected.map(|e| rep.value.clone() - e).unwrap_or_else(Rational::zero);
        acc.exact(&[diff], || format!("{kind} fails on A = {a:?}, B = {b:?}"));
    }
}

fn frobenius(cfg: &SuiteConfig, rng: impl Fn(usize) -> ChaCha8Rng, acc: &mut Acc) {
    let n = cfg.n.max(1);
    for trial in 0..cfg.iters {
        let mut r = rng(trial);
        let mats: Vec<Matrix<Rational>> = (0..=n).map(|_| random_int_matrix(&mut r, n)).collect();
        let t = MatrixTrace::new(n, mats).expect("invertible by construction");
        let words: Vec<Word> = if trial % 2 == 0 {
            (1..=n + 1).map(Word::generator).collect()
        } else {
            (0..=n).map(|_| random_word_up_to(&mut r, n + 1, cfg.len.min(4))).collect()
        };
        match frobenius_sum(&t, &words) {
            Ok(v) => acc.exact(&[v], || format!("trial {trial}")),
            Err(e) => acc.error(|| format!("trial {trial}: {e}")),
        }
    }
}

/// `⟨x, y⟩ = g₁(xy) − g₁(x) − g₁(y)`.
pub fn jet_pairing(jet: &CharacterJet<Rational>, x: &Word, y: &Word) -> Rational {
    jet.g(1, &x.product(y)) - jet.g(1, x) - jet.g(1, y)
}

/// Residuals of the order-≤4 rep-jet checks: jet equation at orders 1–4,
/// rank ≤ 2, the 3×3 minor, the degree-4 formula for `g₂`, and `g₂∘ε₅ = g₂∘ε₆ = 0`.
pub fn rep_jet_residuals(jet: &CharacterJet<Rational>, r: &mut impl Rng, len: usize) -> Result<Vec<Rational>, String> {
    let rank = jet.rank();
    let mut res = Vec::new();
    let word = |r: &mut dyn rand::RngCore, l: usize| {
        let l = r.gen_range(0..=l);
        random_word_with(r, rank, l)
    };
    let pairs: Vec<(Word, Word)> = (0..3).map(|_| (word(r, len), word(r, len))).collect();
    for n in 1..=jet.order().min(4) {
        let check = verify_jet_equation(jet, n, &pairs).map_err(|e| e.to_string())?;
        res.extend(check.residuals);
    }
    let bilinear = extract_bilinear(jet, rank).map_err(|e| e.to_string())?;
    if bilinear.rank(0.0) > 2 {
        return Err(format!("bilinear form of rank {}", bilinear.rank(0.0)));
    }
    let six: Vec<Word> = (0..6).map(|_| word(r, len.min(5))).collect();
    let (rows, cols) = ([2, 4, 5], [0, 3, 1]);
    let minor = Matrix::from_rows(
        rows.iter().map(|&i| cols.iter().map(|&j| jet_pairing(jet, &six[i], &six[j])).collect()).collect(),
        3,
    );
    res.push(minor.determinant());
    if jet.order() >= 2 {
        let g2 = JetCoefficient { jet, k: 2 };
        let q: Vec<Word> = (0..4).map(|_| word(r, 3)).collect();
        let p = |i: usize, j: usize| jet_pairing(jet, &q[i], &q[j]);
        let lhs = Rational::from_integer(2.into()) * epsilon_eval(&g2, &q);
        res.push(lhs - (p(0, 1) * p(2, 3) + p(0, 3) * p(1, 2) - p(0, 2) * p(1, 3)));
        let five: Vec<Word> = (0..5).map(|_| word(r, 2)).collect();
        res.push(epsilon_eval(&g2, &five));
        let six: Vec<Word> = (0..6).map(|_| word(r, 2)).collect();
        res.push(epsilon_eval(&g2, &six));
    }
    Ok(res)
}

fn jets(cfg: &SuiteConfig, rng: impl Fn(usize) -> ChaCha8Rng, acc: &mut Acc) {
    let len = cfg.len.min(8);
    for trial in 0..cfg.iters {
        let mut r = rng(trial);
        let rep = random_unipotent_rep(&mut r, 3, 4);
        let jet = match character_jet_from_rep(&rep, 4) {
            Ok(j) => j,
            Err(e) => {
                acc.error(|| format!("trial {trial}: {e}"));
                continue;
            }
        };
        match rep_jet_residuals(&jet, &mut r, len) {
            Ok(res) => acc.exact(&res, || format!("trial {trial}")),
            Err(e) => acc.error(|| format!("trial {trial}: {e}")),
        }
    }
}

fn parabolic(cfg: &SuiteConfig, rng: impl Fn(usize) -> ChaCha8Rng, acc: &mut Acc) {
    let n = cfg.rank.max(1);
    for trial in 0..cfg.iters {
        let mut r = rng(trial);
        let q = random_rank2_form(&mut r, n);
        let (l1, l2) = match factor_quadratic_form(&q) {
            Ok(LinearFactorization::Exact { l1, l2 }) => (l1, l2),
            other => {
                acc.error(|| format!("trial {trial}: no exact factorization ({other:?})"));
                continue;
            }
        };
        let rep = build_parabolic_deformation(&l1, &l2);
        let jet = character_jet_from_rep(&rep, 1).expect("parabolic residue");
        let mut res = Vec::new();
        for _ in 0..100 {
            let w = random_word_up_to(&mut r, n, cfg.len);
            let e: Vec<Rational> = w.abelianize(n).into_iter().map(|x| Rational::from_integer(x.into())).collect();
            let c = jet.coefficients(&w);
            let d1 = &c[1] - &Gaussian::new(q.eval(&e), Rational::zero());
            let d0 = &c[0] - &Gaussian::new(Rational::from_integer(2.into()), Rational::zero());
            res.push(d1.re.abs() + d1.im.abs() + d0.re.abs() + d0.im.abs());
        }
        acc.exact(&res, || format!("trial {trial}: q = {:?}", q.matrix().to_rows()));
    }
}

fn lift(cfg: &SuiteConfig, rng: impl Fn(usize) -> ChaCha8Rng, acc: &mut Acc) -> ScalarMode {
    const ORDER: usize = 8;
    let two = Series::from_coeffs(vec![Rational::from_integer(2.into())], ORDER);
    acc.trials += 1;
    if solve_trace_system(&two, &two, &two, ORDER) != Err(JetError::Degenerate) {
        acc.fail(|| "trivial traces are not reported DEGENERATE".into());
    }
    let mut mode = ScalarMode::ExactRational;
    for trial in 0..cfg.iters {
        let mut r = rng(trial);
        let (x, y, z) = loop {
            let mut v = || Rational::from_integer(r.gen_range(-3i64..=3).into());
            let (l1, l2) = (vec![v(), v()], vec![v(), v()]);
            let jet = character_jet_from_rep(&build_parabolic_deformation(&l1, &l2), ORDER).expect("parabolic residue");
            let tr = |w: &[i64]| jet.trace_series(&Word::from_signed(w));
            let (x, y, z) = (tr(&[1]), tr(&[2]), tr(&[1, 2]));
            if !TraceTriple::new(x.clone(), y.clone(), z.clone()).is_degenerate(ORDER) {
                break (x, y, z);
            }
        };
        match lift_auto(&x, &y, &z, ORDER) {
            Ok(out) => {
                if !out.mode().is_exact() {
                    mode = ScalarMode::ComplexFloating;
                }
                acc.float(out.residuals().max(), out.mode().is_exact(), || format!("trial {trial}: x = {x}"));
            }
            Err(e) => acc.error(|| format!("trial {trial}: {e}")),
        }
    }
    if mode.is_exact() {
        // every lift was exact: residuals are exactly zero
        acc.max_exact = Rational::from_float(acc.max_float).unwrap_or_else(Rational::zero);
    }
    mode
}

/// Even trials use `g₁` of a rep-derived jet, odd trials a random `(q, φ)` function.
fn tangent(cfg: &SuiteConfig, rng: impl Fn(usize) -> ChaCha8Rng, acc: &mut Acc) {
    let len = cfg.len.min(6);
    for trial in 0..cfg.iters {
        let mut r = rng(trial);
        let result = if trial % 2 == 0 {
            let jet = character_jet_from_rep(&random_unipotent_rep(&mut r, 3, 1), 1).expect("unipotent residue");
            let g1 = JetCoefficient { jet: &jet, k: 1 };
            let words: Vec<Word> = (0..3).map(|_| random_word_up_to(&mut r, 3, len)).collect();
            linearized_tangent_sum(&g1 as &dyn WordFunction, &words, 2)
        } else {
            let (q, phi) = random_qphi(&mut r, 3);
            let f = ParallelogramFunction::free(q, phi).expect("rank 3");
            let words: Vec<Word> = (0..3).map(|_| random_word_up_to(&mut r, 3, len)).collect();
            linearized_tangent_sum(&f as &dyn WordFunction, &words, 2)
        };
        match result {
            Ok(v) => acc.exact(&[v], || format!("trial {trial}")),
            Err(e) => acc.error(|| format!("trial {trial}: {e}")),
        }
    }
}

/// Runs the named suites in order.
pub fn run_suites(suites: &[Suite], cfg: &SuiteConfig) -> Vec<SuiteReport> {
    suites.iter().map(|&s| run_suite(s, cfg)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig { rank: 3, iters: 5, len: 6, seed: 7, n: 2 }
    }

    #[test]
    fn names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn every_suite_passes_small() {
        for s in Suite::ALL {
            let rep = run_suite(s, &small());
            assert!(rep.passed, "{s}: {rep:?}");
        }
    }

    #[test]
    fn deterministic() {
        let a = serde_json::to_string(&run_suite(Suite::Parallelogram, &small())).unwrap();
        let b = serde_json::to_string(&run_suite(Suite::Parallelogram, &small())).unwrap();
        assert_eq!(a, b);
    }
}
