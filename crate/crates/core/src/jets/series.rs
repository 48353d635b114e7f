//! Truncated power and Laurent series in one variable `t`.
//!
//! A series is known modulo `t^prec` (absolute precision). Exact polynomials,
//! constants in particular, carry [`INFINITE_PRECISION`], which is what lets
//! `0` and `1` exist without an order and makes `Mat2<Series<S>>` a ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_traits::{One, Zero};

use super::JetError;
use crate::scalar::{default_tolerance, SeriesScalar};

/// Precision of exactly known series.
pub const INFINITE_PRECISION: i64 = i64::MAX / 4;

fn tolerance() -> f64 {
    static TOL: OnceLock<f64> = OnceLock::new();
    *TOL.get_or_init(default_tolerance)
}

fn cap(p: i64) -> i64 {
    p.min(INFINITE_PRECISION)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series<S> {
    /// Exponent of `coeffs[0]`; meaningless for the zero series.
    val: i64,
    coeffs: Vec<S>,
    prec: i64,
}

impl<S: SeriesScalar> Series<S> {
    /// `Σ c_k t^{val+k} + O(t^prec)`, normalized.
    pub fn laurent(val: i64, coeffs: Vec<S>, prec: i64) -> Self {
        let mut s = Series { val, coeffs, prec: cap(prec) };
        s.normalize();
        s
    }

    /// `c_0 + c_1 t + … + O(t^{order+1})`; coefficients past `order` are dropped.
    pub fn from_coeffs(coeffs: Vec<S>, order: usize) -> Self {
        Self::laurent(0, coeffs, order as i64 + 1)
    }

    /// An exactly known polynomial.
    pub fn polynomial(coeffs: Vec<S>) -> Self {
        Self::laurent(0, coeffs, INFINITE_PRECISION)
    }

    pub fn constant(c: S) -> Self {
        Self::polynomial(vec![c])
    }

    /// The monomial `c t^k`, exactly.
    pub fn monomial(c: S, k: i64) -> Self {
        Self::laurent(k, vec![c], INFINITE_PRECISION)
    }

    pub fn t() -> Self {
        Self::monomial(S::one(), 1)
    }

    /// `O(t^prec)`.
    pub fn zero_to(prec: i64) -> Self {
        Series { val: 0, coeffs: Vec::new(), prec: cap(prec) }
    }

    fn normalize(&mut self) {
        let tol = tolerance();
        let lead = self.coeffs.iter().position(|c| !c.is_negligible(tol)).unwrap_or(self.coeffs.len());
        self.coeffs.drain(..lead);
        self.val += lead as i64;
        let keep = (self.prec - self.val).clamp(0, self.coeffs.len() as i64) as usize;
        self.coeffs.truncate(keep);
        while self.coeffs.last().is_some_and(|c| c.is_negligible(tol)) {
            self.coeffs.pop();
        }
        if self.coeffs.is_empty() {
            self.val = 0;
        }
    }

    pub fn is_zero_series(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Valuation, `None` for a zero series.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.val)
    }

    /// Exclusive bound on known exponents.
    pub fn precision(&self) -> i64 {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec >= INFINITE_PRECISION
    }

    /// Coefficient of `t^k` (zero outside the stored range).
    pub fn coefficient(&self, k: i64) -> S {
        let i = k - self.val;
        if self.coeffs.is_empty() || i < 0 || i >= self.coeffs.len() as i64 {
            S::zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    /// Coefficients of `t^0 … t^order`.
    pub fn coefficients_to(&self, order: usize) -> Vec<S> {
        (0..=order as i64).map(|k| self.coefficient(k)).collect()
    }

    /// Leading coefficient, `None` for a zero series.
    pub fn leading(&self) -> Option<&S> {
        self.coeffs.first()
    }

    /// Forget everything from `t^{order+1}` on.
    pub fn truncate(&self, order: i64) -> Self {
        Self::laurent(self.val, self.coeffs.clone(), self.prec.min(order + 1))
    }

    /// Declares the stored terms exact up to `t^prec` (zero padding).
    pub fn pad_to(&self, prec: i64) -> Self {
        Series { val: self.val, coeffs: self.coeffs.clone(), prec: cap(prec.max(self.prec)) }
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::laurent(self.val, self.coeffs.iter().map(|c| c.clone() * s.clone()).collect(), self.prec)
    }

    pub fn map_scalar<T: SeriesScalar>(&self, f: impl Fn(&S) -> T) -> Series<T> {
        Series::laurent(self.val, self.coeffs.iter().map(f).collect(), self.prec)
    }

    fn add_ref(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        if self.coeffs.is_empty() {
            return o.truncate(prec - 1);
        }
        if o.coeffs.is_empty() {
            return self.truncate(prec - 1);
        }
        let lo = self.val.min(o.val);
        let hi = (self.val + self.coeffs.len() as i64).max(o.val + o.coeffs.len() as i64).min(prec);
        let coeffs = (lo..hi).map(|k| self.coefficient(k) + o.coefficient(k)).collect();
        Self::laurent(lo, coeffs, prec)
    }

    fn neg_ref(&self) -> Self {
        Series { val: self.val, coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(), prec: self.prec }
    }

    fn mul_ref(&self, o: &Self) -> Self {
        let va = if self.coeffs.is_empty() { self.prec } else { self.val };
        let vb = if o.coeffs.is_empty() { o.prec } else { o.val };
        let prec = cap(self.prec.saturating_add(vb).min(o.prec.saturating_add(va)));
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::zero_to(prec);
        }
        let len = ((prec - va - vb).max(0) as usize).min(self.coeffs.len() + o.coeffs.len() - 1);
        let mut out = vec![S::zero(); len];
        for (i, x) in self.coeffs.iter().enumerate().take(len) {
            for (j, y) in o.coeffs.iter().enumerate().take(len - i) {
                out[i + j] = out[i + j].clone() + x.clone() * y.clone();
            }
        }
        Self::laurent(va + vb, out, prec)
    }

    /// Multiplicative inverse; loses no relative precision.
    pub fn inv(&self) -> Result<Self, JetError> {
        let lead = self.leading().ok_or(JetError::ZeroInversion)?;
        let v = self.val;
        if self.is_exact() {
            if self.coeffs.len() == 1 {
                return Ok(Self::monomial(S::one() / lead.clone(), -v));
            }
            return Err(JetError::InfinitePrecision);
        }
        let rel = (self.prec - v) as usize;
        let inv0 = S::one() / lead.clone();
        let mut g: Vec<S> = Vec::with_capacity(rel);
        g.push(inv0.clone());
        for k in 1..rel {
            let mut acc = S::zero();
            for i in 1..=k.min(self.coeffs.len() - 1) {
                acc = acc + self.coeffs[i].clone() * g[k - i].clone();
            }
            g.push(-(acc * inv0.clone()));
        }
        Ok(Self::laurent(-v, g, self.prec - 2 * v))
    }

    pub fn div(&self, o: &Self) -> Result<Self, JetError> {
        Ok(self.mul_ref(&o.inv()?))
    }

    /// A square root when the valuation is even and the leading coefficient
    /// has a root in this scalar mode.
    pub fn sqrt(&self) -> Result<Self, JetError> {
        let Some(lead) = self.leading() else {
            return Ok(Self::zero_to((self.prec + 1).div_euclid(2)));
        };
        let v = self.val;
        if v.rem_euclid(2) != 0 {
            return Err(JetError::OddSquareClass);
        }
        let r0 = lead.sqrt().ok_or(JetError::NonSquareLeading { mode: S::MODE })?;
        if self.is_exact() && self.coeffs.len() == 1 {
            return Ok(Self::monomial(r0, v / 2));
        }
        if self.is_exact() {
            return Err(JetError::InfinitePrecision);
        }
        let rel = (self.prec - v) as usize;
        let two_r0 = r0.clone() + r0.clone();
        let mut r: Vec<S> = Vec::with_capacity(rel);
        r.push(r0);
        for k in 1..rel {
            let mut acc = if k < self.coeffs.len() { self.coeffs[k].clone() } else { S::zero() };
            for i in 1..k {
                acc = acc - r[i].clone() * r[k - i].clone();
            }
            r.push(acc / two_r0.clone());
        }
        Ok(Self::laurent(v / 2, r, self.prec - v / 2))
    }

    /// Largest coefficient magnitude of `self − o` below `t^{order+1}`.
    pub fn residual(&self, o: &Self, order: i64) -> f64 {
        let d = self.add_ref(&o.neg_ref());
        if d.prec <= order {
            return f64::INFINITY;
        }
        let lo = d.val.min(0);
        (lo..=order).map(|k| d.coefficient(k).magnitude()).fold(0.0, f64::max)
    }

    /// `self ≡ o mod t^{order+1}`: exact in exact modes, within tolerance otherwise.
    pub fn agrees_with(&self, o: &Self, order: i64) -> bool {
        let d = self.add_ref(&o.neg_ref());
        if d.prec <= order {
            return false;
        }
        let lo = d.val.min(0);
        (lo..=order).all(|k| d.coefficient(k).is_negligible(tolerance()))
    }
}

impl<S: SeriesScalar> Add for Series<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.add_ref(&o)
    }
}

impl<S: SeriesScalar> Sub for Series<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.add_ref(&o.neg_ref())
    }
}

impl<S: SeriesScalar> Mul for Series<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl<S: SeriesScalar> Neg for Series<S> {
    type Output = Self;
    fn neg(self) -> Self {
        self.neg_ref()
    }
}

impl<S: SeriesScalar> Add for &Series<S> {
    type Output = Series<S>;
    fn add(self, o: Self) -> Series<S> {
        self.add_ref(o)
    }
}

impl<S: SeriesScalar> Sub for &Series<S> {
    type Output = Series<S>;
    fn sub(self, o: Self) -> Series<S> {
        self.add_ref(&o.neg_ref())
    }
}

impl<S: SeriesScalar> Mul for &Series<S> {
    type Output = Series<S>;
    fn mul(self, o: Self) -> Series<S> {
        self.mul_ref(o)
    }
}

impl<S: SeriesScalar> Zero for Series<S> {
    fn zero() -> Self {
        Self::zero_to(INFINITE_PRECISION)
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<S: SeriesScalar> One for Series<S> {
    fn one() -> Self {
        Self::constant(S::one())
    }
}

impl<S: SeriesScalar> fmt::Display for Series<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_negligible(0.0) {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let k = self.val + i as i64;
            let text = c.to_text();
            match k {
                0 => write!(f, "{text}")?,
                1 => write!(f, "({text})t")?,
                _ => write!(f, "({text})t^{k}")?,
            }
        }
        if !self.is_exact() {
            if !first {
                f.write_str(" + ")?;
            }
            write!(f, "O(t^{})", self.prec)?;
        } else if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
