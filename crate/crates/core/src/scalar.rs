//! Scalar abstractions shared by the linear algebra and series code.
//!
//! Exact modes (`Rational`, `Gaussian`) never round. Floating modes compare
//! against a tolerance, see [`default_tolerance`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// Environment variable overriding the floating tolerance.
pub const TOLERANCE_ENV: &str = "CHARTAN_TOL";

const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Floating comparison tolerance, `1e-9` unless `CHARTAN_TOL` says otherwise.
pub fn default_tolerance() -> f64 {
    std::env::var(TOLERANCE_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|t| t.is_finite() && *t > 0.0)
        .unwrap_or(DEFAULT_TOLERANCE)
}

/// Commutative ring operations, enough for 2×2 matrix products and traces.
pub trait Ring:
    Clone + Zero + One + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
}

impl<T> Ring for T where T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T> {}

/// A field the generic algorithms can run over.
pub trait Field: Clone + fmt::Debug + PartialEq + Num + Neg<Output = Self> {
    /// `true` for modes that never round.
    const EXACT: bool;

    fn from_i64(n: i64) -> Self;

    fn from_rational(q: &BigRational) -> Self;

    /// Zero test. Exact modes ignore `tol`.
    fn is_negligible(&self, tol: f64) -> bool;

    /// Absolute value as a float, used for residual reporting.
    fn magnitude(&self) -> f64;
}

/// Which scalar field a computation ran over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalarMode {
    ExactRational,
    GaussianRational,
    RealFloating,
    ComplexFloating,
}

impl ScalarMode {
    pub fn is_exact(self) -> bool {
        matches!(self, ScalarMode::ExactRational | ScalarMode::GaussianRational)
    }

    pub fn name(self) -> &'static str {
        match self {
            ScalarMode::ExactRational => "exact-rational",
            ScalarMode::GaussianRational => "gaussian-rational",
            ScalarMode::RealFloating => "real-floating",
            ScalarMode::ComplexFloating => "complex-floating",
        }
    }
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Extra operations needed by the square-root and lifting code.
pub trait SeriesScalar: Field + Send + Sync + 'static {
    const MODE: ScalarMode;

    /// Exact modes give `"p/q"`-style text, floats their decimal form.
    fn to_text(&self) -> String;

    /// JSON form: strings for exact scalars, numbers (or `[re, im]`) for floats.
    fn to_json(&self) -> serde_json::Value;

    fn from_json(v: &serde_json::Value) -> Option<Self>;

    /// A square root if one exists in this mode (principal branch for floats).
    fn sqrt(&self) -> Option<Self>;

    /// `i` when the mode contains it.
    fn imaginary_unit() -> Option<Self>;
}

impl Field for BigRational {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
}

impl SeriesScalar for BigRational {
    const MODE: ScalarMode = ScalarMode::ExactRational;

    fn to_text(&self) -> String {
        format_rational(self)
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(format_rational(self))
    }

    fn from_json(v: &serde_json::Value) -> Option<Self> {
        match v {
            serde_json::Value::String(s) => parse_rational(s).ok(),
            serde_json::Value::Number(n) => n.as_i64().map(BigRational::from_i64),
            _ => None,
        }
    }

    fn sqrt(&self) -> Option<Self> {
        rational_sqrt(self)
    }

    fn imaginary_unit() -> Option<Self> {
        None
    }
}

impl Field for Complex<BigRational> {
    const EXACT: bool = true;

    fn from_i64(n: i64) -> Self {
        Complex::new(BigRational::from_i64(n), BigRational::zero())
    }

    fn from_rational(q: &BigRational) -> Self {
        Complex::new(q.clone(), BigRational::zero())
    }

    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }

    fn magnitude(&self) -> f64 {
        let re = self.re.to_f64().unwrap_or(f64::INFINITY);
        let im = self.im.to_f64().unwrap_or(f64::INFINITY);
        re.hypot(im)
    }
}

impl SeriesScalar for Complex<BigRational> {
    const MODE: ScalarMode = ScalarMode::GaussianRational;

    fn to_text(&self) -> String {
        format_gaussian(self)
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::String(format_gaussian(self))
    }

    fn from_json(v: &serde_json::Value) -> Option<Self> {
        match v {
            serde_json::Value::String(s) => parse_gaussian(s).ok(),
            other => BigRational::from_json(other).map(|r| Complex::new(r, BigRational::zero())),
        }
    }

    fn sqrt(&self) -> Option<Self> {
        gaussian_sqrt(self)
    }

    fn imaginary_unit() -> Option<Self> {
        Some(Complex::new(BigRational::zero(), BigRational::one()))
    }
}

impl Field for f64 {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn from_rational(q: &BigRational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.abs() <= tol
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl SeriesScalar for f64 {
    const MODE: ScalarMode = ScalarMode::RealFloating;

    fn to_text(&self) -> String {
        self.to_string()
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self)
    }

    fn from_json(v: &serde_json::Value) -> Option<Self> {
        match v {
            serde_json::Value::String(s) => parse_rational(s).ok().and_then(|q| q.to_f64()),
            other => other.as_f64(),
        }
    }

    fn sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| f64::sqrt(*self))
    }

    fn imaginary_unit() -> Option<Self> {
        None
    }
}

impl Field for Complex<f64> {
    const EXACT: bool = false;

    fn from_i64(n: i64) -> Self {
        Complex::new(n as f64, 0.0)
    }

    fn from_rational(q: &BigRational) -> Self {
        Complex::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn is_negligible(&self, tol: f64) -> bool {
        self.norm() <= tol
    }

    fn magnitude(&self) -> f64 {
        self.norm()
    }
}

impl SeriesScalar for Complex<f64> {
    const MODE: ScalarMode = ScalarMode::ComplexFloating;

    fn to_text(&self) -> String {
        if self.im == 0.0 {
            self.re.to_string()
        } else {
            format!("{}{:+}i", self.re, self.im)
        }
    }

    fn to_json(&self) -> serde_json::Value {
        if self.im == 0.0 {
            serde_json::json!(self.re)
        } else {
            serde_json::json!([self.re, self.im])
        }
    }

    fn from_json(v: &serde_json::Value) -> Option<Self> {
        match v {
            serde_json::Value::Array(parts) if parts.len() == 2 => {
                Some(Complex::new(parts[0].as_f64()?, parts[1].as_f64()?))
            }
            serde_json::Value::String(s) => {
                let g = parse_gaussian(s).ok()?;
                Some(Complex::new(g.re.to_f64()?, g.im.to_f64()?))
            }
            other => other.as_f64().map(|x| Complex::new(x, 0.0)),
        }
    }

    fn sqrt(&self) -> Option<Self> {
        Some(Complex::sqrt(*self))
    }

    fn imaginary_unit() -> Option<Self> {
        Some(Complex::new(0.0, 1.0))
    }
}

/// Exact square root of a non-negative rational, if it is a square.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = integer_sqrt(q.numer())?;
    let d = integer_sqrt(q.denom())?;
    Some(BigRational::new(n, d))
}

fn integer_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact square root in `Q(i)`, if it exists.
///
/// For `z = a + bi` a root `x + yi` has `x^2 = (|z| + a) / 2`,
/// `y^2 = (|z| - a) / 2`, with `|z|` rational.
pub fn gaussian_sqrt(z: &Complex<BigRational>) -> Option<Complex<BigRational>> {
    if z.im.is_zero() {
        if let Some(r) = rational_sqrt(&z.re) {
            return Some(Complex::new(r, BigRational::zero()));
        }
        let r = rational_sqrt(&-z.re.clone())?;
        return Some(Complex::new(BigRational::zero(), r));
    }
    let norm = rational_sqrt(&(&z.re * &z.re + &z.im * &z.im))?;
    let two = BigRational::from_i64(2);
    let x = rational_sqrt(&((&norm + &z.re) / &two))?;
    if x.is_zero() {
        return None;
    }
    let y = &z.im / (&two * &x);
    Some(Complex::new(x, y))
}

/// Shorthand for the rational `n / d`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Shorthand for the integer `n` as a rational.
pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {0:?} as an exact scalar")]
pub struct ScalarParseError(pub String);

/// Parses `"p"`, `"p/q"` or a plain decimal like `"0.25"`.
pub fn parse_rational(s: &str) -> Result<BigRational, ScalarParseError> {
    let t = s.trim();
    if let Ok(q) = BigRational::from_str(t) {
        if !q.denom().is_zero() {
            return Ok(q);
        }
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let neg = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        if !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit()) {
            let n = BigInt::from_str(&digits).map_err(|_| ScalarParseError(s.into()))?;
            let d = num_traits::pow(BigInt::from(10), frac.len());
            let q = BigRational::new(n, d);
            return Ok(if neg { -q } else { q });
        }
    }
    Err(ScalarParseError(s.into()))
}

/// Rationals print as `"p"` or `"p/q"`.
pub fn format_rational(q: &BigRational) -> String {
    q.to_string()
}

/// Gaussian rationals print as `"a"`, `"bi"` or `"a+bi"` with rational parts.
pub fn format_gaussian(z: &Complex<BigRational>) -> String {
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => z.re.to_string(),
        (true, false) => format!("{}i", imag_str(&z.im)),
        (false, false) => {
            let sign = if z.im.is_negative() { "-" } else { "+" };
            format!("{}{}{}i", z.re, sign, imag_str(&z.im.abs()))
        }
    }
}

fn imag_str(q: &BigRational) -> String {
    if q.is_one() {
        String::new()
    } else if *q == -BigRational::one() {
        "-".into()
    } else {
        q.to_string()
    }
}

/// Inverse of [`format_gaussian`]; also accepts a plain rational.
pub fn parse_gaussian(s: &str) -> Result<Complex<BigRational>, ScalarParseError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let err = || ScalarParseError(s.into());
    let Some(body) = t.strip_suffix('i') else {
        return Ok(Complex::new(parse_rational(&t)?, BigRational::zero()));
    };
    // split at the last sign that is not the leading one and not inside an exponent
    let split = body.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').map(|(i, _)| i).last();
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("", body),
    };
    let re = if re.is_empty() { BigRational::zero() } else { parse_rational(re).map_err(|_| err())? };
    let im = match im {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        other => parse_rational(other).map_err(|_| err())?,
    };
    Ok(Complex::new(re, im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_square_roots() {
        assert_eq!(rational_sqrt(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rational_sqrt(&rat(2, 1)), None);
        assert_eq!(rational_sqrt(&rat(-1, 1)), None);
    }

    #[test]
    fn gaussian_square_roots() {
        let minus_one = Complex::new(int(-1), int(0));
        assert_eq!(gaussian_sqrt(&minus_one), Some(Complex::new(int(0), int(1))));
        // (1+2i)^2 = -3+4i
        let z = Complex::new(int(-3), int(4));
        let r = gaussian_sqrt(&z).unwrap();
        assert_eq!(&r * &r, z);
        assert_eq!(gaussian_sqrt(&Complex::new(int(2), int(0))), None);
        assert_eq!(gaussian_sqrt(&Complex::new(int(0), int(1))), None);
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
        for z in [
            Complex::new(rat(1, 2), rat(-3, 4)),
            Complex::new(int(0), int(1)),
            Complex::new(int(0), int(-1)),
            Complex::new(int(5), int(0)),
            Complex::new(int(-2), int(1)),
        ] {
            assert_eq!(parse_gaussian(&format_gaussian(&z)).unwrap(), z);
        }
    }
}
