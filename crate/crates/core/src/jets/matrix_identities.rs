use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::linalg::{Mat2, Matrix};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum MatrixIdentity {
    /// `Tr A · Tr B = Tr AB + Tr AB⁻¹`.
    TraceId,
    /// Gram determinant of `(1, A, B, AB)` under `(M, N) ↦ Tr MN` equals `−(Tr[A,B] − 2)²`.
    Gram,
    /// `Tr[A,B] ≠ 2`, a witness of irreducibility.
    Irred,
}

impl MatrixIdentity {
    pub fn name(self) -> &'static str {
        match self {
            MatrixIdentity::TraceId => "TRACE_ID",
            MatrixIdentity::Gram => "GRAM",
            MatrixIdentity::Irred => "IRRED",
        }
    }
}

impl fmt::Display for MatrixIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MatrixIdentity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [MatrixIdentity::TraceId, MatrixIdentity::Gram, MatrixIdentity::Irred]
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown matrix identity {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixIdentityReport {
    pub holds: bool,
    /// Left side (trace product, Gram determinant, or `Tr[A,B]`).
    pub value: Rational,
    /// Right side where there is one.
    pub expected: Option<Rational>,
}

fn inverse(m: &Mat2<Rational>) -> Mat2<Rational> {
    let det = m.det();
    m.adjugate().map(|x| x / &det)
}

/// Evaluates one of the `2 × 2` matrix identities on an exact pair.
pub fn check_matrix_identities(kind: MatrixIdentity, a: &Mat2<Rational>, b: &Mat2<Rational>) -> MatrixIdentityReport {
    let commutator_trace = || a.mul(b).mul(&inverse(a)).mul(&inverse(b)).trace();
    match kind {
        MatrixIdentity::TraceId => {
            let value = a.trace() * b.trace();
            let expected = a.mul(b).trace() + a.mul(&inverse(b)).trace();
            MatrixIdentityReport { holds: value == expected, value, expected: Some(expected) }
        }
        MatrixIdentity::Gram => {
            let basis = [Mat2::identity(), a.clone(), b.clone(), a.mul(b)];
            let rows = basis.iter().map(|m| basis.iter().map(|n| m.mul(n).trace()).collect()).collect();
            let value = Matrix::from_rows(rows, 4).determinant();
            let c = commutator_trace() - Rational::from_integer(2.into());
            let expected = -(&c * &c);
            MatrixIdentityReport { holds: value == expected, value, expected: Some(expected) }
        }
        MatrixIdentity::Irred => {
            let value = commutator_trace();
            let two = Rational::one() + Rational::one();
            MatrixIdentityReport { holds: !(value.clone() - two).is_zero(), value, expected: None }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn m(a: i64, b: i64, c: i64, d: i64) -> Mat2<Rational> {
        Mat2::new(int(a), int(b), int(c), int(d))
    }

    #[test]
    fn fixed_pair() {
        let (a, b) = (m(1, 1, 0, 1), m(1, 0, 1, 1));
        let gram = check_matrix_identities(MatrixIdentity::Gram, &a, &b);
        assert_eq!(gram.value, int(-1));
        assert!(gram.holds);
        assert!(check_matrix_identities(MatrixIdentity::TraceId, &a, &b).holds);
        let irred = check_matrix_identities(MatrixIdentity::Irred, &a, &b);
        assert_eq!(irred.value, int(3));
        assert!(irred.holds);
    }

    #[test]
    fn commuting_pair_is_reducible() {
        let (a, b) = (m(1, 1, 0, 1), m(1, 5, 0, 1));
        assert!(!check_matrix_identities(MatrixIdentity::Irred, &a, &b).holds);
    }

    #[test]
    fn names() {
        assert_eq!("gram".parse::<MatrixIdentity>().unwrap(), MatrixIdentity::Gram);
        assert!("x".parse::<MatrixIdentity>().is_err());
    }
}
