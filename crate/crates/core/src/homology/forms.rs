use std::collections::BTreeMap;

use num_traits::Zero;

use crate::magnus::Lambda2Vector;
use crate::scalar::format_rational;
use crate::Rational;

/// Alternating trilinear form, keyed by 0-based triples `i < j < k`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lambda3Form {
    coeffs: BTreeMap<(usize, usize, usize), Rational>,
}

/// Strictly increasing triples in `0..r`, in lexicographic order.
pub fn triples(r: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            for k in j + 1..r {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// Sorts `(i, j, k)` and returns the permutation sign, or `None` on a repeat.
fn sort3(i: usize, j: usize, k: usize) -> Option<((usize, usize, usize), i64)> {
    if i == j || j == k || i == k {
        return None;
    }
    let mut v = [i, j, k];
    let mut sign = 1;
    for a in 0..3 {
        for b in 0..2 - a {
            if v[b] > v[b + 1] {
                v.swap(b, b + 1);
                sign = -sign;
            }
        }
    }
    Some(((v[0], v[1], v[2]), sign))
}

fn det3(x: &[Rational], y: &[Rational], z: &[Rational], (i, j, k): (usize, usize, usize)) -> Rational {
    &x[i] * (&y[j] * &z[k] - &y[k] * &z[j]) - &x[j] * (&y[i] * &z[k] - &y[k] * &z[i])
        + &x[k] * (&y[i] * &z[j] - &y[j] * &z[i])
}

impl Lambda3Form {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Dual of `e_i ∧ e_j ∧ e_k`, signed when the indices are not increasing.
    pub fn basis(i: usize, j: usize, k: usize) -> Self {
        let mut f = Self::zero();
        f.add_to(i, j, k, Rational::from_integer(1.into()));
        f
    }

    /// Builds from coefficients listed in the order of [`triples`].
    pub fn from_coordinates(r: usize, coords: &[Rational]) -> Self {
        let t = triples(r);
        assert_eq!(t.len(), coords.len(), "coordinate count mismatch");
        let mut f = Self::zero();
        for ((i, j, k), c) in t.into_iter().zip(coords) {
            f.add_to(i, j, k, c.clone());
        }
        f
    }

    pub fn coordinates(&self, r: usize) -> Vec<Rational> {
        triples(r).into_iter().map(|(i, j, k)| self.get(i, j, k)).collect()
    }

    pub fn add_to(&mut self, i: usize, j: usize, k: usize, c: Rational) {
        let Some((key, sign)) = sort3(i, j, k) else { return };
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(key).or_insert_with(Rational::zero);
        *e += c * Rational::from_integer(sign.into());
        if e.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    /// Alternating coefficient `φ(e_i, e_j, e_k)`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> Rational {
        match sort3(i, j, k) {
            Some((key, sign)) => {
                self.coeffs.get(&key).cloned().unwrap_or_else(Rational::zero) * Rational::from_integer(sign.into())
            }
            None => Rational::zero(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize, usize), &Rational)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// One more than the largest index used, or 0.
    pub fn support_dim(&self) -> usize {
        self.coeffs.keys().map(|&(_, _, k)| k + 1).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j, k), c) in &other.coeffs {
            out.add_to(i, j, k, c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = Self::zero();
        for (&(i, j, k), c) in &self.coeffs {
            out.add_to(i, j, k, c * s);
        }
        out
    }

    /// `φ(x ∧ y ∧ z)`.
    pub fn eval(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Rational {
        self.coeffs.iter().map(|(&t, c)| c * det3(x, y, z, t)).sum()
    }

    /// `φ(x ∧ λ)` for `λ ∈ Λ²`.
    pub fn eval_wedge(&self, x: &[Rational], l: &Lambda2Vector) -> Rational {
        self.coeffs
            .iter()
            .map(|(&(i, j, k), c)| {
                c * (&x[i] * l.coefficient(j, k) - &x[j] * l.coefficient(i, k) + &x[k] * l.coefficient(i, j))
            })
            .sum()
    }

    /// `Σ_{i<j<k} φ_ijk e_i e_j e_k` (not alternating: the cubic term of the evaluator).
    pub fn cubic(&self, e: &[Rational]) -> Rational {
        self.coeffs.iter().map(|(&(i, j, k), c)| c * &e[i] * &e[j] * &e[k]).sum()
    }

    /// `φ'(e_a, e_b, e_c) = φ(m_a, m_b, m_c)` where `m_a` is row `a` of `m`.
    pub fn pull_back(&self, m: &[Vec<Rational>]) -> Self {
        let mut out = Self::zero();
        for (a, b, c) in triples(m.len()) {
            out.add_to(a, b, c, self.eval(&m[a], &m[b], &m[c]));
        }
        out
    }

    /// Map `"i,j,k"` (1-based) to `"p/q"`.
    pub fn to_json_map(&self) -> serde_json::Map<String, serde_json::Value> {
        self.coeffs
            .iter()
            .map(|(&(i, j, k), c)| (format!("{},{},{}", i + 1, j + 1, k + 1), format_rational(c).into()))
            .collect()
    }
}

/// Coordinates of `λ ∧ e_m` in the basis of [`triples`]`(r)`.
pub fn wedge_with_basis(l: &Lambda2Vector, m: usize, r: usize) -> Vec<Rational> {
    triples(r)
        .into_iter()
        .map(|(i, j, k)| {
            let mut s = Rational::zero();
            if k == m {
                s += l.coefficient(i, j);
            }
            if j == m {
                s -= l.coefficient(i, k);
            }
            if i == m {
                s += l.coefficient(j, k);
            }
            s
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn v(x: &[i64]) -> Vec<Rational> {
        x.iter().map(|&a| int(a)).collect()
    }

    #[test]
    fn alternating() {
        let f = Lambda3Form::basis(0, 1, 2);
        assert_eq!(f.get(1, 0, 2), int(-1));
        assert_eq!(f.get(2, 0, 1), int(1));
        assert_eq!(f.get(0, 0, 1), int(0));
        assert_eq!(Lambda3Form::basis(2, 1, 0), f.scale(&int(-1)));
        assert_eq!(f.eval(&v(&[1, 0, 0]), &v(&[0, 1, 0]), &v(&[0, 0, 1])), int(1));
        assert_eq!(f.eval(&v(&[1, 2, 3]), &v(&[1, 2, 3]), &v(&[0, 0, 1])), int(0));
    }

    #[test]
    fn wedge_consistency() {
        let f = Lambda3Form::basis(0, 1, 3).add(&Lambda3Form::basis(1, 2, 3).scale(&int(5)));
        let x = v(&[1, -2, 3, 4]);
        let (y, z) = (v(&[0, 1, 1, 2]), v(&[3, 0, -1, 1]));
        let l = Lambda2Vector::wedge(&y, &z);
        assert_eq!(f.eval(&x, &y, &z), f.eval_wedge(&x, &l));
        // λ∧e_m coordinates paired with f agree with f(e_m ∧ λ)
        for m in 0..4 {
            let coords = wedge_with_basis(&l, m, 4);
            let pair: Rational = f.coordinates(4).iter().zip(&coords).map(|(a, b)| a * b).sum();
            let mut e = vec![int(0); 4];
            e[m] = int(1);
            assert_eq!(pair, f.eval_wedge(&e, &l));
        }
    }

    #[test]
    fn pull_back_identity() {
        let f = Lambda3Form::basis(0, 1, 2).scale(&int(3));
        let id: Vec<Vec<Rational>> = (0..3).map(|i| (0..3).map(|j| int((i == j) as i64)).collect()).collect();
        assert_eq!(f.pull_back(&id), f);
    }
}
