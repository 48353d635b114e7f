use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<BigInt>>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: vec![vec![BigInt::zero(); cols]; rows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i][i] = BigInt::one();
        }
        m
    }

    /// Builds from `i64` rows, which must all have length `cols`.
    pub fn from_i64(rows: &[Vec<i64>], cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntegerMatrix {
            rows: rows.len(),
            cols,
            entries: rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i]
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.entries[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.entries[i][j] += &self.entries[i][k] * &other.entries[k][j];
                }
            }
        }
        out
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.entries[i][j].is_zero()))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.entries.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for r in &mut self.entries {
            r.swap(a, b);
        }
    }

    /// `row[dst] += k * row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self.entries[src][j] * k;
            self.entries[dst][j] += v;
        }
    }

    /// `col[dst] += k * col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in &mut self.entries {
            let v = &r[src] * k;
            r[dst] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in &mut self.entries[i] {
            *x = -x.clone();
        }
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.entries {
            let s: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", s.join(", "))?;
        }
        Ok(())
    }
}

/// `U·M·V = D` with `U`, `V` unimodular and `D` diagonal with `d_1 | d_2 | …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// The nonzero diagonal entries of `D`, positive and in divisibility order.
    pub invariants: Vec<BigInt>,
    pub u: IntegerMatrix,
    pub v: IntegerMatrix,
    pub d: IntegerMatrix,
}

/// Smith normal form. Pivots are the smallest nonzero absolute value in the
/// remaining block, ties broken by lowest row, then lowest column.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntegerMatrix::identity(rows);
    let mut v = IntegerMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest_entry(&d, t) else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        // Clear column t and row t; a nonzero remainder restarts with a smaller pivot.
        let mut dirty = false;
        for i in t + 1..rows {
            if d.entries[i][t].is_zero() {
                continue;
            }
            let q = -d.entries[i][t].div_floor(&d.entries[t][t]);
            d.add_row(i, t, &q);
            u.add_row(i, t, &q);
            dirty |= !d.entries[i][t].is_zero();
        }
        for j in t + 1..cols {
            if d.entries[t][j].is_zero() {
                continue;
            }
            let q = -d.entries[t][j].div_floor(&d.entries[t][t]);
            d.add_col(j, t, &q);
            v.add_col(j, t, &q);
            dirty |= !d.entries[t][j].is_zero();
        }
        if dirty {
            continue;
        }

        // Divisibility: fold an offending row into row t and redo this step.
        let pivot = d.entries[t][t].clone();
        let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d.entries[i][j].is_multiple_of(&pivot)));
        if let Some(i) = offending {
            d.add_row(t, i, &BigInt::one());
            u.add_row(t, i, &BigInt::one());
            continue;
        }
        if pivot.is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    let invariants = (0..rows.min(cols)).map(|i| d.entries[i][i].clone()).filter(|x| !x.is_zero()).collect();
    SmithForm { invariants, u, v, d }
}

fn smallest_entry(d: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let x = &d.entries[i][j];
            if x.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| x.abs() < d.entries[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Inverse of a unimodular matrix, by Gauss–Jordan over the integers.
pub fn unimodular_inverse(m: &IntegerMatrix) -> IntegerMatrix {
    let n = m.rows;
    assert_eq!(n, m.cols, "inverse of a non-square matrix");
    let mut a = m.clone();
    let mut inv = IntegerMatrix::identity(n);
    for c in 0..n {
        // Euclid on column c below the diagonal.
        loop {
            let p = (c..n).filter(|&i| !a.entries[i][c].is_zero()).min_by_key(|&i| a.entries[i][c].abs());
            let p = p.expect("matrix is not unimodular");
            a.swap_rows(c, p);
            inv.swap_rows(c, p);
            let mut done = true;
            for i in c + 1..n {
                if a.entries[i][c].is_zero() {
                    continue;
                }
                let q = -a.entries[i][c].div_floor(&a.entries[c][c]);
                a.add_row(i, c, &q);
                inv.add_row(i, c, &q);
                done &= a.entries[i][c].is_zero();
            }
            if done {
                break;
            }
        }
        assert!(a.entries[c][c].abs().is_one(), "matrix is not unimodular");
        if a.entries[c][c].is_negative() {
            a.negate_row(c);
            inv.negate_row(c);
        }
    }
    for c in (0..n).rev() {
        for i in 0..c {
            let q = -a.entries[i][c].clone();
            if !q.is_zero() {
                a.add_row(i, c, &q);
                inv.add_row(i, c, &q);
            }
        }
    }
    inv
}
