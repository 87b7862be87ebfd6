use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ExactRational;
use crate::error::{Error, Result};

/// Dense rectangular matrix of exact rationals, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ExactRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![ExactRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ExactRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ExactRational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// The `k x k` Hankel matrix `(values[i + j])`.
    pub fn hankel(values: &[ExactRational], k: usize) -> Result<Self> {
        if k > 0 && values.len() < 2 * k - 1 {
            return Err(Error::DimensionMismatch(format!(
                "{k}x{k} Hankel matrix needs {} values, got {}",
                2 * k - 1,
                values.len()
            )));
        }
        let mut m = Self::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, values[i + j].clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExactRational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul_vec(&self, x: &[ExactRational]) -> Result<Vec<ExactRational>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * &x[j])
                    .fold(ExactRational::zero(), |a, b| a + b)
            })
            .collect())
    }

    /// Row-wise scaling to an integer matrix; rank and solution sets are
    /// unchanged by nonzero row scaling.
    fn integer_rows(&self, extra: Option<&[ExactRational]>) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let mut row: Vec<&ExactRational> = (0..self.cols).map(|j| self.get(i, j)).collect();
                if let Some(rhs) = extra {
                    row.push(&rhs[i]);
                }
                let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
            })
            .collect()
    }
}

/// Fraction-free (Bareiss) forward elimination in place over the first
/// `pivot_cols` columns. Returns the pivot column of each pivot row.
fn bareiss(a: &mut [Vec<BigInt>], pivot_cols: usize) -> Vec<usize> {
    let rows = a.len();
    let width = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..pivot_cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        for i in row + 1..rows {
            for j in col + 1..width {
                let v = &a[row][col] * &a[i][j] - &a[i][col] * &a[row][j];
                a[i][j] = v / &prev;
            }
            a[i][col] = BigInt::zero();
        }
        prev = a[row][col].clone();
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank_exact(m: &ExactMatrix) -> usize {
    let mut a = m.integer_rows(None);
    bareiss(&mut a, m.cols).len()
}

/// Unique exact solution of a square invertible system.
pub fn solve_linear_exact(m: &ExactMatrix, rhs: &[ExactRational]) -> Result<Vec<ExactRational>> {
    if m.rows != m.cols {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} matrix is not square",
            m.rows, m.cols
        )));
    }
    if rhs.len() != m.rows {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            rhs.len(),
            m.rows
        )));
    }
    let n = m.rows;
    let mut a = m.integer_rows(Some(rhs));
    if bareiss(&mut a, n).len() < n {
        return Err(Error::SingularMatrix);
    }
    let mut x = vec![ExactRational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = BigRational::from_integer(a[i][n].clone());
        for j in i + 1..n {
            acc -= BigRational::from_integer(a[i][j].clone()) * &x[j];
        }
        x[i] = acc / BigRational::from_integer(a[i][i].clone());
    }
    debug_assert!(x.iter().all(|v| !v.denom().is_negative()));
    Ok(x)
}
