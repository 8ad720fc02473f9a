use std::fmt;

use num_traits::{One, Zero};

use super::rational::{to_fraction_string, Rational};
use crate::error::{Error, Result};

/// Dense row-major matrix of exact rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        Self::from_fn(size, size, |i, j| {
            if i == j {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// Build from a closure over **1-based** `(row, col)` indices.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 1..=rows {
            for j in 1..=cols {
                entries.push(f(i, j));
            }
        }
        Self { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Parameter("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Self {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at 1-based `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> &Rational {
        assert!(
            (1..=self.rows).contains(&row) && (1..=self.cols).contains(&col),
            "index ({row}, {col}) outside {}x{}",
            self.rows,
            self.cols
        );
        &self.entries[(row - 1) * self.cols + (col - 1)]
    }

    pub fn row(&self, row: usize) -> &[Rational] {
        let start = (row - 1) * self.cols;
        &self.entries[start..start + self.cols]
    }

    pub fn column(&self, col: usize) -> Vec<Rational> {
        (1..=self.rows).map(|i| self.get(i, col).clone()).collect()
    }

    /// Leading `rows x cols` block.
    pub fn top_left(&self, rows: usize, cols: usize) -> Self {
        assert!(rows <= self.rows && cols <= self.cols);
        Self::from_fn(rows, cols, |i, j| self.get(i, j).clone())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        mat_mul(self, other)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: v.len(),
                right_cols: 1,
            });
        }
        Ok((1..=self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(m, _)| !m.is_zero())
                    .fold(Rational::zero(), |acc, (m, x)| acc + m * x)
            })
            .collect())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn column_sums(&self) -> Vec<Rational> {
        (1..=self.cols)
            .map(|j| (1..=self.rows).fold(Rational::zero(), |acc, i| acc + self.get(i, j)))
            .collect()
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (1..=self.rows)
            .map(|i| self.row(i).iter().map(super::rational::to_f64).collect())
            .collect()
    }
}

/// Exact product `a * b`.
pub fn mat_mul(a: &RationalMatrix, b: &RationalMatrix) -> Result<RationalMatrix> {
    if a.cols != b.rows {
        return Err(Error::DimensionMismatch {
            left_rows: a.rows,
            left_cols: a.cols,
            right_rows: b.rows,
            right_cols: b.cols,
        });
    }
    let mut out = RationalMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let lhs = &a.entries[i * a.cols + k];
            // The zoo matrices are mostly triangular or banded.
            if lhs.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                let rhs = &b.entries[k * b.cols + j];
                if !rhs.is_zero() {
                    out.entries[i * b.cols + j] += lhs * rhs;
                }
            }
        }
    }
    Ok(out)
}

/// Aligned grid of `p/q` entries, one row per line.
impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.entries.iter().map(to_fraction_string).collect();
        let mut widths = vec![0; self.cols];
        for (idx, c) in cells.iter().enumerate() {
            widths[idx % self.cols] = widths[idx % self.cols].max(c.len());
        }
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols)
                .map(|j| format!("{:>w$}", cells[i * self.cols + j], w = widths[j]))
                .collect();
            writeln!(f, "{}", line.join("  "))?;
        }
        Ok(())
    }
}
