//! Dense square matrices of exact fractions.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactnum::{ExactError, Frac};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    size: usize,
    rows: Vec<Vec<Frac>>,
}

impl Matrix {
    pub fn zero(size: usize) -> Matrix {
        Matrix {
            size,
            rows: vec![vec![Frac::zero(); size]; size],
        }
    }

    pub fn identity(size: usize) -> Matrix {
        Matrix::from_fn(size, |i, j| if i == j { Frac::one() } else { Frac::zero() })
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Frac>(size: usize, mut f: F) -> Matrix {
        Matrix {
            size,
            rows: (0..size)
                .map(|i| (0..size).map(|j| f(i, j)).collect())
                .collect(),
        }
    }

    /// Square matrix from row vectors. Short rows are zero-padded; panics
    /// if a row is longer than the number of rows.
    pub fn from_rows(rows: Vec<Vec<Frac>>) -> Matrix {
        let size = rows.len();
        let rows = rows
            .into_iter()
            .map(|mut r| {
                assert!(r.len() <= size, "row longer than matrix size");
                r.resize(size, Frac::zero());
                r
            })
            .collect();
        Matrix { size, rows }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &Frac {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Frac) {
        self.rows[i][j] = v;
    }

    pub fn row(&self, i: usize) -> &[Frac] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<Frac>] {
        &self.rows
    }

    pub fn column(&self, j: usize) -> Vec<Frac> {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    /// Leading `n x n` block.
    pub fn leading(&self, n: usize) -> Matrix {
        assert!(n <= self.size);
        Matrix::from_fn(n, |i, j| self.rows[i][j].clone())
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.size, rhs.size, "matrix size mismatch");
        Matrix::from_fn(self.size, |i, j| {
            (0..self.size).fold(Frac::zero(), |acc, k| {
                let (a, b) = (&self.rows[i][k], &rhs.rows[k][j]);
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    &acc + &(a * b)
                }
            })
        })
    }

    pub fn is_lower_triangular(&self) -> bool {
        (0..self.size).all(|i| ((i + 1)..self.size).all(|j| self.rows[i][j].is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination. Every division is
    /// exact, so polynomial entries stay polynomial throughout.
    pub fn det_bareiss(&self) -> Frac {
        let n = self.size;
        if n == 0 {
            return Frac::one();
        }
        let mut m = self.rows.clone();
        let mut prev = Frac::one();
        let mut negate = false;
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match ((k + 1)..n).find(|&r| !m[r][k].is_zero()) {
                    Some(r) => {
                        m.swap(k, r);
                        negate = !negate;
                    }
                    None => return Frac::zero(),
                }
            }
            for i in (k + 1)..n {
                for j in (k + 1)..n {
                    let cross = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = &cross / &prev;
                }
                m[i][k] = Frac::zero();
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        if negate {
            -det
        } else {
            det
        }
    }

    /// Applies a fallible map entrywise.
    pub fn map<F: FnMut(&Frac) -> Result<Frac, ExactError>>(
        &self,
        mut f: F,
    ) -> Result<Matrix, ExactError> {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(&mut f).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix {
            size: self.size,
            rows,
        })
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixRepr {
    size: usize,
    rows: Vec<Vec<Frac>>,
}

impl Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        MatrixRepr {
            size: self.size,
            rows: self.rows.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Matrix, D::Error> {
        use serde::de::Error;
        let r = MatrixRepr::deserialize(d)?;
        if r.rows.len() != r.size || r.rows.iter().any(|row| row.len() != r.size) {
            return Err(D::Error::custom("rows must form a size x size array"));
        }
        Ok(Matrix {
            size: r.size,
            rows: r.rows,
        })
    }
}

/// One row per line, entries separated by two spaces.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join("  "))?;
        }
        Ok(())
    }
}
