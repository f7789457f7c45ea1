//! Exponential Riordan arrays `[g, f]`.
//!
//! Column `k` of `[g, f]` has exponential generating function
//! `g(t) f(t)^k / k!`, so the `(n, k)` entry is `(n!/k!) [t^n] g f^k`.
//! Arrays multiply by `[g, f] [h, l] = [g (h ∘ f), l ∘ f]` and invert by
//! `[g, f]^{-1} = [1 / (g ∘ f̄), f̄]` where `f̄` is the compositional inverse.
//!
//! # Production matrices
//!
//! The production matrix `P` of `L = [g, f]` satisfies `L̄ = L P`, where `L̄`
//! is `L` without its top row. Two independent routes are provided:
//!
//! * [`production_numeric`] solves `L P = L̄` by forward substitution.
//!   Rows `0..m` of `L̄` involve only rows `0..=m` of `L`, so an expansion of
//!   size `m + 1` determines `P` exactly at size `m`; the last row of the
//!   truncated product is never used.
//! * [`production_analytic`] uses `A(t) = f'(f̄(t))` and
//!   `Z(t) = g'(f̄(t)) / g(f̄(t))`, so that `g' = Z(f) g` and `f' = A(f)`.
//!   Write `c_k = g f^k / k!` for the EGF of column `k`. Removing the top
//!   row of a column is differentiating its EGF, and
//!   `c_k' = g' f^k/k! + g f^{k-1} f'/(k-1)! = Z(f) g f^k/k! + A(f) g f^{k-1}/(k-1)!`.
//!   Expanding `Z(f) = sum z_i f^i` and `A(f) = sum a_i f^i` expresses `c_k'`
//!   as `sum_j c_j P(j, k)` with
//!
//!   `P(n, k) = (n!/k!) z_{n-k} + (n!/(k-1)!) a_{n-k+1}`  (`k >= 1`),
//!   `P(n, 0) = n! z_n`,
//!
//!   with `z_j`, `a_j` the ordinary coefficients of `Z` and `A`. The unit
//!   tests check this rule against the numeric route.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::egfseries::{factorial, Series, SeriesError};
use crate::exactnum::Frac;
use crate::matrix::Matrix;
use crate::momentlab::JacobiParams;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RiordanError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("g must have an invertible constant term")]
    DegenerateG,
    #[error("f must satisfy f(0) = 0 with invertible linear coefficient")]
    DegenerateF,
    #[error("truncation too short: need order {needed}, have {available}")]
    TruncationTooShort { needed: usize, available: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not lower triangular")]
    NotLowerTriangular,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErArray {
    g: Series,
    f: Series,
}

impl ErArray {
    /// Builds `[g, f]`, truncating both to the smaller order.
    pub fn new(g: Series, f: Series) -> Result<ErArray, RiordanError> {
        let order = g.order().min(f.order());
        if order == 0 {
            return Err(RiordanError::TruncationTooShort {
                needed: 1,
                available: 0,
            });
        }
        let (g, f) = (g.truncate(order), f.truncate(order));
        if g.coeff(0).is_zero() {
            return Err(RiordanError::DegenerateG);
        }
        if !f.coeff(0).is_zero() || f.coeff(1).is_zero() {
            return Err(RiordanError::DegenerateF);
        }
        Ok(ErArray { g, f })
    }

    /// `[1, t]`.
    pub fn identity(order: usize) -> ErArray {
        ErArray::new(Series::one(order), Series::t(order)).expect("identity is valid")
    }

    pub fn g(&self) -> &Series {
        &self.g
    }

    pub fn f(&self) -> &Series {
        &self.f
    }

    pub fn order(&self) -> usize {
        self.g.order()
    }

    /// `g_0 = f_1 = 1`. Non-monic arrays are accepted; this is the flag.
    pub fn is_monic(&self) -> bool {
        self.g.coeff(0).is_one() && self.f.coeff(1).is_one()
    }

    /// The leading `size x size` block of the array.
    pub fn expand(&self, size: usize) -> Result<LtMatrix, RiordanError> {
        if size > self.order() + 1 {
            return Err(RiordanError::TruncationTooShort {
                needed: size.saturating_sub(1),
                available: self.order(),
            });
        }
        let mut m = Matrix::zero(size);
        let mut column = self.g.clone();
        for k in 0..size {
            let inv_kfact = factorial(k).recip();
            for n in k..size {
                m.set(n, k, column.coeff(n).scale(&(factorial(n) * &inv_kfact)));
            }
            column = column.mul(&self.f);
        }
        Ok(LtMatrix(m))
    }

    /// Group product `[g, f] [h, l] = [g (h ∘ f), l ∘ f]`.
    pub fn multiply(&self, rhs: &ErArray) -> Result<ErArray, RiordanError> {
        let g = self.g.mul(&rhs.g.compose(&self.f)?);
        let f = rhs.f.compose(&self.f)?;
        ErArray::new(g, f)
    }

    /// `[1 / (g ∘ f̄), f̄]`.
    pub fn inverse(&self) -> Result<ErArray, RiordanError> {
        let fbar = self.f.revert()?;
        let g = self.g.compose(&fbar)?.recip()?;
        ErArray::new(g, fbar)
    }

    /// Exponential generating function `g e^f` of the row sums.
    pub fn row_sums(&self) -> Result<Series, RiordanError> {
        Ok(self.g.mul(&self.f.exp()?))
    }
}

/// A lower-triangular matrix, typically the expansion of an [`ErArray`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Matrix", into = "Matrix")]
pub struct LtMatrix(Matrix);

impl LtMatrix {
    pub fn new(m: Matrix) -> Result<LtMatrix, RiordanError> {
        if m.is_lower_triangular() {
            Ok(LtMatrix(m))
        } else {
            Err(RiordanError::NotLowerTriangular)
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn size(&self) -> usize {
        self.0.size()
    }

    pub fn get(&self, i: usize, j: usize) -> &Frac {
        self.0.get(i, j)
    }

    /// Row `i` without the zeros above the diagonal.
    pub fn row(&self, i: usize) -> &[Frac] {
        &self.0.row(i)[..=i]
    }
}

impl TryFrom<Matrix> for LtMatrix {
    type Error = RiordanError;
    fn try_from(m: Matrix) -> Result<LtMatrix, RiordanError> {
        LtMatrix::new(m)
    }
}

impl From<LtMatrix> for Matrix {
    fn from(m: LtMatrix) -> Matrix {
        m.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Tridiagonal,
    General,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductionMatrix {
    matrix: Matrix,
    shape: Shape,
}

impl ProductionMatrix {
    pub fn new(matrix: Matrix) -> ProductionMatrix {
        let n = matrix.size();
        let banded =
            (0..n).all(|i| (0..n).all(|j| i.abs_diff(j) <= 1 || matrix.get(i, j).is_zero()));
        let shape = if banded {
            Shape::Tridiagonal
        } else {
            Shape::General
        };
        ProductionMatrix { matrix, shape }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn size(&self) -> usize {
        self.matrix.size()
    }

    pub fn get(&self, i: usize, j: usize) -> &Frac {
        self.matrix.get(i, j)
    }
}

/// `Z`, `A` and the production matrix built from them.
#[derive(Clone, Debug)]
pub struct AnalyticProduction {
    pub z: Series,
    pub a: Series,
    pub matrix: ProductionMatrix,
}

/// Production matrix of `size x size` from the `A`/`Z` sequences. Needs
/// an array of order at least `size`, since `f'` and `g'` lose one order.
pub fn production_analytic(arr: &ErArray, size: usize) -> Result<AnalyticProduction, RiordanError> {
    if arr.order() < size.max(1) {
        return Err(RiordanError::TruncationTooShort {
            needed: size.max(1),
            available: arr.order(),
        });
    }
    let fbar = arr.f.revert()?;
    let a = arr.f.derivative().compose(&fbar)?;
    let g_at = arr.g.compose(&fbar)?;
    let dg_at = arr.g.derivative().compose(&fbar)?;
    let z = dg_at.div(&g_at)?;

    let matrix = Matrix::from_fn(size, |n, k| {
        if k > n + 1 {
            return Frac::zero();
        }
        let nfact = factorial(n);
        let mut entry = Frac::zero();
        if k <= n {
            entry = z.coeff(n - k).scale(&(&nfact / factorial(k)));
        }
        if k >= 1 {
            let a_term = a.coeff(n + 1 - k).scale(&(&nfact / factorial(k - 1)));
            entry = &entry + &a_term;
        }
        entry
    });
    Ok(AnalyticProduction {
        z,
        a,
        matrix: ProductionMatrix::new(matrix),
    })
}

/// `P = L^{-1} L̄` at size `L.size() - 1`.
pub fn production_numeric(l: &LtMatrix) -> Result<ProductionMatrix, RiordanError> {
    let n = l.size();
    if n < 2 {
        return Err(RiordanError::TruncationTooShort {
            needed: 2,
            available: n,
        });
    }
    let m = n - 1;
    if (0..m).any(|i| l.get(i, i).is_zero()) {
        return Err(RiordanError::SingularMatrix);
    }
    let mut p = Matrix::zero(m);
    for k in 0..m {
        for i in 0..m {
            let mut acc = l.get(i + 1, k).clone();
            for j in 0..i {
                let (lij, pjk) = (l.get(i, j), p.get(j, k));
                if !lij.is_zero() && !pjk.is_zero() {
                    acc = &acc - &(lij * pjk);
                }
            }
            p.set(i, k, &acc / l.get(i, i));
        }
    }
    Ok(ProductionMatrix::new(p))
}

/// Outcome of [`detect_tridiagonal`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tridiagonality {
    Jacobi(JacobiParams),
    /// First entry (row-major) violating the tridiagonal, unit-superdiagonal
    /// shape.
    NotTridiagonal {
        row: usize,
        col: usize,
    },
}

/// Exact band test: zeros off the three central diagonals and ones on the
/// superdiagonal. On success `a_n = P(n, n)` and `λ_n = P(n, n-1)`.
pub fn detect_tridiagonal(p: &ProductionMatrix) -> Tridiagonality {
    let n = p.size();
    for i in 0..n {
        for j in 0..n {
            let e = p.get(i, j);
            let ok = if j == i + 1 {
                e.is_one()
            } else if i.abs_diff(j) <= 1 {
                true
            } else {
                e.is_zero()
            };
            if !ok {
                return Tridiagonality::NotTridiagonal { row: i, col: j };
            }
        }
    }
    let a = (0..n).map(|i| p.get(i, i).clone()).collect();
    let lam = (1..n).map(|i| p.get(i, i - 1).clone()).collect();
    Tridiagonality::Jacobi(JacobiParams::new(a, lam).expect("lengths match"))
}

/// The shift matrix with ones on the superdiagonal.
pub fn shift_matrix(size: usize) -> Matrix {
    Matrix::from_fn(size, |i, j| {
        if j == i + 1 {
            Frac::one()
        } else {
            Frac::zero()
        }
    })
}

/// The binomial (Pascal) array `[e^t, t]`.
pub fn binomial_array(order: usize) -> ErArray {
    ErArray::new(Series::exp_linear(&Frac::one(), order), Series::t(order))
        .expect("binomial array is valid")
}
