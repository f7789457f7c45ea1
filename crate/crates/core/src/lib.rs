//! Exact exponential Riordan array algebra and the Eulerian moment
//! machinery built on it.
//!
//! Everything is computed exactly: coefficients are [`exactnum::Frac`]
//! values (rational functions in `x`, `α`, `β`, `t`), series are truncated
//! power series over them, and matrices are dense arrays of fractions.
//!
//! ```
//! use erarray::family::{Family, FamilyKind};
//! use erarray::riordan::{detect_tridiagonal, production_analytic, Tridiagonality};
//!
//! let arr = Family::new(FamilyKind::Eulerian).array(8).unwrap();
//! let p = production_analytic(&arr, 6).unwrap().matrix;
//! let Tridiagonality::Jacobi(j) = detect_tridiagonal(&p) else { panic!() };
//! assert_eq!(j.a(1).unwrap().to_string(), "2 + x");
//! ```

pub mod egfseries;
pub mod eulerian;
pub mod exactnum;
pub mod family;
pub mod matrix;
pub mod momentlab;
pub mod riordan;
pub mod verify;

use thiserror::Error;

pub use egfseries::Series;
pub use exactnum::{Frac, Poly, Rat, Var};
pub use matrix::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Exact(#[from] exactnum::ExactError),
    #[error(transparent)]
    Series(#[from] egfseries::SeriesError),
    #[error(transparent)]
    Riordan(#[from] riordan::RiordanError),
    #[error(transparent)]
    Moment(#[from] momentlab::MomentError),
    #[error(transparent)]
    Eulerian(#[from] eulerian::EulerianError),
}
