//! Truncated power series in `t` with [`Frac`] coefficients.
//!
//! A series of order `N` stores the ordinary coefficients `c_0..=c_N` and
//! stands for `c_0 + c_1 t + ... + c_N t^N + O(t^{N+1})`. Binary operations
//! produce a result of the smaller operand order. Differentiation lowers
//! the order by one, so anything built on a derivative inherits the reduced
//! order: callers that need order `N` after differentiating must start from
//! order `N + 1`.
//!
//! The same storage doubles as an exponential generating function:
//! [`Series::egf_coeff`] returns `n! c_n`.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{rat, Frac, Poly, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series constant term is not invertible")]
    NonInvertibleConstantTerm,
    #[error("inner series of a composition must have zero constant term")]
    NonzeroInnerConstant,
    #[error("series is not revertible: needs c0 = 0 and invertible c1")]
    NotRevertible,
    #[error("bad constant term: exp needs c0 = 0, log needs c0 = 1")]
    BadConstantTerm,
}

pub(crate) fn factorial(n: usize) -> Rat {
    (1..=n as i64).fold(rat(1), |acc, k| acc * rat(k))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Frac>,
}

impl Series {
    /// Series of order `coeffs.len() - 1`. Panics on an empty vector.
    pub fn from_coeffs(coeffs: Vec<Frac>) -> Series {
        assert!(
            !coeffs.is_empty(),
            "a series needs at least one coefficient"
        );
        Series { coeffs }
    }

    /// Series whose exponential coefficients (`n! c_n`) are `egf`.
    pub fn from_egf(egf: Vec<Frac>) -> Series {
        Series::from_coeffs(
            egf.into_iter()
                .enumerate()
                .map(|(n, e)| e.scale(&factorial(n).recip()))
                .collect(),
        )
    }

    pub fn zero(order: usize) -> Series {
        Series::from_coeffs(vec![Frac::zero(); order + 1])
    }

    pub fn constant(c: Frac, order: usize) -> Series {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Series {
        Series::constant(Frac::one(), order)
    }

    /// The series `t`.
    pub fn t(order: usize) -> Series {
        let mut s = Series::zero(order);
        if order >= 1 {
            s.coeffs[1] = Frac::one();
        }
        s
    }

    /// `exp(c t)`.
    pub fn exp_linear(c: &Frac, order: usize) -> Series {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = Frac::one();
        coeffs.push(term.clone());
        for n in 1..=order {
            term = (&term * c).scale(&rat(n as i64).recip());
            coeffs.push(term.clone());
        }
        Series::from_coeffs(coeffs)
    }

    /// `1 / (1 - c t)`.
    pub fn geometric(c: &Frac, order: usize) -> Series {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut term = Frac::one();
        for _ in 0..=order {
            coeffs.push(term.clone());
            term = &term * c;
        }
        Series::from_coeffs(coeffs)
    }

    /// A polynomial in `t` given by its coefficients, padded/truncated to
    /// `order`.
    pub fn polynomial(coeffs: &[Frac], order: usize) -> Series {
        let mut s = Series::zero(order);
        for (i, c) in coeffs.iter().enumerate().take(order + 1) {
            s.coeffs[i] = c.clone();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Frac] {
        &self.coeffs
    }

    /// Ordinary coefficient of `t^n`, zero-extended is *not* applied:
    /// panics beyond the truncation order.
    pub fn coeff(&self, n: usize) -> &Frac {
        &self.coeffs[n]
    }

    pub fn egf_coeff(&self, n: usize) -> Frac {
        self.coeffs[n].scale(&factorial(n))
    }

    pub fn egf_coeffs(&self) -> Vec<Frac> {
        (0..=self.order()).map(|n| self.egf_coeff(n)).collect()
    }

    pub fn truncate(&self, order: usize) -> Series {
        assert!(order <= self.order(), "cannot extend a truncated series");
        Series::from_coeffs(self.coeffs[..=order].to_vec())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Frac::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn first_nonzero(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &Frac) -> Series {
        Series::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn map_coeffs<F: FnMut(&Frac) -> Frac>(&self, f: F) -> Series {
        Series::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    fn zip_with<F: Fn(&Frac, &Frac) -> Frac>(&self, rhs: &Series, op: F) -> Series {
        Series::from_coeffs(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| op(a, b))
                .collect(),
        )
    }

    /// Cauchy product truncated to the smaller order.
    pub fn mul(&self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        let mut out = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = Frac::zero();
            for k in 0..=n {
                let (a, b) = (&self.coeffs[k], &rhs.coeffs[n - k]);
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            out.push(acc);
        }
        Series::from_coeffs(out)
    }

    pub fn pow(&self, e: u32) -> Series {
        let mut acc = Series::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; needs an invertible constant term.
    pub fn recip(&self) -> Result<Series, SeriesError> {
        Series::one(self.order()).div(self)
    }

    /// `self / rhs` solved term by term from `q * rhs = self`.
    pub fn div(&self, rhs: &Series) -> Result<Series, SeriesError> {
        let b0 = &rhs.coeffs[0];
        if b0.is_zero() {
            return Err(SeriesError::NonInvertibleConstantTerm);
        }
        let order = self.order().min(rhs.order());
        let mut q: Vec<Frac> = Vec::with_capacity(order + 1);
        for n in 0..=order {
            let mut acc = self.coeffs[n].clone();
            for (k, qk) in q.iter().enumerate() {
                let b = &rhs.coeffs[n - k];
                if !b.is_zero() && !qk.is_zero() {
                    acc = &acc - &(qk * b);
                }
            }
            q.push(acc.checked_div(b0).expect("nonzero b0"));
        }
        Ok(Series::from_coeffs(q))
    }

    /// `outer(inner(t))` by Horner's scheme.
    pub fn compose(&self, inner: &Series) -> Result<Series, SeriesError> {
        if !inner.coeffs[0].is_zero() {
            return Err(SeriesError::NonzeroInnerConstant);
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Series::constant(self.coeffs[order].clone(), order);
        for k in (0..order).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = &acc.coeffs[0] + &self.coeffs[k];
        }
        Ok(acc)
    }

    /// Compositional inverse by Lagrange inversion:
    /// `[t^n] rev = (1/n) [t^{n-1}] (t / f)^n`.
    pub fn revert(&self) -> Result<Series, SeriesError> {
        let order = self.order();
        if order == 0 || !self.coeffs[0].is_zero() || self.coeffs[1].is_zero() {
            return Err(SeriesError::NotRevertible);
        }
        // f / t has order N - 1; its reciprocal is t / f.
        let shifted = Series::from_coeffs(self.coeffs[1..].to_vec());
        let h = shifted.recip().map_err(|_| SeriesError::NotRevertible)?;
        let mut out = vec![Frac::zero(); order + 1];
        let mut power = Series::one(h.order());
        for (n, slot) in out.iter_mut().enumerate().skip(1) {
            power = power.mul(&h);
            *slot = power.coeffs[n - 1].scale(&rat(n as i64).recip());
        }
        Ok(Series::from_coeffs(out))
    }

    pub fn derivative(&self) -> Series {
        assert!(self.order() >= 1, "derivative needs order >= 1");
        Series::from_coeffs(
            (1..=self.order())
                .map(|n| self.coeffs[n].scale(&rat(n as i64)))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term; raises the order by one.
    pub fn integral(&self) -> Series {
        let mut out = Vec::with_capacity(self.order() + 2);
        out.push(Frac::zero());
        for (n, c) in self.coeffs.iter().enumerate() {
            out.push(c.scale(&rat(n as i64 + 1).recip()));
        }
        Series::from_coeffs(out)
    }

    /// `exp(a)` for `a_0 = 0`, from `n b_n = sum_k k a_k b_{n-k}`.
    pub fn exp(&self) -> Result<Series, SeriesError> {
        if !self.coeffs[0].is_zero() {
            return Err(SeriesError::BadConstantTerm);
        }
        let order = self.order();
        let mut b = vec![Frac::one()];
        for n in 1..=order {
            let mut acc = Frac::zero();
            for k in 1..=n {
                let a = &self.coeffs[k];
                if !a.is_zero() {
                    acc = &acc + &(a * &b[n - k]).scale(&rat(k as i64));
                }
            }
            b.push(acc.scale(&rat(n as i64).recip()));
        }
        Ok(Series::from_coeffs(b))
    }

    /// `log(a)` for `a_0 = 1`, as the antiderivative of `a' / a`.
    pub fn log(&self) -> Result<Series, SeriesError> {
        if !self.coeffs[0].is_one() {
            return Err(SeriesError::BadConstantTerm);
        }
        if self.order() == 0 {
            return Ok(Series::zero(0));
        }
        let quotient = self.derivative().div(&self.truncate(self.order() - 1))?;
        Ok(quotient.integral())
    }

    /// Coefficients as polynomials, if every coefficient is one.
    pub fn poly_coeffs(&self) -> Option<Vec<Poly>> {
        self.coeffs.iter().map(Frac::as_poly).collect()
    }
}

impl Add<&Series> for &Series {
    type Output = Series;
    fn add(self, rhs: &Series) -> Series {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub<&Series> for &Series {
    type Output = Series;
    fn sub(self, rhs: &Series) -> Series {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Mul<&Series> for &Series {
    type Output = Series;
    fn mul(self, rhs: &Series) -> Series {
        Series::mul(self, rhs)
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.map_coeffs(|c| -c)
    }
}

#[derive(Serialize, Deserialize)]
struct SeriesRepr {
    order: usize,
    coeffs: Vec<Frac>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    egf: Option<Vec<Poly>>,
}

impl Serialize for Series {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let egf = self
            .egf_coeffs()
            .iter()
            .map(Frac::as_poly)
            .collect::<Option<Vec<_>>>();
        SeriesRepr {
            order: self.order(),
            coeffs: self.coeffs.clone(),
            egf,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Series {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Series, D::Error> {
        use serde::de::Error;
        let r = SeriesRepr::deserialize(d)?;
        if r.coeffs.len() != r.order + 1 {
            return Err(D::Error::custom("coeffs length must be order + 1"));
        }
        Ok(Series::from_coeffs(r.coeffs))
    }
}
