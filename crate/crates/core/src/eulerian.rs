//! Eulerian numbers and polynomials, the two-parameter family behind them,
//! and the arrays and identities built on it.
//!
//! Triangles: `W` (A173018) with `P_n(x) = sum_k W_{n,k} x^k`, its row
//! reversal `A` (A123125), and `Ã_{n,k} = A_{n+1,k+1}` (A008292). In the
//! closed forms `0^0 = 1`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};
use thiserror::Error;

use crate::egfseries::{Series, SeriesError};
use crate::exactnum::{rat, Frac, Monomial, Poly, Rat, Var};
use crate::momentlab::{JacobiParams, MomentSeq};
use crate::riordan::{ErArray, LtMatrix, RiordanError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EulerianError {
    #[error("triangle index ({n}, {k}) out of range")]
    IndexOutOfRange { n: i64, k: i64 },
    #[error(transparent)]
    Riordan(#[from] RiordanError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TriangleKind {
    W,
    A,
    Atilde,
}

impl TriangleKind {
    pub const ALL: [TriangleKind; 3] = [TriangleKind::W, TriangleKind::A, TriangleKind::Atilde];
}

impl fmt::Display for TriangleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TriangleKind::W => "W",
            TriangleKind::A => "A",
            TriangleKind::Atilde => "Atilde",
        })
    }
}

impl FromStr for TriangleKind {
    type Err = String;
    fn from_str(s: &str) -> Result<TriangleKind, String> {
        match s {
            "W" | "w" => Ok(TriangleKind::W),
            "A" | "a" => Ok(TriangleKind::A),
            "Atilde" | "atilde" | "Ã" => Ok(TriangleKind::Atilde),
            _ => Err(format!("unknown triangle {s:?} (expected W, A or Atilde)")),
        }
    }
}

fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn ipow(base: i64, e: u32) -> BigInt {
    // 0^0 = 1
    Pow::pow(BigInt::from(base), e)
}

fn alternating_sum(n: u64, upper: i64, shift: i64) -> BigInt {
    // sum_{i=0}^{upper} (-1)^i C(n+1, i) (shift - i)^n
    (0..=upper).fold(BigInt::zero(), |acc, i| {
        let term = binom(n + 1, i as u64) * ipow(shift - i, n as u32);
        if i % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

fn w_closed(n: u64, k: u64) -> BigInt {
    let top = n as i64 - k as i64;
    alternating_sum(n, top, top)
}

fn a_closed(n: u64, k: u64) -> BigInt {
    alternating_sum(n, k as i64, k as i64)
}

/// Closed-form entry of the chosen triangle, `0 <= k <= n`.
pub fn triangle_entry(kind: TriangleKind, n: i64, k: i64) -> Result<BigInt, EulerianError> {
    if n < 0 || k < 0 || k > n {
        return Err(EulerianError::IndexOutOfRange { n, k });
    }
    let (n, k) = (n as u64, k as u64);
    Ok(match kind {
        TriangleKind::W => w_closed(n, k),
        TriangleKind::A => a_closed(n, k),
        TriangleKind::Atilde => a_closed(n + 1, k + 1),
    })
}

/// The alternative closed form `sum_{i=0}^{k+1} (-1)^i C(n+2,i) (k-i)^{n+1}`
/// for `Ã` as it is sometimes printed. It does not reproduce A008292:
/// `Ã_{0,0}` already comes out as 2.
pub fn atilde_printed_closed_form(n: u64, k: u64) -> BigInt {
    (0..=(k as i64 + 1)).fold(BigInt::zero(), |acc, i| {
        let term = binom(n + 2, i as u64) * ipow(k as i64 - i, (n + 1) as u32);
        if i % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

/// Rows `0..=last_row` from the closed forms.
pub fn triangle_rows(kind: TriangleKind, last_row: usize) -> Vec<Vec<BigInt>> {
    (0..=last_row as i64)
        .map(|n| {
            (0..=n)
                .map(|k| triangle_entry(kind, n, k).expect("in range"))
                .collect()
        })
        .collect()
}

/// Rows `0..=last_row` from the three-term recurrences:
///
/// * `W_{n,k} = (k+1) W_{n-1,k} + (n-k) W_{n-1,k-1}`,
/// * `A_{n,k} = k A_{n-1,k} + (n-k+1) A_{n-1,k-1}`,
/// * `Ã_{n,k} = (n-k+1) Ã_{n-1,k-1} + (k+1) Ã_{n-1,k}`,
///
/// all seeded with a single 1 at `(0, 0)`; out-of-range entries are 0.
pub fn triangle_by_recurrence(kind: TriangleKind, last_row: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
    for n in 1..=last_row {
        let prev = &rows[n - 1];
        let at = |k: i64| -> BigInt {
            if k < 0 {
                BigInt::zero()
            } else {
                prev.get(k as usize).cloned().unwrap_or_default()
            }
        };
        let row = (0..=n as i64)
            .map(|k| {
                let n = n as i64;
                let (same, diag) = match kind {
                    TriangleKind::W => (k + 1, n - k),
                    TriangleKind::A => (k, n - k + 1),
                    TriangleKind::Atilde => (k + 1, n - k + 1),
                };
                at(k) * same + at(k - 1) * diag
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// `P_n(x) = sum_k W_{n,k} x^k`.
pub fn eulerian_poly(n: usize) -> Poly {
    let coeffs: Vec<_> = (0..=n as i64)
        .map(|k| Rat::from_integer(triangle_entry(TriangleKind::W, n as i64, k).unwrap()))
        .collect();
    Poly::from_dense(Var::X, &coeffs)
}

/// `g(t) = (α-β) e^{(α-β)t} / (α - β e^{(α-β)t})`. Requires `α != β`.
pub fn general_g(alpha: &Frac, beta: &Frac, order: usize) -> Result<Series, SeriesError> {
    let d = alpha - beta;
    let e = Series::exp_linear(&d, order);
    let den = &Series::constant(alpha.clone(), order) - &e.scale(beta);
    e.scale(&d).div(&den)
}

/// `f(t) = (e^{(α-β)t} - 1) / (α - β e^{(α-β)t})`. Requires `α != β`.
pub fn general_f(alpha: &Frac, beta: &Frac, order: usize) -> Result<Series, SeriesError> {
    let d = alpha - beta;
    let e = Series::exp_linear(&d, order);
    let den = &Series::constant(alpha.clone(), order) - &e.scale(beta);
    (&e - &Series::one(order)).div(&den)
}

/// EGF of the Eulerian polynomials, `g` at `α = 1`, `β = x`.
pub fn eulerian_egf(order: usize) -> Series {
    general_g(&Frac::one(), &Frac::var(Var::X), order).expect("1 - x is invertible")
}

/// `[g, f]`, or the limit array `[1/(1-αt), t/(1-αt)]` when `α = β`.
pub fn eulerian_array(alpha: &Frac, beta: &Frac, order: usize) -> Result<ErArray, EulerianError> {
    if alpha == beta {
        return degenerate_er_array(DegenerateVariant::Plain, alpha, order);
    }
    let g = general_g(alpha, beta, order)?;
    let f = general_f(alpha, beta, order)?;
    Ok(ErArray::new(g, f)?)
}

/// `[g', f]`, or `[1/(1-αt)^2, t/(1-αt)]` when `α = β`.
pub fn shifted_array(alpha: &Frac, beta: &Frac, order: usize) -> Result<ErArray, EulerianError> {
    if alpha == beta {
        return degenerate_er_array(DegenerateVariant::Shifted, alpha, order);
    }
    let dg = general_g(alpha, beta, order + 1)?.derivative();
    let f = general_f(alpha, beta, order)?;
    Ok(ErArray::new(dg, f)?)
}

/// `a_n = (n+1)α + nβ`, `λ_n = n² αβ`.
pub fn eulerian_jacobi(alpha: &Frac, beta: &Frac, n: usize) -> JacobiParams {
    let ab = alpha * beta;
    JacobiParams::from_fn(
        n,
        |k| &alpha.scale(&rat(k as i64 + 1)) + &beta.scale(&rat(k as i64)),
        |k| ab.scale(&rat((k * k) as i64)),
    )
}

/// `a_n = (n+1)(α+β)`, `λ_n = n(n+1) αβ`.
pub fn shifted_jacobi(alpha: &Frac, beta: &Frac, n: usize) -> JacobiParams {
    let ab = alpha * beta;
    let sum = alpha + beta;
    JacobiParams::from_fn(
        n,
        |k| sum.scale(&rat(k as i64 + 1)),
        |k| ab.scale(&rat((k * (k + 1)) as i64)),
    )
}

/// Exponential coefficient `n` of `g` in symbolic `α, β`.
pub fn general_family(n: usize) -> Poly {
    let g = general_g(&Frac::var(Var::Alpha), &Frac::var(Var::Beta), n.max(1))
        .expect("α - β is invertible");
    g.egf_coeff(n)
        .as_poly()
        .expect("coefficients are polynomial")
}

/// Both sides of `sum_k (k+1)^n t^k = P_n(t) / (1-t)^{n+1}` as ordinary
/// series in `t` to `order`.
pub fn euler_identity_sides(n: usize, order: usize) -> (Series, Series) {
    let lhs = Series::from_coeffs(
        (0..=order)
            .map(|k| Frac::rat(Rat::from_integer(ipow(k as i64 + 1, n as u32))))
            .collect(),
    );
    let p = eulerian_poly(n).subst(Var::X, &Poly::var(Var::T));
    let p_coeffs: Vec<Frac> = (0..=n)
        .map(|i| {
            let m = Monomial::from_exponents([0, 0, 0, i as u32]);
            Frac::rat(p.coeff(&m))
        })
        .collect();
    let num = Series::polynomial(&p_coeffs, order);
    let den = Series::polynomial(&[Frac::one(), Frac::int(-1)], order).pow(n as u32 + 1);
    let rhs = num.div(&den).expect("unit constant term");
    (lhs, rhs)
}

pub fn euler_identity_check(n: usize, order: usize) -> bool {
    let (lhs, rhs) = euler_identity_sides(n, order);
    lhs == rhs
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DegenerateVariant {
    /// `[1/(1-αt), t/(1-αt)]`
    Plain,
    /// `[1/(1-αt)^2, t/(1-αt)]`
    Shifted,
}

pub fn degenerate_er_array(
    variant: DegenerateVariant,
    alpha: &Frac,
    order: usize,
) -> Result<ErArray, EulerianError> {
    let geo = Series::geometric(alpha, order);
    let g = match variant {
        DegenerateVariant::Plain => geo.clone(),
        DegenerateVariant::Shifted => geo.mul(&geo),
    };
    let f = &Series::t(order) * &geo;
    Ok(ErArray::new(g, f)?)
}

/// Leading `size x size` block of the degenerate array.
pub fn degenerate_array(
    variant: DegenerateVariant,
    alpha: &Frac,
    size: usize,
) -> Result<LtMatrix, EulerianError> {
    let order = size.saturating_sub(1).max(1);
    Ok(degenerate_er_array(variant, alpha, order)?.expand(size)?)
}

/// `C(n,k) n!/k! α^{n-k}` (plain) or `C(n+1,k+1) n!/k! α^{n-k}` (shifted).
pub fn degenerate_closed_form(
    variant: DegenerateVariant,
    alpha: &Frac,
    n: usize,
    k: usize,
) -> Frac {
    if k > n {
        return Frac::zero();
    }
    let b = match variant {
        DegenerateVariant::Plain => binom(n as u64, k as u64),
        DegenerateVariant::Shifted => binom(n as u64 + 1, k as u64 + 1),
    };
    let ratio: BigInt = ((k + 1)..=n).fold(BigInt::one(), |acc, i| acc * i);
    alpha
        .pow((n - k) as u32)
        .scale(&Rat::from_integer(b * ratio))
}

/// `f' - (1 + αf)(1 + βf)` for an arbitrary series `f`; order drops by one.
pub fn ode_residual_of(f: &Series, alpha: &Frac, beta: &Frac) -> Series {
    let lhs = f.derivative();
    let f = f.truncate(lhs.order());
    let one = Series::one(lhs.order());
    let rhs = (&one + &f.scale(alpha)).mul(&(&one + &f.scale(beta)));
    &lhs - &rhs
}

/// Same residual in the form `f' - (1 + μf + νf²)`, `μ = α+β`, `ν = αβ`.
pub fn ode_residual_expanded(f: &Series, alpha: &Frac, beta: &Frac) -> Series {
    let lhs = f.derivative();
    let f = f.truncate(lhs.order());
    let mu = alpha + beta;
    let nu = alpha * beta;
    let rhs = &(&Series::one(lhs.order()) + &f.scale(&mu)) + &f.mul(&f).scale(&nu);
    &lhs - &rhs
}

/// Residual of the logistic-type equation for the family's `f`, built at
/// `order` so the residual has order `order - 1`.
pub fn ode_residual(alpha: &Frac, beta: &Frac, order: usize) -> Result<Series, EulerianError> {
    let f = eulerian_array(alpha, beta, order)?.f().clone();
    Ok(ode_residual_of(&f, alpha, beta))
}

/// `a_n = sum_k W_{n,k} 2^k` and `b_n = sum_k A_{n,k} 2^k`, `n < count`.
pub fn race_sequences(count: usize) -> (MomentSeq, MomentSeq) {
    let weighted = |kind: TriangleKind, n: usize| -> Frac {
        let total = (0..=n as i64).fold(BigInt::zero(), |acc, k| {
            acc + triangle_entry(kind, n as i64, k).unwrap() * ipow(2, k as u32)
        });
        Frac::rat(Rat::from_integer(total))
    };
    let a = (0..count).map(|n| weighted(TriangleKind::W, n)).collect();
    let b = (0..count).map(|n| weighted(TriangleKind::A, n)).collect();
    (MomentSeq(a), MomentSeq(b))
}

/// `x^{C(n+1,2)} prod_{k=1}^{n} k!^2`.
pub fn eulerian_hankel_closed_form(n: usize) -> Poly {
    let e = (n * (n + 1) / 2) as u32;
    let prod = (1..=n as u64).fold(BigInt::one(), |acc, k| {
        let f: BigInt = (1..=k).fold(BigInt::one(), |a, i| a * i);
        acc * &f * &f
    });
    Poly::var(Var::X).pow(e).scale(&Rat::from_integer(prod))
}

/// `(2x)^{C(n+1,2)} prod_{k=1}^{n} C(k+2,2)^{n-k}`.
pub fn shifted_hankel_closed_form(n: usize) -> Poly {
    let e = (n * (n + 1) / 2) as u32;
    let prod = (1..=n as u64).fold(BigInt::one(), |acc, k| {
        acc * Pow::pow(binom(k + 2, 2), (n as u64 - k) as u32)
    });
    Poly::var(Var::X)
        .scale(&rat(2))
        .pow(e)
        .scale(&Rat::from_integer(prod))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::momentlab::{binomial_transform, moments_from_jacobi};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn px(c: &[i64]) -> Poly {
        Poly::from_dense(Var::X, &c.iter().map(|&k| rat(k)).collect::<Vec<_>>())
    }

    #[test]
    fn triangle_examples() {
        assert_eq!(
            triangle_rows(TriangleKind::W, 4)[4],
            ints(&[1, 11, 11, 1, 0])
        );
        assert_eq!(
            triangle_rows(TriangleKind::Atilde, 5)[5],
            ints(&[1, 57, 302, 302, 57, 1])
        );
        assert_eq!(triangle_rows(TriangleKind::A, 3)[3], ints(&[0, 1, 4, 1]));
    }

    #[test]
    fn triangle_bounds() {
        assert!(matches!(
            triangle_entry(TriangleKind::W, 2, 3),
            Err(EulerianError::IndexOutOfRange { .. })
        ));
        assert!(triangle_entry(TriangleKind::A, -1, 0).is_err());
        assert!(triangle_entry(TriangleKind::Atilde, 3, -1).is_err());
    }

    #[test]
    fn closed_forms_match_recurrences() {
        for kind in TriangleKind::ALL {
            assert_eq!(
                triangle_rows(kind, 12),
                triangle_by_recurrence(kind, 12),
                "{kind}"
            );
        }
    }

    #[test]
    fn printed_atilde_form_disagrees() {
        let rows = triangle_by_recurrence(TriangleKind::Atilde, 6);
        assert_eq!(atilde_printed_closed_form(0, 0), BigInt::from(2));
        let mismatches = (0..=6u64)
            .flat_map(|n| (0..=n).map(move |k| (n, k)))
            .filter(|&(n, k)| atilde_printed_closed_form(n, k) != rows[n as usize][k as usize])
            .count();
        assert!(mismatches > 0);
    }

    #[test]
    fn eulerian_poly_examples() {
        assert_eq!(eulerian_poly(2), px(&[1, 1]));
        assert_eq!(eulerian_poly(0), px(&[1]));
        assert_eq!(eulerian_poly(5), px(&[1, 26, 66, 26, 1]));
        for n in 0..=10 {
            let at_one = eulerian_poly(n).eval_all(&[(Var::X, rat(1))]);
            let fact = (1..=n as i64).fold(rat(1), |a, k| a * rat(k));
            assert_eq!(at_one, fact);
        }
    }

    #[test]
    fn general_family_examples() {
        let a = Poly::var(Var::Alpha);
        let b = Poly::var(Var::Beta);
        assert_eq!(general_family(1), a.clone());
        let expected3 = &a * &(&(&a.pow(2) + &(&a * &b).scale(&rat(4))) + &b.pow(2));
        assert_eq!(general_family(3), expected3);
        for n in 0..6 {
            assert_eq!(general_family(n).eval(Var::Beta, &rat(0)), a.pow(n as u32));
            let specialized = general_family(n)
                .eval(Var::Alpha, &rat(1))
                .subst(Var::Beta, &Poly::var(Var::X));
            assert_eq!(specialized, eulerian_poly(n));
        }
    }

    #[test]
    fn euler_identity_examples() {
        assert!(euler_identity_check(1, 5));
        assert!(euler_identity_check(3, 8));
        assert!(euler_identity_check(0, 6));
        let (lhs, _) = euler_identity_sides(0, 4);
        assert!(lhs.coeffs().iter().all(Frac::is_one));
    }

    #[test]
    fn degenerate_examples() {
        let one = Frac::one();
        let plain = degenerate_array(DegenerateVariant::Plain, &one, 5).unwrap();
        assert_eq!(plain.get(3, 1), &Frac::int(18));
        let shifted = degenerate_array(DegenerateVariant::Shifted, &one, 5).unwrap();
        assert_eq!(shifted.get(3, 1), &Frac::int(36));
        for n in 0..5 {
            assert!(plain.get(n, n).is_one());
        }
        let alpha = Frac::var(Var::Alpha);
        for variant in [DegenerateVariant::Plain, DegenerateVariant::Shifted] {
            let m = degenerate_array(variant, &alpha, 7).unwrap();
            for n in 0..7 {
                for k in 0..=n {
                    assert_eq!(m.get(n, k), &degenerate_closed_form(variant, &alpha, n, k));
                }
            }
        }
    }

    #[test]
    fn ode_examples() {
        let x = Frac::var(Var::X);
        assert!(ode_residual(&Frac::one(), &x, 12).unwrap().is_zero());
        let one = Frac::one();
        let f = degenerate_er_array(DegenerateVariant::Plain, &one, 10)
            .unwrap()
            .f()
            .clone();
        assert!(ode_residual_of(&f, &one, &one).is_zero());

        let mut c = eulerian_array(&one, &x, 10).unwrap().f().coeffs().to_vec();
        c[3] = &c[3] + &Frac::one();
        let perturbed = Series::from_coeffs(c);
        let r = ode_residual_of(&perturbed, &one, &x);
        assert_eq!(r.first_nonzero(), Some(2));
    }

    #[test]
    fn ode_symbolic_both_forms() {
        let (a, b) = (Frac::var(Var::Alpha), Frac::var(Var::Beta));
        let f = general_f(&a, &b, 8).unwrap();
        assert!(ode_residual_of(&f, &a, &b).is_zero());
        assert!(ode_residual_expanded(&f, &a, &b).is_zero());
    }

    #[test]
    fn race_examples() {
        let (a, b) = race_sequences(5);
        assert_eq!(a.0, [1, 1, 3, 13, 75].map(Frac::int).to_vec());
        assert_eq!(b.0, [1, 2, 6, 26, 150].map(Frac::int).to_vec());
        assert_eq!(binomial_transform(&a), b);
    }

    #[test]
    fn four_way_small() {
        let x = Frac::var(Var::X);
        let j = eulerian_jacobi(&Frac::one(), &x, 4);
        let m = moments_from_jacobi(&j, 6).unwrap();
        let egf = eulerian_egf(5);
        for n in 0..6 {
            let p = Frac::from_poly(eulerian_poly(n));
            assert_eq!(m.values()[n], p);
            assert_eq!(egf.egf_coeff(n), p);
        }
    }

    #[test]
    fn hankel_closed_forms() {
        let x = Poly::var(Var::X);
        assert_eq!(eulerian_hankel_closed_form(2), x.pow(3).scale(&rat(4)));
        assert_eq!(eulerian_hankel_closed_form(3), x.pow(6).scale(&rat(144)));
        assert_eq!(shifted_hankel_closed_form(2), x.pow(3).scale(&rat(24)));
        assert_eq!(eulerian_hankel_closed_form(0), Poly::one());
    }
}
