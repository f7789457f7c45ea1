//! Moments, orthogonal polynomials, J-fractions and Hankel transforms, all
//! driven by the Jacobi parameters of a tridiagonal production matrix.
//!
//! Conventions: the diagonal is `a_0, a_1, ...` and the subdiagonal is
//! `λ_1, λ_2, ...` (one shorter). The monic orthogonal polynomials obey
//! `p_n = (t - a_{n-1}) p_{n-1} - λ_{n-1} p_{n-2}`, their moments are the
//! weighted Motzkin path counts (up steps weight 1, level steps at height
//! `k` weight `a_k`, down steps from height `k` weight `λ_k`), and the
//! moment OGF is the J-fraction
//! `1 / (1 - a_0 t - λ_1 t^2 / (1 - a_1 t - λ_2 t^2 / ...))`.
//!
//! # Hankel determinants from the fraction
//!
//! The Hankel transform follows from the classical product formula
//! `h_n = prod_{k=1}^{n} λ_k^{n+1-k}`. Sketch: with `L` the lower-triangular
//! matrix of Motzkin-path counts ending at height `k`, the Hankel matrix of
//! the moments factors as `H_n = L D L^T` with
//! `D = diag(1, λ_1, λ_1 λ_2, ...)`, because a path of length `i + j` from
//! 0 to 0 splits uniquely at step `i` into two halves meeting at some height
//! `k`, weighted by the down-steps `λ_1 ... λ_k` of the second half. `L` is
//! unitriangular, so `det H_n = prod_{k=0}^{n} (λ_1 ... λ_k)`. The
//! determinant route ([`hankel_det`]) is kept as an independent check.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::egfseries::{Series, SeriesError};
use crate::exactnum::{rat, Frac};
use crate::matrix::Matrix;

/// Default bound on the dimension of Hankel matrices handed to
/// [`hankel_det`]; `n = 8` needs a 9 x 9 determinant.
pub const DEFAULT_MAX_HANKEL_DIM: usize = 9;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MomentError {
    #[error("not enough Jacobi parameters: need {needed} diagonal entries, have {available}")]
    InsufficientParams { needed: usize, available: usize },
    #[error("continued-fraction depth {depth} exceeds the {available} available levels")]
    DepthExceedsParams { depth: usize, available: usize },
    #[error("need {needed} moment values, have {available}")]
    InsufficientValues { needed: usize, available: usize },
    #[error("subdiagonal must be exactly one shorter than the diagonal ({diag} vs {sub})")]
    LengthMismatch { diag: usize, sub: usize },
    #[error("Hankel dimension {dim} exceeds the cap of {cap}")]
    TooLarge { dim: usize, cap: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Diagonal `a_0..a_n` and subdiagonal `λ_1..λ_n` of a tridiagonal
/// production matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobiParams {
    a: Vec<Frac>,
    lam: Vec<Frac>,
}

impl JacobiParams {
    pub fn new(a: Vec<Frac>, lam: Vec<Frac>) -> Result<JacobiParams, MomentError> {
        if a.is_empty() || lam.len() + 1 != a.len() {
            return Err(MomentError::LengthMismatch {
                diag: a.len(),
                sub: lam.len(),
            });
        }
        Ok(JacobiParams { a, lam })
    }

    /// `n + 1` diagonal entries `a(0..=n)` and `n` subdiagonal entries
    /// `lam(1..=n)`.
    pub fn from_fn<A, L>(n: usize, a: A, lam: L) -> JacobiParams
    where
        A: Fn(usize) -> Frac,
        L: Fn(usize) -> Frac,
    {
        JacobiParams {
            a: (0..=n).map(a).collect(),
            lam: (1..=n).map(lam).collect(),
        }
    }

    /// Index of the last diagonal entry.
    pub fn len(&self) -> usize {
        self.lam.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lam.is_empty()
    }

    pub fn diagonal(&self) -> &[Frac] {
        &self.a
    }

    /// `λ_1, λ_2, ...`.
    pub fn subdiagonal(&self) -> &[Frac] {
        &self.lam
    }

    pub fn a(&self, n: usize) -> Option<&Frac> {
        self.a.get(n)
    }

    /// `λ_n` for `n >= 1`.
    pub fn lam(&self, n: usize) -> Option<&Frac> {
        n.checked_sub(1).and_then(|i| self.lam.get(i))
    }

    fn need_a(&self, n: usize) -> Result<&Frac, MomentError> {
        self.a.get(n).ok_or(MomentError::InsufficientParams {
            needed: n + 1,
            available: self.a.len(),
        })
    }

    fn need_lam(&self, n: usize) -> Result<&Frac, MomentError> {
        self.lam(n).ok_or(MomentError::InsufficientParams {
            needed: n + 1,
            available: self.a.len(),
        })
    }

    /// First `n + 1` diagonal entries.
    pub fn truncated(&self, n: usize) -> JacobiParams {
        assert!(n <= self.len());
        JacobiParams {
            a: self.a[..=n].to_vec(),
            lam: self.lam[..n].to_vec(),
        }
    }

    /// Same subdiagonal, every diagonal entry increased by `c`.
    pub fn shift_diagonal(&self, c: &Frac) -> JacobiParams {
        JacobiParams {
            a: self.a.iter().map(|a| a + c).collect(),
            lam: self.lam.clone(),
        }
    }

    /// Replaces `λ_n`; used to seed negative controls.
    pub fn with_lam(mut self, n: usize, value: Frac) -> JacobiParams {
        self.lam[n - 1] = value;
        self
    }

    /// Tridiagonal matrix with unit superdiagonal, `size x size`. Entries
    /// beyond the stored parameters are zero.
    pub fn to_matrix(&self, size: usize) -> Matrix {
        Matrix::from_fn(size, |i, j| {
            if j == i + 1 {
                Frac::one()
            } else if j == i {
                self.a.get(i).cloned().unwrap_or_default()
            } else if i == j + 1 {
                self.lam(i).cloned().unwrap_or_default()
            } else {
                Frac::zero()
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MomentSeq(pub Vec<Frac>);

impl MomentSeq {
    pub fn values(&self) -> &[Frac] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Drops the first value.
    pub fn shifted(&self) -> MomentSeq {
        MomentSeq(self.0.iter().skip(1).cloned().collect())
    }
}

/// Monic polynomial in `t`, coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthoPoly {
    pub coeffs: Vec<Frac>,
}

impl OrthoPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// `μ_0..μ_{m-1}` from the weighted Motzkin triangle
/// `m_{s,k} = m_{s-1,k-1} + a_k m_{s-1,k} + λ_{k+1} m_{s-1,k+1}`.
///
/// Heights are capped at `min(s, m-1-s)` so only the parameters a path of
/// length `m - 1` can reach are consulted: `a_k` for `k <= (m-2)/2` and
/// `λ_k` for `k <= (m-1)/2`.
pub fn moments_from_jacobi(j: &JacobiParams, m: usize) -> Result<MomentSeq, MomentError> {
    if m == 0 {
        return Ok(MomentSeq(Vec::new()));
    }
    let last = m - 1;
    let mut row = vec![Frac::one()];
    let mut out = vec![Frac::one()];
    for s in 1..=last {
        let height = s.min(last - s);
        let mut next = Vec::with_capacity(height + 1);
        for k in 0..=height {
            let mut acc = if k >= 1 {
                row.get(k - 1).cloned().unwrap_or_default()
            } else {
                Frac::zero()
            };
            if let Some(level) = row.get(k) {
                if !level.is_zero() {
                    acc = &acc + &(j.need_a(k)? * level);
                }
            }
            if let Some(down) = row.get(k + 1) {
                if !down.is_zero() {
                    acc = &acc + &(j.need_lam(k + 1)? * down);
                }
            }
            next.push(acc);
        }
        out.push(next[0].clone());
        row = next;
    }
    Ok(MomentSeq(out))
}

/// `μ_s = (P^s)_{0,0}` by repeated multiplication of the truncated
/// tridiagonal matrix. An independent route to [`moments_from_jacobi`].
pub fn moments_by_matrix_power(j: &JacobiParams, m: usize) -> MomentSeq {
    if m == 0 {
        return MomentSeq(Vec::new());
    }
    // paths of length m-1 never climb above (m-1)/2
    let size = (m - 1) / 2 + 1;
    let p = j.to_matrix(size);
    let mut power = Matrix::identity(size);
    let mut out = Vec::with_capacity(m);
    for _ in 0..m {
        out.push(power.get(0, 0).clone());
        power = power.mul(&p);
    }
    MomentSeq(out)
}

/// `p_0 = 1`, `p_1 = t - a_0`, `p_n = (t - a_{n-1}) p_{n-1} - λ_{n-1} p_{n-2}`.
pub fn orthopoly_from_jacobi(j: &JacobiParams, n: usize) -> Result<OrthoPoly, MomentError> {
    Ok(orthopolys_from_jacobi(j, n)?.pop().expect("at least p_0"))
}

/// `p_0..=p_n`.
pub fn orthopolys_from_jacobi(j: &JacobiParams, n: usize) -> Result<Vec<OrthoPoly>, MomentError> {
    let mut polys = vec![vec![Frac::one()]];
    for deg in 1..=n {
        let a = j.need_a(deg - 1)?;
        let prev = &polys[deg - 1];
        // t * p_{n-1} - a_{n-1} p_{n-1}
        let mut next = vec![Frac::zero(); deg + 1];
        for (i, c) in prev.iter().enumerate() {
            next[i + 1] = &next[i + 1] + c;
            next[i] = &next[i] - &(a * c);
        }
        if deg >= 2 {
            let lam = j.need_lam(deg - 1)?;
            for (i, c) in polys[deg - 2].iter().enumerate() {
                next[i] = &next[i] - &(lam * c);
            }
        }
        polys.push(next);
    }
    Ok(polys
        .into_iter()
        .map(|coeffs| OrthoPoly { coeffs })
        .collect())
}

/// A finite J-fraction as a rational function `num(t) / den(t)` whose
/// coefficients are themselves fractions in the parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JFraction {
    pub num: Vec<Frac>,
    pub den: Vec<Frac>,
}

impl JFraction {
    /// Depth-`d` truncation: uses `a_0..a_{d-1}` and `λ_1..λ_{d-1}`.
    /// Evaluated bottom-up: if the tail below level `k` is `N/D`, level `k`
    /// is `D / (D (1 - a_k t) - λ_{k+1} t^2 N)`.
    pub fn new(j: &JacobiParams, depth: usize) -> Result<JFraction, MomentError> {
        if depth == 0 {
            return Ok(JFraction {
                num: vec![Frac::one()],
                den: vec![Frac::one()],
            });
        }
        if depth > j.a.len() {
            return Err(MomentError::DepthExceedsParams {
                depth,
                available: j.a.len(),
            });
        }
        let mut num = vec![Frac::one()];
        let mut den = vec![Frac::one(), -&j.a[depth - 1]];
        for k in (0..depth - 1).rev() {
            let linear = [Frac::one(), -&j.a[k]];
            let mut next_den = poly_mul(&den, &linear);
            let lam = &j.lam[k];
            for (i, c) in num.iter().enumerate() {
                if next_den.len() <= i + 2 {
                    next_den.resize(i + 3, Frac::zero());
                }
                next_den[i + 2] = &next_den[i + 2] - &(lam * c);
            }
            num = den;
            den = next_den;
        }
        Ok(JFraction { num, den })
    }

    /// Power series expansion in `t` to `order`.
    pub fn expand(&self, order: usize) -> Result<Series, MomentError> {
        let num = Series::polynomial(&self.num, order);
        let den = Series::polynomial(&self.den, order);
        Ok(num.div(&den)?)
    }
}

fn poly_mul(a: &[Frac], b: &[Frac]) -> Vec<Frac> {
    let mut out = vec![Frac::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (k, y) in b.iter().enumerate() {
            if !x.is_zero() && !y.is_zero() {
                out[i + k] = &out[i + k] + &(x * y);
            }
        }
    }
    out
}

/// Ordinary generating function of the depth-`d` J-fraction, expanded to
/// order `order`. Coefficients `0..=min(order, 2d-1)` are moments.
pub fn jfraction_ogf(j: &JacobiParams, depth: usize, order: usize) -> Result<Series, MomentError> {
    JFraction::new(j, depth)?.expand(order)
}

/// `det(μ_{i+j})_{0<=i,j<=n}` by Bareiss elimination, with the default
/// dimension cap.
pub fn hankel_det(seq: &MomentSeq, n: usize) -> Result<Frac, MomentError> {
    hankel_det_capped(seq, n, DEFAULT_MAX_HANKEL_DIM)
}

pub fn hankel_det_capped(seq: &MomentSeq, n: usize, max_dim: usize) -> Result<Frac, MomentError> {
    if n + 1 > max_dim {
        return Err(MomentError::TooLarge {
            dim: n + 1,
            cap: max_dim,
        });
    }
    if seq.len() < 2 * n + 1 {
        return Err(MomentError::InsufficientValues {
            needed: 2 * n + 1,
            available: seq.len(),
        });
    }
    let h = Matrix::from_fn(n + 1, |i, k| seq.0[i + k].clone());
    Ok(h.det_bareiss())
}

/// `h_n = prod_{k=1}^{n} λ_k^{n+1-k}` (see the module docs).
pub fn hankel_from_jacobi(j: &JacobiParams, n: usize) -> Result<Frac, MomentError> {
    let mut acc = Frac::one();
    for k in 1..=n {
        let lam = j.need_lam(k)?;
        acc = &acc * &lam.pow((n + 1 - k) as u32);
    }
    Ok(acc)
}

/// `b_n = sum_k C(n, k) a_k`.
pub fn binomial_transform(seq: &MomentSeq) -> MomentSeq {
    let mut out = Vec::with_capacity(seq.len());
    for n in 0..seq.len() {
        let mut acc = Frac::zero();
        let mut binom = rat(1);
        for k in 0..=n {
            acc = &acc + &seq.0[k].scale(&binom);
            binom = binom * rat((n - k) as i64) / rat(k as i64 + 1);
        }
        out.push(acc);
    }
    MomentSeq(out)
}

/// Jacobi parameters of the binomial transform: each `a_k` grows by one,
/// the `λ_k` are unchanged.
pub fn jacobi_shift_for_binomial(j: &JacobiParams) -> JacobiParams {
    j.shift_diagonal(&Frac::one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{Poly, Var};

    fn x() -> Frac {
        Frac::var(Var::X)
    }

    fn px(c: &[i64]) -> Frac {
        Frac::from_poly(Poly::from_dense(
            Var::X,
            &c.iter().map(|&k| rat(k)).collect::<Vec<_>>(),
        ))
    }

    fn eulerian(n: usize) -> JacobiParams {
        JacobiParams::from_fn(
            n,
            |k| &Frac::int(k as i64 + 1) + &x().scale(&rat(k as i64)),
            |k| x().scale(&rat((k * k) as i64)),
        )
    }

    fn shifted(n: usize) -> JacobiParams {
        JacobiParams::from_fn(
            n,
            |k| (Frac::one() + x()).scale(&rat(k as i64 + 1)),
            |k| x().scale(&rat((k * (k + 1)) as i64)),
        )
    }

    #[test]
    fn eulerian_moments() {
        let m = moments_from_jacobi(&eulerian(3), 4).unwrap();
        assert_eq!(m.0, vec![px(&[1]), px(&[1]), px(&[1, 1]), px(&[1, 4, 1])]);
    }

    #[test]
    fn shifted_moments() {
        let m = moments_from_jacobi(&shifted(3), 3).unwrap();
        assert_eq!(m.0, vec![px(&[1]), px(&[1, 1]), px(&[1, 4, 1])]);
    }

    #[test]
    fn zero_params_give_delta() {
        let z = JacobiParams::from_fn(4, |_| Frac::zero(), |_| Frac::zero());
        let m = moments_from_jacobi(&z, 5).unwrap();
        assert!(m.0[0].is_one());
        assert!(m.0[1..].iter().all(Frac::is_zero));
    }

    #[test]
    fn moments_need_enough_params() {
        let j = eulerian(1);
        assert!(moments_from_jacobi(&j, 4).is_ok());
        assert!(matches!(
            moments_from_jacobi(&j, 6),
            Err(MomentError::InsufficientParams { .. })
        ));
    }

    #[test]
    fn motzkin_matches_matrix_power() {
        for m in 0..10 {
            assert_eq!(
                moments_from_jacobi(&eulerian(6), m).unwrap(),
                moments_by_matrix_power(&eulerian(6), m)
            );
        }
    }

    #[test]
    fn orthopoly_examples() {
        let q2 = orthopoly_from_jacobi(&eulerian(3), 2).unwrap();
        assert_eq!(q2.coeffs, vec![px(&[2]), px(&[-3, -1]), px(&[1])]);
        let r1 = orthopoly_from_jacobi(&shifted(3), 1).unwrap();
        assert_eq!(r1.coeffs, vec![px(&[-1, -1]), px(&[1])]);
        let p0 = orthopoly_from_jacobi(&eulerian(0), 0).unwrap();
        assert_eq!(p0.coeffs, vec![Frac::one()]);
        assert_eq!(p0.degree(), 0);
    }

    #[test]
    fn jfraction_examples() {
        let s = jfraction_ogf(&eulerian(4), 4, 6).unwrap();
        assert_eq!(
            &s.coeffs()[..5],
            &[
                px(&[1]),
                px(&[1]),
                px(&[1, 1]),
                px(&[1, 4, 1]),
                px(&[1, 11, 11, 1])
            ]
        );
        let s = jfraction_ogf(&shifted(4), 4, 6).unwrap();
        assert_eq!(
            &s.coeffs()[..4],
            &[px(&[1]), px(&[1, 1]), px(&[1, 4, 1]), px(&[1, 11, 11, 1])]
        );
        let geo = JacobiParams::new(vec![Frac::int(3)], vec![]).unwrap();
        let s = jfraction_ogf(&geo, 1, 5).unwrap();
        assert_eq!(s, Series::geometric(&Frac::int(3), 5));
        assert!(matches!(
            jfraction_ogf(&geo, 2, 5),
            Err(MomentError::DepthExceedsParams { .. })
        ));
    }

    #[test]
    fn jfraction_reproduces_moments_to_twice_depth() {
        for depth in 1..=5 {
            let s = jfraction_ogf(&eulerian(6), depth, 12).unwrap();
            let m = moments_from_jacobi(&eulerian(6), 2 * depth).unwrap();
            assert_eq!(&s.coeffs()[..2 * depth], m.values());
        }
    }

    #[test]
    fn hankel_examples() {
        let p = moments_from_jacobi(&eulerian(4), 5).unwrap();
        assert_eq!(hankel_det(&p, 1).unwrap(), x());
        let shifted_seq = p.shifted();
        assert_eq!(hankel_det(&shifted_seq, 1).unwrap(), x().scale(&rat(2)));
        let ones = MomentSeq(vec![Frac::one(); 3]);
        assert!(hankel_det(&ones, 1).unwrap().is_zero());
        assert!(matches!(
            hankel_det(&ones, 2),
            Err(MomentError::InsufficientValues { .. })
        ));
        assert!(matches!(
            hankel_det_capped(&ones, 1, 1),
            Err(MomentError::TooLarge { .. })
        ));
    }

    #[test]
    fn hankel_product_formula() {
        assert_eq!(
            hankel_from_jacobi(&eulerian(3), 2).unwrap(),
            x().pow(3).scale(&rat(4))
        );
        assert_eq!(
            hankel_from_jacobi(&shifted(3), 2).unwrap(),
            x().pow(3).scale(&rat(24))
        );
        assert!(hankel_from_jacobi(&eulerian(0), 0).unwrap().is_one());
        for n in 0..=4 {
            let m = moments_from_jacobi(&eulerian(n), 2 * n + 1).unwrap();
            assert_eq!(
                hankel_det(&m, n).unwrap(),
                hankel_from_jacobi(&eulerian(n), n).unwrap()
            );
        }
    }

    #[test]
    fn binomial_transform_examples() {
        let a = MomentSeq([1, 1, 3, 13, 75].map(Frac::int).to_vec());
        assert_eq!(
            binomial_transform(&a).0,
            [1, 2, 6, 26, 150].map(Frac::int).to_vec()
        );
        let ones = MomentSeq(vec![Frac::one(); 6]);
        assert_eq!(
            binomial_transform(&ones).0,
            [1, 2, 4, 8, 16, 32].map(Frac::int).to_vec()
        );
        let delta = MomentSeq([1, 0, 0, 0].map(Frac::int).to_vec());
        assert_eq!(binomial_transform(&delta), MomentSeq(vec![Frac::one(); 4]));
    }

    #[test]
    fn binomial_shift_examples() {
        let at2 = |j: JacobiParams| {
            JacobiParams::new(
                j.diagonal()
                    .iter()
                    .map(|c| c.eval(Var::X, &rat(2)).unwrap())
                    .collect(),
                j.subdiagonal()
                    .iter()
                    .map(|c| c.eval(Var::X, &rat(2)).unwrap())
                    .collect(),
            )
            .unwrap()
        };
        let shifted_e = jacobi_shift_for_binomial(&at2(eulerian(3)));
        assert_eq!(shifted_e.diagonal(), &[2, 5, 8, 11].map(Frac::int));
        assert_eq!(shifted_e.subdiagonal(), &[2, 8, 18].map(Frac::int));

        let z = JacobiParams::from_fn(4, |_| Frac::zero(), |_| Frac::zero());
        let zs = jacobi_shift_for_binomial(&z);
        assert_eq!(
            moments_from_jacobi(&zs, 6).unwrap(),
            MomentSeq(vec![Frac::one(); 6])
        );

        let s2 = at2(shifted(3));
        assert_eq!(s2.diagonal(), &[3, 6, 9, 12].map(Frac::int));
        assert_eq!(s2.subdiagonal(), &[4, 12, 24].map(Frac::int));
    }

    #[test]
    fn binomial_shift_matches_transform_symbolically() {
        let j = eulerian(5);
        let lhs = moments_from_jacobi(&jacobi_shift_for_binomial(&j), 11).unwrap();
        let rhs = binomial_transform(&moments_from_jacobi(&j, 11).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn length_mismatch_rejected() {
        assert!(JacobiParams::new(vec![Frac::one()], vec![Frac::one()]).is_err());
        assert!(JacobiParams::new(vec![], vec![]).is_err());
    }
}
