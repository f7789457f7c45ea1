//! Exact scalars: rationals, sparse polynomials in `x, α, β, t`, and
//! rational functions of those.

mod frac;
mod poly;
mod serde_impl;

pub use frac::Frac;
pub use poly::{Monomial, Poly, Var};

use num_bigint::BigInt;
use thiserror::Error;

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rat = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operation requires univariate polynomials in a single shared variable")]
    MultivariateInput,
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"-3"`, `"2/5"` and similar decimal fractions.
pub fn parse_rat(s: &str) -> Result<Rat, ExactError> {
    let bad = || ExactError::BadRational(s.to_string());
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(bad());
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rat("2").unwrap(), rat(2));
        assert_eq!(parse_rat("-6/4").unwrap(), ratio(-3, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    fn small_poly() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-4i64..=4, 0u32..3), 0..4).prop_map(|terms| {
            Poly::from_terms(
                terms
                    .into_iter()
                    .map(|(c, e)| (Monomial::from_exponents([e, 0, 0, 0]), rat(c))),
            )
        })
    }

    fn small_frac() -> impl Strategy<Value = Frac> {
        (small_poly(), small_poly())
            .prop_filter_map("nonzero denominator", |(n, d)| Frac::new(n, d).ok())
    }

    fn small_bivariate() -> impl Strategy<Value = Poly> {
        prop::collection::vec((-3i64..=3, 0u32..3, 0u32..3), 0..4).prop_map(|terms| {
            Poly::from_terms(
                terms
                    .into_iter()
                    .map(|(c, a, b)| (Monomial::from_exponents([0, a, b, 0]), rat(c))),
            )
        })
    }

    proptest! {
        #[test]
        fn field_axioms(a in small_frac(), b in small_frac(), c in small_frac()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.recip().unwrap(), Frac::one());
            }
        }

        #[test]
        fn normalize_idempotent(a in small_frac(), b in small_frac()) {
            let s = &a + &b;
            let once = s.normalize();
            let twice = once.normalize();
            prop_assert_eq!(once.numer(), twice.numer());
            prop_assert_eq!(once.denom(), twice.denom());
        }

        #[test]
        fn substitution_homomorphism(
            p in small_bivariate(),
            q in small_bivariate(),
            va in -5i64..=5,
            vb in -5i64..=5,
        ) {
            let at = [(Var::Alpha, rat(va)), (Var::Beta, rat(vb))];
            let prod = (&p * &q).eval_all(&at);
            prop_assert_eq!(prod, p.eval_all(&at) * q.eval_all(&at));
            let sum = (&p - &q).eval_all(&at);
            prop_assert_eq!(sum, p.eval_all(&at) - q.eval_all(&at));
        }

        #[test]
        fn multivariate_div_exact_round_trip(p in small_bivariate(), q in small_bivariate()) {
            prop_assume!(!q.is_zero());
            let prod = &p * &q;
            prop_assert_eq!(prod.div_exact(&q), Some(p));
        }
    }
}
