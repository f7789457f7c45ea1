//! JSON forms. A polynomial is an array of terms
//! `{"c": ["num", "den"], "m": {"x": 2}}`; a fraction is
//! `{"num": [...], "den": [...]}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Frac, Monomial, Poly, Rat, Var};

#[derive(Serialize, Deserialize)]
struct TermRepr {
    c: [String; 2],
    m: BTreeMap<String, u32>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms()
            .map(|(m, c)| TermRepr {
                c: [c.numer().to_string(), c.denom().to_string()],
                m: Var::ALL
                    .iter()
                    .filter(|v| m.exponent(**v) > 0)
                    .map(|v| (v.name().to_string(), m.exponent(*v)))
                    .collect(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Poly, D::Error> {
        let terms = Vec::<TermRepr>::deserialize(d)?;
        let mut out = Vec::with_capacity(terms.len());
        for t in terms {
            let n: BigInt = t.c[0].parse().map_err(D::Error::custom)?;
            let den: BigInt = t.c[1].parse().map_err(D::Error::custom)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            let mut exps = [0u32; 4];
            for (name, e) in t.m {
                let v = Var::from_name(&name)
                    .ok_or_else(|| D::Error::custom(format!("unknown variable {name:?}")))?;
                exps[v.index()] = e;
            }
            out.push((Monomial::from_exponents(exps), Rat::new(n, den)));
        }
        Ok(Poly::from_terms(out))
    }
}

#[derive(Serialize, Deserialize)]
struct FracRepr {
    num: Poly,
    den: Poly,
}

impl Serialize for Frac {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FracRepr {
            num: self.numer().clone(),
            den: self.denom().clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Frac {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Frac, D::Error> {
        let r = FracRepr::deserialize(d)?;
        Frac::new(r.num, r.den).map_err(D::Error::custom)
    }
}
