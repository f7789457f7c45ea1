//! Sparse polynomials over the rationals in the fixed variables `x, α, β, t`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{ExactError, Rat};

/// The closed variable universe. The declaration order is the
/// lexicographic tie-break order used by [`Monomial`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Alpha,
    Beta,
    T,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X, Var::Alpha, Var::Beta, Var::T];

    pub fn index(self) -> usize {
        self as usize
    }

    /// ASCII name used in JSON.
    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Alpha => "alpha",
            Var::Beta => "beta",
            Var::T => "t",
        }
    }

    /// Name used for human-readable output.
    pub fn symbol(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Alpha => "α",
            Var::Beta => "β",
            Var::T => "t",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        match name {
            "x" => Some(Var::X),
            "alpha" | "α" => Some(Var::Alpha),
            "beta" | "β" => Some(Var::Beta),
            "t" => Some(Var::T),
            _ => None,
        }
    }
}

/// Exponent vector indexed by [`Var::index`].
///
/// Ordered graded-lexicographically: total degree first, then exponents
/// compared in variable order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial([u32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn var(v: Var) -> Monomial {
        let mut e = [0; 4];
        e[v.index()] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: [u32; 4]) -> Monomial {
        Monomial(exps)
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn exponents(&self) -> [u32; 4] {
        self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; 4]
    }

    /// Product of monomials. Exponent overflow is a hard error.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = [0; 4];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.0[i]
                .checked_add(other.0[i])
                .expect("monomial exponent overflow");
        }
        Monomial(e)
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut e = [0; 4];
        for (i, slot) in e.iter_mut().enumerate() {
            *slot = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Monomial(e))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with rational coefficients. Zero coefficients are never
/// stored, so structural equality is mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Poly {
        let mut p = Poly::zero();
        p.add_term(Monomial::ONE, c);
        p
    }

    pub fn int(c: i64) -> Poly {
        Poly::constant(Rat::from_integer(c.into()))
    }

    pub fn var(v: Var) -> Poly {
        let mut p = Poly::zero();
        p.add_term(Monomial::var(v), Rat::one());
        p
    }

    pub fn monomial(m: Monomial, c: Rat) -> Poly {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, merging
    /// repeated monomials.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(terms: I) -> Poly {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Dense univariate constructor: `coeffs[i]` multiplies `v^i`.
    pub fn from_dense(v: Var, coeffs: &[Rat]) -> Poly {
        let mut p = Poly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            let mut e = [0; 4];
            e[v.index()] = u32::try_from(i).expect("degree exceeds u32");
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.terms.len() {
            0 => Some(Rat::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Largest term in the graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exponent(v)).max()
    }

    /// Variables with a nonzero exponent in some term.
    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|v| self.terms.keys().any(|m| m.exponent(*v) > 0))
            .collect()
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitutes `v := value`.
    pub fn subst(&self, v: Var, value: &Poly) -> Poly {
        let mut powers: Vec<Poly> = vec![Poly::one()];
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = m.0;
            rest[v.index()] = 0;
            let term = Poly::monomial(Monomial(rest), c.clone());
            out = &out + &(&term * &powers[e]);
        }
        out
    }

    /// Substitutes a rational value for `v`.
    pub fn eval(&self, v: Var, value: &Rat) -> Poly {
        self.subst(v, &Poly::constant(value.clone()))
    }

    /// Evaluates at a full assignment of all variables; unassigned variables
    /// default to zero.
    pub fn eval_all(&self, values: &[(Var, Rat)]) -> Rat {
        let mut p = self.clone();
        for (v, r) in values {
            p = p.eval(*v, r);
        }
        for v in Var::ALL {
            p = p.eval(v, &Rat::zero());
        }
        p.as_constant().expect("all variables substituted")
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder. Uses leading-term division in the graded-lex order, which
    /// is exact whenever the divisor really divides.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc) = (*lm, lc.clone());
        if let Some(c) = divisor.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.checked_div(&lm)?;
            let qc = rc / &lc;
            let step = Poly::monomial(qm, qc.clone());
            rem = &rem - &(&step * divisor);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// The single variable this polynomial uses, `Ok(None)` for constants.
    pub fn univariate_var(&self) -> Result<Option<Var>, ExactError> {
        match self.variables().as_slice() {
            [] => Ok(None),
            [v] => Ok(Some(*v)),
            _ => Err(ExactError::MultivariateInput),
        }
    }

    /// Dense coefficient vector in `v`, lowest degree first. Only meaningful
    /// for polynomials that use no other variable.
    fn to_dense(&self, v: Var) -> Vec<Rat> {
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut out = vec![Rat::zero(); deg + 1];
        for (m, c) in &self.terms {
            out[m.exponent(v) as usize] = c.clone();
        }
        out
    }

    /// Monic copy (leading coefficient 1); zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            Some(lc) => self.scale(&lc.recip()),
            None => Poly::zero(),
        }
    }

    /// Greatest common divisor of two univariate polynomials in the same
    /// variable, normalized to be monic. `gcd(0, 0) = 0`.
    pub fn gcd_univar(a: &Poly, b: &Poly) -> Result<Poly, ExactError> {
        let va = a.univariate_var()?;
        let vb = b.univariate_var()?;
        let v = match (va, vb) {
            (Some(p), Some(q)) if p != q => return Err(ExactError::MultivariateInput),
            (Some(p), _) | (_, Some(p)) => p,
            (None, None) => {
                return Ok(if a.is_zero() && b.is_zero() {
                    Poly::zero()
                } else {
                    Poly::one()
                })
            }
        };
        let mut r0 = trim(a.to_dense(v));
        let mut r1 = trim(b.to_dense(v));
        while !r1.is_empty() {
            let r = dense_rem(&r0, &r1);
            r0 = r1;
            r1 = r;
        }
        Ok(Poly::from_dense(v, &r0).monic())
    }

    /// Polynomial division with remainder in the single variable `v`.
    pub fn div_rem_univar(&self, divisor: &Poly) -> Result<(Poly, Poly), ExactError> {
        if divisor.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let v = match (self.univariate_var()?, divisor.univariate_var()?) {
            (Some(p), Some(q)) if p != q => return Err(ExactError::MultivariateInput),
            (Some(p), _) | (_, Some(p)) => p,
            (None, None) => {
                let c = divisor.as_constant().unwrap();
                return Ok((self.scale(&c.recip()), Poly::zero()));
            }
        };
        let (q, r) = dense_div_rem(&trim(self.to_dense(v)), &trim(divisor.to_dense(v)));
        Ok((Poly::from_dense(v, &q), Poly::from_dense(v, &r)))
    }
}

fn trim(mut v: Vec<Rat>) -> Vec<Rat> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn dense_div_rem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = a.to_vec();
    if a.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b.last().unwrap().clone();
    let mut quot = vec![Rat::zero(); a.len() - b.len() + 1];
    for shift in (0..quot.len()).rev() {
        let c = &rem[shift + b.len() - 1] / &lead;
        if !c.is_zero() {
            for (i, bi) in b.iter().enumerate() {
                rem[shift + i] -= &c * bi;
            }
        }
        quot[shift] = c;
    }
    (trim(quot), trim(rem))
}

fn dense_rem(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    dense_div_rem(a, b).1
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly { (&self).$method(&rhs) }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly { (&self).$method(rhs) }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly { self.$method(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl From<Rat> for Poly {
    fn from(c: Rat) -> Poly {
        Poly::constant(c)
    }
}

impl From<i64> for Poly {
    fn from(c: i64) -> Poly {
        Poly::int(c)
    }
}

impl From<Var> for Poly {
    fn from(v: Var) -> Poly {
        Poly::var(v)
    }
}

fn fmt_monomial(m: &Monomial) -> String {
    Var::ALL
        .iter()
        .filter(|v| m.exponent(**v) > 0)
        .map(|v| match m.exponent(*v) {
            1 => v.symbol().to_string(),
            e => format!("{}^{}", v.symbol(), e),
        })
        .collect::<Vec<_>>()
        .join("*")
}

/// Ascending order, e.g. `1 + 4*x + x^2`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if negative { '-' } else { '+' })?;
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", fmt_monomial(m))?;
            } else {
                write!(f, "{}*{}", mag, fmt_monomial(m))?;
            }
        }
        Ok(())
    }
}
