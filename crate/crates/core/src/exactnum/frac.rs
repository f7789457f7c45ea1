use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{ExactError, Poly, Rat, Var};

/// A ratio of two polynomials.
///
/// Univariate fractions (numerator and denominator in one shared variable,
/// or constant) are kept fully reduced with a monic denominator. Genuinely
/// multivariate fractions are only reduced when the denominator divides the
/// numerator exactly; equality is always decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct Frac {
    num: Poly,
    den: Poly,
}

impl Frac {
    pub fn new(num: Poly, den: Poly) -> Result<Frac, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Frac::normalized(num, den))
    }

    pub fn zero() -> Frac {
        Frac::from_poly(Poly::zero())
    }

    pub fn one() -> Frac {
        Frac::from_poly(Poly::one())
    }

    pub fn int(c: i64) -> Frac {
        Frac::from_poly(Poly::int(c))
    }

    pub fn rat(c: Rat) -> Frac {
        Frac::from_poly(Poly::constant(c))
    }

    pub fn var(v: Var) -> Frac {
        Frac::from_poly(Poly::var(v))
    }

    pub fn from_poly(p: Poly) -> Frac {
        Frac {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        !self.num.is_zero() && self.num == self.den
    }

    /// The polynomial value, if the denominator is a constant.
    pub fn as_poly(&self) -> Option<Poly> {
        if self.den.is_one() {
            return Some(self.num.clone());
        }
        self.den.as_constant().map(|c| self.num.scale(&c.recip()))
    }

    pub fn as_rat(&self) -> Option<Rat> {
        self.as_poly().and_then(|p| p.as_constant())
    }

    pub fn recip(&self) -> Result<Frac, ExactError> {
        Frac::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Rat) -> Frac {
        Frac::normalized(self.num.scale(c), self.den.clone())
    }

    pub fn pow(&self, e: u32) -> Frac {
        Frac::normalized(self.num.pow(e), self.den.pow(e))
    }

    /// Substitutes a rational value for `v`.
    pub fn eval(&self, v: Var, value: &Rat) -> Result<Frac, ExactError> {
        Frac::new(self.num.eval(v, value), self.den.eval(v, value))
    }

    /// Substitutes a polynomial for `v`.
    pub fn subst(&self, v: Var, value: &Poly) -> Result<Frac, ExactError> {
        Frac::new(self.num.subst(v, value), self.den.subst(v, value))
    }

    /// Re-applies canonicalization; idempotent.
    pub fn normalize(&self) -> Frac {
        Frac::normalized(self.num.clone(), self.den.clone())
    }

    fn normalized(num: Poly, den: Poly) -> Frac {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Frac::zero();
        }
        if let Some(c) = den.as_constant() {
            let num = if c.is_one() {
                num
            } else {
                num.scale(&c.recip())
            };
            return Frac {
                num,
                den: Poly::one(),
            };
        }
        let shared = match (num.univariate_var(), den.univariate_var()) {
            (Ok(None), Ok(Some(_))) => true,
            (Ok(Some(a)), Ok(Some(b))) => a == b,
            _ => false,
        };
        if shared {
            let g = Poly::gcd_univar(&num, &den).expect("univariate operands");
            let (num, den) = if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
            };
            return Frac::monic_den(num, den);
        }
        if let Some(q) = num.div_exact(&den) {
            return Frac::from_poly(q);
        }
        Frac::monic_den(num, den)
    }

    fn monic_den(num: Poly, den: Poly) -> Frac {
        let lc = den.leading_coeff().cloned().unwrap_or_else(Rat::one);
        if lc.is_one() {
            return Frac { num, den };
        }
        let inv = lc.recip();
        let num = num.scale(&inv);
        let den = den.scale(&inv);
        if den.is_one() {
            Frac::from_poly(num)
        } else {
            Frac { num, den }
        }
    }

    pub fn checked_div(&self, rhs: &Frac) -> Result<Frac, ExactError> {
        if rhs.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Frac::normalized(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    fn add_signed(&self, rhs: &Frac, negate: bool) -> Frac {
        let rnum = if negate { -&rhs.num } else { rhs.num.clone() };
        if self.den == rhs.den {
            return Frac::normalized(&self.num + &rnum, self.den.clone());
        }
        if self.den.is_one() {
            return Frac::normalized(&(&self.num * &rhs.den) + &rnum, rhs.den.clone());
        }
        if rhs.den.is_one() {
            return Frac::normalized(&self.num + &(&rnum * &self.den), self.den.clone());
        }
        if let Some(q) = self.den.div_exact(&rhs.den) {
            return Frac::normalized(&self.num + &(&rnum * &q), self.den.clone());
        }
        if let Some(q) = rhs.den.div_exact(&self.den) {
            return Frac::normalized(&(&self.num * &q) + &rnum, rhs.den.clone());
        }
        Frac::normalized(
            &(&self.num * &rhs.den) + &(&rnum * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl PartialEq for Frac {
    fn eq(&self, other: &Frac) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for Frac {}

impl Default for Frac {
    fn default() -> Frac {
        Frac::zero()
    }
}

impl Add<&Frac> for &Frac {
    type Output = Frac;
    fn add(self, rhs: &Frac) -> Frac {
        self.add_signed(rhs, false)
    }
}

impl Sub<&Frac> for &Frac {
    type Output = Frac;
    fn sub(self, rhs: &Frac) -> Frac {
        self.add_signed(rhs, true)
    }
}

impl Mul<&Frac> for &Frac {
    type Output = Frac;
    fn mul(self, rhs: &Frac) -> Frac {
        if self.is_zero() || rhs.is_zero() {
            return Frac::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Frac::from_poly(&self.num * &rhs.num);
        }
        Frac::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on division by zero; use [`Frac::checked_div`] to handle it.
impl Div<&Frac> for &Frac {
    type Output = Frac;
    fn div(self, rhs: &Frac) -> Frac {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        Frac {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for Frac {
    type Output = Frac;
    fn neg(self) -> Frac {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Frac> for Frac {
            type Output = Frac;
            fn $method(self, rhs: Frac) -> Frac { (&self).$method(&rhs) }
        }
        impl $tr<&Frac> for Frac {
            type Output = Frac;
            fn $method(self, rhs: &Frac) -> Frac { (&self).$method(rhs) }
        }
        impl $tr<Frac> for &Frac {
            type Output = Frac;
            fn $method(self, rhs: Frac) -> Frac { self.$method(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl From<Poly> for Frac {
    fn from(p: Poly) -> Frac {
        Frac::from_poly(p)
    }
}

impl From<Rat> for Frac {
    fn from(c: Rat) -> Frac {
        Frac::rat(c)
    }
}

impl From<i64> for Frac {
    fn from(c: i64) -> Frac {
        Frac::int(c)
    }
}

impl From<Var> for Frac {
    fn from(v: Var) -> Frac {
        Frac::var(v)
    }
}

impl Zero for Frac {
    fn zero() -> Frac {
        Frac::zero()
    }
    fn is_zero(&self) -> bool {
        Frac::is_zero(self)
    }
}

impl One for Frac {
    fn one() -> Frac {
        Frac::one()
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let wrap = |p: &Poly| {
            if p.num_terms() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}
