//! Named arrays with their parameter bindings.

use std::fmt;
use std::str::FromStr;

use crate::eulerian::{
    degenerate_er_array, eulerian_array, eulerian_jacobi, shifted_array, shifted_jacobi,
    DegenerateVariant, EulerianError,
};
use crate::exactnum::{ExactError, Frac, Rat, Var};
use crate::momentlab::JacobiParams;
use crate::riordan::ErArray;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    Eulerian,
    Shifted,
    DegeneratePlain,
    DegenerateShifted,
    Binomial,
    LaguerreLike,
}

impl FamilyKind {
    pub const ALL: [FamilyKind; 6] = [
        FamilyKind::Eulerian,
        FamilyKind::Shifted,
        FamilyKind::DegeneratePlain,
        FamilyKind::DegenerateShifted,
        FamilyKind::Binomial,
        FamilyKind::LaguerreLike,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyKind::Eulerian => "eulerian",
            FamilyKind::Shifted => "shifted",
            FamilyKind::DegeneratePlain => "degenerate-plain",
            FamilyKind::DegenerateShifted => "degenerate-shifted",
            FamilyKind::Binomial => "binomial",
            FamilyKind::LaguerreLike => "laguerre-like",
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyKind {
    type Err = String;
    fn from_str(s: &str) -> Result<FamilyKind, String> {
        FamilyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown family {s:?}"))
    }
}

/// A family together with values (or symbols) for `α` and `β`.
///
/// Defaults: the Eulerian families use `α = 1`, `β = x`; the degenerate
/// families keep `α` symbolic; `binomial` is `[e^t, t]` and `laguerre-like`
/// is `[1/(1-t), t/(1-t)]`, both parameter free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub kind: FamilyKind,
    pub alpha: Frac,
    pub beta: Frac,
}

impl Family {
    pub fn new(kind: FamilyKind) -> Family {
        let (alpha, beta) = match kind {
            FamilyKind::Eulerian | FamilyKind::Shifted => (Frac::one(), Frac::var(Var::X)),
            FamilyKind::DegeneratePlain | FamilyKind::DegenerateShifted => {
                (Frac::var(Var::Alpha), Frac::var(Var::Alpha))
            }
            FamilyKind::Binomial | FamilyKind::LaguerreLike => (Frac::one(), Frac::one()),
        };
        Family { kind, alpha, beta }
    }

    /// Fully symbolic `α, β` (degenerate families: `β = α`).
    pub fn symbolic(kind: FamilyKind) -> Family {
        let mut fam = Family::new(kind);
        if matches!(kind, FamilyKind::Eulerian | FamilyKind::Shifted) {
            fam.alpha = Frac::var(Var::Alpha);
            fam.beta = Frac::var(Var::Beta);
        }
        fam
    }

    pub fn with_params(mut self, alpha: Frac, beta: Frac) -> Family {
        self.alpha = alpha;
        self.beta = beta;
        self
    }

    /// Substitutes `v := value` into the parameters.
    pub fn bind(mut self, v: Var, value: &Rat) -> Result<Family, ExactError> {
        self.alpha = self.alpha.eval(v, value)?;
        self.beta = self.beta.eval(v, value)?;
        Ok(self)
    }

    pub fn array(&self, order: usize) -> Result<ErArray, EulerianError> {
        match self.kind {
            FamilyKind::Eulerian => eulerian_array(&self.alpha, &self.beta, order),
            FamilyKind::Shifted => shifted_array(&self.alpha, &self.beta, order),
            FamilyKind::DegeneratePlain => {
                degenerate_er_array(DegenerateVariant::Plain, &self.alpha, order)
            }
            FamilyKind::DegenerateShifted => {
                degenerate_er_array(DegenerateVariant::Shifted, &self.alpha, order)
            }
            FamilyKind::Binomial => Ok(crate::riordan::binomial_array(order)),
            FamilyKind::LaguerreLike => {
                degenerate_er_array(DegenerateVariant::Plain, &Frac::one(), order)
            }
        }
    }

    /// Closed-form Jacobi parameters `a_0..=a_n`, `λ_1..=λ_n`.
    pub fn jacobi(&self, n: usize) -> JacobiParams {
        match self.kind {
            FamilyKind::Eulerian => eulerian_jacobi(&self.alpha, &self.beta, n),
            FamilyKind::Shifted => shifted_jacobi(&self.alpha, &self.beta, n),
            FamilyKind::DegeneratePlain => eulerian_jacobi(&self.alpha, &self.alpha, n),
            FamilyKind::DegenerateShifted => shifted_jacobi(&self.alpha, &self.alpha, n),
            FamilyKind::Binomial => JacobiParams::from_fn(n, |_| Frac::one(), |_| Frac::zero()),
            FamilyKind::LaguerreLike => eulerian_jacobi(&Frac::one(), &Frac::one(), n),
        }
    }
}
