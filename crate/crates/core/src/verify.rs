//! Self-checks over every identity the library implements, grouped into
//! suites. Each check records a witness (the first offending index or
//! entry) when it fails. A [`Perturbation`] can be injected to confirm the
//! checks actually bite.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::egfseries::Series;
use crate::eulerian::{
    self, degenerate_array, degenerate_closed_form, eulerian_hankel_closed_form, eulerian_poly,
    race_sequences, shifted_hankel_closed_form, triangle_by_recurrence, triangle_rows,
    DegenerateVariant, TriangleKind,
};
use crate::exactnum::{rat, Frac, Monomial, Poly, Rat, Var};
use crate::family::{Family, FamilyKind};
use crate::matrix::Matrix;
use crate::momentlab::{
    binomial_transform, hankel_det, hankel_from_jacobi, jacobi_shift_for_binomial, jfraction_ogf,
    moments_by_matrix_power, moments_from_jacobi, orthopolys_from_jacobi, JacobiParams, MomentSeq,
};
use crate::riordan::{
    detect_tridiagonal, production_analytic, production_numeric, ErArray, Tridiagonality,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Riordan,
    Eulerian,
    Moments,
    Hankel,
    Ode,
    Binomial,
}

impl Suite {
    pub const PARTS: [Suite; 6] = [
        Suite::Eulerian,
        Suite::Riordan,
        Suite::Moments,
        Suite::Hankel,
        Suite::Ode,
        Suite::Binomial,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Riordan => "riordan",
            Suite::Eulerian => "eulerian",
            Suite::Moments => "moments",
            Suite::Hankel => "hankel",
            Suite::Ode => "ode",
            Suite::Binomial => "binomial",
        }
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Suite, String> {
        std::iter::once(Suite::All)
            .chain(Suite::PARTS)
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// A deliberate error injected into one input of the checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Perturbation {
    /// Adds 1 to `λ_n` of the Eulerian Jacobi parameters.
    Lambda(usize),
    /// Adds 1 to one entry of the recurrence-generated triangle.
    Triangle(TriangleKind, usize, usize),
    /// Adds 1 to the `t^3` coefficient of the Eulerian `f`.
    FCubic,
}

impl FromStr for Perturbation {
    type Err = String;
    /// `lambda:N`, `triangle:KIND:N:K` or `f3`.
    fn from_str(s: &str) -> Result<Perturbation, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |p: &str| p.parse::<usize>().map_err(|e| format!("{p:?}: {e}"));
        match parts.as_slice() {
            ["lambda", n] => {
                let n = num(n)?;
                if n == 0 {
                    return Err("λ is indexed from 1".into());
                }
                Ok(Perturbation::Lambda(n))
            }
            ["triangle", kind, n, k] => {
                let (n, k) = (num(n)?, num(k)?);
                if k > n {
                    return Err(format!("triangle entry ({n}, {k}) out of range"));
                }
                Ok(Perturbation::Triangle(kind.parse()?, n, k))
            }
            ["f3"] => Ok(Perturbation::FCubic),
            _ => Err(format!(
                "bad perturbation {s:?} (expected lambda:N, triangle:KIND:N:K or f3)"
            )),
        }
    }
}

impl fmt::Display for Perturbation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Perturbation::Lambda(n) => write!(f, "lambda:{n}"),
            Perturbation::Triangle(kind, n, k) => write!(f, "triangle:{kind}:{n}:{k}"),
            Perturbation::FCubic => write!(f, "f3"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    fn new(id: &str, result: Result<(), String>) -> Check {
        match result {
            Ok(()) => Check {
                id: id.to_string(),
                status: Status::Pass,
                witness: None,
            },
            Err(w) => Check {
                id: id.to_string(),
                status: Status::Fail,
                witness: Some(w),
            },
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<String>,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl Report {
    /// 0 when every check passed, 1 otherwise.
    pub fn exit_status(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

pub fn run(suite: Suite, perturbation: Option<Perturbation>) -> Report {
    let parts: Vec<Suite> = match suite {
        Suite::All => Suite::PARTS.to_vec(),
        s => vec![s],
    };
    let ctx = Ctx { perturbation };
    let mut checks = Vec::new();
    for part in parts {
        match part {
            Suite::Eulerian => ctx.eulerian(&mut checks),
            Suite::Riordan => ctx.riordan(&mut checks),
            Suite::Moments => ctx.moments(&mut checks),
            Suite::Hankel => ctx.hankel(&mut checks),
            Suite::Ode => ctx.ode(&mut checks),
            Suite::Binomial => ctx.binomial(&mut checks),
            Suite::All => unreachable!(),
        }
    }
    let passed = checks.iter().all(Check::passed);
    Report {
        suite: suite.name().to_string(),
        perturbation: perturbation.map(|p| p.to_string()),
        checks,
        passed,
    }
}

fn first_mismatch<T: PartialEq>(a: &[T], b: &[T]) -> Option<usize> {
    a.iter()
        .zip(b)
        .position(|(x, y)| x != y)
        .or_else(|| (a.len() != b.len()).then(|| a.len().min(b.len())))
}

fn same_seq<T: PartialEq + fmt::Display>(what: &str, a: &[T], b: &[T]) -> Result<(), String> {
    match first_mismatch(a, b) {
        None => Ok(()),
        Some(i) => Err(format!(
            "{what} index {i}: {} != {}",
            a.get(i).map_or("-".to_string(), ToString::to_string),
            b.get(i).map_or("-".to_string(), ToString::to_string),
        )),
    }
}

fn first_table_mismatch(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Option<(usize, usize)> {
    for (n, (ra, rb)) in a.iter().zip(b).enumerate() {
        if let Some(k) = first_mismatch(ra, rb) {
            return Some((n, k));
        }
    }
    None
}

fn px(c: &[i64]) -> Frac {
    Frac::from_poly(Poly::from_dense(
        Var::X,
        &c.iter().map(|&k| rat(k)).collect::<Vec<_>>(),
    ))
}

const W_DISPLAY: [&[i64]; 6] = [
    &[1],
    &[1, 0],
    &[1, 1, 0],
    &[1, 4, 1, 0],
    &[1, 11, 11, 1, 0],
    &[1, 26, 66, 26, 1, 0],
];
const A_DISPLAY: [&[i64]; 6] = [
    &[1],
    &[0, 1],
    &[0, 1, 1],
    &[0, 1, 4, 1],
    &[0, 1, 11, 11, 1],
    &[0, 1, 26, 66, 26, 1],
];
const ATILDE_DISPLAY: [&[i64]; 6] = [
    &[1],
    &[1, 1],
    &[1, 4, 1],
    &[1, 11, 11, 1],
    &[1, 26, 66, 26, 1],
    &[1, 57, 302, 302, 57, 1],
];

struct Ctx {
    perturbation: Option<Perturbation>,
}

impl Ctx {
    fn triangle_recurrence(&self, kind: TriangleKind, last: usize) -> Vec<Vec<BigInt>> {
        let mut rows = triangle_by_recurrence(kind, last);
        if let Some(Perturbation::Triangle(pk, n, k)) = self.perturbation {
            if pk == kind && n <= last {
                rows[n][k] += 1;
            }
        }
        rows
    }

    fn triangle_range(&self) -> usize {
        match self.perturbation {
            Some(Perturbation::Triangle(_, n, _)) => n.max(12),
            _ => 12,
        }
    }

    fn eulerian_jacobi_x(&self, n: usize) -> JacobiParams {
        let j = Family::new(FamilyKind::Eulerian).jacobi(n);
        self.perturb_lambda(j)
    }

    fn perturb_lambda(&self, j: JacobiParams) -> JacobiParams {
        match self.perturbation {
            Some(Perturbation::Lambda(n)) if n <= j.len() => {
                let bumped = j.lam(n).unwrap() + &Frac::one();
                j.with_lam(n, bumped)
            }
            _ => j,
        }
    }

    fn eulerian_f(&self, order: usize) -> Series {
        let f = eulerian::general_f(&Frac::var(Var::Alpha), &Frac::var(Var::Beta), order)
            .expect("α - β invertible");
        self.perturb_f(f)
    }

    fn perturb_f(&self, f: Series) -> Series {
        if self.perturbation == Some(Perturbation::FCubic) && f.order() >= 3 {
            let mut c = f.coeffs().to_vec();
            c[3] = &c[3] + &Frac::one();
            Series::from_coeffs(c)
        } else {
            f
        }
    }

    fn eulerian(&self, out: &mut Vec<Check>) {
        let last = self.triangle_range();
        for kind in TriangleKind::ALL {
            let closed = triangle_rows(kind, last);
            let rec = self.triangle_recurrence(kind, last);
            out.push(Check::new(
                &format!("eulerian/{kind}-closed-form-vs-recurrence"),
                match first_table_mismatch(&closed, &rec) {
                    None => Ok(()),
                    Some((n, k)) => Err(format!(
                        "{kind}({n},{k}): closed form {} != recurrence {}",
                        closed[n][k], rec[n][k]
                    )),
                },
            ));
        }

        for (kind, display) in [
            (TriangleKind::W, W_DISPLAY),
            (TriangleKind::A, A_DISPLAY),
            (TriangleKind::Atilde, ATILDE_DISPLAY),
        ] {
            let rec = self.triangle_recurrence(kind, 5);
            let expected: Vec<Vec<BigInt>> = display
                .iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect();
            out.push(Check::new(
                &format!("eulerian/{kind}-rows-0-5"),
                match first_table_mismatch(&rec, &expected) {
                    None => Ok(()),
                    Some((n, k)) => Err(format!(
                        "{kind}({n},{k}) = {}, expected {}",
                        rec[n][k], expected[n][k]
                    )),
                },
            ));
        }

        let w = self.triangle_recurrence(TriangleKind::W, last);
        let a = self.triangle_recurrence(TriangleKind::A, last);
        let at = self.triangle_recurrence(TriangleKind::Atilde, last - 1);
        out.push(Check::new("eulerian/A-is-reversed-W", {
            let mut res = Ok(());
            'outer: for n in 0..=last {
                for k in 0..=n {
                    if a[n][k] != w[n][n - k] {
                        res = Err(format!(
                            "A({n},{k}) = {} != W({n},{}) = {}",
                            a[n][k],
                            n - k,
                            w[n][n - k]
                        ));
                        break 'outer;
                    }
                }
            }
            res
        }));
        out.push(Check::new("eulerian/Atilde-is-shifted-A", {
            let mut res = Ok(());
            'outer: for n in 0..last {
                for k in 0..=n {
                    if at[n][k] != a[n + 1][k + 1] || at[n][k] != at[n][n - k] {
                        res = Err(format!("Atilde({n},{k}) = {}", at[n][k]));
                        break 'outer;
                    }
                }
            }
            res
        }));

        out.push(Check::new("eulerian/descending-power-identity", {
            (0..=12usize)
                .find_map(|n| {
                    let desc = Poly::from_terms((0..=n).map(|k| {
                        (
                            Monomial::from_exponents([(n - k) as u32, 0, 0, 0]),
                            Rat::from_integer(a[n][k].clone()),
                        )
                    }));
                    (desc != eulerian_poly(n)).then(|| format!("n = {n}: {desc}"))
                })
                .map_or(Ok(()), Err)
        }));

        out.push(Check::new("eulerian/P_n(1)=n!", {
            let mut fact = rat(1);
            (0..=10usize)
                .find_map(|n| {
                    if n > 0 {
                        fact = &fact * rat(n as i64);
                    }
                    let v = eulerian_poly(n).eval_all(&[(Var::X, rat(1))]);
                    (v != fact).then(|| format!("n = {n}: {v}"))
                })
                .map_or(Ok(()), Err)
        }));

        out.push(Check::new("eulerian/euler-identity", {
            (0..=8usize)
                .find_map(|n| {
                    let (lhs, rhs) = eulerian::euler_identity_sides(n, 12);
                    let prod = lhs.mul(
                        &Series::polynomial(&[Frac::one(), Frac::int(-1)], 12).pow(n as u32 + 1),
                    );
                    let p = Series::polynomial(
                        &(0..=n)
                            .map(|k| Frac::rat(Rat::from_integer(w[n][k].clone())))
                            .collect::<Vec<_>>(),
                        12,
                    );
                    (lhs != rhs || prod != p).then(|| format!("n = {n}"))
                })
                .map_or(Ok(()), Err)
        }));

        out.push(Check::new("eulerian/degenerate-arrays", {
            let alpha = Frac::var(Var::Alpha);
            let mut res = Ok(());
            'outer: for variant in [DegenerateVariant::Plain, DegenerateVariant::Shifted] {
                let m = degenerate_array(variant, &alpha, 9).expect("valid");
                for n in 0..=8 {
                    for k in 0..=n {
                        if m.get(n, k) != &degenerate_closed_form(variant, &alpha, n, k) {
                            res = Err(format!("{variant:?}({n},{k}) = {}", m.get(n, k)));
                            break 'outer;
                        }
                    }
                }
            }
            res
        }));
    }

    fn riordan(&self, out: &mut Vec<Check>) {
        for kind in [FamilyKind::Eulerian, FamilyKind::Shifted] {
            let fam = Family::symbolic(kind);
            let res = (|| -> Result<(), String> {
                let arr = fam.array(11).map_err(|e| e.to_string())?;
                let analytic = production_analytic(&arr, 10)
                    .map_err(|e| e.to_string())?
                    .matrix;
                let numeric = production_numeric(&arr.expand(11).map_err(|e| e.to_string())?)
                    .map_err(|e| e.to_string())?;
                for i in 0..10 {
                    for j in 0..10 {
                        if analytic.get(i, j) != numeric.get(i, j) {
                            return Err(format!(
                                "P({i},{j}): analytic {} != numeric {}",
                                analytic.get(i, j),
                                numeric.get(i, j)
                            ));
                        }
                    }
                }
                let expected = self.perturb_lambda_symbolic(fam.jacobi(9), kind);
                match detect_tridiagonal(&numeric) {
                    Tridiagonality::Jacobi(j) => {
                        same_seq("a", j.diagonal(), expected.diagonal())?;
                        match first_mismatch(j.subdiagonal(), expected.subdiagonal()) {
                            None => Ok(()),
                            Some(i) => Err(format!(
                                "λ_{}: detected {} != closed form {}",
                                i + 1,
                                j.subdiagonal()[i],
                                expected.subdiagonal()[i]
                            )),
                        }
                    }
                    Tridiagonality::NotTridiagonal { row, col } => {
                        Err(format!("not tridiagonal at ({row},{col})"))
                    }
                }
            })();
            out.push(Check::new(
                &format!("riordan/{kind}-production-matrix"),
                res,
            ));
        }

        out.push(Check::new(
            "riordan/group-laws",
            group_law_check(20, 6, 0x5eed),
        ));

        out.push(Check::new("riordan/row-sums", {
            let arr = Family::new(FamilyKind::Eulerian).array(6).expect("valid");
            let rs = arr.row_sums().expect("exp defined");
            let l = arr.expand(7).expect("order 6");
            (0..7)
                .find_map(|n| {
                    let sum = l.row(n).iter().fold(Frac::zero(), |acc, v| &acc + v);
                    (sum != rs.egf_coeff(n)).then(|| format!("row {n}: {sum}"))
                })
                .map_or(Ok(()), Err)
        }));
    }

    /// λ perturbations only touch the Eulerian family.
    fn perturb_lambda_symbolic(&self, j: JacobiParams, kind: FamilyKind) -> JacobiParams {
        if kind == FamilyKind::Eulerian {
            self.perturb_lambda(j)
        } else {
            j
        }
    }

    fn moments(&self, out: &mut Vec<Check>) {
        let extra = match self.perturbation {
            Some(Perturbation::Lambda(n)) => 2 * n + 1,
            _ => 0,
        };
        let count = 10usize.max(extra);
        for (kind, offset) in [
            (FamilyKind::Eulerian, 0usize),
            (FamilyKind::Shifted, 1usize),
        ] {
            let fam = Family::new(kind);
            let res = (|| -> Result<(), String> {
                let expected: Vec<Frac> = (offset..offset + count)
                    .map(|n| Frac::from_poly(eulerian_poly(n)))
                    .collect();
                let arr = fam.array(count).map_err(|e| e.to_string())?;
                let column = arr
                    .expand(count)
                    .map_err(|e| e.to_string())?
                    .matrix()
                    .column(0);
                same_seq("first column", &column, &expected)?;
                let egf = eulerian::eulerian_egf(count + offset);
                let egf_vals: Vec<Frac> =
                    (offset..offset + count).map(|n| egf.egf_coeff(n)).collect();
                same_seq("EGF", &egf_vals, &expected)?;
                let j = if kind == FamilyKind::Eulerian {
                    self.eulerian_jacobi_x(count)
                } else {
                    fam.jacobi(count)
                };
                let motzkin = moments_from_jacobi(&j, count).map_err(|e| e.to_string())?;
                same_seq("moment", motzkin.values(), &expected)?;
                same_seq(
                    "matrix-power moment",
                    moments_by_matrix_power(&j, count).values(),
                    &expected,
                )?;
                let depth = count.div_ceil(2).max(6);
                let cf = jfraction_ogf(&j, depth, count - 1).map_err(|e| e.to_string())?;
                same_seq("J-fraction coefficient", cf.coeffs(), &expected)
            })();
            out.push(Check::new(&format!("moments/{kind}-four-way"), res));
        }

        for kind in [FamilyKind::Eulerian, FamilyKind::Shifted] {
            let fam = Family::new(kind);
            let res = (|| -> Result<(), String> {
                let inv = fam
                    .array(8)
                    .and_then(|a| Ok(a.inverse()?))
                    .map_err(|e| e.to_string())?;
                let l = inv.expand(8).map_err(|e| e.to_string())?;
                let j = if kind == FamilyKind::Eulerian {
                    self.eulerian_jacobi_x(8)
                } else {
                    fam.jacobi(8)
                };
                let polys = orthopolys_from_jacobi(&j, 7).map_err(|e| e.to_string())?;
                for (n, p) in polys.iter().enumerate() {
                    same_seq(&format!("row {n} coefficient"), l.row(n), &p.coeffs)?;
                }
                Ok(())
            })();
            out.push(Check::new(
                &format!("moments/{kind}-orthogonal-polynomials"),
                res,
            ));
        }

        out.push(Check::new("moments/displayed-inverse-rows", {
            let q = Family::new(FamilyKind::Eulerian)
                .array(4)
                .unwrap()
                .inverse()
                .unwrap();
            let r = Family::new(FamilyKind::Shifted)
                .array(4)
                .unwrap()
                .inverse()
                .unwrap();
            let lq = q.expand(4).unwrap();
            let lr = r.expand(4).unwrap();
            same_seq(
                "Q row 3",
                lq.row(3),
                &[px(&[-6]), px(&[11, 5, 2]), px(&[-6, -3]), px(&[1])],
            )
            .and_then(|_| same_seq("Q row 2", lq.row(2), &[px(&[2]), px(&[-3, -1]), px(&[1])]))
            .and_then(|_| {
                same_seq(
                    "R row 3",
                    lr.row(3),
                    &[
                        px(&[-6, -6, -6, -6]),
                        px(&[11, 14, 11]),
                        px(&[-6, -6]),
                        px(&[1]),
                    ],
                )
            })
            .and_then(|_| {
                same_seq(
                    "R row 2",
                    lr.row(2),
                    &[px(&[2, 2, 2]), px(&[-3, -3]), px(&[1])],
                )
            })
        }));
    }

    fn hankel(&self, out: &mut Vec<Check>) {
        let max_n = match self.perturbation {
            Some(Perturbation::Lambda(n)) => n.max(6),
            _ => 6,
        };
        for kind in [FamilyKind::Eulerian, FamilyKind::Shifted] {
            let res = (|| -> Result<(), String> {
                let offset = usize::from(kind == FamilyKind::Shifted);
                let seq = MomentSeq(
                    (offset..offset + 2 * max_n + 1)
                        .map(|n| Frac::from_poly(eulerian_poly(n)))
                        .collect(),
                );
                let j = if kind == FamilyKind::Eulerian {
                    self.eulerian_jacobi_x(max_n)
                } else {
                    Family::new(kind).jacobi(max_n)
                };
                for n in 0..=max_n.min(6) {
                    let det = hankel_det(&seq, n).map_err(|e| e.to_string())?;
                    let closed = Frac::from_poly(if kind == FamilyKind::Eulerian {
                        eulerian_hankel_closed_form(n)
                    } else {
                        shifted_hankel_closed_form(n)
                    });
                    if det != closed {
                        return Err(format!("h_{n}: determinant {det} != closed form {closed}"));
                    }
                }
                for n in 0..=max_n {
                    let route = if n <= 6 { "determinant" } else { "closed form" };
                    let det = if n <= 6 {
                        hankel_det(&seq, n).map_err(|e| e.to_string())?
                    } else {
                        Frac::from_poly(if kind == FamilyKind::Eulerian {
                            eulerian_hankel_closed_form(n)
                        } else {
                            shifted_hankel_closed_form(n)
                        })
                    };
                    let prod = hankel_from_jacobi(&j, n).map_err(|e| e.to_string())?;
                    if det != prod {
                        return Err(format!("h_{n}: {route} {det} != λ-product {prod}"));
                    }
                }
                Ok(())
            })();
            out.push(Check::new(&format!("hankel/{kind}"), res));
        }
    }

    fn ode(&self, out: &mut Vec<Check>) {
        let (alpha, beta) = (Frac::var(Var::Alpha), Frac::var(Var::Beta));
        let f = self.eulerian_f(21);
        let residual = eulerian::ode_residual_of(&f, &alpha, &beta);
        out.push(Check::new(
            "ode/logistic-residual-order-20",
            match residual.first_nonzero() {
                None => Ok(()),
                Some(i) => Err(format!(
                    "first nonzero residual coefficient at t^{i}: {}",
                    residual.coeff(i)
                )),
            },
        ));
        let expanded = eulerian::ode_residual_expanded(&f, &alpha, &beta);
        out.push(Check::new(
            "ode/quadratic-form-residual",
            match expanded.first_nonzero() {
                None => Ok(()),
                Some(i) => Err(format!("first nonzero residual coefficient at t^{i}")),
            },
        ));
    }

    fn binomial(&self, out: &mut Vec<Check>) {
        let (a, b) = race_sequences(8);
        let a_expected: Vec<Frac> = [1, 1, 3, 13, 75, 541, 4683, 47293].map(Frac::int).to_vec();
        let b_expected: Vec<Frac> = [1, 2, 6, 26, 150, 1082, 9366, 94586]
            .map(Frac::int)
            .to_vec();
        out.push(Check::new(
            "binomial/race-values",
            same_seq("a", a.values(), &a_expected)
                .and_then(|_| same_seq("b", b.values(), &b_expected)),
        ));
        out.push(Check::new(
            "binomial/transform-relation",
            same_seq("b", binomial_transform(&a).values(), b.values()),
        ));

        let two = rat(2);
        let at_two = |j: JacobiParams| -> JacobiParams {
            JacobiParams::new(
                j.diagonal()
                    .iter()
                    .map(|c| c.eval(Var::X, &two).unwrap())
                    .collect(),
                j.subdiagonal()
                    .iter()
                    .map(|c| c.eval(Var::X, &two).unwrap())
                    .collect(),
            )
            .expect("same lengths")
        };
        let je = at_two(self.eulerian_jacobi_x(4));
        let js = at_two(Family::new(FamilyKind::Shifted).jacobi(4));
        let cfs = [
            ("a", je.clone(), a.values().to_vec()),
            ("a-shifted", js, {
                let (a9, _) = race_sequences(9);
                a9.values()[1..].to_vec()
            }),
            ("b", jacobi_shift_for_binomial(&je), b.values().to_vec()),
        ];
        for (name, j, expected) in cfs {
            let res = jfraction_ogf(&j, 4, 7)
                .map_err(|e| e.to_string())
                .and_then(|s| same_seq("coefficient", s.coeffs(), &expected));
            out.push(Check::new(
                &format!("binomial/continued-fraction-{name}"),
                res,
            ));
        }

        out.push(Check::new("binomial/jacobi-shift-symbolic", {
            let j = self.eulerian_jacobi_x(6);
            let lhs = moments_from_jacobi(&jacobi_shift_for_binomial(&j), 11);
            let rhs = moments_from_jacobi(&j, 11).map(|m| binomial_transform(&m));
            match (lhs, rhs) {
                (Ok(l), Ok(r)) => same_seq("moment", l.values(), r.values()),
                (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
            }
        }));
    }
}

fn random_poly_x(rng: &mut StdRng) -> Frac {
    let coeffs: Vec<Rat> = (0..3).map(|_| rat(rng.gen_range(-3..=3))).collect();
    Frac::from_poly(Poly::from_dense(Var::X, &coeffs))
}

/// A random monic-ish array: `g_0` and `f_1` are nonzero integers, the
/// remaining coefficients small polynomials in `x`.
pub fn random_array(rng: &mut StdRng, order: usize) -> ErArray {
    let nonzero = |rng: &mut StdRng| {
        let v: i64 = rng.gen_range(1..=3);
        Frac::int(if rng.gen_bool(0.5) { v } else { -v })
    };
    let mut g = vec![nonzero(rng)];
    let mut f = vec![Frac::zero(), nonzero(rng)];
    g.extend((1..=order).map(|_| random_poly_x(rng)));
    f.extend((2..=order).map(|_| random_poly_x(rng)));
    ErArray::new(Series::from_coeffs(g), Series::from_coeffs(f)).expect("valid by construction")
}

/// Expansion homomorphism and two-sided inverse on `count` random pairs.
pub fn group_law_check(count: usize, size: usize, seed: u64) -> Result<(), String> {
    let mut rng = StdRng::seed_from_u64(seed);
    let order = size - 1;
    for trial in 0..count {
        let a = random_array(&mut rng, order);
        let b = random_array(&mut rng, order);
        let ea = a.expand(size).map_err(|e| e.to_string())?;
        let eb = b.expand(size).map_err(|e| e.to_string())?;
        let prod = a.multiply(&b).map_err(|e| e.to_string())?;
        if prod.expand(size).map_err(|e| e.to_string())?.matrix() != &ea.matrix().mul(eb.matrix()) {
            return Err(format!("trial {trial}: expansion is not multiplicative"));
        }
        let inv = a.inverse().map_err(|e| e.to_string())?;
        let ei = inv.expand(size).map_err(|e| e.to_string())?;
        let id = Matrix::identity(size);
        if ea.matrix().mul(ei.matrix()) != id || ei.matrix().mul(ea.matrix()) != id {
            return Err(format!("trial {trial}: inverse is not two-sided"));
        }
    }
    Ok(())
}
