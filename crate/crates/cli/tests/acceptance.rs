//! Acceptance criteria 1-12. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails. All comparisons are exact.

use std::process::Command;
use std::time::Instant;

use erarray::eulerian::{
    self, degenerate_array, race_sequences, triangle_by_recurrence, triangle_rows,
    DegenerateVariant, TriangleKind,
};
use erarray::family::{Family, FamilyKind};
use erarray::momentlab::{
    binomial_transform, hankel_det, hankel_from_jacobi, jfraction_ogf, moments_from_jacobi,
    JacobiParams,
};
use erarray::riordan::{
    detect_tridiagonal, production_analytic, production_numeric, Tridiagonality,
};
use erarray::{Frac, Poly, Rat, Series, Var};
use num_bigint::BigInt;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn r(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

fn x() -> Frac {
    Frac::var(Var::X)
}

fn int(v: i64) -> Frac {
    Frac::int(v)
}

fn poly_x(c: &[i64]) -> Frac {
    Frac::from_poly(Poly::from_dense(
        Var::X,
        &c.iter().map(|&v| r(v)).collect::<Vec<_>>(),
    ))
}

/// Eulerian numbers by their own recurrence, row `n` has `n + 1` entries
/// with `E(n, n) = 0` for `n >= 1`.
fn eulerian_numbers(last: usize) -> Vec<Vec<i64>> {
    let mut rows = vec![vec![1i64]];
    for n in 1..=last {
        let prev = &rows[n - 1];
        let row: Vec<i64> = (0..=n)
            .map(|k| {
                let keep = prev.get(k).map_or(0, |v| (k as i64 + 1) * v);
                let up = if k >= 1 {
                    prev.get(k - 1).map_or(0, |v| (n - k) as i64 * v)
                } else {
                    0
                };
                keep + up
            })
            .collect();
        rows.push(row);
    }
    rows
}

fn p_oracle(n: usize) -> Frac {
    poly_x(&eulerian_numbers(n)[n])
}

fn eulerian_j(n: usize) -> JacobiParams {
    JacobiParams::from_fn(
        n,
        |k| &int(k as i64 + 1) + &(&int(k as i64) * &x()),
        |k| &int((k * k) as i64) * &x(),
    )
}

fn shifted_j(n: usize) -> JacobiParams {
    JacobiParams::from_fn(
        n,
        |k| &int(k as i64 + 1) * &(&Frac::one() + &x()),
        |k| &int((k * (k + 1)) as i64) * &x(),
    )
}

fn to_big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

fn c1_triangles() -> Outcome {
    let w: &[&[i64]] = &[
        &[1],
        &[1, 0],
        &[1, 1, 0],
        &[1, 4, 1, 0],
        &[1, 11, 11, 1, 0],
        &[1, 26, 66, 26, 1, 0],
    ];
    let a: &[&[i64]] = &[
        &[1],
        &[0, 1],
        &[0, 1, 1],
        &[0, 1, 4, 1],
        &[0, 1, 11, 11, 1],
        &[0, 1, 26, 66, 26, 1],
    ];
    let at: &[&[i64]] = &[
        &[1],
        &[1, 1],
        &[1, 4, 1],
        &[1, 11, 11, 1],
        &[1, 26, 66, 26, 1],
        &[1, 57, 302, 302, 57, 1],
    ];
    for (kind, display) in [
        (TriangleKind::W, w),
        (TriangleKind::A, a),
        (TriangleKind::Atilde, at),
    ] {
        ensure(triangle_rows(kind, 5) == to_big(display), || {
            format!("{kind} rows 0-5")
        })?;
        ensure(
            triangle_rows(kind, 12) == triangle_by_recurrence(kind, 12),
            || format!("{kind} closed form vs recurrence"),
        )?;
    }
    let oracle = eulerian_numbers(12);
    let w12 = triangle_rows(TriangleKind::W, 12);
    for n in 0..=12 {
        for k in 0..=n {
            ensure(w12[n][k] == BigInt::from(oracle[n][k]), || {
                format!("W({n},{k})")
            })?;
        }
    }
    Ok(())
}

fn four_way(kind: FamilyKind, j: JacobiParams, offset: usize, egf: &Series) -> Outcome {
    let expected: Vec<Frac> = (offset..offset + 10 - offset).map(p_oracle).collect();
    let count = expected.len();
    let arr = Family::new(kind).array(count).map_err(|e| e.to_string())?;
    let col = arr
        .expand(count)
        .map_err(|e| e.to_string())?
        .matrix()
        .column(0);
    ensure(col == expected, || "first column".into())?;
    let egf_vals: Vec<Frac> = (offset..offset + count).map(|n| egf.egf_coeff(n)).collect();
    ensure(egf_vals == expected, || "EGF".into())?;
    let mu = moments_from_jacobi(&j, count).map_err(|e| e.to_string())?;
    ensure(mu.values() == expected.as_slice(), || {
        "Motzkin moments".into()
    })?;
    let cf = jfraction_ogf(&j, 6, count - 1).map_err(|e| e.to_string())?;
    ensure(cf.coeffs() == expected.as_slice(), || "J-fraction".into())
}

fn c2_eulerian_moments() -> Outcome {
    four_way(
        FamilyKind::Eulerian,
        eulerian_j(9),
        0,
        &eulerian::eulerian_egf(10),
    )
}

fn c3_shifted_moments() -> Outcome {
    four_way(
        FamilyKind::Shifted,
        shifted_j(9),
        1,
        &eulerian::eulerian_egf(10),
    )
}

fn c4_production() -> Outcome {
    for kind in [FamilyKind::Eulerian, FamilyKind::Shifted] {
        let arr = Family::symbolic(kind)
            .array(11)
            .map_err(|e| e.to_string())?;
        let analytic = production_analytic(&arr, 10)
            .map_err(|e| e.to_string())?
            .matrix;
        let l = arr.expand(11).map_err(|e| e.to_string())?;
        let numeric = production_numeric(&l).map_err(|e| e.to_string())?;
        ensure(analytic.matrix() == numeric.matrix(), || {
            format!("{kind}: analytic != numeric")
        })?;

        let arr = Family::new(kind).array(6).map_err(|e| e.to_string())?;
        let p = production_analytic(&arr, 6)
            .map_err(|e| e.to_string())?
            .matrix;
        let j = if kind == FamilyKind::Eulerian {
            eulerian_j(5)
        } else {
            shifted_j(5)
        };
        for row in 0..6 {
            for col in 0..6 {
                let want = if row == col {
                    j.a(row).unwrap().clone()
                } else if col == row + 1 {
                    Frac::one()
                } else if row == col + 1 {
                    j.lam(row).unwrap().clone()
                } else {
                    Frac::zero()
                };
                ensure(p.get(row, col) == &want, || {
                    format!("{kind} P({row},{col})")
                })?;
            }
        }
        let Tridiagonality::Jacobi(_) = detect_tridiagonal(&p) else {
            return Err(format!("{kind}: not tridiagonal"));
        };
    }
    // spot checks straight from the displays
    let e = production_analytic(&Family::new(FamilyKind::Eulerian).array(4).unwrap(), 4)
        .unwrap()
        .matrix;
    ensure(
        e.get(2, 1) == &poly_x(&[0, 4]) && e.get(3, 3) == &poly_x(&[4, 3]),
        || "eulerian display".into(),
    )?;
    let s = production_analytic(&Family::new(FamilyKind::Shifted).array(3).unwrap(), 3)
        .unwrap()
        .matrix;
    ensure(
        s.get(1, 0) == &poly_x(&[0, 2]) && s.get(1, 1) == &poly_x(&[2, 2]),
        || "shifted display".into(),
    )
}

/// `p_n = (t - a_{n-1}) p_{n-1} - λ_{n-1} p_{n-2}`, coefficient vectors.
fn recurrence_rows(j: &JacobiParams, last: usize) -> Vec<Vec<Frac>> {
    let mut rows: Vec<Vec<Frac>> = vec![vec![Frac::one()]];
    for n in 1..=last {
        let prev = &rows[n - 1];
        let a = j.a(n - 1).unwrap();
        let mut next = vec![Frac::zero(); n + 1];
        for (i, c) in prev.iter().enumerate() {
            next[i + 1] = &next[i + 1] + c;
            next[i] = &next[i] - &(a * c);
        }
        if n >= 2 {
            let lam = j.lam(n - 1).unwrap();
            for (i, c) in rows[n - 2].iter().enumerate() {
                next[i] = &next[i] - &(lam * c);
            }
        }
        rows.push(next);
    }
    rows
}

fn c5_orthogonal() -> Outcome {
    for (kind, j) in [
        (FamilyKind::Eulerian, eulerian_j(8)),
        (FamilyKind::Shifted, shifted_j(8)),
    ] {
        let inv = Family::new(kind)
            .array(7)
            .and_then(|a| Ok(a.inverse()?))
            .map_err(|e| e.to_string())?;
        let l = inv.expand(8).map_err(|e| e.to_string())?;
        let rows = recurrence_rows(&j, 7);
        for (n, row) in rows.iter().enumerate() {
            ensure(l.row(n) == row.as_slice(), || {
                format!("{kind} inverse row {n}")
            })?;
        }
    }
    let q = Family::new(FamilyKind::Eulerian)
        .array(3)
        .unwrap()
        .inverse()
        .unwrap()
        .expand(4)
        .unwrap();
    let q_display = [
        vec![int(1)],
        vec![int(-1), int(1)],
        vec![int(2), poly_x(&[-3, -1]), int(1)],
        vec![int(-6), poly_x(&[11, 5, 2]), poly_x(&[-6, -3]), int(1)],
    ];
    for (n, row) in q_display.iter().enumerate() {
        ensure(q.row(n) == row.as_slice(), || format!("Q row {n}"))?;
    }
    let rr = Family::new(FamilyKind::Shifted)
        .array(3)
        .unwrap()
        .inverse()
        .unwrap()
        .expand(4)
        .unwrap();
    let r_display = [
        vec![int(1)],
        vec![poly_x(&[-1, -1]), int(1)],
        vec![poly_x(&[2, 2, 2]), poly_x(&[-3, -3]), int(1)],
        vec![
            poly_x(&[-6, -6, -6, -6]),
            poly_x(&[11, 14, 11]),
            poly_x(&[-6, -6]),
            int(1),
        ],
    ];
    for (n, row) in r_display.iter().enumerate() {
        ensure(rr.row(n) == row.as_slice(), || format!("R row {n}"))?;
    }
    Ok(())
}

fn factorial(n: u64) -> i64 {
    (1..=n as i64).product()
}

fn binom(n: u64, k: u64) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i as i64 + 1))
}

fn c6_hankel() -> Outcome {
    let plain = erarray::momentlab::MomentSeq((0..13).map(p_oracle).collect());
    let shifted = erarray::momentlab::MomentSeq((1..14).map(p_oracle).collect());
    for n in 0..=6u64 {
        let tri = (n * (n + 1) / 2) as u32;
        let mut c1 = Frac::one();
        let mut c2 = Frac::one();
        for k in 1..=n {
            let f = factorial(k);
            c1 = &c1 * &int(f * f);
            c2 = &c2 * &int(binom(k + 2, 2)).pow((n - k) as u32);
        }
        let c1 = &c1 * &x().pow(tri);
        let c2 = &c2 * &(&int(2) * &x()).pow(tri);
        let d1 = hankel_det(&plain, n as usize).map_err(|e| e.to_string())?;
        let d2 = hankel_det(&shifted, n as usize).map_err(|e| e.to_string())?;
        ensure(d1 == c1, || format!("h_{n} of P_n: {d1} != {c1}"))?;
        ensure(d2 == c2, || format!("h_{n} of P_(n+1): {d2} != {c2}"))?;
        ensure(
            hankel_from_jacobi(&eulerian_j(6), n as usize).unwrap() == c1,
            || format!("λ product {n}"),
        )?;
        ensure(
            hankel_from_jacobi(&shifted_j(6), n as usize).unwrap() == c2,
            || format!("shifted λ product {n}"),
        )?;
    }
    Ok(())
}

fn c7_euler() -> Outcome {
    let e = eulerian_numbers(8);
    for n in 0..=8u32 {
        let lhs: Vec<i128> = (0..=12).map(|k| (k as i128 + 1).pow(n)).collect();
        let bin: Vec<i128> = (0..=n as usize + 1)
            .map(|i| {
                let b = binom(n as u64 + 1, i as u64) as i128;
                if i % 2 == 0 {
                    b
                } else {
                    -b
                }
            })
            .collect();
        for m in 0..=12usize {
            let c: i128 = (0..=m)
                .filter(|&i| i < bin.len())
                .map(|i| bin[i] * lhs[m - i])
                .sum();
            let want = e[n as usize].get(m).copied().unwrap_or(0) as i128;
            ensure(c == want, || format!("n = {n}, t^{m}: {c} != {want}"))?;
        }
        ensure(eulerian::euler_identity_check(n as usize, 12), || {
            format!("library check n = {n}")
        })?;
    }
    Ok(())
}

fn c8_ode() -> Outcome {
    let (alpha, beta) = (Frac::var(Var::Alpha), Frac::var(Var::Beta));
    let f = eulerian::general_f(&alpha, &beta, 21).map_err(|e| e.to_string())?;
    let one = Series::constant(Frac::one(), 20);
    let lhs = f.derivative();
    let rhs = (&one + &f.scale(&alpha)).mul(&(&one + &f.scale(&beta)));
    let residual = &lhs - &rhs;
    ensure(residual.order() == 20 && residual.is_zero(), || {
        format!("residual nonzero at t^{:?}", residual.first_nonzero())
    })
}

fn c9_race() -> Outcome {
    let w = eulerian_numbers(7);
    let a: Vec<i64> = w
        .iter()
        .map(|row| row.iter().enumerate().map(|(k, v)| v << k).sum())
        .collect();
    ensure(a == [1, 1, 3, 13, 75, 541, 4683, 47293], || {
        format!("a = {a:?}")
    })?;
    let b: Vec<i64> = (0..8)
        .map(|n| (0..=n).map(|k| binom(n as u64, k as u64) * a[k]).sum())
        .collect();
    ensure(b == [1, 2, 6, 26, 150, 1082, 9366, 94586], || {
        format!("b = {b:?}")
    })?;
    let (la, lb) = race_sequences(8);
    let fr = |v: &[i64]| v.iter().map(|&n| int(n)).collect::<Vec<_>>();
    ensure(
        la.values() == fr(&a).as_slice() && lb.values() == fr(&b).as_slice(),
        || "library race sequences".into(),
    )?;
    ensure(binomial_transform(&la) == lb, || {
        "binomial transform".into()
    })?;

    let a_shift: Vec<i64> = {
        let w8 = eulerian_numbers(8);
        w8[1..]
            .iter()
            .map(|row| row.iter().enumerate().map(|(k, v)| v << k).sum())
            .collect()
    };
    let cfs: [(&str, JacobiParams, Vec<i64>); 3] = [
        (
            "a",
            JacobiParams::from_fn(4, |n| int(3 * n as i64 + 1), |n| int(2 * (n * n) as i64)),
            a.clone(),
        ),
        (
            "shift of a",
            JacobiParams::from_fn(
                4,
                |n| int(3 * (n as i64 + 1)),
                |n| int(2 * (n * (n + 1)) as i64),
            ),
            a_shift,
        ),
        (
            "b",
            JacobiParams::from_fn(4, |n| int(3 * n as i64 + 2), |n| int(2 * (n * n) as i64)),
            b,
        ),
    ];
    for (name, j, want) in cfs {
        let s = jfraction_ogf(&j, 4, 7).map_err(|e| e.to_string())?;
        ensure(s.coeffs() == fr(&want).as_slice(), || {
            format!("continued fraction for {name}")
        })?;
    }
    Ok(())
}

fn c10_degenerate() -> Outcome {
    let alpha = Frac::var(Var::Alpha);
    for variant in [DegenerateVariant::Plain, DegenerateVariant::Shifted] {
        let m = degenerate_array(variant, &alpha, 9).map_err(|e| e.to_string())?;
        for n in 0..=8u64 {
            for k in 0..=n {
                let c = match variant {
                    DegenerateVariant::Plain => binom(n, k),
                    DegenerateVariant::Shifted => binom(n + 1, k + 1),
                };
                let want = &int(c * factorial(n) / factorial(k)) * &alpha.pow((n - k) as u32);
                ensure(m.get(n as usize, k as usize) == &want, || {
                    format!("{variant:?}({n},{k})")
                })?;
            }
        }
    }
    Ok(())
}

fn c11_group_laws() -> Outcome {
    erarray::verify::group_law_check(20, 6, 20_240_601)
}

fn run_verify(perturb: &str) -> Result<(i32, serde_json::Value), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_erarray"))
        .args(["verify", "all", "--perturb", perturb])
        .output()
        .map_err(|e| e.to_string())?;
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), report))
}

fn witness(report: &serde_json::Value, id: &str) -> Option<String> {
    report["checks"]
        .as_array()?
        .iter()
        .find(|c| c["id"] == id && c["status"] == "fail")
        .and_then(|c| c["witness"].as_str().map(str::to_string))
}

fn c12_negative_controls() -> Outcome {
    let clean = Command::new(env!("CARGO_BIN_EXE_erarray"))
        .args(["verify", "all"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(clean.status.code() == Some(0), || {
        "unperturbed run did not pass".into()
    })?;

    // (perturbation, check that must fail, expected witness prefix)
    let mut cases: Vec<(String, String, String)> = (1..=4usize)
        .map(|n| {
            (
                format!("lambda:{n}"),
                "moments/eulerian-four-way".to_string(),
                format!("moment index {}:", 2 * n),
            )
        })
        .collect();
    for (kind, n, k) in [("W", 4, 2), ("A", 7, 0), ("Atilde", 5, 5), ("W", 12, 6)] {
        cases.push((
            format!("triangle:{kind}:{n}:{k}"),
            format!("eulerian/{kind}-closed-form-vs-recurrence"),
            format!("{kind}({n},{k}):"),
        ));
    }
    cases.push((
        "f3".to_string(),
        "ode/logistic-residual-order-20".to_string(),
        "first nonzero residual coefficient at t^2:".to_string(),
    ));

    let results: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = cases
            .iter()
            .map(|(perturb, id, prefix)| {
                s.spawn(move || {
                    let (code, report) = run_verify(perturb)?;
                    ensure(code == 1, || format!("{perturb}: exit {code}"))?;
                    let w = witness(&report, id).unwrap_or_default();
                    ensure(w.starts_with(prefix.as_str()), || {
                        format!("{perturb}: witness {w:?}")
                    })
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("worker panicked"))
            .collect()
    });
    results.into_iter().collect()
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("1 triangle reproduction", c1_triangles),
        ("2 moments of the Eulerian array", c2_eulerian_moments),
        ("3 moments of the shifted array", c3_shifted_moments),
        ("4 production matrices", c4_production),
        ("5 orthogonal polynomials", c5_orthogonal),
        ("6 Hankel transforms", c6_hankel),
        ("7 Euler's identity", c7_euler),
        ("8 logistic ODE", c8_ode),
        ("9 race sequences and continued fractions", c9_race),
        ("10 degenerate arrays", c10_degenerate),
        ("11 group laws", c11_group_laws),
        ("12 negative controls", c12_negative_controls),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS  criterion {name} ({secs:.2}s)"),
            Err(e) => {
                failed += 1;
                println!("FAIL  criterion {name} ({secs:.2}s): {e}");
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
