//! Browser bindings: three operations returning JSON strings for the page
//! in `www/`. The `*_json` functions are plain Rust so they can be tested
//! natively.

use erarray::eulerian::{triangle_rows, TriangleKind};
use erarray::exactnum::parse_rat;
use erarray::family::{Family, FamilyKind};
use erarray::momentlab::{hankel_det, hankel_from_jacobi, MomentSeq};
use erarray::riordan::{detect_tridiagonal, production_analytic, Tridiagonality};
use erarray::{Frac, Var};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const MAX_ROWS: usize = 30;
const MAX_SIZE: usize = 10;
const MAX_MOMENTS: usize = 16;

fn cap(what: &str, v: usize, max: usize) -> Result<(), String> {
    if v > max {
        Err(format!("{what} is limited to {max} in the demo"))
    } else {
        Ok(())
    }
}

fn family(name: &str, x: &str) -> Result<Family, String> {
    let fam = Family::new(name.parse::<FamilyKind>()?);
    match x.trim() {
        "" | "symbolic" => Ok(fam),
        v => {
            let r = parse_rat(v).map_err(|e| e.to_string())?;
            fam.bind(Var::X, &r).map_err(|e| e.to_string())
        }
    }
}

fn strings(v: &[Frac]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn triangle_json(kind: &str, last_row: usize) -> Result<String, String> {
    cap("last row", last_row, MAX_ROWS)?;
    let kind: TriangleKind = kind.parse()?;
    let rows: Vec<Vec<String>> = triangle_rows(kind, last_row)
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    Ok(json!({ "kind": kind.to_string(), "rows": rows }).to_string())
}

pub fn production_json(name: &str, size: usize, x: &str) -> Result<String, String> {
    cap("size", size, MAX_SIZE)?;
    let fam = family(name, x)?;
    let arr = fam.array(size).map_err(|e| e.to_string())?;
    let p = production_analytic(&arr, size)
        .map_err(|e| e.to_string())?
        .matrix;
    let rows: Vec<Vec<String>> = p.matrix().rows().iter().map(|r| strings(r)).collect();
    let jacobi = match detect_tridiagonal(&p) {
        Tridiagonality::Jacobi(j) => {
            json!({ "a": strings(j.diagonal()), "lambda": strings(j.subdiagonal()) })
        }
        Tridiagonality::NotTridiagonal { .. } => Value::Null,
    };
    Ok(json!({ "family": fam.kind.name(), "rows": rows, "jacobi": jacobi }).to_string())
}

/// Moments `μ_0..μ_n` and the Hankel transform up to `n / 2`, by
/// determinant and by the λ product.
pub fn moments_json(name: &str, n: usize, x: &str) -> Result<String, String> {
    cap("n", n, MAX_MOMENTS)?;
    let fam = family(name, x)?;
    let arr = fam.array(n).map_err(|e| e.to_string())?;
    let mu = MomentSeq(
        arr.expand(n + 1)
            .map_err(|e| e.to_string())?
            .matrix()
            .column(0),
    );
    let j = fam.jacobi(n / 2);
    let mut hankel = Vec::new();
    for k in 0..=n / 2 {
        let det = hankel_det(&mu, k).map_err(|e| e.to_string())?;
        let prod = hankel_from_jacobi(&j, k).map_err(|e| e.to_string())?;
        hankel.push(json!({ "n": k, "value": det.to_string(), "agrees": det == prod }));
    }
    Ok(
        json!({ "family": fam.kind.name(), "moments": strings(mu.values()), "hankel": hankel })
            .to_string(),
    )
}

#[wasm_bindgen]
pub fn triangle(kind: &str, last_row: usize) -> Result<String, JsValue> {
    triangle_json(kind, last_row).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn production(family: &str, size: usize, x: &str) -> Result<String, JsValue> {
    production_json(family, size, x).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn moments(family: &str, n: usize, x: &str) -> Result<String, JsValue> {
    moments_json(family, n, x).map_err(|e| JsValue::from_str(&e))
}
