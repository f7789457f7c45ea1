//! `erarray`: generate and check Eulerian triangles, production matrices,
//! moment sequences, Hankel transforms and continued fractions.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on usage
//! errors (including exceeded size caps).

mod caps;
mod render;

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use erarray::eulerian::{triangle_rows, TriangleKind};
use erarray::exactnum::parse_rat;
use erarray::family::{Family, FamilyKind};
use erarray::momentlab::{hankel_det_capped, hankel_from_jacobi, jfraction_ogf, MomentSeq};
use erarray::riordan::production_analytic;
use erarray::verify::{self, Perturbation, Suite};
use erarray::{Frac, Matrix, Rat, Var};

use caps::Caps;

#[derive(Parser, Debug)]
#[command(
    name = "erarray",
    version,
    about = "Exact exponential Riordan arrays and Eulerian moments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

/// `symbolic` or a rational such as `2`, `-1/3`.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Binding {
    Symbolic,
    Value(Rat),
}

impl FromStr for Binding {
    type Err = String;
    fn from_str(s: &str) -> Result<Binding, String> {
        if s == "symbolic" {
            Ok(Binding::Symbolic)
        } else {
            parse_rat(s).map(Binding::Value).map_err(|e| e.to_string())
        }
    }
}

#[derive(clap::Args, Debug, Clone)]
struct Params {
    /// Value of x: a rational or `symbolic` (the default)
    #[arg(long)]
    x: Option<Binding>,
    /// Override α: a rational or `symbolic`
    #[arg(long)]
    alpha: Option<Binding>,
    /// Override β: a rational or `symbolic`
    #[arg(long)]
    beta: Option<Binding>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rows 0..=N of an Eulerian triangle (W, A or Atilde)
    Triangle {
        kind: TriangleKind,
        /// Index of the last row printed
        #[arg(long)]
        rows: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Leading N×N block of a family's production matrix
    Prodmat {
        family: FamilyKind,
        #[arg(long)]
        size: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[command(flatten)]
        params: Params,
    },
    /// Leading N×N block of a family's array, or of its inverse
    Array {
        family: FamilyKind,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        inverse: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[command(flatten)]
        params: Params,
    },
    /// Moments μ_0..μ_N (first column of the array)
    Moments {
        family: FamilyKind,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[command(flatten)]
        params: Params,
    },
    /// Hankel transform h_0..h_N by determinant and by the λ product
    Hankel {
        family: FamilyKind,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[command(flatten)]
        params: Params,
    },
    /// Jacobi parameters of a depth-D continued fraction and its expansion
    Cf {
        family: FamilyKind,
        #[arg(long)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[command(flatten)]
        params: Params,
    },
    /// Run a verification suite and print a JSON report
    Verify {
        #[arg(default_value = "all")]
        suite: Suite,
        /// Inject an error: lambda:N, triangle:KIND:N:K or f3
        #[arg(long, hide = true)]
        perturb: Option<Perturbation>,
    },
}

enum Failure {
    Usage(String),
    Verification(String),
}

macro_rules! usage {
    ($e:expr) => {
        $e.map_err(|e| Failure::Usage(e.to_string()))
    };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = match Caps::from_env() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(cli.command, caps) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}

fn binding_frac(b: &Binding, v: Var) -> Frac {
    match b {
        Binding::Symbolic => Frac::var(v),
        Binding::Value(r) => Frac::rat(r.clone()),
    }
}

fn resolve(kind: FamilyKind, params: &Params) -> Result<Family, Failure> {
    let mut fam = Family::new(kind);
    if let Some(a) = &params.alpha {
        fam.alpha = binding_frac(a, Var::Alpha);
    }
    if let Some(b) = &params.beta {
        fam.beta = binding_frac(b, Var::Beta);
    }
    Ok(fam)
}

/// Binds x as well, for commands that print bound values only.
fn resolve_bound(kind: FamilyKind, params: &Params) -> Result<Family, Failure> {
    let fam = resolve(kind, params)?;
    match &params.x {
        Some(Binding::Value(r)) => usage!(fam.bind(Var::X, r)),
        _ => Ok(fam),
    }
}

fn x_value(params: &Params) -> Option<&Rat> {
    match &params.x {
        Some(Binding::Value(r)) => Some(r),
        _ => None,
    }
}

fn at_x(v: &Frac, x: Option<&Rat>) -> Result<Option<Frac>, Failure> {
    x.map(|r| usage!(v.eval(Var::X, r))).transpose()
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String, Failure> {
    let mut s = usage!(serde_json::to_string_pretty(v))?;
    s.push('\n');
    Ok(s)
}

fn render_matrix(m: &Matrix, format: Format) -> Result<String, Failure> {
    Ok(match format {
        Format::Table => render::matrix_table(m),
        Format::Csv => render::matrix_csv(m),
        Format::Json => to_json(m)?,
    })
}

fn run(cmd: Command, caps: Caps) -> Result<(String, u8), Failure> {
    let out = match cmd {
        Command::Triangle { kind, rows, format } => {
            usage!(Caps::check("rows", rows, caps.rows))?;
            triangle(kind, rows, format)
        }
        Command::Prodmat {
            family,
            size,
            format,
            params,
        } => {
            usage!(Caps::check("size", size, caps.rows))?;
            let fam = resolve_bound(family, &params)?;
            let arr = usage!(fam.array(size))?;
            let p = usage!(production_analytic(&arr, size))?;
            render_matrix(p.matrix.matrix(), format)?
        }
        Command::Array {
            family,
            size,
            inverse,
            format,
            params,
        } => {
            usage!(Caps::check("size", size, caps.rows))?;
            let fam = resolve_bound(family, &params)?;
            let mut arr = usage!(fam.array(size.max(1) - 1))?;
            if inverse {
                arr = usage!(arr.inverse())?;
            }
            let l = usage!(arr.expand(size))?;
            render_matrix(l.matrix(), format)?
        }
        Command::Moments {
            family,
            n,
            format,
            params,
        } => {
            usage!(Caps::check("n", n, caps.rows))?;
            let fam = resolve(family, &params)?;
            let mu = moments(&fam, n + 1)?;
            let x = x_value(&params);
            let mut rows = Vec::new();
            for (i, v) in mu.values().iter().enumerate() {
                rows.push((i, v.clone(), at_x(v, x)?));
            }
            render_values("mu", &fam, x, &rows, format)?
        }
        Command::Hankel {
            family,
            n,
            format,
            params,
        } => {
            usage!(Caps::check("n", n, caps.hankel))?;
            let fam = resolve(family, &params)?;
            let mu = moments(&fam, 2 * n + 1)?;
            let j = fam.jacobi(n);
            let x = x_value(&params);
            let mut rows = Vec::new();
            for i in 0..=n {
                let det = usage!(hankel_det_capped(&mu, i, caps.hankel + 1))?;
                let prod = usage!(hankel_from_jacobi(&j, i))?;
                if det != prod {
                    return Err(Failure::Verification(format!(
                        "h_{i}: determinant {det} != λ-product {prod}"
                    )));
                }
                rows.push((i, det.clone(), at_x(&det, x)?));
            }
            render_values("h", &fam, x, &rows, format)?
        }
        Command::Cf {
            family,
            depth,
            format,
            params,
        } => {
            usage!(Caps::check("depth", depth, caps.depth))?;
            let fam = resolve_bound(family, &params)?;
            continued_fraction(&fam, depth, format)?
        }
        Command::Verify { suite, perturb } => {
            let report = verify::run(suite, perturb);
            let code = u8::try_from(report.exit_status()).unwrap_or(1);
            return Ok((to_json(&report)?, code));
        }
    };
    Ok((out, 0))
}

fn triangle(kind: TriangleKind, last: usize, format: Format) -> String {
    let rows = triangle_rows(kind, last);
    match format {
        Format::Table => {
            let mut out = String::new();
            for r in &rows {
                let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
                out.push_str(&cells.join(" "));
                out.push('\n');
            }
            out
        }
        Format::Csv => {
            let mut cells = Vec::new();
            for (n, r) in rows.iter().enumerate() {
                for (k, v) in r.iter().enumerate() {
                    cells.push(vec![n.to_string(), k.to_string(), v.to_string()]);
                }
            }
            render::csv(&["n", "k", "value"], &cells)
        }
        // integers of any size are valid JSON numbers
        Format::Json => {
            let body: Vec<String> = rows
                .iter()
                .map(|r| {
                    let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
                    format!("[{}]", cells.join(","))
                })
                .collect();
            format!("[{}]\n", body.join(","))
        }
    }
}

fn moments(fam: &Family, count: usize) -> Result<MomentSeq, Failure> {
    let order = count.saturating_sub(1);
    let arr = usage!(fam.array(order))?;
    let l = usage!(arr.expand(count))?;
    Ok(MomentSeq(l.matrix().column(0)))
}

fn render_values(
    name: &str,
    fam: &Family,
    x: Option<&Rat>,
    rows: &[(usize, Frac, Option<Frac>)],
    format: Format,
) -> Result<String, Failure> {
    let at = x.map(|r| format!("at x={r}"));
    Ok(match format {
        Format::Table | Format::Csv => {
            let mut header = vec!["n".to_string(), name.to_string()];
            header.extend(at.clone());
            let cells: Vec<Vec<String>> = rows
                .iter()
                .map(|(i, v, e)| {
                    let mut r = vec![i.to_string(), v.to_string()];
                    r.extend(e.as_ref().map(ToString::to_string));
                    r
                })
                .collect();
            if format == Format::Table {
                let mut all = vec![header];
                all.extend(cells);
                render::table(&all)
            } else {
                let h: Vec<&str> = header.iter().map(String::as_str).collect();
                render::csv(&h, &cells)
            }
        }
        Format::Json => {
            let values: Vec<Value> = rows
                .iter()
                .map(|(i, v, e)| {
                    let mut obj = json!({ "n": i, "value": v });
                    if let Some(e) = e {
                        obj["at_x"] = json!(e);
                    }
                    obj
                })
                .collect();
            to_json(&json!({
                "family": fam.kind.name(),
                "x": x.map(ToString::to_string),
                name: values,
            }))?
        }
    })
}

fn continued_fraction(fam: &Family, depth: usize, format: Format) -> Result<String, Failure> {
    let j = fam.jacobi(depth.saturating_sub(1));
    let a: Vec<&Frac> = j.diagonal().iter().take(depth).collect();
    let lam: Vec<&Frac> = j
        .subdiagonal()
        .iter()
        .take(depth.saturating_sub(1))
        .collect();
    let ogf = usage!(jfraction_ogf(&j, depth, (2 * depth).saturating_sub(1)))?;
    let ogf: Vec<&Frac> = ogf.coeffs().iter().take(2 * depth).collect();
    let join = |v: &[&Frac]| {
        v.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", ")
    };
    Ok(match format {
        Format::Table => format!(
            "a: {}\nlambda: {}\nogf: {}\n",
            join(&a),
            join(&lam),
            join(&ogf)
        ),
        Format::Csv => {
            let mut cells = Vec::new();
            for (name, list, first) in [("a", &a, 0), ("lambda", &lam, 1), ("ogf", &ogf, 0)] {
                for (i, v) in list.iter().enumerate() {
                    cells.push(vec![
                        name.to_string(),
                        (i + first).to_string(),
                        v.to_string(),
                    ]);
                }
            }
            render::csv(&["list", "index", "value"], &cells)
        }
        Format::Json => to_json(&json!({
            "family": fam.kind.name(),
            "depth": depth,
            "a": a,
            "lambda": lam,
            "ogf": ogf,
        }))?,
    })
}
