//! `construct --what ...`: the explicit matrices and representations.

use anyhow::{anyhow, bail, Context};
use clap::ValueEnum;
use serde_json::Value;

use soinv_core::io::{
    any_matrix_from_json, any_scalar_from_json, document_backend, matrix_to_json, rep_from_json,
    rep_to_json, AnyMatrix, AnyScalar,
};
use soinv_core::linalg::{Backend, Complex64, GaussianRational, Matrix, Tolerance};
use soinv_core::so::{
    d_c, eta_a, iota_c, psi_a, random_so, rho_construction, sigma_involution, Sym2Frame,
};

#[derive(Clone, Copy, ValueEnum)]
pub enum What {
    Dc,
    Iota,
    Alpha14,
    Psi,
    Eta,
    Rho,
    Sigma,
}

fn field<'a>(params: &'a Value, key: &str) -> anyhow::Result<&'a Value> {
    params.get(key).ok_or_else(|| anyhow!("missing parameter {key:?}"))
}

fn uint(params: &Value, key: &str) -> anyhow::Result<u64> {
    field(params, key)?
        .as_u64()
        .ok_or_else(|| anyhow!("parameter {key:?} must be a nonnegative integer"))
}

fn seed(params: &Value) -> anyhow::Result<u64> {
    match params.get("seed") {
        Some(_) => uint(params, "seed"),
        None => Ok(0),
    }
}

/// The matrix under `key`, or a seeded random element of `SO(d)`.
fn float_matrix_or_random(params: &Value, key: &str, d: usize, seed: u64) -> anyhow::Result<Matrix<Complex64>> {
    match params.get(key) {
        Some(v) => {
            let m = match any_matrix_from_json(v).with_context(|| format!("parameter {key:?}"))? {
                AnyMatrix::Exact(m) => m.to_c64(),
                AnyMatrix::Float(m) => m,
            };
            if m.rows() != d {
                bail!("parameter {key:?} must be {d}x{d}, got {}x{}", m.rows(), m.cols());
            }
            Ok(m)
        }
        None => Ok(random_so::<Complex64>(d, seed)?),
    }
}

pub fn build(what: What, params: &Value, tol: &Tolerance) -> anyhow::Result<Value> {
    if !params.is_object() {
        bail!("--params must be a JSON object");
    }
    Ok(match what {
        What::Dc => match any_scalar_from_json(field(params, "c")?)? {
            AnyScalar::Exact(c) => matrix_to_json(&d_c(&c)?),
            AnyScalar::Float(c) => matrix_to_json(&d_c(&c)?),
        },
        What::Iota => {
            let n = uint(params, "n")? as usize;
            let c = any_scalar_from_json(field(params, "c")?)?;
            match params.get("a") {
                Some(a) => match (any_matrix_from_json(a)?, c) {
                    (AnyMatrix::Exact(a), AnyScalar::Exact(c)) => matrix_to_json(&iota_c(&a, &c, n, tol)?),
                    (AnyMatrix::Exact(a), AnyScalar::Float(c)) => matrix_to_json(&iota_c(&a.to_c64(), &c, n, tol)?),
                    (AnyMatrix::Float(a), c) => matrix_to_json(&iota_c(&a, &c.to_c64(), n, tol)?),
                },
                None => {
                    let s = seed(params)?;
                    match c {
                        AnyScalar::Exact(c) => {
                            matrix_to_json(&iota_c(&random_so::<GaussianRational>(4, s)?, &c, n, tol)?)
                        }
                        AnyScalar::Float(c) => matrix_to_json(&iota_c(&random_so::<Complex64>(4, s)?, &c, n, tol)?),
                    }
                }
            }
        }
        What::Alpha14 => {
            let a = float_matrix_or_random(params, "a", 5, seed(params)?)?;
            matrix_to_json(&Sym2Frame::new().alpha14(&a, tol)?)
        }
        What::Psi => {
            let a = float_matrix_or_random(params, "a", 5, seed(params)?)?;
            rep_to_json(&psi_a(&a, uint(params, "p")?, uint(params, "q")?, tol)?)
        }
        What::Eta => {
            let m = uint(params, "m")? as usize;
            let a = float_matrix_or_random(params, "a", 2 * m, seed(params)?)?;
            rep_to_json(&eta_a(&a, uint(params, "p")?, uint(params, "q")?, m, tol)?)
        }
        What::Rho => {
            let n = uint(params, "n")? as usize;
            let (p, q) = (uint(params, "p")?, uint(params, "q")?);
            let s = seed(params)?;
            let (default_a5, default_a2m) = soinv_core::report::counterexample_params(n, s)?;
            let a5 = match params.get("a5") {
                Some(_) => float_matrix_or_random(params, "a5", 5, s)?,
                None => default_a5,
            };
            let a2m = match (params.get("a2m"), n >= 9) {
                (Some(_), true) => Some(float_matrix_or_random(params, "a2m", 2 * n - 14, s)?),
                (_, true) => default_a2m,
                _ => None,
            };
            rep_to_json(&rho_construction(n, p, q, &a5, a2m.as_ref(), tol)?)
        }
        What::Sigma => {
            let doc = field(params, "rep")?;
            let strict = params.get("strict").and_then(Value::as_bool).unwrap_or(true);
            match document_backend(doc)? {
                Backend::Exact => {
                    let rep = rep_from_json::<GaussianRational>(doc, strict, tol)?.rep;
                    rep_to_json(&sigma_involution(&rep)?)
                }
                Backend::Float => {
                    let rep = rep_from_json::<Complex64>(doc, strict, tol)?.rep;
                    rep_to_json(&sigma_involution(&rep)?)
                }
            }
        }
    })
}
