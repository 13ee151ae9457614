//! JSON matrices and representations.
//!
//! A matrix is `{"d": 2, "backend": "exact", "entries": [["3/2", "0"], ...]}`
//! with row-major `[re, im]` pairs: strings `"p/q"` on the exact backend,
//! numbers on the float backend. A representation adds `"form"`, `"group"`,
//! `"generators"` (generator index to an entry list of the same shape) and
//! optionally `"blocks"`.

use std::collections::BTreeMap;
use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::linalg::{format_rational, parse_rational, Backend, Complex64, Form, GaussianRational, Matrix, Scalar, Tolerance};
use crate::so::{GroupTag, Representation, SoError};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    File(#[from] std::io::Error),
    #[error("backend mismatch: expected {expected}, found {found}")]
    BackendMismatch { expected: Backend, found: Backend },
    #[error("bad entry at position {index}: {reason}")]
    Entry { index: usize, reason: String },
    #[error("expected {expected} entries for d = {d}, found {found}")]
    EntryCount { d: usize, expected: usize, found: usize },
    #[error("bad generator key {0:?}")]
    GeneratorKey(String),
    #[error("representation failed validation: {0}")]
    Validation(#[from] SoError),
}

/// Conversion of one scalar to and from its JSON `[re, im]` pair.
pub trait JsonScalar: Scalar {
    fn to_json(&self) -> [Value; 2];
    fn from_json(pair: &[Value; 2]) -> Result<Self, String>;
}

impl JsonScalar for Complex64 {
    fn to_json(&self) -> [Value; 2] {
        [Value::from(self.re), Value::from(self.im)]
    }

    fn from_json(pair: &[Value; 2]) -> Result<Self, String> {
        let part = |v: &Value| v.as_f64().ok_or_else(|| format!("expected a number, found {v}"));
        Ok(Complex64::new(part(&pair[0])?, part(&pair[1])?))
    }
}

impl JsonScalar for GaussianRational {
    fn to_json(&self) -> [Value; 2] {
        [
            Value::from(format_rational(&self.re)),
            Value::from(format_rational(&self.im)),
        ]
    }

    fn from_json(pair: &[Value; 2]) -> Result<Self, String> {
        let part = |v: &Value| match v {
            Value::String(s) => parse_rational(s).map_err(|e| e.to_string()),
            other => Err(format!("expected a \"p/q\" string, found {other}")),
        };
        Ok(Complex::new(part(&pair[0])?, part(&pair[1])?))
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDoc {
    d: usize,
    backend: Backend,
    entries: Vec<[Value; 2]>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepDoc {
    d: usize,
    backend: Backend,
    form: Form,
    group: GroupTag,
    generators: BTreeMap<String, Vec<[Value; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    blocks: Option<Vec<usize>>,
}

fn encode_entries<T: JsonScalar>(m: &Matrix<T>) -> Vec<[Value; 2]> {
    m.entries().iter().map(JsonScalar::to_json).collect()
}

fn decode_entries<T: JsonScalar>(d: usize, entries: &[[Value; 2]]) -> Result<Matrix<T>, IoError> {
    if entries.len() != d * d {
        return Err(IoError::EntryCount {
            d,
            expected: d * d,
            found: entries.len(),
        });
    }
    let data = entries
        .iter()
        .enumerate()
        .map(|(index, pair)| T::from_json(pair).map_err(|reason| IoError::Entry { index, reason }))
        .collect::<Result<Vec<T>, _>>()?;
    Matrix::from_vec(d, d, data).map_err(|e| IoError::Entry {
        index: 0,
        reason: e.to_string(),
    })
}

fn check_backend<T: Scalar>(found: Backend) -> Result<(), IoError> {
    if found != T::BACKEND {
        return Err(IoError::BackendMismatch {
            expected: T::BACKEND,
            found,
        });
    }
    Ok(())
}

pub fn matrix_to_json<T: JsonScalar>(m: &Matrix<T>) -> Value {
    serde_json::to_value(MatrixDoc {
        d: m.rows(),
        backend: T::BACKEND,
        entries: encode_entries(m),
    })
    .expect("matrix documents serialize")
}

pub fn matrix_from_json<T: JsonScalar>(v: &Value) -> Result<Matrix<T>, IoError> {
    let doc: MatrixDoc = serde_json::from_value(v.clone())?;
    check_backend::<T>(doc.backend)?;
    decode_entries(doc.d, &doc.entries)
}

/// A scalar whose backend is decided by its JSON form: `"p/q"` or
/// `["p/q", "r/s"]` is exact, a number or `[re, im]` of numbers is float.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyScalar {
    Exact(GaussianRational),
    Float(Complex64),
}

impl AnyScalar {
    pub fn to_c64(&self) -> Complex64 {
        match self {
            AnyScalar::Exact(v) => v.to_c64(),
            AnyScalar::Float(v) => *v,
        }
    }
}

pub fn any_scalar_from_json(v: &Value) -> Result<AnyScalar, IoError> {
    let bad = |reason: String| IoError::Entry { index: 0, reason };
    match v {
        Value::String(_) => GaussianRational::from_json(&[v.clone(), Value::from("0")])
            .map(AnyScalar::Exact)
            .map_err(bad),
        Value::Number(_) => Complex64::from_json(&[v.clone(), Value::from(0.0)])
            .map(AnyScalar::Float)
            .map_err(bad),
        Value::Array(items) if items.len() == 2 => {
            let pair = [items[0].clone(), items[1].clone()];
            if items.iter().all(Value::is_string) {
                GaussianRational::from_json(&pair).map(AnyScalar::Exact).map_err(bad)
            } else {
                Complex64::from_json(&pair).map(AnyScalar::Float).map_err(bad)
            }
        }
        other => Err(bad(format!("expected a scalar, found {other}"))),
    }
}

/// A matrix whose backend is decided by the document.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyMatrix {
    Exact(Matrix<GaussianRational>),
    Float(Matrix<Complex64>),
}

impl AnyMatrix {
    pub fn backend(&self) -> Backend {
        match self {
            AnyMatrix::Exact(_) => Backend::Exact,
            AnyMatrix::Float(_) => Backend::Float,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AnyMatrix::Exact(m) => matrix_to_json(m),
            AnyMatrix::Float(m) => matrix_to_json(m),
        }
    }
}

pub fn any_matrix_from_json(v: &Value) -> Result<AnyMatrix, IoError> {
    let doc: MatrixDoc = serde_json::from_value(v.clone())?;
    Ok(match doc.backend {
        Backend::Exact => AnyMatrix::Exact(decode_entries(doc.d, &doc.entries)?),
        Backend::Float => AnyMatrix::Float(decode_entries(doc.d, &doc.entries)?),
    })
}

pub fn save_matrix<T: JsonScalar>(path: &Path, m: &Matrix<T>) -> Result<(), IoError> {
    let text = serde_json::to_string_pretty(&matrix_to_json(m))?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

pub fn load_matrix<T: JsonScalar>(path: &Path) -> Result<Matrix<T>, IoError> {
    let text = std::fs::read_to_string(path)?;
    matrix_from_json(&serde_json::from_str(&text)?)
}

pub fn rep_to_json<T: JsonScalar>(rep: &Representation<T>) -> Value {
    let blocks = (rep.blocks().len() > 1).then(|| rep.blocks().to_vec());
    serde_json::to_value(RepDoc {
        d: rep.dim(),
        backend: T::BACKEND,
        form: rep.form(),
        group: rep.group(),
        generators: rep
            .generators()
            .iter()
            .map(|(g, m)| (g.to_string(), encode_entries(m)))
            .collect(),
        blocks,
    })
    .expect("representation documents serialize")
}

/// A parsed representation and, in lenient mode, the validation failure.
#[derive(Clone)]
pub struct LoadedRep<T> {
    pub rep: Representation<T>,
    pub warning: Option<String>,
}

/// Parses a representation and checks generator membership (and orders for
/// `zp_zq`). With `strict`, a failed check is an error; otherwise it is
/// returned as a warning.
pub fn rep_from_json<T: JsonScalar>(v: &Value, strict: bool, tol: &Tolerance) -> Result<LoadedRep<T>, IoError> {
    let doc: RepDoc = serde_json::from_value(v.clone())?;
    check_backend::<T>(doc.backend)?;
    let mut gens = Vec::with_capacity(doc.generators.len());
    for (key, entries) in &doc.generators {
        let g: u32 = key.parse().map_err(|_| IoError::GeneratorKey(key.clone()))?;
        gens.push((g, decode_entries(doc.d, entries)?));
    }
    let mut rep = Representation::new(doc.form, doc.group, gens)?;
    if let Some(blocks) = doc.blocks {
        rep = rep.with_blocks(blocks)?;
    }
    let warning = match rep.validate(tol) {
        Ok(()) => None,
        Err(e) if strict => return Err(IoError::Validation(e)),
        Err(e) => Some(e.to_string()),
    };
    Ok(LoadedRep { rep, warning })
}

/// Reads the backend tag of a matrix or representation document.
pub fn document_backend(v: &Value) -> Result<Backend, IoError> {
    #[derive(Deserialize)]
    struct Tag {
        backend: Backend,
    }
    Ok(serde_json::from_value::<Tag>(v.clone())?.backend)
}

pub fn save_rep<T: JsonScalar>(path: &Path, rep: &Representation<T>) -> Result<(), IoError> {
    let text = serde_json::to_string_pretty(&rep_to_json(rep))?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

pub fn load_rep<T: JsonScalar>(path: &Path, strict: bool, tol: &Tolerance) -> Result<LoadedRep<T>, IoError> {
    let text = std::fs::read_to_string(path)?;
    rep_from_json(&serde_json::from_str(&text)?, strict, tol)
}
