//! Decision procedures on representations: commutants, intertwiners,
//! irreducibility, orthogonal-conjugacy certificates and separation searches.

use std::collections::HashMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg::{determinant, nullspace, rank, LinalgError, Matrix, Scalar, Tolerance};
use crate::q::{q_n, QError};
use crate::so::{printed_f_basis, GroupTag, Representation, SoError, Sym2Frame};
use crate::words::{Assignment, Word, WordError, WordIter};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AnalysisError {
    #[error("{0}: empty input")]
    EmptyInput(&'static str),
    #[error("criterion not applicable: {0}")]
    NotApplicable(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    So(#[from] SoError),
    #[error(transparent)]
    Q(#[from] QError),
}

/// Matrix of `T -> (T x_1 - y_1 T, T x_2 - y_2 T, ...)` on row-major `vec(T)`.
fn intertwiner_system<T: Scalar>(pairs: &[(&Matrix<T>, &Matrix<T>)]) -> Result<Matrix<T>, AnalysisError> {
    let Some((first, _)) = pairs.first() else {
        return Err(AnalysisError::EmptyInput("intertwiner system"));
    };
    let d = first.dim()?;
    for (x, y) in pairs {
        if x.dim()? != d || y.dim()? != d {
            return Err(AnalysisError::Shape("matrices of different sizes".into()));
        }
    }
    let n = d * d;
    let mut sys = Matrix::<T>::zeros(pairs.len() * n, n);
    for (p, (x, y)) in pairs.iter().enumerate() {
        for i in 0..d {
            for j in 0..d {
                let row = p * n + i * d + j;
                // (T x)_{ij} = sum_k T_{ik} x_{kj}
                for k in 0..d {
                    let v = sys[(row, i * d + k)].clone() + x[(k, j)].clone();
                    sys[(row, i * d + k)] = v;
                }
                // (y T)_{ij} = sum_k y_{ik} T_{kj}
                for k in 0..d {
                    let v = sys[(row, k * d + j)].clone() - y[(i, k)].clone();
                    sys[(row, k * d + j)] = v;
                }
            }
        }
    }
    Ok(sys)
}

/// Dimension of `{X : X M_i = M_i X for all i}`.
pub fn commutant_dimension<T: Scalar>(mats: &[Matrix<T>], tol: &Tolerance) -> Result<usize, AnalysisError> {
    if mats.is_empty() {
        return Err(AnalysisError::EmptyInput("commutant"));
    }
    let pairs: Vec<_> = mats.iter().map(|m| (m, m)).collect();
    let sys = intertwiner_system(&pairs)?;
    Ok(sys.cols() - rank(&sys, tol))
}

/// Basis of `{T : T X_i = Y_i T for all i}`.
pub fn intertwiner_space<T: Scalar>(
    pairs: &[(Matrix<T>, Matrix<T>)],
    tol: &Tolerance,
) -> Result<Vec<Matrix<T>>, AnalysisError> {
    let refs: Vec<_> = pairs.iter().map(|(x, y)| (x, y)).collect();
    let sys = intertwiner_system(&refs)?;
    let d = pairs[0].0.rows();
    nullspace(&sys, tol)
        .into_iter()
        .map(|v| Ok(Matrix::from_vec(d, d, v)?))
        .collect()
}

type MatrixPair<T> = (Matrix<T>, Matrix<T>);

fn generator_pairs<T: Scalar>(
    rho: &Representation<T>,
    rho2: &Representation<T>,
) -> Result<Vec<MatrixPair<T>>, AnalysisError> {
    if rho.dim() != rho2.dim() {
        return Err(AnalysisError::Shape(format!(
            "dimensions {} and {} differ",
            rho.dim(),
            rho2.dim()
        )));
    }
    if !rho.generators().keys().eq(rho2.generators().keys()) {
        return Err(AnalysisError::Shape("generator sets differ".into()));
    }
    Ok(rho
        .generators()
        .iter()
        .map(|(g, m)| (m.clone(), rho2.generators()[g].clone()))
        .collect())
}

/// Commutant dimension 1. Only offered for `Z_p * Z_q`: finite-order
/// generators make the representation completely reducible, which is what
/// lets a one-dimensional commutant certify irreducibility.
pub fn is_irreducible<T: Scalar>(rep: &Representation<T>, tol: &Tolerance) -> Result<bool, AnalysisError> {
    if !matches!(rep.group(), GroupTag::ZpZq { .. }) {
        return Err(AnalysisError::NotApplicable(
            "irreducibility via the commutant needs finite-order generators (zp_zq)".into(),
        ));
    }
    let gens: Vec<_> = rep.generators().values().cloned().collect();
    Ok(commutant_dimension(&gens, tol)? == 1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConjugacyVerdict {
    SoConjugate,
    OButNotSoConjugate,
    NotConjugate,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjugacyCertificate {
    pub intertwiner_dim: usize,
    /// Block sizes the normalization was taken over.
    pub blocks: Vec<usize>,
    /// The orthogonally normalized intertwiner, when one was found.
    #[serde(skip)]
    pub normalized: Option<Matrix<Complex64>>,
    /// `max |T^T T - I|` of the normalized intertwiner.
    pub orthogonality_defect: Option<f64>,
    /// Determinants of all sign choices `T diag(+-I_{d_j})`.
    #[serde(serialize_with = "serialize_complex_list")]
    pub determinants: Vec<Complex64>,
    pub verdict: ConjugacyVerdict,
    pub note: String,
}

fn serialize_complex_list<S: serde::Serializer>(v: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for z in v {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

impl ConjugacyCertificate {
    fn without_intertwiner(dim: usize, blocks: Vec<usize>, verdict: ConjugacyVerdict, note: String) -> Self {
        ConjugacyCertificate {
            intertwiner_dim: dim,
            blocks,
            normalized: None,
            orthogonality_defect: None,
            determinants: Vec::new(),
            verdict,
            note,
        }
    }
}

/// Orthogonal-conjugacy certificate for an irreducible `rho`.
///
/// The intertwiners `T rho = rho2 T` must form a line. For orthogonal `rho`
/// and `rho2`, `T^T T` commutes with `rho` and is then a scalar `lambda`; the
/// only orthogonal intertwiners are `+-T / sqrt(lambda)`, and `rho2` is
/// conjugate to `rho` inside `SO` exactly when one of them has determinant 1.
pub fn so_conjugacy_certificate<T: Scalar>(
    rho: &Representation<T>,
    rho2: &Representation<T>,
    tol: &Tolerance,
) -> Result<ConjugacyCertificate, AnalysisError> {
    certificate(rho, rho2, &[rho.dim()], tol)
}

/// Like [`so_conjugacy_certificate`], for `rho` a direct sum of pairwise
/// inequivalent irreducibles along `rho.blocks()`.
///
/// The commutant is then `{diag(mu_j I_{d_j})}`, the intertwiners form a space
/// of dimension equal to the number of blocks, and the orthogonal ones are
/// `M diag(+-I_{d_j})` for a single orthogonal `M`. Their determinants are
/// `det M * prod (+-1)^{d_j}`.
pub fn so_conjugacy_certificate_blocks<T: Scalar>(
    rho: &Representation<T>,
    rho2: &Representation<T>,
    tol: &Tolerance,
) -> Result<ConjugacyCertificate, AnalysisError> {
    certificate(rho, rho2, rho.blocks(), tol)
}

fn certificate<T: Scalar>(
    rho: &Representation<T>,
    rho2: &Representation<T>,
    blocks: &[usize],
    tol: &Tolerance,
) -> Result<ConjugacyCertificate, AnalysisError> {
    if rho.form() != crate::linalg::Form::Standard || rho2.form() != crate::linalg::Form::Standard {
        return Err(AnalysisError::NotApplicable("certificates need standard-form representations".into()));
    }
    let pairs = generator_pairs(rho, rho2)?;
    let blocks = blocks.to_vec();
    let gens: Vec<_> = pairs.iter().map(|(x, _)| x.clone()).collect();
    let commutant = commutant_dimension(&gens, tol)?;
    let basis = intertwiner_space(&pairs, tol)?;
    let k = basis.len();
    if commutant != blocks.len() {
        return Ok(ConjugacyCertificate::without_intertwiner(
            k,
            blocks,
            ConjugacyVerdict::Inconclusive,
            format!("commutant of rho has dimension {commutant}, expected one per block"),
        ));
    }
    if k == 0 {
        return Ok(ConjugacyCertificate::without_intertwiner(
            0,
            blocks,
            ConjugacyVerdict::NotConjugate,
            "no nonzero intertwiner".into(),
        ));
    }
    if k != blocks.len() {
        return Ok(ConjugacyCertificate::without_intertwiner(
            k,
            blocks,
            ConjugacyVerdict::Inconclusive,
            format!("intertwiner space has dimension {k}, expected {}", commutant),
        ));
    }

    // A fixed generic combination, so that no block scalar vanishes.
    let d = rho.dim();
    let mut t = Matrix::<Complex64>::zeros(d, d);
    for (idx, b) in basis.iter().enumerate() {
        let coeff = Complex64::new(1.0 + 0.37 * idx as f64, 0.11 * idx as f64);
        t = t.add(&b.to_c64().scale(&coeff))?;
    }
    let gram = t.transpose().mul(&t)?;

    let mut starts = Vec::with_capacity(blocks.len());
    let mut s = 0;
    for &b in &blocks {
        starts.push(s);
        s += b;
    }
    let mut scalars = Vec::with_capacity(blocks.len());
    for (&start, &size) in starts.iter().zip(&blocks) {
        let mu: Complex64 = (start..start + size).map(|i| gram[(i, i)]).sum::<Complex64>() / size as f64;
        if mu.norm() == 0.0 {
            return Ok(ConjugacyCertificate::without_intertwiner(
                k,
                blocks,
                ConjugacyVerdict::Inconclusive,
                "degenerate intertwiner".into(),
            ));
        }
        scalars.push(mu);
    }
    // Right-multiply by diag(mu_j^{-1/2}).
    let mut column_scale = Vec::with_capacity(d);
    for (&mu, &size) in scalars.iter().zip(&blocks) {
        column_scale.extend(std::iter::repeat_n(1.0 / mu.sqrt(), size));
    }
    let normalized = Matrix::from_fn(d, d, |i, j| t[(i, j)] * column_scale[j]);
    let check = normalized.transpose().mul(&normalized)?;
    let defect = check.max_abs_diff(&Matrix::identity(d));
    let base_det = determinant(&normalized)?;

    let mut determinants = Vec::with_capacity(1 << blocks.len().min(16));
    for signs in 0u32..(1u32 << blocks.len().min(16)) {
        let flips: usize = blocks
            .iter()
            .enumerate()
            .filter(|(j, _)| signs & (1 << j) != 0)
            .map(|(_, &size)| size)
            .sum();
        determinants.push(if flips.is_multiple_of(2) { base_det } else { -base_det });
    }

    let near = |z: Complex64, target: f64| tol.accepts((z - target).norm(), 1.0);
    let verdict = if !tol.accepts(defect, 1.0) {
        ConjugacyVerdict::Inconclusive
    } else if determinants.iter().any(|&z| near(z, 1.0)) {
        ConjugacyVerdict::SoConjugate
    } else if determinants.iter().all(|&z| near(z, -1.0)) {
        ConjugacyVerdict::OButNotSoConjugate
    } else {
        ConjugacyVerdict::Inconclusive
    };
    Ok(ConjugacyCertificate {
        intertwiner_dim: k,
        blocks,
        normalized: Some(normalized),
        orthogonality_defect: Some(defect),
        determinants,
        verdict,
        note: String::new(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InvariantKind {
    Trace,
    Q,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeparationVerdict {
    Separated,
    IndistinguishableToLength,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeparationReport {
    pub invariant: InvariantKind,
    pub verdict: SeparationVerdict,
    #[serde(serialize_with = "serialize_word")]
    pub witness: Option<Word>,
    /// Invariant values on the two sides at the witness.
    pub witness_values: Option<[[f64; 2]; 2]>,
    pub max_len: usize,
    pub words_checked: usize,
    /// Largest residual over the scanned words that were accepted as equal.
    pub max_residual: f64,
    /// Largest invariant magnitude seen on either side.
    pub max_magnitude: f64,
}

fn serialize_word<S: serde::Serializer>(w: &Option<Word>, s: S) -> Result<S::Ok, S::Error> {
    match w {
        Some(w) => s.serialize_some(&w.to_string()),
        None => s.serialize_none(),
    }
}

/// Images of all reduced words up to `max_len`, in shortlex order; each word
/// reuses the image of its prefix.
pub struct WordImages<'a, T> {
    asg: &'a Assignment<T>,
    iter: WordIter,
    cache: HashMap<Word, Matrix<T>>,
}

impl<'a, T: Scalar> WordImages<'a, T> {
    pub fn new(asg: &'a Assignment<T>, max_len: usize, num_gens: u32) -> Self {
        WordImages {
            asg,
            iter: WordIter::new(max_len, num_gens),
            cache: HashMap::new(),
        }
    }
}

impl<T: Scalar> Iterator for WordImages<'_, T> {
    type Item = Result<(Word, Matrix<T>), WordError>;

    fn next(&mut self) -> Option<Self::Item> {
        let w = self.iter.next()?;
        let img = match w.split_last() {
            None => Ok(Matrix::identity(self.asg.dim())),
            Some((prefix, last)) => {
                let factor = match self.asg.letter_image(last) {
                    Ok(f) => f,
                    Err(e) => return Some(Err(e)),
                };
                match self.cache.get(&prefix) {
                    Some(p) => p.mul(factor).map_err(WordError::from),
                    None => crate::words::evaluate(&w, self.asg),
                }
            }
        };
        Some(img.map(|m| {
            self.cache.insert(w.clone(), m.clone());
            (w, m)
        }))
    }
}

fn separation<T: Scalar>(
    rho: &Representation<T>,
    rho2: &Representation<T>,
    max_len: usize,
    tol: &Tolerance,
    kind: InvariantKind,
) -> Result<SeparationReport, AnalysisError> {
    generator_pairs(rho, rho2)?;
    if kind == InvariantKind::Q && rho.dim() % 2 == 1 {
        return Err(AnalysisError::Shape(format!("Q needs an even dimension, got {}", rho.dim())));
    }
    let num_gens = rho.generators().keys().copied().max().unwrap_or(0);
    let (a1, a2) = (rho.assignment()?, rho2.assignment()?);
    let value = |m: &Matrix<T>| -> Result<T, AnalysisError> {
        Ok(match kind {
            InvariantKind::Trace => m.trace(),
            InvariantKind::Q => q_n(m)?,
        })
    };
    let mut report = SeparationReport {
        invariant: kind,
        verdict: SeparationVerdict::IndistinguishableToLength,
        witness: None,
        witness_values: None,
        max_len,
        words_checked: 0,
        max_residual: 0.0,
        max_magnitude: 0.0,
    };
    for (x, y) in WordImages::new(&a1, max_len, num_gens).zip(WordImages::new(&a2, max_len, num_gens)) {
        let ((w, m1), (_, m2)) = (x?, y?);
        let (v1, v2) = (value(&m1)?, value(&m2)?);
        report.words_checked += 1;
        let scale = v1.magnitude().max(v2.magnitude());
        report.max_magnitude = report.max_magnitude.max(scale);
        let residual = (v1.clone() - v2.clone()).magnitude();
        if (v1.clone() - v2.clone()).is_negligible(tol, scale) {
            report.max_residual = report.max_residual.max(residual);
            continue;
        }
        let (c1, c2) = (v1.to_c64(), v2.to_c64());
        report.verdict = SeparationVerdict::Separated;
        report.witness = Some(w);
        report.witness_values = Some([[c1.re, c1.im], [c2.re, c2.im]]);
        break;
    }
    Ok(report)
}

/// First word (shortlex) on which the traces differ beyond `tol`.
pub fn trace_separation<T: Scalar>(
    rho: &Representation<T>,
    rho2: &Representation<T>,
    max_len: usize,
    tol: &Tolerance,
) -> Result<SeparationReport, AnalysisError> {
    separation(rho, rho2, max_len, tol, InvariantKind::Trace)
}

/// First word (shortlex) on which `Q_n` of the images differs beyond `tol`.
pub fn q_separation<T: Scalar>(
    rho: &Representation<T>,
    rho2: &Representation<T>,
    max_len: usize,
    tol: &Tolerance,
) -> Result<SeparationReport, AnalysisError> {
    separation(rho, rho2, max_len, tol, InvariantKind::Q)
}

/// Rank of the coordinates of `f_1, f_2, alpha(a) f_1, alpha(a) f_2` in the frame.
pub fn f_span_dimension(a: &Matrix<Complex64>, frame: &Sym2Frame, tol: &Tolerance) -> Result<usize, AnalysisError> {
    let alpha = frame.alpha14(a, tol)?;
    let f: Vec<Vec<Complex64>> = printed_f_basis::<Complex64>()
        .iter()
        .map(|v| frame.coordinates(v))
        .collect();
    let mut rows = f.clone();
    for v in &f {
        rows.push(alpha.apply(v)?);
    }
    Ok(rank(&Matrix::from_rows(rows)?, tol))
}
