//! Verification suites and their machine-readable reports.

use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::analysis::{
    commutant_dimension, f_span_dimension, is_irreducible, q_separation,
    so_conjugacy_certificate, so_conjugacy_certificate_blocks, trace_separation, ConjugacyVerdict,
    SeparationVerdict, WordImages,
};
use crate::linalg::{
    block_diag, eigen_multiplicity, parse_rational, pfaffian, Backend, GaussianRational, Matrix,
    Scalar, Tolerance,
};
use crate::q::{pair_orientation_factor, q_fast, q_kl, q_n, q_naive, NAIVE_MAX_DIM};
use crate::sample::{exact_matrix, rng};
use crate::so::{
    alpha_c1c2, cyclic_permutation, d_c_q_value, embed_block, eta_a, psi_a, random_so,
    rho_construction, sigma_involution, GroupTag, Representation, Sym2Frame,
};
use crate::words::{abelianize, Word};

/// Check ids and the statement each one verifies.
pub const CHECK_ANCHORS: &[(&str, &str)] = &[
    ("q_fast_matches_naive", "matching-sum evaluation equals the signed sum over S_2n"),
    ("q_two_by_two", "Q([[a11,a12],[a21,a22]]) = 2(a12 - a21) from the signed sum"),
    ("q_of_d_c", "Q(D_c) = 2i(c - 1/c) from the signed sum"),
    ("q_n_pfaffian", "Q_n(A) = 2^n n! Pf(A - A^T)"),
    ("block_expansion", "Q(diag(B_i, C_i)) = sum_i Q(B_1..^B_i..B_n) Q(C_i)"),
    ("qkl_recursion", "Q_kl(A1,A2) = k Q_(k-1)l(B1,B2) Q(C1) + l Q_k(l-1)(B1,B2) Q(C2)"),
    ("q_of_iota", "Q_n(iota_c A) = 1/2 Q(D_c)^(n-2) n! Q_2(A)"),
    ("mixed_q_of_iota", "Q_(n-1)1(iota_c1 A1, iota_c2 A2) in terms of Q_11(A1,A2) and Q_2(A1)"),
    ("obvious_embedding_q_vanishes", "Q_n vanishes on alpha_(1,1) images since Q(D_1) = 0"),
    ("alpha_trace_pushforward", "tr alpha_(c1,c2)(rho)(w) = tr rho(w) + (c + 1/c)(n - 2), c = c1^w1 c2^w2"),
    ("sigma_negates_q_n", "conjugation by diag(-1,1,..,1) negates Q(w,..,w)"),
    ("summands_irreducible", "alpha psi_A (and eta) irreducible: commutant dimension one per summand"),
    ("eigenvalue_one_multiplicity", "eigenvalue 1 of alpha(psi(gamma_i)) has multiplicity at least 2"),
    ("traces_agree", "tr rho(w) = tr sigma(rho)(w) on all scanned words"),
    ("q_vanishes", "Q_n(rho(w)) = 0 on all scanned words"),
    ("not_so_conjugate", "every orthogonal intertwiner of (rho, sigma rho) has determinant -1"),
    ("eta_generically_irreducible", "eta_A irreducible for generic A"),
    ("alpha_psi_generically_irreducible", "alpha psi_A irreducible for generic A"),
    ("f_span_cyclic", "dim F + alpha(A)F = 4 for the cyclic permutation A"),
    ("f_span_generic", "dim F + alpha(A)F = 4 for generic A"),
    ("q_separates_sigma_image", "Q_n separates a generic rep from its sigma image"),
    ("traces_blind_to_sigma", "traces do not separate a rep from its sigma image"),
];

pub fn anchor(id: &str) -> &'static str {
    CHECK_ANCHORS
        .iter()
        .find(|(k, _)| *k == id)
        .map_or("plumbing", |(_, a)| a)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Identities,
    Counterexample,
    Genericity,
    Separation,
}

impl FromStr for Suite {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, ConfigError> {
        match s {
            "identities" => Ok(Suite::Identities),
            "counterexample" => Ok(Suite::Counterexample),
            "genericity" => Ok(Suite::Genericity),
            "separation" => Ok(Suite::Separation),
            other => Err(ConfigError(format!("unknown suite {other:?}"))),
        }
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Suite::Identities => "identities",
            Suite::Counterexample => "counterexample",
            Suite::Genericity => "genericity",
            Suite::Separation => "separation",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid configuration: {0}")]
pub struct ConfigError(pub String);

/// Parameters of a suite run. Every field has a default, so `{}` is a valid
/// configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub n: usize,
    pub p: u64,
    pub q: u64,
    /// Values of `c` for the single-parameter identities, as `"p/q"`.
    pub c: Vec<String>,
    /// `(c1, c2)` pairs for the two-parameter identities.
    pub c_pairs: Vec<(String, String)>,
    pub seed: u64,
    /// Random instances per check; the suite default when absent.
    pub samples: Option<usize>,
    /// Largest `n` in the identity suite; the oracle caps it at 5.
    pub max_n: usize,
    pub max_len: usize,
    pub eta_m: usize,
    pub eta_p: u64,
    pub eta_q: u64,
    /// Fraction of generic samples that must succeed.
    pub min_fraction: f64,
    /// Absolute threshold for trace agreement.
    pub trace_eps: f64,
    /// Threshold for `|Q_n(M)| / (2^n n! max|M|^n)`.
    pub q_eps: f64,
    /// Distance of intertwiner determinants from -1.
    pub det_eps: f64,
    pub tolerance: Tolerance,
    pub backend: Backend,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: 7,
            p: 17,
            q: 19,
            c: vec!["2".into(), "3/2".into(), "-5".into()],
            c_pairs: vec![("2".into(), "3".into()), ("3/2".into(), "5".into())],
            seed: 0,
            samples: None,
            max_n: 5,
            max_len: 4,
            eta_m: 3,
            eta_p: 7,
            eta_q: 11,
            min_fraction: 0.95,
            trace_eps: 1e-8,
            q_eps: 1e-6,
            det_eps: 1e-6,
            tolerance: Tolerance::default(),
            backend: Backend::Exact,
            output: None,
        }
    }
}

impl RunConfig {
    pub fn samples_for(&self, suite: Suite) -> usize {
        self.samples.unwrap_or(match suite {
            Suite::Identities => 10,
            Suite::Counterexample => 3,
            Suite::Genericity => 50,
            Suite::Separation => 5,
        })
    }

    /// Checks the constraints the suite's constructions impose.
    pub fn validate(&self, suite: Suite) -> Result<(), ConfigError> {
        let t = &self.tolerance;
        if [t.abs_eps, t.rel_eps, t.rank_pivot_eps, self.trace_eps, self.q_eps, self.det_eps]
            .iter()
            .any(|&e| e.is_nan() || e < 0.0)
        {
            return Err(ConfigError("tolerances must be nonnegative".into()));
        }
        match suite {
            Suite::Identities => {
                if !(2..=NAIVE_MAX_DIM / 2).contains(&self.max_n) {
                    return Err(ConfigError(format!(
                        "max_n must lie in 2..={} for the oracle, got {}",
                        NAIVE_MAX_DIM / 2,
                        self.max_n
                    )));
                }
                self.parsed_c()?;
                self.parsed_c_pairs()?;
            }
            Suite::Counterexample => {
                if self.n == 8 {
                    return Err(ConfigError("n=8 excluded (the construction needs n = 7 or n >= 9)".into()));
                }
                if self.n < 7 {
                    return Err(ConfigError(format!("n must be 7 or at least 9, got {}", self.n)));
                }
                let bound = (2 * self.n as u64 - 14).max(16);
                if self.p <= bound || self.q <= bound {
                    return Err(ConfigError(format!(
                        "p, q must exceed max(2n - 14, 16) = {bound}, got p = {}, q = {}",
                        self.p, self.q
                    )));
                }
            }
            Suite::Genericity => {
                if self.p <= 16 || self.q <= 16 {
                    return Err(ConfigError(format!(
                        "psi_A needs p, q > 16, got p = {}, q = {}",
                        self.p, self.q
                    )));
                }
                if self.eta_m <= 2 || self.eta_p <= 2 * self.eta_m as u64 || self.eta_q <= 2 * self.eta_m as u64 {
                    return Err(ConfigError(format!(
                        "eta_A needs m > 2 and p, q > 2m, got m = {}, p = {}, q = {}",
                        self.eta_m, self.eta_p, self.eta_q
                    )));
                }
                if !(0.0..=1.0).contains(&self.min_fraction) {
                    return Err(ConfigError("min_fraction must lie in [0, 1]".into()));
                }
            }
            Suite::Separation => {}
        }
        Ok(())
    }

    fn parsed_c(&self) -> Result<Vec<GaussianRational>, ConfigError> {
        self.c.iter().map(|s| parse_nonzero(s)).collect()
    }

    fn parsed_c_pairs(&self) -> Result<Vec<(GaussianRational, GaussianRational)>, ConfigError> {
        self.c_pairs
            .iter()
            .map(|(a, b)| Ok((parse_nonzero(a)?, parse_nonzero(b)?)))
            .collect()
    }
}

fn parse_nonzero(s: &str) -> Result<GaussianRational, ConfigError> {
    let r = parse_rational(s).map_err(|e| ConfigError(e.to_string()))?;
    let v = GaussianRational::new(r, Default::default());
    if v.is_zero() {
        return Err(ConfigError("c must be nonzero".into()));
    }
    Ok(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub params: Value,
    pub status: Status,
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub runtime_ms: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: Suite,
    pub checks: Vec<CheckRecord>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

struct Outcome {
    pass: bool,
    residual: Option<f64>,
    detail: Option<String>,
}

impl Outcome {
    fn exact(mismatches: usize, residual: f64) -> Self {
        Outcome {
            pass: mismatches == 0,
            residual: Some(residual),
            detail: (mismatches > 0).then(|| format!("{mismatches} mismatching instances")),
        }
    }
}

#[derive(Default)]
struct Recorder {
    checks: Vec<CheckRecord>,
}

impl Recorder {
    fn run(&mut self, id: &str, params: Value, f: impl FnOnce() -> Result<Outcome, String>) {
        let start = Instant::now();
        let outcome = f().unwrap_or_else(|e| Outcome {
            pass: false,
            residual: None,
            detail: Some(e),
        });
        self.checks.push(CheckRecord {
            id: id.to_string(),
            anchor: anchor(id).to_string(),
            params,
            status: if outcome.pass { Status::Pass } else { Status::Fail },
            residual: outcome.residual,
            detail: outcome.detail,
            runtime_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    }
}

/// Runs one suite. Deterministic for a fixed configuration apart from the
/// `runtime_ms` fields.
pub fn run_suite(config: &RunConfig, suite: Suite) -> Result<Report, ConfigError> {
    config.validate(suite)?;
    let mut rec = Recorder::default();
    match (suite, config.backend) {
        (Suite::Identities, Backend::Exact) => identities::<GaussianRational>(config, &mut rec),
        (Suite::Identities, Backend::Float) => identities::<Complex64>(config, &mut rec),
        (Suite::Counterexample, _) => counterexample(config, &mut rec),
        (Suite::Genericity, _) => genericity(config, &mut rec),
        (Suite::Separation, Backend::Exact) => separation::<GaussianRational>(config, &mut rec),
        (Suite::Separation, Backend::Float) => separation::<Complex64>(config, &mut rec),
    }
    Ok(Report {
        suite,
        checks: rec.checks,
    })
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn lift<T: Scalar>(m: &Matrix<GaussianRational>) -> Matrix<T> {
    m.map(T::from_gaussian_rational)
}

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Tallies `(mismatches, max residual)` for value pairs under `tol`.
#[derive(Default)]
struct Tally {
    mismatches: usize,
    residual: f64,
}

impl Tally {
    fn compare<T: Scalar>(&mut self, lhs: &T, rhs: &T, tol: &Tolerance) {
        let diff = (lhs.clone() - rhs.clone()).magnitude();
        self.residual = self.residual.max(diff);
        if !lhs.approx_eq(rhs, tol) {
            self.mismatches += 1;
        }
    }

    fn outcome(self) -> Outcome {
        Outcome::exact(self.mismatches, self.residual)
    }
}

fn identities<T: Scalar>(cfg: &RunConfig, rec: &mut Recorder) {
    let tol = cfg.tolerance;
    let samples = cfg.samples_for(Suite::Identities);
    let max_n = cfg.max_n;
    let cs = cfg.parsed_c().expect("validated");
    let pairs = cfg.parsed_c_pairs().expect("validated");
    let seed = cfg.seed;
    let backend = T::BACKEND;

    for n in 1..=max_n {
        rec.run("q_fast_matches_naive", json!({"n": n, "samples": samples, "backend": backend}), || {
            let mut r = rng(seed ^ (n as u64) << 8);
            let mut t = Tally::default();
            for _ in 0..samples {
                let args: Vec<Matrix<T>> = (0..n).map(|_| lift(&exact_matrix(&mut r, 2 * n))).collect();
                t.compare(&q_fast(&args).map_err(err)?, &q_naive(&args).map_err(err)?, &tol);
            }
            Ok(t.outcome())
        });
    }

    rec.run("q_two_by_two", json!({"samples": samples}), || {
        let mut r = rng(seed ^ 0x22);
        let mut t = Tally::default();
        for _ in 0..samples.max(1) {
            let a = exact_matrix(&mut r, 2);
            let expected = (a[(0, 1)].clone() - a[(1, 0)].clone()) * GaussianRational::from_i64(2);
            t.compare(&q_naive(&[lift::<T>(&a)]).map_err(err)?, &T::from_gaussian_rational(&expected), &tol);
        }
        Ok(t.outcome())
    });

    rec.run("q_of_d_c", json!({"c": cfg.c}), || {
        let mut t = Tally::default();
        for c in &cs {
            let c = T::from_gaussian_rational(c);
            let d = crate::so::d_c(&c).map_err(err)?;
            t.compare(&q_naive(&[d]).map_err(err)?, &d_c_q_value(&c), &tol);
        }
        Ok(t.outcome())
    });

    rec.run("q_n_pfaffian", json!({"max_n": max_n, "samples": samples}), || {
        let mut r = rng(seed ^ 0x3f);
        let mut t = Tally::default();
        for n in 1..=max_n {
            let k = T::from_i64(pair_orientation_factor(n as u32) as i64 * factorial(n));
            for _ in 0..samples {
                let a: Matrix<T> = lift(&exact_matrix(&mut r, 2 * n));
                let pf = pfaffian(&a.skew_part().map_err(err)?).map_err(err)?;
                t.compare(&q_n(&a).map_err(err)?, &(k.clone() * pf), &tol);
            }
        }
        Ok(t.outcome())
    });

    for n in 2..=max_n {
        rec.run("block_expansion", json!({"n": n, "samples": samples}), || {
            let mut r = rng(seed ^ 0xb10c ^ n as u64);
            let mut t = Tally::default();
            for _ in 0..samples {
                let bs: Vec<Matrix<T>> = (0..n).map(|_| lift(&exact_matrix(&mut r, 2 * n - 2))).collect();
                let cs: Vec<Matrix<T>> = (0..n).map(|_| lift(&exact_matrix(&mut r, 2))).collect();
                let args = bs
                    .iter()
                    .zip(&cs)
                    .map(|(b, c)| block_diag(&[b.clone(), c.clone()]))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(err)?;
                let mut rhs = T::zero();
                for (i, c) in cs.iter().enumerate() {
                    let rest: Vec<_> = bs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, b)| b.clone()).collect();
                    rhs = rhs + q_fast(&rest).map_err(err)? * q_fast(std::slice::from_ref(c)).map_err(err)?;
                }
                t.compare(&q_fast(&args).map_err(err)?, &rhs, &tol);
            }
            Ok(t.outcome())
        });
    }

    for n in 2..=max_n {
        rec.run("qkl_recursion", json!({"n": n, "samples": samples}), || {
            let mut r = rng(seed ^ 0x4c ^ n as u64);
            let mut t = Tally::default();
            for _ in 0..samples {
                let (b1, b2): (Matrix<T>, Matrix<T>) =
                    (lift(&exact_matrix(&mut r, 2 * n - 2)), lift(&exact_matrix(&mut r, 2 * n - 2)));
                let (c1, c2): (Matrix<T>, Matrix<T>) = (lift(&exact_matrix(&mut r, 2)), lift(&exact_matrix(&mut r, 2)));
                let a1 = block_diag(&[b1.clone(), c1.clone()]).map_err(err)?;
                let a2 = block_diag(&[b2.clone(), c2.clone()]).map_err(err)?;
                let (qc1, qc2) = (q_fast(&[c1]).map_err(err)?, q_fast(&[c2]).map_err(err)?);
                for k in 0..=n as i64 {
                    let l = n as i64 - k;
                    let rhs = T::from_i64(k) * q_kl(&b1, &b2, k - 1, l).map_err(err)? * qc1.clone()
                        + T::from_i64(l) * q_kl(&b1, &b2, k, l - 1).map_err(err)? * qc2.clone();
                    t.compare(&q_kl(&a1, &a2, k, l).map_err(err)?, &rhs, &tol);
                }
            }
            Ok(t.outcome())
        });
    }

    let so4 = |s: u64| -> Result<Matrix<T>, String> { random_so::<T>(4, s).map_err(err) };

    rec.run("q_of_iota", json!({"c": cfg.c, "n": [3, max_n]}), || {
        let mut t = Tally::default();
        for s in 0..samples.clamp(1, 3) as u64 {
            let a = so4(seed + 100 + s)?;
            let q2 = q_n(&a).map_err(err)?;
            for c in &cs {
                let c = T::from_gaussian_rational(c);
                let x = d_c_q_value(&c);
                for n in 3..=max_n {
                    let lhs = q_n(&embed_block(&a, &c, n).map_err(err)?).map_err(err)?;
                    let rhs = T::from_ratio(1, 2) * x.powi(n as i64 - 2) * T::from_i64(factorial(n)) * q2.clone();
                    t.compare(&lhs, &rhs, &tol);
                }
            }
        }
        Ok(t.outcome())
    });

    rec.run("mixed_q_of_iota", json!({"c_pairs": cfg.c_pairs, "n": [3, max_n]}), || {
        let mut t = Tally::default();
        for s in 0..samples.clamp(1, 3) as u64 {
            let (a1, a2) = (so4(seed + 200 + s)?, so4(seed + 300 + s)?);
            let q11 = q_kl(&a1, &a2, 1, 1).map_err(err)?;
            let q2 = q_n(&a1).map_err(err)?;
            for (c1, c2) in &pairs {
                let (c1, c2) = (T::from_gaussian_rational(c1), T::from_gaussian_rational(c2));
                let (x1, x2) = (d_c_q_value(&c1), d_c_q_value(&c2));
                for n in 3..=max_n as i64 {
                    let nu = n as usize;
                    let lhs = q_kl(
                        &embed_block(&a1, &c1, nu).map_err(err)?,
                        &embed_block(&a2, &c2, nu).map_err(err)?,
                        n - 1,
                        1,
                    )
                    .map_err(err)?;
                    let f = T::from_i64(factorial(nu - 1));
                    let rhs = x1.powi(n - 2) * f.clone() * q11.clone()
                        + T::from_ratio(1, 2) * x2.clone() * x1.powi(n - 3) * T::from_i64(n - 2) * f * q2.clone();
                    t.compare(&lhs, &rhs, &tol);
                }
            }
        }
        Ok(t.outcome())
    });

    let word_len = cfg.max_len.min(3);
    let free_rep = |s: u64| -> Result<Representation<T>, String> {
        Representation::new(
            crate::linalg::Form::Standard,
            GroupTag::Free,
            [(1, so4(s)?), (2, so4(s + 1)?)],
        )
        .map_err(err)
    };

    rec.run("obvious_embedding_q_vanishes", json!({"n": [3, max_n], "max_len": word_len}), || {
        let rep = free_rep(seed + 400)?;
        let mut t = Tally::default();
        for n in 3..=max_n {
            let img = alpha_c1c2(&rep, &T::one(), &T::one(), n).map_err(err)?;
            let asg = img.assignment().map_err(err)?;
            for item in WordImages::new(&asg, word_len, 2) {
                let (_, m) = item.map_err(err)?;
                t.compare(&q_n(&m).map_err(err)?, &T::zero(), &tol);
            }
        }
        Ok(t.outcome())
    });

    rec.run("alpha_trace_pushforward", json!({"c_pairs": cfg.c_pairs, "n": max_n, "max_len": cfg.max_len}), || {
        let rep = free_rep(seed + 500)?;
        let asg = rep.assignment().map_err(err)?;
        let mut t = Tally::default();
        for (c1, c2) in &pairs {
            let (c1, c2) = (T::from_gaussian_rational(c1), T::from_gaussian_rational(c2));
            let img = alpha_c1c2(&rep, &c1, &c2, max_n).map_err(err)?;
            let img_asg = img.assignment().map_err(err)?;
            let base = WordImages::new(&asg, cfg.max_len, 2);
            let pushed = WordImages::new(&img_asg, cfg.max_len, 2);
            for (x, y) in base.zip(pushed) {
                let ((w, m), (_, mi)) = (x.map_err(err)?, y.map_err(err)?);
                let (w1, w2) = abelianize(&w).map_err(err)?;
                let c = c1.powi(w1) * c2.powi(w2);
                let shift = (c.clone() + T::one() / c) * T::from_i64(max_n as i64 - 2);
                t.compare(&mi.trace(), &(m.trace() + shift), &tol);
            }
        }
        Ok(t.outcome())
    });

    rec.run("sigma_negates_q_n", json!({"dims": [4, 6], "max_len": word_len}), || {
        let mut t = Tally::default();
        for d in [4usize, 6] {
            let rep = Representation::new(
                crate::linalg::Form::Standard,
                GroupTag::Free,
                [
                    (1, random_so::<T>(d, seed + 600).map_err(err)?),
                    (2, random_so::<T>(d, seed + 601).map_err(err)?),
                ],
            )
            .map_err(err)?;
            let sigma = sigma_involution(&rep).map_err(err)?;
            let (a1, a2) = (rep.assignment().map_err(err)?, sigma.assignment().map_err(err)?);
            for (x, y) in WordImages::new(&a1, word_len, 2).zip(WordImages::new(&a2, word_len, 2)) {
                let ((_, m1), (_, m2)) = (x.map_err(err)?, y.map_err(err)?);
                t.compare(&q_n(&m2).map_err(err)?, &-q_n(&m1).map_err(err)?, &tol);
            }
        }
        Ok(t.outcome())
    });
}

/// `|Q_n(m)| / (2^n n! max|m|^n)`: `Q_n` measured against the size its terms
/// can reach for entries of magnitude `max|m|`.
pub fn normalized_q(m: &Matrix<Complex64>) -> Result<f64, crate::q::QError> {
    let n = m.rows() / 2;
    let value = q_n(m)?.norm();
    let scale = pair_orientation_factor(n as u32) as f64
        * factorial(n) as f64
        * m.max_magnitude().max(f64::MIN_POSITIVE).powi(n as i32);
    Ok(value / scale)
}

/// Seeds for the random parameters of the counterexample construction.
pub fn counterexample_params(
    n: usize,
    seed: u64,
) -> Result<(Matrix<Complex64>, Option<Matrix<Complex64>>), crate::so::SoError> {
    let a5 = random_so::<Complex64>(5, seed)?;
    let a2m = if n >= 9 {
        Some(random_so::<Complex64>(2 * n - 14, seed.wrapping_add(1 << 32))?)
    } else {
        None
    };
    Ok((a5, a2m))
}

fn counterexample(cfg: &RunConfig, rec: &mut Recorder) {
    let tol = cfg.tolerance;
    let (n, p, q) = (cfg.n, cfg.p, cfg.q);
    for s in 0..cfg.samples_for(Suite::Counterexample) as u64 {
        let seed = cfg.seed + s;
        let params = json!({"n": n, "p": p, "q": q, "seed": seed});
        let built = counterexample_params(n, seed)
            .and_then(|(a5, a2m)| rho_construction(n, p, q, &a5, a2m.as_ref(), &tol))
            .and_then(|rho| Ok((sigma_involution(&rho)?, rho)));
        let (sigma, rho) = match built {
            Ok(pair) => pair,
            Err(e) => {
                rec.run("summands_irreducible", params, || Err(e.to_string()));
                continue;
            }
        };

        rec.run("summands_irreducible", params.clone(), || {
            let gens: Vec<_> = rho.generators().values().cloned().collect();
            let total = commutant_dimension(&gens, &tol).map_err(err)?;
            let mut per_block = Vec::new();
            for b in 0..rho.blocks().len() {
                per_block.push(is_irreducible(&rho.block_restriction(b).map_err(err)?, &tol).map_err(err)?);
            }
            let pass = total == rho.blocks().len() && per_block.iter().all(|&x| x);
            Ok(Outcome {
                pass,
                residual: None,
                detail: Some(format!("commutant dimension {total}, blocks {:?}", rho.blocks())),
            })
        });

        rec.run("eigenvalue_one_multiplicity", params.clone(), || {
            let alpha = rho.block_restriction(0).map_err(err)?;
            let mut mults = Vec::new();
            for m in alpha.generators().values() {
                mults.push(eigen_multiplicity(m, &Complex64::new(1.0, 0.0), &tol).map_err(err)?);
            }
            Ok(Outcome {
                pass: mults.iter().all(|&k| k >= 2),
                residual: None,
                detail: Some(format!("multiplicities {mults:?}")),
            })
        });

        rec.run("traces_agree", json!({"n": n, "seed": seed, "max_len": cfg.max_len}), || {
            let report = trace_separation(&rho, &sigma, cfg.max_len, &Tolerance::new(cfg.trace_eps, 0.0, tol.rank_pivot_eps))
                .map_err(err)?;
            Ok(Outcome {
                pass: report.verdict == SeparationVerdict::IndistinguishableToLength,
                residual: Some(report.max_residual),
                detail: report.witness.map(|w| format!("traces differ on {w}")),
            })
        });

        rec.run("q_vanishes", json!({"n": n, "seed": seed, "max_len": cfg.max_len}), || {
            let asg = rho.assignment().map_err(err)?;
            let mut worst: f64 = 0.0;
            for item in WordImages::new(&asg, cfg.max_len, 2) {
                let (_, m) = item.map_err(err)?;
                worst = worst.max(normalized_q(&m).map_err(err)?);
            }
            Ok(Outcome {
                pass: worst <= cfg.q_eps,
                residual: Some(worst),
                detail: None,
            })
        });

        rec.run("not_so_conjugate", params.clone(), || {
            let cert = if rho.blocks().len() > 1 {
                so_conjugacy_certificate_blocks(&rho, &sigma, &tol)
            } else {
                so_conjugacy_certificate(&rho, &sigma, &tol)
            }
            .map_err(err)?;
            let worst = cert
                .determinants
                .iter()
                .map(|z| (z + 1.0).norm())
                .fold(0.0, f64::max);
            let pass = cert.verdict == ConjugacyVerdict::OButNotSoConjugate
                && cert.intertwiner_dim == rho.blocks().len()
                && worst <= cfg.det_eps;
            Ok(Outcome {
                pass,
                residual: Some(worst),
                detail: Some(format!("{:?}, intertwiner dimension {}", cert.verdict, cert.intertwiner_dim)),
            })
        });
    }
}

fn fraction_outcome(successes: usize, total: usize, min_fraction: f64) -> Outcome {
    let fraction = successes as f64 / total as f64;
    Outcome {
        pass: fraction >= min_fraction,
        residual: Some(1.0 - fraction),
        detail: Some(format!("{successes}/{total}")),
    }
}

fn genericity(cfg: &RunConfig, rec: &mut Recorder) {
    let samples = cfg.samples_for(Suite::Genericity);
    if samples == 0 {
        return;
    }
    let tol = cfg.tolerance;
    let seeds = cfg.seed..cfg.seed + samples as u64;
    let frame = Sym2Frame::new();

    rec.run(
        "eta_generically_irreducible",
        json!({"m": cfg.eta_m, "p": cfg.eta_p, "q": cfg.eta_q, "samples": samples}),
        || {
            let mut ok = 0;
            for s in seeds.clone() {
                let a = random_so::<Complex64>(2 * cfg.eta_m, s).map_err(err)?;
                let rep = eta_a(&a, cfg.eta_p, cfg.eta_q, cfg.eta_m, &tol).map_err(err)?;
                ok += is_irreducible(&rep, &tol).map_err(err)? as usize;
            }
            Ok(fraction_outcome(ok, samples, cfg.min_fraction))
        },
    );

    rec.run(
        "alpha_psi_generically_irreducible",
        json!({"p": cfg.p, "q": cfg.q, "samples": samples}),
        || {
            let mut ok = 0;
            for s in seeds.clone() {
                let a = random_so::<Complex64>(5, s).map_err(err)?;
                let psi = psi_a(&a, cfg.p, cfg.q, &tol).map_err(err)?;
                let gens = psi
                    .generators()
                    .iter()
                    .map(|(&g, m)| Ok((g, frame.alpha14(m, &tol)?)))
                    .collect::<Result<Vec<_>, crate::so::SoError>>()
                    .map_err(err)?;
                let rep = Representation::new(crate::linalg::Form::Standard, psi.group(), gens).map_err(err)?;
                ok += is_irreducible(&rep, &tol).map_err(err)? as usize;
            }
            Ok(fraction_outcome(ok, samples, cfg.min_fraction))
        },
    );

    rec.run("f_span_cyclic", json!({}), || {
        let k = f_span_dimension(&cyclic_permutation::<Complex64>(), &frame, &tol).map_err(err)?;
        Ok(Outcome {
            pass: k == 4,
            residual: None,
            detail: Some(format!("dimension {k}")),
        })
    });

    rec.run("f_span_generic", json!({"samples": samples}), || {
        let mut ok = 0;
        for s in seeds.clone() {
            let a = random_so::<Complex64>(5, s).map_err(err)?;
            ok += (f_span_dimension(&a, &frame, &tol).map_err(err)? == 4) as usize;
        }
        Ok(fraction_outcome(ok, samples, cfg.min_fraction))
    });
}

fn separation<T: Scalar>(cfg: &RunConfig, rec: &mut Recorder) {
    let tol = cfg.tolerance;
    for s in 0..cfg.samples_for(Suite::Separation) as u64 {
        let seed = cfg.seed + s;
        let built = (|| -> Result<_, String> {
            let rep = Representation::new(
                crate::linalg::Form::Standard,
                GroupTag::Free,
                [
                    (1, random_so::<T>(4, 2 * seed).map_err(err)?),
                    (2, random_so::<T>(4, 2 * seed + 1).map_err(err)?),
                ],
            )
            .map_err(err)?;
            let sigma = sigma_involution(&rep).map_err(err)?;
            Ok((rep, sigma))
        })();
        let params = json!({"dim": 4, "seed": seed, "max_len": cfg.max_len});
        let (rep, sigma) = match built {
            Ok(x) => x,
            Err(e) => {
                rec.run("q_separates_sigma_image", params, || Err(e));
                continue;
            }
        };
        rec.run("q_separates_sigma_image", params.clone(), || {
            let report = q_separation(&rep, &sigma, 2, &tol).map_err(err)?;
            Ok(Outcome {
                pass: report.verdict == SeparationVerdict::Separated,
                residual: None,
                detail: report.witness.as_ref().map(Word::to_string),
            })
        });
        rec.run("traces_blind_to_sigma", params, || {
            let report = trace_separation(&rep, &sigma, cfg.max_len, &tol).map_err(err)?;
            Ok(Outcome {
                pass: report.verdict == SeparationVerdict::IndistinguishableToLength,
                residual: Some(report.max_residual),
                detail: report.witness.as_ref().map(Word::to_string),
            })
        });
    }
}
