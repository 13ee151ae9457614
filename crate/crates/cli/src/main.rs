use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use soinv_core::analysis::{q_separation, trace_separation, SeparationReport};
use soinv_core::io::{any_matrix_from_json, document_backend, load_rep, AnyMatrix, JsonScalar};
use soinv_core::linalg::{Backend, Complex64, GaussianRational, Matrix, Tolerance};
use soinv_core::q::{q_eval, QMode};
use soinv_core::report::{run_suite, ConfigError, RunConfig, Suite};

mod construct;

#[derive(Parser)]
#[command(name = "soinv", version, about = "Q invariants and orthogonal representation checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate Q on a JSON array of 2n x 2n matrices.
    QEval {
        #[arg(long)]
        args: PathBuf,
        /// Use the literal permutation sum (2n <= 10).
        #[arg(long)]
        naive: bool,
    },
    /// Build a matrix or representation and print it as JSON.
    Construct {
        #[arg(long, value_enum)]
        what: construct::What,
        /// Inline JSON object or a path to a JSON file.
        #[arg(long, default_value = "{}")]
        params: String,
    },
    /// Run verification suites and print their reports.
    Verify {
        /// One suite, or several separated by commas.
        #[arg(long, default_value = "identities")]
        suite: String,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Search for a word on which an invariant tells two representations apart.
    Separate {
        #[arg(long = "repA")]
        rep_a: PathBuf,
        #[arg(long = "repB")]
        rep_b: PathBuf,
        #[arg(long, value_enum, default_value = "trace")]
        invariant: Invariant,
        #[arg(long = "maxlen", default_value_t = 4)]
        max_len: usize,
        /// Accept generators that fail the group membership check.
        #[arg(long)]
        lenient: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Invariant {
    Trace,
    Q,
}

/// Errors that map to exit status 2.
#[derive(Debug)]
struct UsageError(anyhow::Error);

impl<E: Into<anyhow::Error>> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether every check passed.
fn run(cli: Cli) -> Result<bool, UsageError> {
    let tol = env_tolerance(Tolerance::default())?;
    match cli.command {
        Command::QEval { args, naive } => {
            let mode = if naive { QMode::Naive } else { QMode::Fast };
            let value = q_eval_file(&args, mode)?;
            print_json(&json!({"value": value, "mode": mode}));
        }
        Command::Construct { what, params } => {
            let params = read_json_arg(&params)?;
            print_json(&construct::build(what, &params, &tol)?);
        }
        Command::Verify { suite, config } => {
            let mut cfg: RunConfig = match &config {
                Some(path) => serde_json::from_value(read_json_file(path)?)
                    .with_context(|| format!("reading config {}", path.display()))?,
                None => RunConfig::default(),
            };
            cfg.tolerance = env_tolerance(cfg.tolerance)?;
            let suites = suite
                .split(',')
                .map(|s| s.trim().parse::<Suite>())
                .collect::<Result<Vec<_>, ConfigError>>()?;
            for &s in &suites {
                cfg.validate(s)?;
            }
            let mut reports = Vec::new();
            for s in suites {
                reports.push(run_suite(&cfg, s)?);
            }
            let all_pass = reports.iter().all(|r| r.passed());
            for r in &reports {
                for c in r.failures() {
                    eprintln!("FAIL {} [{}]: {}", c.id, c.anchor, c.detail.as_deref().unwrap_or(""));
                }
            }
            let doc = serde_json::to_value(&reports).context("serializing reports")?;
            if let Some(out) = &cfg.output {
                std::fs::write(out, serde_json::to_string_pretty(&doc)? + "\n")
                    .with_context(|| format!("writing {}", out.display()))?;
            }
            print_json(&doc);
            return Ok(all_pass);
        }
        Command::Separate {
            rep_a,
            rep_b,
            invariant,
            max_len,
            lenient,
        } => {
            let backend = document_backend(&read_json_file(&rep_a)?)?;
            let report = match backend {
                Backend::Exact => separate::<GaussianRational>(&rep_a, &rep_b, invariant, max_len, !lenient, &tol)?,
                Backend::Float => separate::<Complex64>(&rep_a, &rep_b, invariant, max_len, !lenient, &tol)?,
            };
            print_json(&serde_json::to_value(&report)?);
        }
    }
    Ok(true)
}

fn separate<T: JsonScalar>(
    a: &Path,
    b: &Path,
    invariant: Invariant,
    max_len: usize,
    strict: bool,
    tol: &Tolerance,
) -> anyhow::Result<SeparationReport> {
    let mut reps = Vec::new();
    for path in [a, b] {
        let loaded = load_rep::<T>(path, strict, tol).with_context(|| format!("loading {}", path.display()))?;
        if let Some(w) = loaded.warning {
            eprintln!("warning: {}: {w}", path.display());
        }
        reps.push(loaded.rep);
    }
    Ok(match invariant {
        Invariant::Trace => trace_separation(&reps[0], &reps[1], max_len, tol)?,
        Invariant::Q => q_separation(&reps[0], &reps[1], max_len, tol)?,
    })
}

fn q_eval_file(path: &Path, mode: QMode) -> anyhow::Result<Value> {
    let doc = read_json_file(path)?;
    let items = match &doc {
        Value::Array(items) => items.clone(),
        Value::Object(o) if o.contains_key("args") => o["args"]
            .as_array()
            .cloned()
            .ok_or_else(|| anyhow!("\"args\" must be an array"))?,
        _ => bail!("expected an array of matrices or {{\"args\": [...]}}"),
    };
    let mats = items.iter().map(any_matrix_from_json).collect::<Result<Vec<_>, _>>()?;
    if mats.iter().all(|m| matches!(m, AnyMatrix::Exact(_))) {
        let args: Vec<Matrix<GaussianRational>> = mats
            .into_iter()
            .map(|m| match m {
                AnyMatrix::Exact(m) => m,
                AnyMatrix::Float(_) => unreachable!(),
            })
            .collect();
        Ok(Value::from(q_eval(&args, mode)?.to_json().to_vec()))
    } else if mats.iter().all(|m| matches!(m, AnyMatrix::Float(_))) {
        let args: Vec<Matrix<Complex64>> = mats
            .into_iter()
            .map(|m| match m {
                AnyMatrix::Float(m) => m,
                AnyMatrix::Exact(_) => unreachable!(),
            })
            .collect();
        Ok(Value::from(q_eval(&args, mode)?.to_json().to_vec()))
    } else {
        bail!("all arguments must share one backend")
    }
}

/// Applies `SOINV_ABS_EPS`, `SOINV_REL_EPS` and `SOINV_RANK_EPS`.
fn env_tolerance(mut tol: Tolerance) -> anyhow::Result<Tolerance> {
    for (var, slot) in [
        ("SOINV_ABS_EPS", &mut tol.abs_eps),
        ("SOINV_REL_EPS", &mut tol.rel_eps),
        ("SOINV_RANK_EPS", &mut tol.rank_pivot_eps),
    ] {
        if let Ok(text) = std::env::var(var) {
            let v: f64 = text.trim().parse().with_context(|| format!("{var}={text:?} is not a number"))?;
            if v.is_nan() || v < 0.0 {
                bail!("{var} must be nonnegative, got {v}");
            }
            *slot = v;
        }
    }
    Ok(tol)
}

fn read_json_file(path: &Path) -> anyhow::Result<Value> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_json_arg(arg: &str) -> anyhow::Result<Value> {
    match serde_json::from_str(arg) {
        Ok(v) => Ok(v),
        Err(_) if Path::new(arg).exists() => read_json_file(Path::new(arg)),
        Err(e) => Err(anyhow!("--params is neither JSON nor a file: {e}")),
    }
}

fn print_json(v: &Value) {
    use std::io::Write;
    // A closed pipe (`soinv ... | head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string_pretty(v).expect("values serialize"));
}
