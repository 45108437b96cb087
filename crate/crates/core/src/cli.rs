//! Command-line front end. `run` parses argv, dispatches to the library and
//! returns the exit status with a JSON document for standard output.
//!
//! Exit status: 0 on success, 2 on usage errors (bad flags, unreadable or
//! malformed input file), 3 on domain errors.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::charfn::{self, POLE_TOL};
use crate::eigensolve::{self, LeftSearchOptions};
use crate::error::Error;
use crate::qmatrix::QMatrix;
use crate::quaternion::Quaternion;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

const DEFAULT_STEPS: [f64; 5] = [1e-1, 1e-2, 1e-3, 1e-4, 1e-5];

#[derive(Parser, Debug)]
#[command(name = "quatchar", version, about = "Left eigenvalues and characteristic functions of quaternionic matrices")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Args, Debug)]
struct Input {
    /// Matrix file: {"n": N, "entries": [[...], ...]}
    #[arg(long, value_name = "PATH")]
    input: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// Study determinant of the matrix.
    Sdet(Input),
    /// Characteristic function report.
    Charfn(Input),
    /// Evaluate the characteristic function at a point.
    Eval {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_quat_arg)]
        lambda: Quaternion,
        /// Relative pole tolerance.
        #[arg(long, value_parser = parse_positive)]
        tol: Option<f64>,
    },
    /// Pole of a 3×3 matrix with nonzero top right entry.
    Pole(Input),
    /// Hamilton–Cayley residual.
    HcCheck(Input),
    /// Left eigenvalues by certified multistart search.
    LeftEigs {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        seed: Option<u64>,
        /// Acceptance factor relative to the matrix scale.
        #[arg(long, value_parser = parse_positive)]
        tol: Option<f64>,
    },
    /// Right eigenvalue representatives.
    RightEigs(Input),
    /// det c(A − λId) at λ = x + jy.
    Sigma {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_quat_arg)]
        lambda: Quaternion,
    },
    /// Values of the characteristic function approaching the pole.
    DemoDiscontinuity {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_quat_arg)]
        direction: Quaternion,
        /// Comma-separated step sizes.
        #[arg(long, value_parser = parse_steps)]
        steps: Option<Steps>,
    },
    /// The naive substitution into σ for [[0, i], [j, 0]].
    DemoCounterexample,
}

/// Grammar string such as `1-i+2j` or a JSON array `[w, x, y, z]`.
fn parse_quat_arg(s: &str) -> Result<Quaternion, String> {
    let t = s.trim();
    if t.starts_with('[') {
        let v: [f64; 4] = serde_json::from_str(t).map_err(|e| e.to_string())?;
        Ok(Quaternion::from_array(v))
    } else {
        t.parse::<Quaternion>().map_err(|e| e.to_string())
    }
}

fn parse_positive(s: &str) -> Result<f64, String> {
    match s.trim().parse::<f64>() {
        Ok(v) if v.is_finite() && v > 0.0 => Ok(v),
        _ => Err(format!("expected a positive real, got {s:?}")),
    }
}

#[derive(Debug, Clone)]
struct Steps(Vec<f64>);

fn parse_steps(s: &str) -> Result<Steps, String> {
    Ok(Steps(s.split(',').map(parse_positive).collect::<Result<Vec<_>, _>>()?))
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

/// Runs one command. `args[0]` is the program name.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (EXIT_OK, render(&json!({"help": e.to_string()}))),
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    (EXIT_USAGE, render(&json!({"error": "usage", "detail": e.to_string()})))
                }
                _ => (EXIT_USAGE, render(&json!({"error": "usage", "detail": e.render().to_string()}))),
            };
        }
    };
    match dispatch(cli.verb) {
        Ok(v) => (EXIT_OK, render(&v)),
        Err(Failure::Usage(detail)) => (EXIT_USAGE, render(&json!({"error": "usage", "detail": detail}))),
        Err(Failure::Domain(e)) => (EXIT_DOMAIN, render(&json!({"error": e.code(), "detail": e.to_string()}))),
    }
}

fn read_matrix(path: &Path) -> Result<QMatrix, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn dispatch(verb: Verb) -> Result<Value, Failure> {
    Ok(match verb {
        Verb::Sdet(i) => json!({"sdet": read_matrix(&i.input)?.sdet()}),
        Verb::Pole(i) => json!({"pole": charfn::pole(&read_matrix(&i.input)?)?}),
        Verb::HcCheck(i) => json!({"residual": charfn::hc_residual(&read_matrix(&i.input)?)?}),
        Verb::Charfn(i) => {
            let cf = charfn::charfn(&read_matrix(&i.input)?)?;
            let pole_value = cf.pole.map(|p| cf.eval(p));
            json!({
                "kind": cf.kind,
                "norm_constant": cf.norm_constant,
                "pole": cf.pole,
                "pole_value": pole_value,
                "expr": cf.generic_expr.to_string(),
                "pole_expr": cf.pole_expr.as_ref().map(|e| e.to_string()),
            })
        }
        Verb::Eval { input, lambda, tol } => {
            let a = read_matrix(&input.input)?;
            let cf = charfn::charfn(&a)?;
            let tol = tol.unwrap_or(POLE_TOL);
            let at_pole = cf.pole.is_some_and(|p| (lambda - p).norm() <= tol * (1.0 + p.norm()));
            let value = cf.eval_with_pole_tol(lambda, tol);
            json!({
                "lambda": lambda,
                "value": value,
                "at_pole": at_pole,
                "norm_constant": cf.norm_constant,
                "scaled_norm": cf.norm_constant * value.norm(),
                "sdet": a.shifted(lambda).sdet(),
            })
        }
        Verb::LeftEigs { input, seed, tol } => {
            let a = read_matrix(&input.input)?;
            let mut opts = LeftSearchOptions::default();
            if let Some(seed) = seed {
                opts.seed = seed;
            }
            if let Some(tol) = tol {
                opts.accept_factor = tol;
            }
            let res = eigensolve::left_eigenvalues_with(&a, &opts)?;
            let mut v = serde_json::to_value(&res).expect("spectrum serializes");
            v["label"] = json!("certified roots (possibly incomplete)");
            v["certificate_residuals"] = json!(res.certificates.iter().map(|c| c.residual).collect::<Vec<_>>());
            v
        }
        Verb::RightEigs(i) => {
            serde_json::to_value(eigensolve::right_eigenvalues(&read_matrix(&i.input)?)?).expect("spectrum serializes")
        }
        Verb::Sigma { input, lambda } => {
            let a = read_matrix(&input.input)?;
            let (x, y) = lambda.complex_parts();
            let s = eigensolve::sigma(&a, x, y)?;
            json!({"lambda": lambda, "x": complex_json(x), "y": complex_json(y), "sigma": s})
        }
        Verb::DemoDiscontinuity { input, direction, steps } => {
            if direction.is_zero() {
                return Err(Failure::Usage("--direction must be nonzero".into()));
            }
            let steps = steps.map_or_else(|| DEFAULT_STEPS.to_vec(), |s| s.0);
            let a = read_matrix(&input.input)?;
            let cf = charfn::charfn(&a)?;
            let values = cf.directional_pole_limit(direction, &steps)?;
            let pole = cf.pole.expect("directional values imply a pole");
            let rows: Vec<Value> =
                steps.iter().zip(&values).map(|(e, v)| json!({"epsilon": e, "value": v})).collect();
            json!({
                "pole": pole,
                "pole_value": cf.eval(pole),
                "direction": direction,
                "rows": rows,
                "limit": charfn::directional_limit(&a, direction)?,
            })
        }
        Verb::DemoCounterexample => json!({"sigma_matrix": eigensolve::sigma_counterexample_check()}),
    })
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// Compact JSON with every float rounded to 12 significant digits.
pub fn render(v: &Value) -> String {
    serde_json::to_string(&round_value(v)).expect("json values serialize")
}

fn round_value(v: &Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().unwrap();
            let r: f64 = format!("{x:.11e}").parse().unwrap();
            json!(if r == 0.0 { 0.0 } else { r })
        }
        Value::Array(a) => Value::Array(a.iter().map(round_value).collect()),
        Value::Object(o) => Value::Object(o.iter().map(|(k, v)| (k.clone(), round_value(v))).collect()),
        other => other.clone(),
    }
}
