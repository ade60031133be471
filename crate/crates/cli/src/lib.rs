//! Command-line front end: argument parsing, file I/O and output formatting
//! over the `fpk` kernel.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use fpk::algebra::parse_rational;
use fpk::freeconv::{convolve, universal_polynomial, ConvKind, Law};
use fpk::harness::run_suites;
use fpk::measures::{
    act_scale, act_shift, boxdot_spec, boxplus_spec, cumulants_of, frobenius, is_cond_pos_def, moments_of,
    star_classical, teichmuller, v_shift, MeasureSpec,
};
use fpk::transforms::{
    boxdot, exp_boxtimes, exp_boxtimes_ns, exp_circle, exp_iso, exp_neg_r, inverse_transform, log_boxtimes,
    log_boxtimes_ns, squareast, transform, ExpDirection, TransformKind,
};
use fpk::witt::{artin_hasse, ghost, ghost_polynomial, witt_add, witt_mul, witt_polynomial_law, WittLaw, WittVector};
use fpk::{Error, QSeq, QSeries, Rational, Result};

/// Default order for measure specs given without `--order`.
const DEFAULT_ORDER: usize = 8;

#[derive(Parser)]
#[command(name = "fpk", version, about = "Exact free-probability convolution kernel")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convolve two moment sequences or measure specs.
    Conv {
        #[arg(long)]
        op: ConvOp,
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Apply a transform to a sequence, or invert one on a series.
    Transform {
        #[arg(long)]
        kind: TransformArg,
        #[arg(long)]
        inverse: bool,
        input: PathBuf,
    },
    /// Print a universal polynomial.
    Poly {
        #[arg(long)]
        law: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Witt vector operations.
    Witt {
        #[command(subcommand)]
        op: WittOp,
    },
    /// Measure-level operations.
    Measure {
        #[command(subcommand)]
        op: MeasureOp,
    },
    /// Run seeded verification suites.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long, default_value_t = 8)]
        order: usize,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConvOp {
    Boxplus,
    Boxtimes,
    Boxtimesns,
    Boxdot,
    Squareast,
    Star,
}

#[derive(Clone, Copy, ValueEnum)]
enum TransformArg {
    R,
    S,
    F,
    LogBoxtimes,
    LogBoxtimesNs,
    ExpBoxtimes,
    ExpBoxtimesNs,
    Exp,
    Log,
    ExpNegR,
    ExpCircle,
}

#[derive(Subcommand)]
enum WittOp {
    Ghost { input: PathBuf },
    Add { a: PathBuf, b: PathBuf },
    Mul { a: PathBuf, b: PathBuf },
    Ah { input: PathBuf },
}

#[derive(Args)]
struct SpecArgs {
    spec: PathBuf,
    #[arg(long)]
    order: Option<usize>,
}

#[derive(Subcommand)]
enum MeasureOp {
    Cumulants(SpecArgs),
    Moments(SpecArgs),
    /// Decide conditional positive definiteness of a cumulant sequence.
    Cpd(SpecArgs),
    /// Apply the shift or scaling action.
    Act {
        #[command(flatten)]
        target: SpecArgs,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "scale", required_unless_present = "scale")]
        shift: Option<String>,
        #[arg(long)]
        scale: Option<String>,
    },
    V(SpecArgs),
    Frob {
        #[command(flatten)]
        target: SpecArgs,
        #[arg(long)]
        n: u32,
    },
    Teich {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, default_value_t = DEFAULT_ORDER)]
        order: usize,
    },
}

/// Successful command output and whether it signals a suite failure.
struct Outcome {
    text: String,
    failed: bool,
}

impl From<Value> for Outcome {
    fn from(v: Value) -> Self {
        Outcome { text: v.to_string(), failed: false }
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// A JSON input is either a measure spec (has `"family"`) or a plain sequence.
enum Input {
    Spec(MeasureSpec),
    Seq(QSeq),
}

fn read_input(path: &Path) -> Result<Input> {
    let v = read_json(path)?;
    if v.get("family").is_some() {
        Ok(Input::Spec(MeasureSpec::from_json(&v)?))
    } else {
        Ok(Input::Seq(QSeq::from_json(&v)?))
    }
}

fn read_spec(path: &Path) -> Result<MeasureSpec> {
    match read_input(path)? {
        Input::Spec(s) => Ok(s),
        Input::Seq(s) => Ok(MeasureSpec::Moments(s)),
    }
}

fn read_seq(path: &Path) -> Result<QSeq> {
    QSeq::from_json(&read_json(path)?)
}

fn read_witt(path: &Path) -> Result<WittVector<Rational>> {
    WittVector::from_json(&read_json(path)?)
}

fn conv(op: ConvOp, a: Input, b: Input, order: Option<usize>) -> Result<Value> {
    if let (Input::Spec(x), Input::Spec(y)) = (&a, &b) {
        let n = order.unwrap_or(DEFAULT_ORDER);
        match op {
            ConvOp::Boxplus => return Ok(boxplus_spec(x, y, n)?.to_json()),
            ConvOp::Boxdot => return Ok(boxdot_spec(x, y, n)?.to_json()),
            _ => {}
        }
    }
    let moments = |i: Input| -> Result<QSeq> {
        match i {
            Input::Seq(s) => Ok(match order {
                Some(n) if n < s.order() => s.truncate(n),
                _ => s,
            }),
            Input::Spec(s) => moments_of(&s, order.unwrap_or(DEFAULT_ORDER)),
        }
    };
    let (a, b) = (moments(a)?, moments(b)?);
    let r = match op {
        ConvOp::Boxplus => convolve(ConvKind::BoxPlus, &a, &b)?,
        ConvOp::Boxtimes => convolve(ConvKind::BoxTimes, &a, &b)?,
        ConvOp::Boxtimesns => convolve(ConvKind::BoxTimesNs, &a, &b)?,
        ConvOp::Boxdot => boxdot(&a, &b)?,
        ConvOp::Squareast => squareast(&a, &b)?,
        ConvOp::Star => star_classical(&a, &b)?,
    };
    Ok(r.to_json())
}

fn run_transform(kind: TransformArg, inverse: bool, path: &Path) -> Result<Value> {
    let basic = match kind {
        TransformArg::R => Some(TransformKind::R),
        TransformArg::S => Some(TransformKind::S),
        TransformArg::F => Some(TransformKind::F),
        _ => None,
    };
    if let Some(k) = basic {
        return if inverse {
            Ok(inverse_transform(k, &QSeries::from_json(&read_json(path)?)?)?.to_json())
        } else {
            Ok(transform(k, &read_seq(path)?)?.to_json())
        };
    }
    let s = read_seq(path)?;
    let out = match kind {
        TransformArg::LogBoxtimes | TransformArg::ExpBoxtimes => {
            if matches!(kind, TransformArg::LogBoxtimes) != inverse {
                log_boxtimes(&s)?
            } else {
                exp_boxtimes(&s)?
            }
        }
        TransformArg::LogBoxtimesNs | TransformArg::ExpBoxtimesNs => {
            if matches!(kind, TransformArg::LogBoxtimesNs) != inverse {
                log_boxtimes_ns(&s)?
            } else {
                exp_boxtimes_ns(&s)?
            }
        }
        TransformArg::Exp | TransformArg::Log => {
            let exp = matches!(kind, TransformArg::Exp) != inverse;
            exp_iso(if exp { ExpDirection::Exp } else { ExpDirection::Log }, &s)?
        }
        TransformArg::ExpNegR | TransformArg::ExpCircle if inverse => {
            return Err(Error::Parameter("this transform has no inverse command".into()));
        }
        TransformArg::ExpNegR => return Ok(exp_neg_r(&s)?.to_json()),
        TransformArg::ExpCircle => return Ok(exp_circle(&s)?.to_json()),
        TransformArg::R | TransformArg::S | TransformArg::F => unreachable!(),
    };
    Ok(out.to_json())
}

fn poly(law: &str, n: usize, as_json: bool) -> Result<Outcome> {
    let p = match law {
        "W" => ghost_polynomial(n)?,
        "SW" | "PW" => witt_polynomial_law(law.parse::<WittLaw>()?, n)?,
        _ => universal_polynomial(law.parse::<Law>()?, n)?,
    };
    let text =
        if as_json { json!({"law": law, "n": n, "polynomial": p.to_string()}).to_string() } else { p.to_string() };
    Ok(Outcome { text, failed: false })
}

fn witt(op: WittOp) -> Result<Value> {
    Ok(match op {
        WittOp::Ghost { input } => ghost(&read_witt(&input)?).to_json(),
        WittOp::Add { a, b } => witt_add(&read_witt(&a)?, &read_witt(&b)?)?.to_json(),
        WittOp::Mul { a, b } => witt_mul(&read_witt(&a)?, &read_witt(&b)?)?.to_json(),
        WittOp::Ah { input } => artin_hasse(&read_witt(&input)?).to_json(),
    })
}

/// Order requested on the command line, or the natural order of a raw sequence.
fn spec_order(spec: &MeasureSpec, order: Option<usize>) -> usize {
    order.unwrap_or(match spec {
        MeasureSpec::Moments(s) | MeasureSpec::Cumulants(s) => s.order(),
        _ => DEFAULT_ORDER,
    })
}

fn measure(op: MeasureOp) -> Result<Value> {
    let load = |a: &SpecArgs| -> Result<(MeasureSpec, usize)> {
        let spec = read_spec(&a.spec)?;
        let n = spec_order(&spec, a.order);
        Ok((spec, n))
    };
    Ok(match op {
        MeasureOp::Cumulants(a) => {
            let (s, n) = load(&a)?;
            cumulants_of(&s, n)?.to_json()
        }
        MeasureOp::Moments(a) => {
            let (s, n) = load(&a)?;
            moments_of(&s, n)?.to_json()
        }
        MeasureOp::Cpd(a) => {
            let k = match read_input(&a.spec)? {
                Input::Seq(s) => s,
                Input::Spec(s) => {
                    let n = spec_order(&s, a.order);
                    cumulants_of(&s, n)?
                }
            };
            is_cond_pos_def(&k)?.to_json()
        }
        MeasureOp::Act { target, shift, scale } => {
            let (s, n) = load(&target)?;
            match (shift, scale) {
                (Some(r), _) => act_shift(&parse_rational(&r)?, &s, n)?.to_json(),
                (None, Some(c)) => act_scale(&parse_rational(&c)?, &s, n)?.to_json(),
                (None, None) => return Err(Error::Parameter("act needs --shift or --scale".into())),
            }
        }
        MeasureOp::V(a) => {
            let (s, n) = load(&a)?;
            v_shift(&s, n)?.to_json()
        }
        MeasureOp::Frob { target, n: k } => {
            let (s, n) = load(&target)?;
            frobenius(k, &s, n)?.to_json()
        }
        MeasureOp::Teich { a, order } => teichmuller(&parse_rational(&a)?, order).to_json(),
    })
}

fn verify(suite: &str, order: usize, trials: u64, seed: u64, as_json: bool, log: &mut String) -> Result<Outcome> {
    let start = Instant::now();
    let reports = run_suites(suite, order, trials, seed)?;
    log.push_str(&format!("elapsed_ms: {}\n", start.elapsed().as_millis()));
    let failed = reports.iter().any(|r| !r.passed());
    let text = if as_json {
        Value::Array(reports.iter().map(|r| r.to_json()).collect()).to_string()
    } else {
        let mut lines =
            vec![format!("{:<12} {:>6} {:>5} {:>8} {:>8}  status", "suite", "trials", "order", "checks", "failures")];
        for r in &reports {
            let status = if r.passed() { "pass" } else { "FAIL" };
            lines.push(format!(
                "{:<12} {:>6} {:>5} {:>8} {:>8}  {status}",
                r.suite,
                r.trials,
                r.order,
                r.checks,
                r.failures.len()
            ));
            for f in &r.failures {
                lines.push(format!("  trial {}: {} {}", f.trial, f.identity, f.counterexample));
            }
        }
        lines.join("\n")
    };
    Ok(Outcome { text, failed })
}

fn run(cli: Cli, log: &mut String) -> Result<Outcome> {
    Ok(match cli.command {
        Command::Conv { op, a, b, order } => conv(op, read_input(&a)?, read_input(&b)?, order)?.into(),
        Command::Transform { kind, inverse, input } => run_transform(kind, inverse, &input)?.into(),
        Command::Poly { law, n, json } => poly(&law, n, json)?,
        Command::Witt { op } => witt(op)?.into(),
        Command::Measure { op } => measure(op)?.into(),
        Command::Verify { suite, order, trials, seed, json } => verify(&suite, order, trials, seed, json, log)?,
    })
}

/// Result of one invocation: exit code and the text destined for stdout and
/// stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Execution {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `args` (program name first).
pub fn execute<I, T>(args: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => return Execution { code: 0, stdout: e.to_string(), stderr: String::new() },
        Err(e) => {
            let stderr = json!({"error": "usage", "message": e.to_string()}).to_string() + "\n";
            return Execution { code: 1, stdout: String::new(), stderr };
        }
    };
    let mut stderr = String::new();
    match run(cli, &mut stderr) {
        Ok(out) => Execution { code: if out.failed { 2 } else { 0 }, stdout: out.text + "\n", stderr },
        Err(e) => {
            stderr.push_str(&json!({"error": e.kind(), "message": e.to_string()}).to_string());
            stderr.push('\n');
            Execution { code: 1, stdout: String::new(), stderr }
        }
    }
}
