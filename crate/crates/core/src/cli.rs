//! Command-line front end. [`run`] is the whole program minus process I/O,
//! so tests can drive it in-process.
//!
//! Exit codes: 0 success, 1 usage or specification error, 2 input outside
//! the encoder domain or field above the survey cap, 3 a failed identity.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::curves::certify::{certify_all, CertifyOptions};
use crate::curves::{encode_detailed, even_n_point, CurveError, CurveParams, CurveSpec, DomainRule, Family};
use crate::ff::{FieldCtx, FieldElem, FieldError, FieldSpec};
use crate::par::Exec;
use crate::survey::{self, SurveyError, SweepConfig, DEFAULT_MAX_Q};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_CERTIFICATION: i32 = 3;

/// Environment override for the exhaustive survey cap.
pub const MAX_Q_ENV: &str = "ULAS_MAX_Q";

#[derive(Debug, Parser)]
#[command(name = "ulas", version, about = "Deterministic points on y^2 = x^n + ax + b and y^2 = x^n + ax^2 + bx")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Output::Json, global = true)]
    pub output: Output,
    /// Accept characteristics above the deterministic primality bound.
    #[arg(long, global = true)]
    pub trust_prime: bool,
    /// Disable the thread pool.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Map (t, u) to a curve point; for even n without (t, u), print (-b/a, (b/a)^(n/2)).
    Encode {
        #[arg(long)]
        field: String,
        #[arg(long)]
        curve: String,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
    },
    /// Certify every parametrization symbolically.
    Identities {
        #[arg(long, default_value_t = 3)]
        n_min: u32,
        #[arg(long, default_value_t = 9)]
        n_max: u32,
        /// Also check U = t^n g_1(X_1), which does not hold, for the g2 two-point map.
        #[arg(long)]
        literal_g2_u: bool,
    },
    /// Exhaustive encoder coverage over one curve.
    Survey {
        #[arg(long)]
        field: String,
        #[arg(long)]
        curve: String,
        /// Largest field order to enumerate (default 10000, or $ULAS_MAX_Q).
        #[arg(long)]
        max_q: Option<u64>,
    },
    /// Canonical square root of a field element.
    Sqrt {
        #[arg(long)]
        field: String,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Soundness and domain-size sweep over random curves.
    Sweep {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 5)]
        p_min: u64,
        #[arg(long, default_value_t = 101)]
        p_max: u64,
        #[arg(long, value_delimiter = ',', default_values_t = [3, 5, 7])]
        degrees: Vec<u32>,
    },
}

/// What the process should print and return.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    kind: String,
    message: String,
}

impl Failure {
    fn usage(kind: &str, message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, kind: kind.to_string(), message: message.into() }
    }

    /// Error displays start with their kind, as in `NotPrime: 15 is not prime`.
    fn from_display(code: i32, err: impl std::fmt::Display) -> Self {
        let text = err.to_string();
        let kind = text.split(':').next().unwrap_or("Error").trim().to_string();
        Failure { code, kind, message: text }
    }
}

impl From<FieldError> for Failure {
    fn from(e: FieldError) -> Self {
        Failure::from_display(EXIT_USAGE, e)
    }
}

impl From<CurveError> for Failure {
    fn from(e: CurveError) -> Self {
        let code = match e {
            CurveError::DomainExcluded(_) => EXIT_DOMAIN,
            _ => EXIT_USAGE,
        };
        Failure::from_display(code, e)
    }
}

impl From<SurveyError> for Failure {
    fn from(e: SurveyError) -> Self {
        match e {
            SurveyError::Curve(c) => c.into(),
            SurveyError::FieldTooLarge { .. } => Failure::from_display(EXIT_DOMAIN, e),
            SurveyError::Field(_) => Failure::from_display(EXIT_USAGE, e),
        }
    }
}

struct Ctx {
    output: Output,
    trust_prime: bool,
    exec: Exec,
    stderr: String,
}

impl Ctx {
    fn field(&self, spec: &str) -> Result<FieldCtx, Failure> {
        let spec: FieldSpec = spec.parse()?;
        let ctx = if self.trust_prime { FieldCtx::new_trusted(spec) } else { FieldCtx::new(spec) };
        Ok(ctx?)
    }

    fn curve(&self, field: &FieldCtx, spec: &str) -> Result<CurveParams<FieldElem>, Failure> {
        Ok(spec.parse::<CurveSpec>()?.over_field(field)?)
    }

    fn exec(&self) -> Exec {
        self.exec
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: rendered, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: rendered }
            };
        }
    };
    let mut ctx = Ctx {
        output: cli.output,
        trust_prime: cli.trust_prime,
        exec: if cli.sequential { Exec::Sequential } else { Exec::Parallel },
        stderr: String::new(),
    };
    let result = dispatch(&mut ctx, cli.command);
    let (code, body) = match result {
        Ok((code, body)) => (code, body),
        Err(f) => {
            let body = match ctx.output {
                Output::Json => json!({ "error": f.kind, "message": f.message }).to_string(),
                Output::Text => format!("error: {}", f.message),
            };
            (f.code, body)
        }
    };
    Outcome { code, stdout: format!("{body}\n"), stderr: ctx.stderr }
}

fn dispatch(ctx: &mut Ctx, command: Command) -> Result<(i32, String), Failure> {
    match command {
        Command::Encode { field, curve, t, u } => cmd_encode(ctx, &field, &curve, t, u),
        Command::Identities { n_min, n_max, literal_g2_u } => {
            cmd_identities(ctx, n_min, n_max, literal_g2_u)
        }
        Command::Survey { field, curve, max_q } => cmd_survey(ctx, &field, &curve, max_q),
        Command::Sqrt { field, x } => cmd_sqrt(ctx, &field, &x),
        Command::Sweep { seed, samples, p_min, p_max, degrees } => {
            cmd_sweep(ctx, seed, samples, p_min, p_max, degrees)
        }
    }
}

fn cmd_encode(
    ctx: &Ctx,
    field: &str,
    curve: &str,
    t: Option<String>,
    u: Option<String>,
) -> Result<(i32, String), Failure> {
    let f = ctx.field(field)?;
    let params = ctx.curve(&f, curve)?;
    let point = match (t, u) {
        (None, None) if params.n() % 2 == 0 => even_n_point(&f, &params)?,
        (None, None) => {
            return Err(Failure::usage("MissingArgument", "odd n needs --t and --u"));
        }
        (Some(t), Some(u)) => {
            let (t, u) = (f.parse_elem(&t)?, f.parse_elem(&u)?);
            encode_detailed(&f, &params, &t, &u, DomainRule::Reduced)?.point
        }
        _ => return Err(Failure::usage("MissingArgument", "--t and --u go together")),
    };
    let body = match ctx.output {
        Output::Json => point.to_json().to_string(),
        Output::Text => point.to_string(),
    };
    Ok((EXIT_OK, body))
}

fn cmd_identities(
    ctx: &Ctx,
    n_min: u32,
    n_max: u32,
    literal_g2_u: bool,
) -> Result<(i32, String), Failure> {
    if !(3 <= n_min && n_min <= n_max && n_max <= 9) {
        return Err(Failure::usage("InvalidRange", "need 3 <= n-min <= n-max <= 9"));
    }
    let table = certify_all(CertifyOptions { n_min, n_max, literal_g2_u }, ctx.exec());
    let failures = table.iter().filter(|c| c.is_failure()).count();
    let deviations = table.iter().filter(|c| c.expected_deviation).count();
    let code = if failures == 0 { EXIT_OK } else { EXIT_CERTIFICATION };
    let body = match ctx.output {
        Output::Json => pretty(&json!({
            "checks": table,
            "total": table.len().to_string(),
            "failed": failures.to_string(),
            "expected_deviations": deviations.to_string(),
            "all_certified": failures == 0,
        })),
        Output::Text => {
            let mut out = String::new();
            for c in &table {
                let status = match (c.passed, c.expected_deviation) {
                    (true, _) => "PASS",
                    (false, true) => "DEVIATION",
                    (false, false) => "FAIL",
                };
                let _ = write!(out, "{status:<9} {}", c.name);
                if let Some(note) = &c.note {
                    let _ = write!(out, "  ({note})");
                }
                out.push('\n');
            }
            let _ = write!(out, "{} checks, {failures} failed", table.len());
            out
        }
    };
    Ok((code, body))
}

fn max_q(ctx: &mut Ctx, flag: Option<u64>) -> Result<u64, Failure> {
    let from_env = match std::env::var(MAX_Q_ENV) {
        Ok(v) => Some(v.trim().parse::<u64>().map_err(|_| {
            Failure::usage("InvalidCap", format!("{MAX_Q_ENV} must be an integer, got {v:?}"))
        })?),
        Err(_) => None,
    };
    let cap = flag.or(from_env).unwrap_or(DEFAULT_MAX_Q);
    if cap > DEFAULT_MAX_Q {
        let _ = writeln!(ctx.stderr, "warning: exhaustive cap raised to {cap}; runtime grows like q^2");
    }
    Ok(cap)
}

fn cmd_survey(
    ctx: &mut Ctx,
    field: &str,
    curve: &str,
    flag: Option<u64>,
) -> Result<(i32, String), Failure> {
    let cap = max_q(ctx, flag)?;
    let f = ctx.field(field)?;
    let params = ctx.curve(&f, curve)?;
    let report = survey::coverage(&f, &params, cap, ctx.exec())?;
    let body = match ctx.output {
        Output::Json => pretty(&report.to_json()),
        Output::Text => format!(
            "field {} curve {}:n={},a={},b={}\n|T| = {} (bound {}, {})\n|C affine| = {}, image = {}, ratio {}",
            report.field,
            report.params.family,
            report.params.n,
            report.params.a,
            report.params.b,
            report.size_t,
            report.bound,
            report.bound_check,
            report.curve_size,
            report.image_size,
            report.coverage_ratio,
        ),
    };
    Ok((EXIT_OK, body))
}

fn cmd_sqrt(ctx: &Ctx, field: &str, x: &str) -> Result<(i32, String), Failure> {
    let f = ctx.field(field)?;
    let root = f.sqrt(&f.parse_elem(x)?);
    let body = match (ctx.output, root) {
        (Output::Json, r) => json!({ "sqrt": r.map(|r| r.to_string()) }).to_string(),
        (Output::Text, Some(r)) => r.to_string(),
        (Output::Text, None) => "none".to_string(),
    };
    Ok((EXIT_OK, body))
}

fn cmd_sweep(
    ctx: &Ctx,
    seed: u64,
    samples: usize,
    p_min: u64,
    p_max: u64,
    degrees: Vec<u32>,
) -> Result<(i32, String), Failure> {
    if p_max > 10_000 {
        return Err(Failure::usage("InvalidRange", "p-max above 10000 is not an exhaustive sweep"));
    }
    if degrees.iter().any(|&n| n < 3 || n % 2 == 0) {
        return Err(Failure::usage("InvalidRange", "degrees must be odd and at least 3"));
    }
    let config = SweepConfig {
        primes: survey::odd_primes(p_min, p_max),
        degrees,
        families: vec![Family::G1, Family::G2],
        samples,
        seed,
    };
    let rows = survey::sweep(&config, ctx.exec())?;
    let unsound = rows.iter().filter(|r| !r.sound()).count();
    let bound_fail = rows.iter().filter(|r| r.bound_check == "fail").count();
    let bound_fail_raw = rows.iter().filter(|r| r.bound_check_raw == "fail").count();
    let code = if unsound == 0 { EXIT_OK } else { EXIT_CERTIFICATION };
    let body = match ctx.output {
        Output::Json => pretty(&json!({
            "seed": seed.to_string(),
            "instances": rows.len().to_string(),
            "unsound": unsound.to_string(),
            "bound_failures": bound_fail.to_string(),
            "bound_failures_raw": bound_fail_raw.to_string(),
            "rows": rows,
        })),
        Output::Text => format!(
            "{} curves, {unsound} unsound, bound failures: {bound_fail} (reduced rule), {bound_fail_raw} (raw rule)",
            rows.len()
        ),
    };
    Ok((code, body))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("plain data")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("ulas").chain(args.iter().copied()))
    }

    #[test]
    fn encode_examples() {
        let out = run_args(&["encode", "--field", "11", "--curve", "g1:n=3,a=1,b=1", "--t", "2", "--u", "3"]);
        assert_eq!((out.code, out.stdout.as_str()), (0, "{\"x\":\"3\",\"y\":\"3\"}\n"));
        let out = run_args(&["encode", "--field", "11", "--curve", "g1:n=4,a=2,b=6"]);
        assert_eq!((out.code, out.stdout.as_str()), (0, "{\"x\":\"8\",\"y\":\"9\"}\n"));
        let out = run_args(&["encode", "--field", "15", "--curve", "g1:n=3,a=1,b=1", "--t", "2", "--u", "3"]);
        assert_eq!(out.code, 1);
        assert!(out.stdout.contains("NotPrime"));
    }

    #[test]
    fn domain_exclusion_exit_code() {
        let out = run_args(&["encode", "--field", "11", "--curve", "g1:n=3,a=1,b=1", "--t", "0", "--u", "3"]);
        assert_eq!(out.code, 2);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["error"], "DomainExcluded");
    }

    #[test]
    fn sqrt_examples() {
        for (x, expected) in [("5", "{\"sqrt\":\"4\"}"), ("2", "{\"sqrt\":null}"), ("0", "{\"sqrt\":\"0\"}")] {
            let out = run_args(&["sqrt", "--field", "11", "--x", x]);
            assert_eq!((out.code, out.stdout.trim()), (0, expected));
        }
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&["identities", "--n-min", "5", "--n-max", "3"]).code, 1);
        assert_eq!(run_args(&["frobnicate"]).code, 1);
        assert_eq!(run_args(&["--help"]).code, 0);
        assert_eq!(run_args(&["encode", "--field", "11", "--curve", "g1:n=3,a=0,b=1"]).code, 1);
    }

    #[test]
    fn survey_small_fields() {
        let out = run_args(&["survey", "--field", "11", "--curve", "g1:n=3,a=1,b=1"]);
        assert_eq!(out.code, 0);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert!(v["size_T"].as_str().unwrap().parse::<u64>().unwrap() >= 64);
        let out = run_args(&["survey", "--field", "3", "--curve", "g1:n=3,a=1,b=1"]);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["bound_check"], "not applicable");
        let out = run_args(&["survey", "--field", "101", "--curve", "g1:n=3,a=1,b=1", "--max-q", "50"]);
        assert_eq!(out.code, 2);
    }

    #[test]
    fn literal_flag_is_annotated_not_fatal() {
        let out = run_args(&["identities", "--n-min", "3", "--n-max", "3", "--literal-g2-u"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("suspected erratum"));
    }
}
