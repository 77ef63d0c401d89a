//! The `qdeform` command line.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qdeform_core::expr::{evaluate, parse, EvalContext, ParseError};
use qdeform_core::laws::{family_claims, law_matrix, ClaimFamily, LawReport, SampleSpec};
use qdeform_core::numerics::parse_decimal;
use qdeform_core::pascal::{build_triangle_with, classify, DEFAULT_DIGIT_CAP};
use qdeform_core::{to_qnumber_with, DeformParam, Error, Scalar};

use crate::format::{law_report_json, render_numbers, render_triangle, Format, NumberRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;

/// Environment variable overriding the law checker's residual tolerance.
pub const TOLERANCE_ENV: &str = "QDEFORM_TOLERANCE";

const MAX_TABLE_ROWS: i64 = 100_000;

#[derive(Debug, Parser)]
#[command(name = "qdeform", version, about = "Deformed q-arithmetic: evaluate, tabulate, build triangles, check laws")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate an expression such as "qln(2) q+ qln(3)".
    Eval(EvalArgs),
    /// Build a q-Pascal triangle.
    Triangle(TriangleArgs),
    /// Tabulate deformed numbers x_q for integers x in a range.
    Numbers(NumbersArgs),
    /// Name the triangle pattern for q.
    Classify(ClassifyArgs),
    /// Check distributivity and related laws, one JSON report per line.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
struct QArg {
    /// Deformation parameter; decimal input is kept exact where possible.
    #[arg(long = "q", allow_negative_numbers = true)]
    q: String,
}

#[derive(Debug, Args)]
struct EvalArgs {
    expr: String,
    #[command(flatten)]
    q: QArg,
    /// Exact arithmetic; needs 1 - q to be a non-zero integer.
    #[arg(long)]
    exact: bool,
    /// Base H for heine(n).
    #[arg(long = "H", allow_negative_numbers = true)]
    heine: Option<String>,
    /// Generator for qnum(x).
    #[arg(long, default_value = "1", allow_negative_numbers = true)]
    g: String,
    /// Truncate the result to this many decimals.
    #[arg(long)]
    precision: Option<u32>,
}

#[derive(Debug, Args)]
struct TriangleArgs {
    #[command(flatten)]
    q: QArg,
    #[arg(long)]
    rows: usize,
    #[arg(long, default_value = "1", allow_negative_numbers = true)]
    g: String,
    #[arg(long, default_value_t = Format::Text)]
    format: Format,
    /// Decimals shown in text output (truncated, not rounded).
    #[arg(long, default_value_t = 3)]
    precision: u32,
    /// Largest exact entry allowed, in decimal digits.
    #[arg(long, default_value_t = DEFAULT_DIGIT_CAP)]
    digit_cap: u64,
}

#[derive(Debug, Args)]
struct NumbersArgs {
    #[command(flatten)]
    q: QArg,
    #[arg(long, allow_negative_numbers = true)]
    from: i64,
    #[arg(long, allow_negative_numbers = true)]
    to: i64,
    #[arg(long, default_value = "1", allow_negative_numbers = true)]
    g: String,
    #[arg(long, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    precision: Option<u32>,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[command(flatten)]
    q: QArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    #[value(alias = "q")]
    Qab,
    A,
    K,
    All,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[arg(long, value_enum, default_value_t = FamilyArg::All)]
    family: FamilyArg,
    /// q for the q family, a or k otherwise; a fixed grid when omitted.
    #[arg(long, allow_negative_numbers = true)]
    param: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Residual tolerance; overrides the environment variable.
    #[arg(long)]
    tolerance: Option<f64>,
}

/// A failure mapped to an exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_) => EXIT_USAGE,
            _ => EXIT_DOMAIN,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Runs the command line on `args` (without the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env_tolerance = std::env::var(TOLERANCE_ENV).ok();
    run_with_env(args, env_tolerance.as_deref(), out, err)
}

/// [`run`] with the tolerance variable passed in rather than read from the environment.
pub fn run_with_env<I, T>(args: I, env_tolerance: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv = std::iter::once(OsString::from("qdeform")).chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let result = match cli.command {
        Command::Eval(a) => eval(a),
        Command::Triangle(a) => triangle(a),
        Command::Numbers(a) => numbers(a),
        Command::Classify(a) => classify_cmd(a),
        Command::Check(a) => check(a, env_tolerance),
    };
    match result {
        Ok(text) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            EXIT_OK
        }
        Err(Failure { code, message }) => {
            let _ = writeln!(err, "error: {message}");
            code
        }
    }
}

fn scalar_arg(name: &str, text: &str) -> Result<Scalar, Failure> {
    parse_decimal(text)
        .map(Scalar::from_rational)
        .ok_or_else(|| Failure::usage(format!("--{name}: {text:?} is not a decimal number")))
}

fn param_arg(q: &QArg) -> Result<DeformParam, Failure> {
    Ok(DeformParam::new(scalar_arg("q", &q.q)?)?)
}

fn parse_failure(src: &str, e: &ParseError) -> Failure {
    let caret = " ".repeat(e.column - 1) + "^";
    Failure::usage(format!("{e}\n  {src}\n  {caret}"))
}

fn eval(a: EvalArgs) -> Result<String, Failure> {
    let p = param_arg(&a.q)?;
    if a.exact {
        let e = p.one_minus_q();
        if !e.is_exact() || !e.is_integer() || e.is_zero() {
            return Err(Failure::usage(format!(
                "--exact needs 1 - q to be a non-zero integer (q = {})",
                p.q().to_decimal_string()
            )));
        }
    }
    let ast = parse(&a.expr).map_err(|e| parse_failure(&a.expr, &e))?;
    let mut ctx = EvalContext::new(p).exact(a.exact).with_generator(scalar_arg("g", &a.g)?);
    if let Some(h) = &a.heine {
        ctx = ctx.with_heine_base(scalar_arg("H", h)?);
    }
    let v = evaluate(&ast, &ctx).map_err(|e| {
        let mut f = Failure::from(e.error.clone());
        f.message = format!("{} (at {}..{}: {:?})", f.message, e.span.start, e.span.end, &a.expr[e.span.start..e.span.end]);
        f
    })?;
    Ok(match a.precision {
        Some(d) => format!("{}\n", v.truncated(d)),
        None => format!("{}\n", v.to_decimal_string()),
    })
}

fn triangle(a: TriangleArgs) -> Result<String, Failure> {
    let p = param_arg(&a.q)?;
    let g = scalar_arg("g", &a.g)?;
    let t = build_triangle_with(a.rows, &p, &g, a.digit_cap)?;
    Ok(render_triangle(&t, a.format, a.precision))
}

fn numbers(a: NumbersArgs) -> Result<String, Failure> {
    if a.from > a.to {
        return Err(Failure::usage(format!("--from {} is greater than --to {}", a.from, a.to)));
    }
    if a.to.saturating_sub(a.from) >= MAX_TABLE_ROWS {
        return Err(Failure::usage(format!("at most {MAX_TABLE_ROWS} rows per table")));
    }
    let p = param_arg(&a.q)?;
    let g = scalar_arg("g", &a.g)?;
    let rows = (a.from..=a.to)
        .map(|x| {
            let x = Scalar::int(x);
            let value = to_qnumber_with(&x, &p, &g)?.value;
            Ok(NumberRow { x, value })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(render_numbers(p.q(), &g, &rows, a.format, a.precision))
}

fn classify_cmd(a: ClassifyArgs) -> Result<String, Failure> {
    let c = classify(&param_arg(&a.q)?);
    Ok(match c.limit_value {
        Some(l) => format!("{} limit={}\n", c.label.name(), l.to_decimal_string()),
        None => format!("{}\n", c.label.name()),
    })
}

fn check(a: CheckArgs, env_tolerance: Option<&str>) -> Result<String, Failure> {
    let tolerance = match (a.tolerance, env_tolerance) {
        (Some(t), _) => Some(t),
        (None, Some(text)) => Some(
            text.trim()
                .parse::<f64>()
                .map_err(|_| Failure::usage(format!("{TOLERANCE_ENV}={text:?} is not a number")))?,
        ),
        (None, None) => None,
    };
    if let Some(t) = tolerance {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Failure::usage(format!("tolerance {t} must be finite and non-negative")));
        }
    }
    let families: &[ClaimFamily] = match a.family {
        FamilyArg::Qab => &[ClaimFamily::Q],
        FamilyArg::A => &[ClaimFamily::A],
        FamilyArg::K => &[ClaimFamily::K],
        FamilyArg::All => &[ClaimFamily::Q, ClaimFamily::A, ClaimFamily::K],
    };
    let mut out = String::new();
    let mut inconclusive = Vec::new();
    for &family in families {
        let params: Vec<f64> = match (a.param, family) {
            (Some(p), _) => vec![p],
            (None, ClaimFamily::Q) => vec![-1.0, 0.0, 0.5, 1.5],
            (None, _) => vec![0.5, 1.0, 2.0],
        };
        for claim in family_claims(family) {
            for &param in &params {
                let mut spec = SampleSpec::default_for(claim.mul, claim.add, param, a.samples, a.seed);
                if let Some(t) = tolerance {
                    spec = spec.with_tolerance(t);
                }
                match law_matrix(claim.mul, claim.add, param, &spec) {
                    Ok(reports) => push_reports(&mut out, &reports),
                    Err(Error::Inconclusive(m)) => {
                        inconclusive.push(format!("{} over {} at {param}: {m}", claim.mul.name(), claim.add.name()))
                    }
                    Err(e) => return Err(e.into()),
                }
            }
        }
    }
    if !inconclusive.is_empty() {
        return Err(Failure {
            code: EXIT_DOMAIN,
            message: format!("inconclusive: {}\n{out}", inconclusive.join("; ")),
        });
    }
    Ok(out)
}

fn push_reports(out: &mut String, reports: &[LawReport]) {
    for r in reports {
        out.push_str(&law_report_json(r).to_string());
        out.push('\n');
    }
}
