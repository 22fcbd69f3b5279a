//! Command-line surface: parse arguments, dispatch into the library, render
//! output, and map every failure mode onto a stable exit code.
//!
//! Exit codes: 0 = success / all checks pass, 1 = a check failed,
//! 2 = usage or parse error, 3 = degenerate input or an orbit breakdown
//! before any check could run.

use std::io::Write;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{ArgGroup, Args, Parser, Subcommand};

use somos_hankel::gf::Bindings;
use somos_hankel::{
    eval_gf, fit_canonical_cf, hankel_transform, parse_gf, series_from_cf, somos4_fit, tau_orbit,
    verify_preset, verify_sweep, CFParams, CfError, GfError, PipelineError, PowerSeries,
    PresetError, PresetId, Rational,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DEGENERATE: i32 = 3;

#[derive(Parser)]
#[command(
    name = "somos-hankel",
    version,
    about = "Exact Hankel transforms of quadratic continued fractions and Somos-4 verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficients of a generating function.
    Series(SeriesArgs),
    /// Print the Hankel transform H_0..H_nmax of a generating function.
    Hankel(SeriesArgs),
    /// Print the orbit of a parameter tuple under the quadratic transformation.
    Tau(TauArgs),
    /// Fit the canonical continued-fraction form to an expression's series.
    Fit(FitArgs),
    /// Fit (alpha, beta) Somos-4 parameters to explicit values.
    SomosFit(SomosFitArgs),
    /// Run the verification pipeline for one preset and binding.
    Verify(VerifyArgs),
    /// Verify a preset on deterministically sampled rational bindings.
    Sweep(SweepArgs),
}

#[derive(Args)]
#[command(group(ArgGroup::new("source").required(true)))]
struct SeriesArgs {
    /// Expression in the generating-function language, e.g. "1/(1-x)".
    #[arg(long, group = "source")]
    expr: Option<String>,
    /// Canonical parameters a,b,c,d,e,f (rationals, comma-separated).
    #[arg(
        long,
        group = "source",
        allow_hyphen_values = true,
        value_name = "a,b,c,d,e,f"
    )]
    cf: Option<String>,
    /// Largest index to print.
    #[arg(long)]
    nmax: usize,
    /// Variable binding, repeatable: --param r=1 --param s=-2/3.
    #[arg(long = "param", value_name = "name=value")]
    params: Vec<String>,
}

#[derive(Args)]
struct TauArgs {
    /// Canonical parameters a,b,c,d,e,f (rationals, comma-separated).
    #[arg(long, allow_hyphen_values = true, value_name = "a,b,c,d,e,f")]
    cf: String,
    /// Number of transformation steps to attempt.
    #[arg(long, default_value_t = 8)]
    steps: usize,
}

#[derive(Args)]
struct FitArgs {
    /// Expression whose series should be fitted.
    #[arg(long)]
    expr: String,
    /// Truncation order of the fitted series (at least 9 recommended).
    #[arg(long, default_value_t = 12)]
    order: usize,
    /// Variable binding, repeatable.
    #[arg(long = "param", value_name = "name=value")]
    params: Vec<String>,
}

#[derive(Args)]
struct SomosFitArgs {
    /// Sequence values (rationals, comma-separated), at least 8 of them.
    #[arg(long, allow_hyphen_values = true)]
    values: String,
}

#[derive(Args)]
struct VerifyArgs {
    /// One of conj2, conj3, conj4, conj5, somos.
    #[arg(long)]
    preset: String,
    /// Preset parameter, repeatable: --param r=1 --param s=1.
    #[arg(long = "param", value_name = "name=value")]
    params: Vec<String>,
    /// Number of Hankel determinants to verify.
    #[arg(long, default_value_t = 10)]
    nmax: usize,
    #[arg(long, default_value = "text")]
    format: OutputFormat,
}

#[derive(Args)]
struct SweepArgs {
    /// One of conj2, conj3, conj4, conj5, somos.
    #[arg(long)]
    preset: String,
    /// Number of accepted (non-degenerate) samples.
    #[arg(long, default_value_t = 20)]
    samples: usize,
    /// Seed of the deterministic binding generator.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    nmax: usize,
    #[arg(long, default_value = "text")]
    format: OutputFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum OutputFormat {
    Text,
    Json,
    Csv,
}

/// A failure with the exit code it maps to.
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

    fn degenerate(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_DEGENERATE,
            message: message.into(),
        }
    }
}

impl From<GfError> for Failure {
    fn from(err: GfError) -> Self {
        let code = match err {
            GfError::Syntax { .. }
            | GfError::UnknownCharacter { .. }
            | GfError::UnboundVariable(_) => EXIT_USAGE,
            GfError::ZeroConstantTerm | GfError::NotContractive => EXIT_DEGENERATE,
        };
        Failure {
            code,
            message: err.to_string(),
        }
    }
}

impl From<PresetError> for Failure {
    fn from(err: PresetError) -> Self {
        match err {
            PresetError::Unknown(_) | PresetError::MissingParam(_) => {
                Failure::usage(err.to_string())
            }
            other => Failure {
                code: EXIT_CHECK_FAILED,
                message: other.to_string(),
            },
        }
    }
}

impl From<PipelineError> for Failure {
    fn from(err: PipelineError) -> Self {
        match err {
            PipelineError::DegenerateBindings { .. } => Failure::degenerate(err.to_string()),
            PipelineError::NmaxTooSmall { .. } => Failure::usage(err.to_string()),
            PipelineError::Preset(inner) => inner.into(),
            PipelineError::Gf(inner) => inner.into(),
            other => Failure {
                code: EXIT_CHECK_FAILED,
                message: other.to_string(),
            },
        }
    }
}

impl From<CfError> for Failure {
    fn from(err: CfError) -> Self {
        match err {
            CfError::ZeroLeadingCoefficient => Failure::degenerate(err.to_string()),
            other => Failure {
                code: EXIT_CHECK_FAILED,
                message: other.to_string(),
            },
        }
    }
}

fn parse_bindings(pairs: &[String]) -> Result<Bindings, Failure> {
    let mut env = Bindings::new();
    for pair in pairs {
        let Some((name, value)) = pair.split_once('=') else {
            return Err(Failure::usage(format!(
                "invalid --param '{pair}': expected name=value"
            )));
        };
        let name = name.trim();
        let mut chars = name.chars();
        let head_ok = chars.next().is_some_and(|c| c.is_ascii_lowercase());
        let tail_ok = chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_');
        if !head_ok || !tail_ok || name == "x" {
            return Err(Failure::usage(format!(
                "invalid parameter name '{name}' in --param '{pair}'"
            )));
        }
        let value = Rational::from_str(value)
            .map_err(|e| Failure::usage(format!("invalid value in --param '{pair}': {e}")))?;
        env.insert(name.to_string(), value);
    }
    Ok(env)
}

fn parse_cf(text: &str) -> Result<CFParams, Failure> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 6 {
        return Err(Failure::usage(format!(
            "--cf expects six comma-separated rationals a,b,c,d,e,f, got {}",
            parts.len()
        )));
    }
    let mut values = Vec::with_capacity(6);
    for part in parts {
        values.push(
            Rational::from_str(part)
                .map_err(|e| Failure::usage(format!("invalid --cf entry '{part}': {e}")))?,
        );
    }
    let mut it = values.into_iter();
    Ok(CFParams::new(
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
    ))
}

fn parse_values(text: &str) -> Result<Vec<Rational>, Failure> {
    text.split(',')
        .map(|part| {
            Rational::from_str(part)
                .map_err(|e| Failure::usage(format!("invalid value '{part}': {e}")))
        })
        .collect()
}

fn join_human(values: &[Rational]) -> String {
    values
        .iter()
        .map(Rational::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Build the requested series at the given truncation order.
fn input_series(args: &SeriesArgs, order: usize) -> Result<PowerSeries, Failure> {
    if let Some(text) = &args.expr {
        let expr = parse_gf(text)?;
        let env = parse_bindings(&args.params)?;
        Ok(eval_gf(&expr, &env, order)?)
    } else {
        let p = parse_cf(args.cf.as_deref().expect("clap enforces the source group"))?;
        Ok(series_from_cf(&p, order)?)
    }
}

fn cmd_series(args: &SeriesArgs, out: &mut impl Write) -> Result<i32, Failure> {
    let series = input_series(args, args.nmax)?;
    let _ = writeln!(out, "{}", join_human(series.coeffs()));
    Ok(EXIT_OK)
}

fn cmd_hankel(args: &SeriesArgs, out: &mut impl Write) -> Result<i32, Failure> {
    let series = input_series(args, 2 * args.nmax)?;
    let transform =
        hankel_transform(&series, args.nmax).expect("series was built with enough coefficients");
    let _ = writeln!(out, "{}", join_human(&transform));
    Ok(EXIT_OK)
}

fn cmd_tau(args: &TauArgs, out: &mut impl Write) -> Result<i32, Failure> {
    let p = parse_cf(&args.cf)?;
    let orbit = tau_orbit(&p, args.steps);
    if orbit.is_empty() {
        return Err(Failure::degenerate(
            "orbit breakdown at step 0: the leading coefficient a is zero".to_string(),
        ));
    }
    let _ = writeln!(out, "n\ta\tb\tc\td\te\tf");
    for (n, step) in orbit.steps().iter().enumerate() {
        let _ = writeln!(
            out,
            "{n}\t{}\t{}\t{}\t{}\t{}\t{}",
            step.a, step.b, step.c, step.d, step.e, step.f
        );
    }
    if let Some(index) = orbit.breakdown() {
        let _ = writeln!(out, "breakdown at step {index}: a_{index} = 0");
    }
    Ok(EXIT_OK)
}

fn cmd_fit(args: &FitArgs, out: &mut impl Write) -> Result<i32, Failure> {
    let expr = parse_gf(&args.expr)?;
    let env = parse_bindings(&args.params)?;
    let series = eval_gf(&expr, &env, args.order)?;
    match fit_canonical_cf(&series) {
        Some(fit) => {
            let p = &fit.params;
            let _ = writeln!(out, "{},{},{},{},{},{}", p.a, p.b, p.c, p.d, p.e, p.f);
            if !fit.unique {
                let _ = writeln!(out, "(fit is not unique; free variables were set to zero)");
            }
        }
        None => {
            let _ = writeln!(out, "none");
        }
    }
    Ok(EXIT_OK)
}

fn cmd_somos_fit(args: &SomosFitArgs, out: &mut impl Write) -> Result<i32, Failure> {
    let values = parse_values(&args.values)?;
    if values.len() < 8 {
        return Err(Failure::usage(format!(
            "--values needs at least 8 terms to fit, got {}",
            values.len()
        )));
    }
    match somos4_fit(&values) {
        Some(fit) => {
            let suffix = if fit.degenerate { " (degenerate)" } else { "" };
            let _ = writeln!(
                out,
                "alpha = {}, beta = {}{suffix}",
                fit.params.alpha, fit.params.beta
            );
        }
        None => {
            let _ = writeln!(out, "none");
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(args: &VerifyArgs, out: &mut impl Write) -> Result<i32, Failure> {
    let id = PresetId::from_str(&args.preset)?;
    let env = parse_bindings(&args.params)?;
    let report = verify_preset(id, &env, args.nmax)?;
    let rendered = match args.format {
        OutputFormat::Text => report.to_text(),
        OutputFormat::Json => format!("{}\n", report.to_json()),
        OutputFormat::Csv => report.to_csv(),
    };
    let _ = write!(out, "{rendered}");
    Ok(if report.pass {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

fn cmd_sweep(args: &SweepArgs, out: &mut impl Write) -> Result<i32, Failure> {
    let id = PresetId::from_str(&args.preset)?;
    let sweep = verify_sweep(id, args.samples, args.seed, args.nmax)?;
    let rendered = match args.format {
        OutputFormat::Text => sweep.to_text(),
        OutputFormat::Json => format!("{}\n", sweep.to_json()),
        OutputFormat::Csv => sweep.to_csv(),
    };
    let _ = write!(out, "{rendered}");
    Ok(if sweep.all_pass() {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

/// Run the CLI against explicit argv and output streams; returns the exit
/// code. The first argv element is the binary name, as usual.
pub fn run<I, S>(argv: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
        }
    };
    let outcome = match &cli.command {
        Command::Series(args) => cmd_series(args, out),
        Command::Hankel(args) => cmd_hankel(args, out),
        Command::Tau(args) => cmd_tau(args, out),
        Command::Fit(args) => cmd_fit(args, out),
        Command::SomosFit(args) => cmd_somos_fit(args, out),
        Command::Verify(args) => cmd_verify(args, out),
        Command::Sweep(args) => cmd_sweep(args, out),
    };
    match outcome {
        Ok(code) => code,
        Err(failure) => {
            let _ = writeln!(err, "error: {}", failure.message);
            failure.code
        }
    }
}
