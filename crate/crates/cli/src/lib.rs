//! Command-line front end for `classical-zeta`.
//!
//! [`run`] takes the argument vector and returns the exit status with the
//! rendered standard output and error, so the binary is a thin wrapper.
//! Exit status: 0 on success, 1 when a verification fails, 2 on usage
//! errors, poles and arguments outside a route's domain.

pub mod config;
pub mod record;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use classical_zeta::abel::{abel_numeric_estimate, abel_sum_exact, AbelError, NUMERIC_ORACLE_MAX_M};
use classical_zeta::bernoulli::BernoulliTable;
use classical_zeta::exact::{parse_rational, PiValue};
use classical_zeta::numeric::{
    cotangent_check, cotangent_tail_bound, funceq_residual, inverted_contour_check,
    inverted_contour_tail_bound, zeta_em, zeta_hankel, ComplexValue, NumericError,
};
use classical_zeta::zeta_exact::{
    classical_value, funceq_exact_check, simple_funceq_check, ClassicalValue, Route, ZetaError,
};
use rayon::prelude::*;
use thiserror::Error;

pub use config::{Settings, CONFIG_ENV};
pub use record::{format_complex, render, Format, OutputRecord, Payload};

const ABEL_ORACLE_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("ζ has a pole at s = 1")]
    Pole,
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Zeta(#[from] ZetaError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
    #[error(transparent)]
    Abel(#[from] AbelError),
}

/// Exit status and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(name = "czeta", version, about = "Classical values of the Riemann zeta function")]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Output format (text unless stated otherwise by the subcommand)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Render exact values as floating point
    #[arg(long, global = true)]
    as_float: bool,
    /// key = value settings file (overrides $CLASSICAL_ZETA_CONFIG)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    em_terms_n: Option<usize>,
    #[arg(long, global = true)]
    em_terms_j: Option<usize>,
    #[arg(long, global = true)]
    target_tol: Option<f64>,
    #[arg(long, global = true)]
    radius: Option<f64>,
    #[arg(long, global = true)]
    x_max: Option<f64>,
    #[arg(long, global = true)]
    panels_ray: Option<usize>,
    #[arg(long, global = true)]
    panels_arc: Option<usize>,
    #[arg(long, global = true)]
    nodes_per_panel: Option<usize>,
    #[arg(long, global = true)]
    contour_tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Bernoulli numbers B_0..B_max
    Bernoulli {
        #[arg(long)]
        max: usize,
        #[arg(long, value_enum, default_value = "both")]
        method: BernoulliMethod,
    },
    /// ζ at a classical point, exactly or numerically
    Zeta {
        #[command(subcommand)]
        which: ZetaCommand,
    },
    /// Abel sum of 1^m - 2^m + 3^m - ...
    #[command(allow_negative_numbers = true)]
    Abel {
        m: u32,
        /// Also estimate the limit x -> 1- numerically
        #[arg(long)]
        numeric_oracle: bool,
        #[arg(long, default_value_t = 4)]
        steps: u32,
    },
    /// Identity checks
    Verify {
        #[command(subcommand)]
        which: VerifyCommand,
    },
    /// Tables of values
    Table {
        #[command(subcommand)]
        which: TableCommand,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BernoulliMethod {
    Series,
    Recurrence,
    Both,
}

#[derive(Debug, Subcommand)]
enum ZetaCommand {
    /// K ≤ 0 or K even ≥ 2
    #[command(allow_negative_numbers = true)]
    Exact {
        k: i64,
        #[arg(long, value_enum, default_value = "closed")]
        route: RouteArg,
    },
    #[command(allow_negative_numbers = true)]
    Numeric {
        re: f64,
        im: Option<f64>,
        #[arg(long, value_enum, default_value = "both")]
        method: NumericMethod,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Closed,
    Residue,
    Genfun,
    Abel,
    Funceq,
    /// closed, residue, genfun and abel
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NumericMethod {
    Hankel,
    Em,
    Both,
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// Exact functional equation at s = 2, 4, ..., 2N and residuals on a grid
    Funceq {
        #[arg(long, default_value_t = 15)]
        exact_max: u32,
        /// RE0:RE1:IM0:IM1:STEPS
        #[arg(long, default_value = "0.1:0.9:0:10:5")]
        grid: String,
        #[arg(long, default_value_t = 1e-9)]
        max_residual: f64,
    },
    /// π cot(πx) against its partial fractions
    Cotangent {
        #[arg(long)]
        x: String,
        #[arg(long)]
        terms: usize,
    },
    /// Pole sum against the contour integral
    #[command(allow_negative_numbers = true)]
    ContourInversion {
        /// RE[,IM]
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long)]
        poles: usize,
    },
}

#[derive(Debug, Subcommand)]
enum TableCommand {
    /// ζ(K) for K in [-max, 0] and even K in [2, max]
    Classical {
        #[arg(long)]
        max: u32,
    },
}

/// Parses `argv` (including the program name) and executes it.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok((records, format)) => {
            let code = if records.iter().any(OutputRecord::failed_check) { 1 } else { 0 };
            let mut stdout = render(&records, format);
            if !stdout.is_empty() && !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn settings(opts: &GlobalOpts) -> Result<Settings, CliError> {
    let path = opts
        .config
        .clone()
        .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
    let mut s = match path {
        Some(p) => Settings::load(&p)?,
        None => Settings::default(),
    };
    let n = &mut s.numeric;
    n.em_terms_n = opts.em_terms_n.unwrap_or(n.em_terms_n);
    n.em_terms_j = opts.em_terms_j.unwrap_or(n.em_terms_j);
    n.target_tol = opts.target_tol.unwrap_or(n.target_tol);
    let c = &mut s.contour;
    c.radius = opts.radius.unwrap_or(c.radius);
    c.x_max = opts.x_max.or(c.x_max);
    c.panels_ray = opts.panels_ray.unwrap_or(c.panels_ray);
    c.panels_arc = opts.panels_arc.unwrap_or(c.panels_arc);
    c.nodes_per_panel = opts.nodes_per_panel.unwrap_or(c.nodes_per_panel);
    c.tolerance = opts.contour_tol.unwrap_or(c.tolerance);
    s.numeric.validate()?;
    s.contour.validate()?;
    Ok(s)
}

fn execute(cli: &Cli) -> Result<(Vec<OutputRecord>, Format), CliError> {
    let opts = &cli.opts;
    let format = opts.format.unwrap_or(match cli.command {
        Command::Table { .. } => Format::Json,
        _ => Format::Text,
    });
    let records = match &cli.command {
        Command::Bernoulli { max, method } => bernoulli(*max, *method, opts.as_float),
        Command::Zeta { which: ZetaCommand::Exact { k, route } } => zeta_exact(*k, *route, opts.as_float)?,
        Command::Zeta { which: ZetaCommand::Numeric { re, im, method } } => {
            let s = ComplexValue::new(*re, im.unwrap_or(0.0));
            zeta_numeric(s, *method, &settings(opts)?)?
        }
        Command::Abel { m, numeric_oracle, steps } => abel(*m, *numeric_oracle, *steps, opts.as_float)?,
        Command::Verify { which } => match which {
            VerifyCommand::Funceq { exact_max, grid, max_residual } => {
                verify_funceq(*exact_max, grid, *max_residual, &settings(opts)?)?
            }
            VerifyCommand::Cotangent { x, terms } => verify_cotangent(x, *terms)?,
            VerifyCommand::ContourInversion { s, poles } => {
                verify_contour_inversion(s, *poles, &settings(opts)?)?
            }
        },
        Command::Table { which: TableCommand::Classical { max } } => table_classical(*max, opts.as_float)?,
    };
    Ok((records, format))
}

fn exact_record(value: &PiValue, route: &str, argument: String, as_float: bool) -> OutputRecord {
    let payload = if as_float {
        Payload::NumericComplex(ComplexValue::new(value.to_f64(40), 0.0))
    } else if value.pi_exponent() == 0 {
        Payload::ExactRational(value.coefficient().clone())
    } else {
        Payload::ExactPiMonomial(value.clone())
    };
    OutputRecord::new(payload, route, argument)
}

fn classical_record(v: &ClassicalValue, as_float: bool) -> OutputRecord {
    exact_record(&v.value, v.route.label(), v.argument.to_string(), as_float)
}

fn bernoulli(max: usize, method: BernoulliMethod, as_float: bool) -> Vec<OutputRecord> {
    let emit = |table: &BernoulliTable, route: &str| -> Vec<OutputRecord> {
        table
            .values()
            .iter()
            .enumerate()
            .map(|(n, b)| exact_record(&PiValue::rational(b.clone()), route, n.to_string(), as_float))
            .collect()
    };
    match method {
        BernoulliMethod::Series => emit(&BernoulliTable::via_series(max), "series"),
        BernoulliMethod::Recurrence => emit(&BernoulliTable::via_recurrence(max), "recurrence"),
        BernoulliMethod::Both => {
            let series = BernoulliTable::via_series(max);
            let recurrence = BernoulliTable::via_recurrence(max);
            let mut out = emit(&series, "series");
            out.push(OutputRecord::new(
                Payload::BooleanCheck(series == recurrence),
                "series=recurrence",
                format!("0..={max}"),
            ));
            out
        }
    }
}

fn zeta_exact(k: i64, route: RouteArg, as_float: bool) -> Result<Vec<OutputRecord>, CliError> {
    if k == 1 {
        return Err(CliError::Pole);
    }
    let routes: &[Route] = match route {
        RouteArg::Closed => &[Route::ClosedForm],
        RouteArg::Residue => &[Route::ResidueSeries],
        RouteArg::Genfun => &[Route::GeneratingFunction],
        RouteArg::Abel => &[Route::AbelSummation],
        RouteArg::Funceq => &[Route::FunctionalEquation],
        RouteArg::All => &[
            Route::ClosedForm,
            Route::ResidueSeries,
            Route::GeneratingFunction,
            Route::AbelSummation,
        ],
    };
    routes
        .iter()
        .map(|&r| Ok(classical_record(&classical_value(k, r)?, as_float)))
        .collect()
}

fn zeta_numeric(
    s: ComplexValue,
    method: NumericMethod,
    settings: &Settings,
) -> Result<Vec<OutputRecord>, CliError> {
    if (s - 1.0).norm() == 0.0 {
        return Err(CliError::Pole);
    }
    let argument = format_complex(s);
    let mut out = Vec::new();
    let hankel = match method {
        NumericMethod::Em => None,
        NumericMethod::Hankel => Some(zeta_hankel(s, &settings.contour)?),
        // near the positive integers, and for large |Im s|, the contour is
        // ill-conditioned while the direct sum is not
        NumericMethod::Both => match zeta_hankel(s, &settings.contour) {
            Err(NumericError::TooCloseToPositiveIntegerPole(_) | NumericError::OutOfValidatedRange(..)) => None,
            other => Some(other?),
        },
    };
    if let Some(h) = hankel {
        out.push(OutputRecord::new(Payload::NumericComplex(h), "hankel", argument.clone()));
    }
    if method != NumericMethod::Hankel {
        let e = zeta_em(s, &settings.numeric)?;
        out.push(OutputRecord::new(Payload::NumericComplex(e), "em", argument.clone()));
        if let Some(h) = hankel {
            out.push(OutputRecord::new(Payload::Residual((h - e).norm()), "hankel-em", argument));
        }
    }
    Ok(out)
}

fn abel(m: u32, oracle: bool, steps: u32, as_float: bool) -> Result<Vec<OutputRecord>, CliError> {
    let exact = abel_sum_exact(m)?;
    let argument = m.to_string();
    let mut out = vec![exact_record(&PiValue::rational(exact.clone()), "abel", argument.clone(), as_float)];
    if oracle {
        if m > NUMERIC_ORACLE_MAX_M {
            return Err(AbelError::NumericOracleRange(m).into());
        }
        let estimate = abel_numeric_estimate(m, steps)?;
        let exact_f = PiValue::rational(exact).to_f64(40);
        let gap = (estimate - exact_f).abs();
        out.push(OutputRecord::new(
            Payload::NumericComplex(ComplexValue::new(estimate, 0.0)),
            "numeric-oracle",
            argument.clone(),
        ));
        out.push(OutputRecord::new(Payload::Residual(gap), "numeric-oracle", argument.clone()));
        out.push(OutputRecord::new(
            Payload::BooleanCheck(gap <= ABEL_ORACLE_TOL),
            "numeric-oracle",
            argument,
        ));
    }
    Ok(out)
}

/// `RE0:RE1:IM0:IM1:STEPS`, each axis split into STEPS evenly spaced points.
fn parse_grid(text: &str) -> Result<Vec<ComplexValue>, CliError> {
    let bad = || CliError::Usage(format!("--grid expects RE0:RE1:IM0:IM1:STEPS, got {text:?}"));
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 5 {
        return Err(bad());
    }
    let bounds: Vec<f64> = parts[..4]
        .iter()
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let steps: usize = parts[4].trim().parse().map_err(|_| bad())?;
    if steps == 0 {
        return Err(bad());
    }
    let axis = |lo: f64, hi: f64| -> Vec<f64> {
        if steps == 1 {
            return vec![lo];
        }
        (0..steps)
            .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
            .collect()
    };
    let (res, ims) = (axis(bounds[0], bounds[1]), axis(bounds[2], bounds[3]));
    Ok(res
        .iter()
        .flat_map(|&re| ims.iter().map(move |&im| ComplexValue::new(re, im)))
        .collect())
}

fn verify_funceq(
    exact_max: u32,
    grid: &str,
    max_residual: f64,
    settings: &Settings,
) -> Result<Vec<OutputRecord>, CliError> {
    let points = parse_grid(grid)?;
    let mut out = Vec::new();
    for n in 1..=i64::from(exact_max) {
        let ok = funceq_exact_check(2 * n)?;
        out.push(OutputRecord::new(Payload::BooleanCheck(ok), "funceq-exact", (2 * n).to_string()));
    }
    for m in 0..exact_max {
        out.push(OutputRecord::new(
            Payload::BooleanCheck(simple_funceq_check(m)),
            "funceq-simple",
            m.to_string(),
        ));
    }
    let residuals: Vec<OutputRecord> = points
        .par_iter()
        .map(|&s| {
            let argument = format_complex(s);
            match funceq_residual(s, &settings.numeric) {
                Ok(r) if r <= max_residual => OutputRecord::new(Payload::Residual(r), "funceq-residual", argument),
                _ => OutputRecord::new(Payload::BooleanCheck(false), "funceq-residual", argument),
            }
        })
        .collect();
    let all_within = residuals.iter().all(|r| !r.failed_check());
    out.extend(residuals);
    out.push(OutputRecord::new(
        Payload::BooleanCheck(all_within),
        "funceq-residual",
        format!("{grid} <= {max_residual:e}"),
    ));
    Ok(out)
}

fn verify_cotangent(x: &str, terms: usize) -> Result<Vec<OutputRecord>, CliError> {
    let x = parse_rational(x).map_err(CliError::Usage)?;
    let diff = cotangent_check(&x, terms)?;
    let bound = cotangent_tail_bound(&x, terms);
    let argument = format!("x={x} terms={terms}");
    Ok(vec![
        OutputRecord::new(Payload::Residual(diff), "cotangent", argument.clone()),
        OutputRecord::new(Payload::BooleanCheck(diff <= bound), "cotangent", argument),
    ])
}

fn parse_complex(text: &str) -> Result<ComplexValue, CliError> {
    let bad = || CliError::Usage(format!("expected RE[,IM], got {text:?}"));
    let mut parts = text.split(',').map(|p| p.trim().parse::<f64>().map_err(|_| bad()));
    let re = parts.next().ok_or_else(bad)??;
    let im = parts.next().transpose()?.unwrap_or(0.0);
    if parts.next().is_some() {
        return Err(bad());
    }
    Ok(ComplexValue::new(re, im))
}

fn verify_contour_inversion(s: &str, poles: usize, settings: &Settings) -> Result<Vec<OutputRecord>, CliError> {
    let s = parse_complex(s)?;
    let diff = inverted_contour_check(s, poles, &settings.numeric)?;
    let bound = inverted_contour_tail_bound(s, poles);
    let argument = format!("s={} poles={poles}", format_complex(s));
    Ok(vec![
        OutputRecord::new(Payload::Residual(diff), "contour-inversion", argument.clone()),
        OutputRecord::new(Payload::BooleanCheck(diff <= bound), "contour-inversion", argument),
    ])
}

/// `0, -1, ..., -max` followed by `2, 4, ..., max`.
pub fn classical_arguments(max: u32) -> Vec<i64> {
    let max = i64::from(max);
    (-max..=0).rev().chain((2..=max).step_by(2)).collect()
}

fn table_classical(max: u32, as_float: bool) -> Result<Vec<OutputRecord>, CliError> {
    classical_arguments(max)
        .par_iter()
        .map(|&k| Ok(classical_record(&classical_value(k, Route::ClosedForm)?, as_float)))
        .collect()
}
