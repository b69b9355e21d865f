//! `shocklab` command line: point evaluation, region maps, curve and grid
//! dumps, the verification suites and the finite-volume oracle.
//!
//! Exit status is 0 on success, 1 when a check fails or a numerical step
//! breaks down, and 2 for usage errors or arguments outside an operation's
//! domain.

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use shocklab::characteristics::{
    boundary_x, classify, horizon_arrival_time, outgoing_char, shock_arrival_time, BoundaryCurve,
};
use shocklab::error::Error as CoreError;
use shocklab::geometry::{inverse_metric, metric, null_frame, shock_character};
use shocklab::godunov::{solve, GodunovState};
use shocklab::potential::{dphidt_closed, dphidx_closed, phi};
use shocklab::solutions::{dpsidx, psi, shock_trace};
use shocklab::verification::{lax_gaps, rh_residual, suite};
use shocklab::{NumericPolicy, Point, SolutionVariant};
use std::fmt::Write as _;
use std::io::Write;
use std::process::ExitCode;
use thiserror::Error;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(e) if e.is_domain() => 2,
            _ => 1,
        }
    }
}

type CliResult = Result<(), CliError>;

#[derive(Parser)]
#[command(name = "shocklab", version, about = "Classical and weak continuations past shock formation")]
struct Cli {
    #[command(flatten)]
    policy: PolicyArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PolicyArgs {
    /// Root-finder tolerance.
    #[arg(long, global = true, default_value_t = 1e-12)]
    root_tol: f64,
    /// Absolute quadrature tolerance.
    #[arg(long, global = true, default_value_t = 1e-10)]
    quad_tol: f64,
    /// Distance within which a point counts as lying on a curve.
    #[arg(long, global = true, default_value_t = 1e-10)]
    geom_tol: f64,
}

impl PolicyArgs {
    fn policy(&self) -> Result<NumericPolicy, CliError> {
        for (name, v) in [("root-tol", self.root_tol), ("quad-tol", self.quad_tol), ("geom-tol", self.geom_tol)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Usage(format!("--{name} must be positive, got {v}")));
            }
        }
        Ok(NumericPolicy {
            root_tol: self.root_tol,
            quad_tol: self.quad_tol,
            geom_tol: self.geom_tol,
            ..NumericPolicy::default()
        })
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    Classical,
    Weak,
}

impl From<Variant> for SolutionVariant {
    fn from(v: Variant) -> Self {
        match v {
            Variant::Classical => SolutionVariant::Classical,
            Variant::Weak => SolutionVariant::Weak,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Field {
    Psi,
    #[value(name = "dpsi_dx")]
    DpsiDx,
    Phi,
    #[value(name = "dphi_dx")]
    DphiDx,
    #[value(name = "dphi_dt")]
    DphiDt,
    Region,
    Metric,
    Frame,
}

#[derive(Clone, Copy, ValueEnum)]
enum Curve {
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "C", alias = "c")]
    C,
    #[value(name = "K", alias = "k")]
    K,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate fields at one point, printed as key=value lines.
    Eval {
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, value_enum, default_value = "weak")]
        variant: Variant,
        #[arg(long, value_enum, value_delimiter = ',', default_value = "psi,region")]
        fields: Vec<Field>,
    },
    /// Print the region a point belongs to.
    Classify {
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
    },
    /// Sample a boundary curve as CSV `t,x`.
    Boundary {
        #[arg(long, value_enum)]
        curve: Curve,
        /// Time interval `a:b`, both at least 1.
        #[arg(long)]
        t_range: String,
        #[arg(long, default_value_t = 100)]
        n: usize,
    },
    /// Tabulate a field on a rectangular grid as CSV `t,x,value`.
    Grid {
        #[arg(long)]
        t_range: String,
        #[arg(long, allow_hyphen_values = true)]
        x_range: String,
        #[arg(long, default_value_t = 50)]
        nt: usize,
        #[arg(long, default_value_t = 50)]
        nx: usize,
        #[arg(long, value_enum, default_value = "weak")]
        variant: Variant,
        #[arg(long, value_enum, default_value = "psi")]
        field: Field,
        /// Emit `k` curves of each null family instead of the grid, as CSV
        /// `family,index,t,x`.
        #[arg(long)]
        characteristics: Option<usize>,
    },
    /// Tabulate the shock states and checks as CSV.
    Shock {
        #[arg(long)]
        t_range: String,
        #[arg(long, default_value_t = 20)]
        n: usize,
    },
    /// Run verification suites and print a JSON report.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the finite-volume scheme and print the final cell averages as CSV.
    Godunov {
        #[arg(long, default_value_t = 4000)]
        n: usize,
        #[arg(long, default_value_t = 2.0)]
        t_end: f64,
        #[arg(long, allow_hyphen_values = true, default_value = "-10:10")]
        x_range: String,
        #[arg(long, default_value_t = 0.9)]
        cfl: f64,
        /// Start from this CSV state instead of the initial data.
        #[arg(long)]
        input: Option<std::path::PathBuf>,
        /// Time of the `--input` state.
        #[arg(long, default_value_t = 0.0)]
        t0: f64,
        /// Also print the L1 distance to the weak solution on stderr.
        #[arg(long)]
        l1: bool,
    },
}

fn parse_range(s: &str, what: &str) -> Result<(f64, f64), CliError> {
    let bad = || CliError::Usage(format!("--{what} expects a:b with a < b, got {s:?}"));
    let (a, b) = s.split_once(':').ok_or_else(bad)?;
    let a: f64 = a.trim().parse().map_err(|_| bad())?;
    let b: f64 = b.trim().parse().map_err(|_| bad())?;
    if !(a < b) || !a.is_finite() || !b.is_finite() {
        return Err(bad());
    }
    Ok((a, b))
}

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// Shortest round-trip decimal, with `-0` printed as `0`.
fn num(v: f64) -> String {
    if v == 0.0 {
        "0".into()
    } else {
        v.to_string()
    }
}

fn field_value(f: Field, p: Point, v: SolutionVariant, policy: &NumericPolicy) -> Result<String, CoreError> {
    Ok(match f {
        Field::Psi => num(psi(p, v, policy)?),
        Field::DpsiDx => num(dpsidx(p, v, policy)?),
        Field::Phi => num(phi(p, v, policy)?),
        Field::DphiDx => num(dphidx_closed(p, v, policy)?),
        Field::DphiDt => num(dphidt_closed(p, v, policy)?),
        Field::Region => classify(p, policy).name().to_string(),
        Field::Metric | Field::Frame => {
            return Err(CoreError::Domain("metric and frame are not scalar fields".into()))
        }
    })
}

fn eval(p: Point, v: SolutionVariant, fields: &[Field], policy: &NumericPolicy) -> Result<String, CliError> {
    let mut out = String::new();
    for f in fields {
        match f {
            Field::Metric => {
                let u = psi(p, v, policy)?;
                let g = metric(u)?;
                let gi = inverse_metric(u)?;
                writeln!(out, "metric.tt={}\nmetric.tx={}\nmetric.xx={}", g.tt, g.tx, g.xx).ok();
                writeln!(out, "metric.det={}", g.det()).ok();
                writeln!(out, "inverse.tt={}\ninverse.tx={}\ninverse.xx={}", gi.tt, gi.tx, gi.xx).ok();
            }
            Field::Frame => {
                let fr = null_frame(psi(p, v, policy)?);
                writeln!(out, "frame.l={},{}\nframe.lbar={},{}", fr.l.t, fr.l.x, fr.lbar.t, fr.lbar.x).ok();
            }
            other => {
                let key = match other {
                    Field::Psi => "psi",
                    Field::DpsiDx => "dpsi_dx",
                    Field::Phi => "phi",
                    Field::DphiDx => "dphi_dx",
                    Field::DphiDt => "dphi_dt",
                    _ => "region",
                };
                writeln!(out, "{key}={}", field_value(*other, p, v, policy)?).ok();
            }
        }
    }
    Ok(out)
}

fn boundary(curve: Curve, range: (f64, f64), n: usize) -> Result<String, CliError> {
    let c = match curve {
        Curve::B => BoundaryCurve::SingularBoundary,
        Curve::C => BoundaryCurve::CauchyHorizon,
        Curve::K => BoundaryCurve::Shock,
    };
    let mut out = String::from("t,x\n");
    for t in linspace(range.0, range.1, n) {
        writeln!(out, "{t},{}", boundary_x(c, t)?).ok();
    }
    Ok(out)
}

fn grid(
    tr: (f64, f64),
    xr: (f64, f64),
    nt: usize,
    nx: usize,
    v: SolutionVariant,
    field: Field,
    policy: &NumericPolicy,
) -> Result<String, CliError> {
    if tr.0 < 0.0 {
        return Err(CliError::Usage("--t-range must start at t >= 0".into()));
    }
    if matches!(field, Field::Metric | Field::Frame) {
        return Err(CliError::Usage("grid supports scalar fields only".into()));
    }
    let ts = linspace(tr.0, tr.1, nt);
    let xs = linspace(xr.0, xr.1, nx);
    let rows: Vec<String> = ts
        .par_iter()
        .map(|&t| {
            let mut s = String::new();
            for &x in &xs {
                let value = Point::new(t, x)
                    .and_then(|p| field_value(field, p, v, policy))
                    .unwrap_or_else(|_| "NA".into());
                writeln!(s, "{t},{x},{value}").ok();
            }
            s
        })
        .collect();
    Ok(std::iter::once("t,x,value\n".to_string()).chain(rows).collect())
}

/// End time of the outgoing characteristic from `x0` for variant `v`.
fn char_end(x0: f64, v: SolutionVariant) -> f64 {
    match v {
        SolutionVariant::Weak if x0 != 0.0 => shock_arrival_time(x0).unwrap_or(f64::INFINITY),
        SolutionVariant::Classical if x0 > 0.0 => 1.0 + x0 * x0,
        SolutionVariant::Classical if x0 < 0.0 => horizon_arrival_time(x0).unwrap_or(f64::INFINITY),
        _ => 1.0,
    }
}

fn overlay(tr: (f64, f64), xr: (f64, f64), nt: usize, k: usize, v: SolutionVariant) -> String {
    let mut out = String::from("family,index,t,x\n");
    let ts = linspace(tr.0, tr.1, nt.max(2));
    for (i, x0) in linspace(xr.0, xr.1, k).into_iter().enumerate() {
        let end = char_end(x0, v);
        for &t in ts.iter().filter(|t| **t <= end) {
            writeln!(out, "L,{i},{t},{}", outgoing_char(x0, t).x).ok();
        }
    }
    for (i, c) in linspace(xr.0, xr.1 + 2.0 * tr.1, k).into_iter().enumerate() {
        for &t in &ts {
            writeln!(out, "Lbar,{i},{t},{}", c - 2.0 * t).ok();
        }
    }
    out
}

fn shock_table(range: (f64, f64), n: usize, policy: &NumericPolicy) -> Result<String, CliError> {
    if range.0 <= 1.0 {
        return Err(CliError::Usage("--t-range must start after t = 1".into()));
    }
    let mut out = String::from("t,x,left,right,speed,rh_residual,lax_lower,lax_upper,g_classical,g_weak_left\n");
    for t in linspace(range.0, range.1, n) {
        let s = shock_trace(t, policy)?;
        let g = lax_gaps(t, policy)?;
        let c = shock_character(t, policy)?;
        writeln!(
            out,
            "{t},{},{},{},{},{},{},{},{},{}",
            s.x,
            s.left,
            s.right,
            s.speed,
            rh_residual(t, policy)?,
            g.lower,
            g.upper,
            c.g_classical,
            c.g_weak_left
        )
        .ok();
    }
    Ok(out)
}

fn run(cli: Cli, stdout: &mut impl Write) -> CliResult {
    let policy = cli.policy.policy()?;
    match cli.command {
        Command::Eval { t, x, variant, fields } => {
            let p = Point::new(t, x)?;
            stdout.write_all(eval(p, variant.into(), &fields, &policy)?.as_bytes())?;
        }
        Command::Classify { t, x } => {
            let p = Point::new(t, x)?;
            writeln!(stdout, "region={}", classify(p, &policy).name())?;
        }
        Command::Boundary { curve, t_range, n } => {
            let r = parse_range(&t_range, "t-range")?;
            stdout.write_all(boundary(curve, r, n)?.as_bytes())?;
        }
        Command::Grid { t_range, x_range, nt, nx, variant, field, characteristics } => {
            let tr = parse_range(&t_range, "t-range")?;
            let xr = parse_range(&x_range, "x-range")?;
            let text = match characteristics {
                Some(k) => overlay(tr, xr, nt, k, variant.into()),
                None => grid(tr, xr, nt, nx, variant.into(), field, &policy)?,
            };
            stdout.write_all(text.as_bytes())?;
        }
        Command::Shock { t_range, n } => {
            let r = parse_range(&t_range, "t-range")?;
            stdout.write_all(shock_table(r, n, &policy)?.as_bytes())?;
        }
        Command::Verify { suite: name, seed } => {
            let suites = suite::Suite::parse(&name)
                .ok_or_else(|| CliError::Usage(format!("unknown suite {name:?}")))?;
            let report = suite::run(&suites, seed, &policy);
            let json = serde_json::to_string_pretty(&report).map_err(|e| CliError::Usage(e.to_string()))?;
            writeln!(stdout, "{json}")?;
            if report.failed > 0 {
                return Err(CliError::ChecksFailed(report.failed));
            }
        }
        Command::Godunov { n, t_end, x_range, cfl, input, t0, l1 } => {
            let state = match input {
                Some(path) => {
                    let file = std::fs::File::open(path)?;
                    GodunovState::read_csv(file, t0, cfl)?
                }
                None => {
                    let (a, b) = parse_range(&x_range, "x-range")?;
                    GodunovState::initial(a, b, n, cfl)?
                }
            };
            let end = solve(state, t_end, &policy)?;
            end.write_csv(&mut *stdout)?;
            if l1 {
                eprintln!("l1_error={}", end.l1_error(&policy)?);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(cli, &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
