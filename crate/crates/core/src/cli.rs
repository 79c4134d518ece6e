//! Command-line front end: `solve`, `table` and `check`.
//!
//! Exit codes: 0 success, 1 usage or I/O error, 2 the solver did not
//! converge, 3 a verification check failed.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::defuzzify::centroid;
use crate::error::{Error, Result};
use crate::level::{eval_fuzzy, scalarize, FuzzyFunction};
use crate::newton::{solve, verify_point, verify_solution, CheckConfig, NewtonConfig, SolveResult};
use crate::problems::{Builtin, MaxReturnParams, ParamValue, ProblemSpec};
use crate::quadrature::Quadrature;
use crate::report::{
    render_check, render_run, render_table, triple, CheckReport, Format, RunConfig, RunReport,
    SolveSummary, TableRow, TraceRow,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_NOT_CONVERGED: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "fuzzy-newton",
    version,
    about = "Newton's method for fuzzy-valued objectives"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve one problem and print the iteration table.
    Solve(SolveArgs),
    /// Solve a sweep of maximum-return instances, one row each.
    Table(TableArgs),
    /// Audit a candidate point for stationarity and non-dominance.
    Check(CheckArgs),
}

#[derive(Debug, Args)]
pub struct ProblemArgs {
    /// Built-in name (example_4_1, max_return_crisp, max_return_fuzzy) or a problem file.
    #[arg(long)]
    pub problem: String,
    /// Acceptable risk: a number or a triple l,p,u.
    #[arg(long = "Va", alias = "va", allow_negative_numbers = true)]
    pub va: Option<ParamValue>,
    /// Risk weight: a number or a triple l,p,u.
    #[arg(long, allow_negative_numbers = true)]
    pub rho: Option<ParamValue>,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub x0: Option<f64>,
    #[arg(long)]
    pub eps: Option<f64>,
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Number of α-levels (odd for Simpson).
    #[arg(long)]
    pub alpha_grid: Option<usize>,
    #[arg(long)]
    pub quadrature: Option<Quadrature>,
    #[arg(long)]
    pub fd_step: Option<f64>,
    #[arg(long)]
    pub d2_floor: Option<f64>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// JSON array of {"Va": .., "rho": ..} entries (numbers or triples).
    #[arg(long)]
    pub sweep: PathBuf,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub problem: ProblemArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub xstar: f64,
    /// Half-width of the sampled neighborhood.
    #[arg(long, default_value_t = 1e-2)]
    pub nbhd: f64,
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

/// Resolves the problem spec: a built-in name or a JSON problem file, with
/// `--Va`/`--rho` overriding stored parameters.
fn load_problem(args: &ProblemArgs) -> Result<ProblemSpec> {
    let mut spec = match args.problem.parse::<Builtin>() {
        Ok(b) => ProblemSpec::builtin(b),
        Err(_) => {
            let text = fs::read_to_string(&args.problem).map_err(|e| {
                Error::Config(format!(
                    "'{}' is neither a built-in nor a readable file: {e}",
                    args.problem
                ))
            })?;
            ProblemSpec::from_json(&text)?
        }
    };
    if args.va.is_some() || args.rho.is_some() {
        let defaults = match spec.builtin_kind()? {
            Some(Builtin::MaxReturnCrisp) => MaxReturnParams::crisp_default(),
            Some(Builtin::MaxReturnFuzzy) => MaxReturnParams::fuzzy_default(),
            _ => {
                return Err(Error::Config(format!(
                    "--Va/--rho only apply to the max_return problems, not {}",
                    spec.kind
                )))
            }
        };
        let base = spec.params.unwrap_or(defaults);
        spec.params = Some(MaxReturnParams {
            va: args.va.unwrap_or(base.va),
            rho: args.rho.unwrap_or(base.rho),
        });
    }
    Ok(spec)
}

/// Fills the spec's stored settings from flags and defaults and returns the
/// solver configuration; the spec then echoes the full run settings.
fn resolve_config(spec: &mut ProblemSpec, s: &SolverArgs) -> Result<NewtonConfig<f64>> {
    let x0 = s.x0.or(spec.x0).unwrap_or(1.0);
    let mut cfg = NewtonConfig::new(x0);
    cfg.eps = s.eps.or(spec.eps).unwrap_or(cfg.eps);
    cfg.scal.alpha_points = s
        .alpha_grid
        .or(spec.alpha_points)
        .unwrap_or(cfg.scal.alpha_points);
    if let Some(q) = s.quadrature {
        cfg.scal.quadrature = q;
    }
    if let Some(h) = s.fd_step {
        cfg.scal.fd_step = h;
    }
    if let Some(m) = s.max_iter {
        cfg.max_iter = m;
    }
    if let Some(d) = s.d2_floor {
        cfg.d2_floor = d;
    }
    cfg.validate()?;
    spec.x0 = Some(cfg.x0);
    spec.eps = Some(cfg.eps);
    spec.alpha_points = Some(cfg.scal.alpha_points);
    Ok(cfg)
}

fn summarize(
    f: &dyn FuzzyFunction<f64>,
    res: &SolveResult<f64>,
    cfg: &NewtonConfig<f64>,
) -> SolveSummary {
    let trace = res
        .trace
        .iter()
        .map(|r| TraceRow {
            k: r.k,
            x: r.x,
            x_next: r.next_x(),
            value: r.value,
            d1: r.d1,
            d2: r.d2,
            fuzzy_value: triple(&r.fuzzy_value),
        })
        .collect();
    let value_at_xstar = eval_fuzzy(f, res.xstar, cfg.scal.alpha_points).ok();
    let scalarized = scalarize(f, res.xstar, &cfg.scal).ok();
    SolveSummary {
        status: res.status,
        iterations: res.trace.len(),
        xstar: res.xstar,
        stationarity_kind: res.stationarity_kind,
        scalarized,
        objective: scalarized.map(|v| v / 2.0),
        defuzzified: value_at_xstar.as_ref().map(centroid),
        value_at_xstar,
        trace,
    }
}

/// Runs one solve and assembles its report.
pub fn run_solve(mut spec: ProblemSpec, solver: &SolverArgs) -> Result<RunReport> {
    let started = Instant::now();
    let cfg = resolve_config(&mut spec, solver)?;
    let f = spec.build::<f64>()?;
    let res = solve(&*f, &cfg)?;
    let verification = if res.converged() {
        Some(verify_solution(&*f, &res, &cfg, &CheckConfig::default())?)
    } else {
        None
    };
    let result = summarize(&*f, &res, &cfg);
    Ok(RunReport {
        problem: spec.to_string(),
        config: RunConfig {
            problem: spec,
            solver: cfg,
        },
        result,
        verification,
        wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}

fn table_row(params: MaxReturnParams, solver: &SolverArgs) -> Result<TableRow> {
    let kind = if params.is_fuzzy() {
        Builtin::MaxReturnFuzzy
    } else {
        Builtin::MaxReturnCrisp
    };
    let mut spec = ProblemSpec::builtin(kind);
    spec.params = Some(params);
    let cfg = resolve_config(&mut spec, solver)?;
    let f = spec.build::<f64>()?;
    let res = solve(&*f, &cfg)?;
    let value = eval_fuzzy(&*f, res.xstar, cfg.scal.alpha_points)
        .ok()
        .map(|v| centroid(&v));
    Ok(TableRow {
        va: params.va,
        rho: params.rho,
        status: res.status,
        iterations: res.trace.len(),
        xstar: res.xstar,
        value,
    })
}

/// Solves every sweep entry (concurrently) and returns rows in file order.
pub fn run_table(sweep: &[MaxReturnParams], solver: &SolverArgs) -> Result<Vec<TableRow>> {
    std::thread::scope(|s| {
        let handles: Vec<_> = sweep
            .iter()
            .map(|&p| s.spawn(move || table_row(p, solver)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    })
}

pub fn parse_sweep(text: &str) -> Result<Vec<MaxReturnParams>> {
    serde_json::from_str(text).map_err(|e| Error::Config(format!("sweep file: {e}")))
}

pub fn run_check(mut spec: ProblemSpec, args: &CheckArgs) -> Result<CheckReport> {
    let cfg = resolve_config(&mut spec, &args.solver)?;
    if args.nbhd.is_nan() || args.nbhd <= 0.0 || args.samples == 0 {
        return Err(Error::Config(
            "--nbhd must be positive and --samples at least 1".into(),
        ));
    }
    let f = spec.build::<f64>()?;
    let check = CheckConfig {
        nbhd: args.nbhd,
        samples: args.samples,
        delta: args.nbhd,
    };
    let verification = verify_point(&*f, args.xstar, &cfg, &check)?;
    Ok(CheckReport {
        problem: spec.to_string(),
        passed: verification.passed(),
        config: RunConfig {
            problem: spec,
            solver: cfg,
        },
        verification,
    })
}

fn emit(output: &OutputArgs, text: &str, out: &mut dyn Write) -> Result<()> {
    match &output.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::Config(format!("cannot write {}: {e}", path.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Error::Config(format!("cannot write output: {e}"))),
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::Solve(a) => {
            let report = run_solve(load_problem(&a.problem)?, &a.solver)?;
            emit(&a.output, &render_run(&report, a.output.format), out)?;
            Ok(
                if report.result.status == crate::newton::SolveStatus::Converged {
                    EXIT_OK
                } else {
                    EXIT_NOT_CONVERGED
                },
            )
        }
        Command::Table(a) => {
            let text = fs::read_to_string(&a.sweep)
                .map_err(|e| Error::Config(format!("cannot read {}: {e}", a.sweep.display())))?;
            let rows = run_table(&parse_sweep(&text)?, &a.solver)?;
            emit(&a.output, &render_table(&rows, a.output.format), out)?;
            let all_converged = rows
                .iter()
                .all(|r| r.status == crate::newton::SolveStatus::Converged);
            Ok(if all_converged {
                EXIT_OK
            } else {
                EXIT_NOT_CONVERGED
            })
        }
        Command::Check(a) => {
            let report = run_check(load_problem(&a.problem)?, &a)?;
            emit(&a.output, &render_check(&report, a.output.format), out)?;
            Ok(if report.passed {
                EXIT_OK
            } else {
                EXIT_CHECK_FAILED
            })
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}
