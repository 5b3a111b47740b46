//! Command-line front end: kernel tables, solution grids, verification
//! suites and limit studies, written as CSV or JSON.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input,
//! 3 quadrature non-convergence.

mod parse;
mod records;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use laplext::kernels::{
    dirac_kernel, euler_kernel, halfplane_poisson_kernel, mehler_heat_kernel,
    oscillator_poisson_kernel_with, EvaluationPoint, KernelValue, OscillatorParam, Prefactor,
};
use laplext::oracles::{boundary_limit_gap, limit_a_to_zero_gap_with, mehler_limit_gap, LimitStudy};
use laplext::quadrature::QuadratureConfig;
use laplext::solvers::{solve_grid, Problem, SolveRequest};
use laplext::suites::{run_suite, Suite, SuiteOptions};

pub use parse::{parse_data, parse_grid, parse_list};
pub use records::{KernelRecord, LimitRecord, SolveRecord, VerifyRecord};

/// Environment variable holding the default relative tolerance.
pub const REL_TOL_ENV: &str = "LAPLEXT_REL_TOL";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    NotConverged(String),
    Io(io::Error),
}

impl From<laplext::Error> for CliError {
    fn from(e: laplext::Error) -> Self {
        match e {
            laplext::Error::NotConverged { .. } => CliError::NotConverged(e.to_string()),
            other => CliError::Invalid(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "invalid input: {m}"),
            CliError::NotConverged(m) => write!(f, "{m}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::NotConverged(_) => EXIT_NOT_CONVERGED,
            CliError::Invalid(_) | CliError::Io(_) => EXIT_INVALID,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "laplext", version, about = "Poisson-type kernels and Laplace extensions of the Dirac, Euler and oscillator operators")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    pub format: Format,

    /// Write records here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    /// Relative tolerance of every quadrature.
    #[arg(long, env = REL_TOL_ENV, default_value_t = 1e-10, global = true)]
    pub rel_tol: f64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelKind {
    Dirac,
    Euler,
    Oscillator,
    Mehler,
    Halfplane,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProblemKind {
    Dirac,
    Euler,
    Oscillator,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PrefactorArg {
    Corrected,
    /// The constant `√a·y/(2π)`, too large by `√2`.
    Printed,
}

impl From<PrefactorArg> for Prefactor {
    fn from(p: PrefactorArg) -> Self {
        match p {
            PrefactorArg::Corrected => Prefactor::Corrected,
            PrefactorArg::Printed => Prefactor::AsPrinted,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Study {
    /// Oscillator kernel against the half-plane kernel as a → 0.
    AToZero,
    /// Mehler kernel against the free heat kernel as a → 0.
    Mehler,
    /// Solution against its boundary data as y → 0.
    Boundary,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate a kernel over target × source points.
    ///
    /// Columns: kernel, y, target, source, value, error_estimate, converged.
    /// For the mehler kernel `--y` is the time t.
    Kernel(KernelArgs),
    /// Solve an extension problem over y-levels × target points.
    ///
    /// Columns: problem, y, target, value, error_estimate, converged, error.
    Solve(SolveArgs),
    /// Run a verification suite; exit 1 if any check fails.
    ///
    /// Columns: check, measured, tolerance, passed, context.
    Verify(VerifyArgs),
    /// Run a limit study; exit 1 if the gaps fail to decrease.
    ///
    /// Columns: study, step, parameter, gap.
    Limit(LimitArgs),
}

#[derive(Debug, Args)]
pub struct KernelArgs {
    #[arg(long, value_enum)]
    pub kernel: KernelKind,
    /// Oscillator / Euler frequency.
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long, visible_alias = "t")]
    pub y: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub target: Option<f64>,
    /// min:max:count, endpoints included.
    #[arg(long, allow_hyphen_values = true)]
    pub target_grid: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub source: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub source_grid: Option<String>,
    #[arg(long, value_enum, default_value_t = PrefactorArg::Corrected)]
    pub prefactor: PrefactorArg,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, value_enum)]
    pub problem: ProblemKind,
    #[arg(long)]
    pub a: Option<f64>,
    /// gaussian:C,W | bump:C,R | exponential:C | power:B | eigenfunction:N | sampled:PATH
    #[arg(long, allow_hyphen_values = true)]
    pub data: String,
    #[arg(long)]
    pub y: Option<f64>,
    #[arg(long)]
    pub y_grid: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub target: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub target_grid: Option<String>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// identities | spectral | residuals | invariants | all
    #[arg(long, default_value = "all")]
    pub suite: String,
    /// Judge every check against this tolerance instead of its own.
    #[arg(long)]
    pub tolerance: Option<f64>,
    /// Oscillator kernel constant under test.
    #[arg(long, value_enum, default_value_t = PrefactorArg::Corrected)]
    pub prefactor: PrefactorArg,
}

#[derive(Debug, Args)]
pub struct LimitArgs {
    #[arg(long, value_enum)]
    pub study: Study,
    /// Height y (a-to-zero) or time t (mehler).
    #[arg(long, default_value_t = 1.0)]
    pub y: f64,
    #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
    pub target: f64,
    #[arg(long, default_value_t = -0.2, allow_hyphen_values = true)]
    pub source: f64,
    /// Comma-separated decreasing a values.
    #[arg(long, default_value = "1e-1,1e-2,1e-3")]
    pub a_seq: String,
    #[arg(long, value_enum, default_value_t = PrefactorArg::Corrected)]
    pub prefactor: PrefactorArg,
    #[arg(long, value_enum)]
    pub problem: Option<ProblemKind>,
    #[arg(long)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub data: Option<String>,
    /// Comma-separated decreasing y values.
    #[arg(long, default_value = "0.2,0.1,0.05")]
    pub y_seq: String,
    /// Comma-separated spatial points (default: five points around the data).
    #[arg(long, allow_hyphen_values = true)]
    pub points: Option<String>,
}

/// Parses the process arguments, runs the command and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("laplext: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli) -> Result<i32, CliError> {
    let cfg = QuadratureConfig::default().with_rel_tol(cli.rel_tol)?;
    match &cli.command {
        Command::Kernel(args) => run_kernel(cli, args, &cfg),
        Command::Solve(args) => run_solve(cli, args, &cfg),
        Command::Verify(args) => run_verify(cli, args, &cfg),
        Command::Limit(args) => run_limit(cli, args, &cfg),
    }
}

fn oscillator_param(a: Option<f64>, what: &str) -> Result<OscillatorParam, CliError> {
    let a = a.ok_or_else(|| CliError::Invalid(format!("{what} needs --a")))?;
    Ok(OscillatorParam::new(a)?)
}

fn run_kernel(cli: &Cli, args: &KernelArgs, cfg: &QuadratureConfig) -> Result<i32, CliError> {
    let targets = parse::points(args.target, args.target_grid.as_deref(), "target")?;
    let sources = parse::points(args.source, args.source_grid.as_deref(), "source")?;
    let a = match args.kernel {
        KernelKind::Euler | KernelKind::Oscillator | KernelKind::Mehler => {
            Some(oscillator_param(args.a, "this kernel")?)
        }
        _ => None,
    };
    let name = args.kernel.to_possible_value().expect("no skipped variants").get_name().to_string();
    let eval = |target: f64, source: f64| -> Result<KernelValue, CliError> {
        let y = args.y;
        let v = match (args.kernel, a) {
            (KernelKind::Mehler, Some(a)) => mehler_heat_kernel(y, target, source, a)?,
            (KernelKind::Dirac, _) => dirac_kernel(&EvaluationPoint::new(y, target, source)?),
            (KernelKind::Halfplane, _) => halfplane_poisson_kernel(&EvaluationPoint::new(y, target, source)?),
            (KernelKind::Euler, Some(a)) => euler_kernel(&EvaluationPoint::new(y, target, source)?, a)?,
            (KernelKind::Oscillator, Some(a)) => {
                let p = EvaluationPoint::new(y, target, source)?;
                oscillator_poisson_kernel_with(&p, a, cfg, args.prefactor.into())?
            }
            _ => unreachable!("parameter checked above"),
        };
        Ok(v)
    };
    let mut out = Vec::with_capacity(targets.len() * sources.len());
    for &t in &targets {
        for &s in &sources {
            let v = eval(t, s)?;
            out.push(KernelRecord {
                kernel: name.clone(),
                y: args.y,
                target: t,
                source: s,
                value: v.value,
                error_estimate: v.error_estimate,
                converged: v.converged,
            });
        }
    }
    let all_converged = out.iter().all(|r| r.converged);
    write_records(cli, &out)?;
    Ok(if all_converged { EXIT_OK } else { EXIT_NOT_CONVERGED })
}

fn problem(kind: ProblemKind, a: Option<f64>) -> Result<Problem, CliError> {
    Ok(match kind {
        ProblemKind::Dirac => Problem::Dirac,
        ProblemKind::Euler => Problem::Euler(oscillator_param(a, "the euler problem")?),
        ProblemKind::Oscillator => Problem::Oscillator(oscillator_param(a, "the oscillator problem")?),
    })
}

fn run_solve(cli: &Cli, args: &SolveArgs, cfg: &QuadratureConfig) -> Result<i32, CliError> {
    let problem = problem(args.problem, args.a)?;
    let a = args.a.map(OscillatorParam::new).transpose()?;
    let req = SolveRequest {
        problem,
        y_levels: parse::points(args.y, args.y_grid.as_deref(), "y")?,
        spatial_points: parse::points(args.target, args.target_grid.as_deref(), "target")?,
        data: parse_data(&args.data, a)?,
        cfg: *cfg,
    };
    let grid = solve_grid(&req)?;
    let mut out = Vec::with_capacity(grid.values.len());
    for (i, &y) in grid.y_levels.iter().enumerate() {
        for (j, &x) in grid.spatial_points.iter().enumerate() {
            let failure = grid.failures.iter().find(|f| f.level == i && f.point == j);
            out.push(SolveRecord {
                problem: problem.name().to_string(),
                y,
                target: x,
                value: failure.is_none().then(|| grid.value(i, j)),
                error_estimate: failure.is_none().then(|| grid.error_estimate(i, j)),
                converged: grid.is_converged(i, j),
                error: failure.map(|f| f.error.to_string()).unwrap_or_default(),
            });
        }
    }
    write_records(cli, &out)?;
    if grid.failures.iter().any(|f| !matches!(f.error, laplext::Error::NotConverged { .. })) {
        return Ok(EXIT_INVALID);
    }
    Ok(if grid.all_converged() { EXIT_OK } else { EXIT_NOT_CONVERGED })
}

fn run_verify(cli: &Cli, args: &VerifyArgs, cfg: &QuadratureConfig) -> Result<i32, CliError> {
    let suite: Suite = args.suite.parse()?;
    if let Some(t) = args.tolerance {
        if !(t.is_finite() && t >= 0.0) {
            return Err(CliError::Invalid(format!("tolerance must be a non-negative number, got {t}")));
        }
    }
    let opts = SuiteOptions {
        prefactor: args.prefactor.into(),
        tolerance_override: args.tolerance,
        cfg: *cfg,
    };
    let reports = run_suite(suite, &opts);
    let failed = reports.iter().filter(|r| !r.passed).count();
    let out: Vec<VerifyRecord> = reports.iter().map(VerifyRecord::from).collect();
    write_records(cli, &out)?;
    eprintln!("{suite}: {} checks, {failed} failed", reports.len());
    Ok(if failed == 0 { EXIT_OK } else { EXIT_FAILED })
}

fn run_limit(cli: &Cli, args: &LimitArgs, cfg: &QuadratureConfig) -> Result<i32, CliError> {
    let (name, study): (&str, LimitStudy) = match args.study {
        Study::AToZero => {
            let seq = parse_list(&args.a_seq)?;
            let s = limit_a_to_zero_gap_with(args.y, args.target, args.source, &seq, cfg, args.prefactor.into())?;
            ("a-to-zero", s)
        }
        Study::Mehler => {
            let seq = parse_list(&args.a_seq)?;
            ("mehler", mehler_limit_gap(args.y, args.target, args.source, &seq)?)
        }
        Study::Boundary => {
            let kind = args
                .problem
                .ok_or_else(|| CliError::Invalid("the boundary study needs --problem".into()))?;
            let problem = problem(kind, args.a)?;
            let spec = args
                .data
                .as_deref()
                .ok_or_else(|| CliError::Invalid("the boundary study needs --data".into()))?;
            let a = args.a.map(OscillatorParam::new).transpose()?;
            let data = parse_data(spec, a)?;
            let seq = parse_list(&args.y_seq)?;
            let points = match &args.points {
                Some(p) => parse_list(p)?,
                None if matches!(problem, Problem::Euler(_)) => vec![0.5, 0.75, 1.0, 1.25, 1.5],
                None => vec![-1.0, -0.5, 0.0, 0.5, 1.0],
            };
            ("boundary", boundary_limit_gap(&problem, &data, &seq, &points, cfg)?)
        }
    };
    let out: Vec<LimitRecord> = study
        .steps
        .iter()
        .enumerate()
        .map(|(i, s)| LimitRecord {
            study: name.to_string(),
            step: i,
            parameter: s.parameter,
            gap: s.gap,
        })
        .collect();
    write_records(cli, &out)?;
    for r in &study.reports {
        eprintln!("{r}");
    }
    Ok(if study.passed() { EXIT_OK } else { EXIT_FAILED })
}

fn write_records<R: serde::Serialize>(cli: &Cli, records: &[R]) -> Result<(), CliError> {
    let sink: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(File::create(path).map_err(|e| {
            CliError::Invalid(format!("cannot create {}: {e}", path.display()))
        })?),
        None => Box::new(io::stdout().lock()),
    };
    let mut sink = io::BufWriter::new(sink);
    match cli.format {
        Format::Csv => records::write_csv(&mut sink, records)?,
        Format::Json => {
            serde_json::to_writer_pretty(&mut sink, records).map_err(io::Error::from)?;
            writeln!(sink)?;
        }
    }
    sink.flush()?;
    Ok(())
}
