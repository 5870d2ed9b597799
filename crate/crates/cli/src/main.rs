//! `gce`: classify and bound the entanglement of two-mode Gaussian states
//! from their global and marginal purities.

mod format;
mod sweep;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gce_core::{
    delta_bounds, estimate_with_tol, gmemms, gmems, least_entangled, squeezed_thermal, CovarianceMatrix,
    EntanglementReport, Error, PurityPoint, SampleConfig, SqueezedThermalParams, StandardForm,
};
use serde_json::json;

use crate::format::{sig, KeyValues, LogBase};
use crate::sweep::{GridRange, SweepGrid};

#[derive(Parser)]
#[command(name = "gce", version, about = "Entanglement of two-mode Gaussian states from purities")]
struct Cli {
    /// Absolute tolerance for boundary decisions
    #[arg(long, global = true, env = "GCE_TOLERANCE", default_value_t = gce_core::DEFAULT_TOL)]
    tol: f64,

    /// Logarithm base for logarithmic-negativity outputs
    #[arg(long, global = true, value_enum, default_value = "e")]
    log_base: LogBase,

    /// Emit JSON instead of key=value lines
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Purities {
    #[arg(long)]
    mu1: f64,
    #[arg(long)]
    mu2: f64,
    #[arg(long)]
    mu: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Region label and purity-only bounds on the logarithmic negativity
    Classify(Purities),
    /// Bounds on Delta and on the logarithmic negativity
    Bounds {
        #[command(flatten)]
        purities: Purities,
        /// Evaluate the exact entanglement at this value of Delta
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Emit an extremal or squeezed thermal state as covariance-matrix JSON
    Construct {
        #[command(subcommand)]
        family: Family,
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Full analysis of a covariance matrix stored as JSON
    Analyze { path: PathBuf },
    /// CSV grid over symmetric marginal purity and global purity
    Sweep {
        /// START:STOP:STEP for the marginal purity
        #[arg(long = "mu-i")]
        mu_i: GridRange,
        /// START:STOP:STEP (or a single value) for the global purity
        #[arg(long)]
        mu: GridRange,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Monte Carlo validation of every analytic bound
    Validate {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100_000)]
        count: usize,
        #[arg(long, default_value_t = 5.0)]
        a_max: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Family {
    /// Most entangled state at fixed purities
    Gmems(Purities),
    /// Least entangled state at fixed purities
    Glems(Purities),
    /// Most entangled state at fixed marginals
    Gmemms {
        #[arg(long)]
        mu1: f64,
        #[arg(long)]
        mu2: f64,
    },
    /// Two-mode squeezed thermal state
    Sqth {
        #[arg(long)]
        r: f64,
        #[arg(long)]
        n_minus: f64,
        #[arg(long)]
        n_plus: f64,
    },
}

#[derive(Debug)]
enum CliError {
    Io(PathBuf, std::io::Error),
    Parameters(Error),
    Parse(String),
    Unphysical(String),
    ValidationFailed(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            Self::Io(..) => 1,
            Self::Parameters(_) => 3,
            Self::Parse(_) => 4,
            Self::Unphysical(_) => 5,
            Self::ValidationFailed(_) => 6,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Io(path, e) => write!(f, "{}: {e}", path.display()),
            Self::Parameters(e) => write!(f, "{e}"),
            Self::Parse(msg) => write!(f, "cannot parse input: {msg}"),
            Self::Unphysical(msg) => write!(f, "{msg}"),
            Self::ValidationFailed(msg) => write!(f, "validation failed: {msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Unphysical(v) => Self::Unphysical(format!("unphysical state: {v}")),
            other => Self::Parameters(other),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> CliResult<String> {
    match &cli.command {
        Command::Classify(p) => classify(cli, p),
        Command::Bounds { purities, delta } => bounds(cli, purities, *delta),
        Command::Construct { family, out } => emit(construct(family)?.to_json() + "\n", out.as_deref()),
        Command::Analyze { path } => analyze(cli, path),
        Command::Sweep { mu_i, mu, out } => {
            let csv = sweep::render(&SweepGrid { mu_i: *mu_i, mu: *mu }, cli.tol, cli.log_base);
            emit(csv, out.as_deref())
        }
        Command::Validate { seed, count, a_max, out } => {
            let cfg = SampleConfig { seed: *seed, count: *count, a_max: *a_max, tolerance: cli.tol };
            validate(&cfg, out.as_deref())
        }
    }
}

/// Writes to `out` if given (returning nothing to print), otherwise returns
/// the text for stdout.
fn emit(text: String, out: Option<&Path>) -> CliResult<String> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| CliError::Io(path.to_owned(), e))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn classify(cli: &Cli, p: &Purities) -> CliResult<String> {
    let e = estimate_with_tol(p.mu1, p.mu2, p.mu, cli.tol)?;
    let base = cli.log_base;
    if cli.json {
        return Ok(json!({
            "region": e.region,
            "en_min": base.convert(e.en_min),
            "en_max": base.convert(e.en_max),
            "en_avg": base.convert(e.en_avg),
            "rel_err": e.rel_err,
        })
        .to_string()
            + "\n");
    }
    Ok(KeyValues::default()
        .text("region", e.region)
        .num("en_min", base.convert(e.en_min))
        .num("en_max", base.convert(e.en_max))
        .num("en_avg", base.convert(e.en_avg))
        .num("rel_err", e.rel_err)
        .render())
}

fn bounds(cli: &Cli, p: &Purities, delta: Option<f64>) -> CliResult<String> {
    gce_core::check_purity_constraints_with_tol(p.mu1, p.mu2, p.mu, cli.tol).map_err(Error::from)?;
    let b = delta_bounds(p.mu1, p.mu2, p.mu).or_else(|_| {
        // accepted within the user tolerance; evaluate at the clamped point
        delta_bounds(p.mu1, p.mu2, p.mu.clamp(p.mu1 * p.mu2, gce_core::max_global_purity(p.mu1, p.mu2)))
    })?;
    let point = PurityPoint { mu1: p.mu1, mu2: p.mu2, mu: p.mu, delta };
    let report = EntanglementReport::from_purities(&point, cli.tol)?;
    let base = cli.log_base;
    if cli.json {
        return Ok(json!({
            "delta_min": b.min,
            "delta_max": b.max,
            "heisenberg_active": b.heisenberg_active(),
            "region": report.region,
            "en_min": base.convert(report.en_min),
            "en_max": base.convert(report.en_max),
            "n_tilde_minus": report.n_tilde_minus,
            "log_negativity": report.log_negativity.map(|v| base.convert(v)),
        })
        .to_string()
            + "\n");
    }
    let mut kv = KeyValues::default();
    kv.num("delta_min", b.min)
        .num("delta_max", b.max)
        .text("heisenberg_active", b.heisenberg_active())
        .text("region", report.region)
        .num("en_min", base.convert(report.en_min))
        .num("en_max", base.convert(report.en_max));
    if let (Some(n), Some(en)) = (report.n_tilde_minus, report.log_negativity) {
        kv.num("n_tilde_minus", n).num("log_negativity", base.convert(en));
    }
    Ok(kv.render())
}

fn construct(family: &Family) -> CliResult<CovarianceMatrix> {
    let sf: StandardForm = match *family {
        Family::Gmems(p) => gmems(p.mu1, p.mu2, p.mu)?,
        Family::Glems(p) => least_entangled(p.mu1, p.mu2, p.mu)?,
        Family::Gmemms { mu1, mu2 } => gmemms(mu1, mu2)?,
        Family::Sqth { r, n_minus, n_plus } => squeezed_thermal(&SqueezedThermalParams::new(r, n_minus, n_plus)?),
    };
    Ok(sf.covariance()?)
}

fn analyze(cli: &Cli, path: &Path) -> CliResult<String> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io(path.to_owned(), e))?;
    let cm = CovarianceMatrix::from_json(&text).map_err(|e| CliError::Parse(e.to_string()))?;
    cm.check_physical_with_tol(cli.tol).map_err(|v| CliError::Unphysical(format!("unphysical state: {v}")))?;
    let inv = cm.invariants()?;
    let p = inv.purities();
    let sf = StandardForm::from_invariants(&inv)?;
    let report = EntanglementReport::from_covariance(&cm, cli.tol)?;
    let contained = report.bounds_contain(cli.tol).unwrap_or(false);
    let base = cli.log_base;
    let en = report.log_negativity.expect("covariance reports carry the exact value");
    if cli.json {
        return Ok(json!({
            "mu1": p.mu1, "mu2": p.mu2, "mu": p.mu, "delta": inv.delta,
            "standard_form": sf,
            "n_tilde_minus": report.n_tilde_minus,
            "log_negativity": base.convert(en),
            "separable": report.n_tilde_minus.map(|n| n >= 0.5 - cli.tol),
            "region": report.region,
            "en_min": base.convert(report.en_min),
            "en_max": base.convert(report.en_max),
            "en_avg": base.convert(report.en_avg),
            "rel_err": report.rel_err,
            "bounds_contain": contained,
        })
        .to_string()
            + "\n");
    }
    let n_tilde = report.n_tilde_minus.expect("covariance reports carry the spectrum");
    Ok(KeyValues::default()
        .num("mu1", p.mu1)
        .num("mu2", p.mu2)
        .num("mu", p.mu)
        .num("delta", inv.delta)
        .num("a", sf.a)
        .num("b", sf.b)
        .num("c_plus", sf.c_plus)
        .num("c_minus", sf.c_minus)
        .num("n_tilde_minus", n_tilde)
        .num("log_negativity", base.convert(en))
        .text("separable", n_tilde >= 0.5 - cli.tol)
        .text("region", report.region)
        .num("en_min", base.convert(report.en_min))
        .num("en_max", base.convert(report.en_max))
        .num("en_avg", base.convert(report.en_avg))
        .num("rel_err", report.rel_err)
        .text("bounds_contain", contained)
        .render())
}

fn validate(cfg: &SampleConfig, out: Option<&Path>) -> CliResult<String> {
    let bounds = gce_core::validate_bounds(cfg)?;
    let cross = gce_core::crosscheck_closed_forms(cfg)?;
    let passed = bounds.passed() && cross.passed();
    let text = serde_json::to_string_pretty(&json!({
        "seed": cfg.seed,
        "passed": passed,
        "bounds": bounds,
        "crosscheck": cross,
    }))
    .expect("reports serialize")
        + "\n";
    let printed = emit(text, out)?;
    if passed {
        Ok(printed)
    } else {
        print!("{printed}");
        Err(CliError::ValidationFailed(format!(
            "{} bound violations, crosscheck deviations en_max {} en_min {} squeezing {}",
            bounds.violations.total,
            sig(cross.max_dev_en_max),
            sig(cross.max_dev_en_min),
            sig(cross.max_dev_squeezing)
        )))
    }
}
