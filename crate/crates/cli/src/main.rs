//! Command-line front end: emits the toolkit's distributions, Bell
//! reports, parameter sweeps, Monte Carlo experiments and oracle checks as
//! plot-ready CSV/JSON artifacts.
//!
//! Exit codes: 0 success, 1 check failure (`oracle-check` discrepancy),
//! 2 usage or domain error.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;

use catbell::bell;
use catbell::crosscheck;
use catbell::experiment::{self, MeasurementSetting};
use catbell::model::{CatParams, DetectorModel, SpinDirection};
use catbell::quadrature::{self, HomodynePhase};
use catbell::settings;

#[derive(Parser)]
#[command(
    name = "catbell",
    version,
    about = "CHSH Bell tests of a spin-1/2 entangled with coherent wave packets via homodyne detection"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a quadrature probability distribution as CSV (`x,p`)
    Dist(DistArgs),
    /// Print the analytic Bell report for one parameter point as JSON
    Bell(BellArgs),
    /// Sweep the maximum Bell combination over α or η into a CSV
    Sweep(SweepArgs),
    /// Run a seeded Monte Carlo Bell experiment and write a JSON report
    Mc(McArgs),
    /// Compare the analytic path against the number-basis oracle
    OracleCheck(OracleCheckArgs),
}

#[derive(Args)]
struct DistArgs {
    /// Coherent amplitude α > 0
    #[arg(long)]
    alpha: f64,
    /// Homodyne efficiency η ∈ (0, 1]
    #[arg(long, default_value_t = 1.0)]
    eta: f64,
    /// Local-oscillator phase: `0`, `pi/2`, or radians
    #[arg(long, default_value = "pi/2")]
    theta: String,
    /// Which distribution to emit
    #[arg(long, value_enum)]
    state: DistState,
    /// Spin direction `ax,ay,az` (cond-up only)
    #[arg(long, required_if_eq("state", "cond-up"))]
    direction: Option<String>,
    /// Grid lower bound (defaults to the integration domain)
    #[arg(long, allow_negative_numbers = true)]
    lo: Option<f64>,
    /// Grid upper bound
    #[arg(long, allow_negative_numbers = true)]
    hi: Option<f64>,
    /// Number of grid points
    #[arg(long, default_value_t = 4001)]
    points: usize,
    /// Output CSV path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DistState {
    /// Even superposition Ψ₊
    Plus,
    /// Odd superposition Ψ₋
    Minus,
    /// Conditioned on a spin-up outcome along `--direction`
    CondUp,
}

#[derive(Args)]
struct DetectorArgs {
    /// Homodyne efficiency for both channels
    #[arg(long, default_value_t = 1.0, conflicts_with_all = ["eta0", "eta_pi2"])]
    eta: f64,
    /// Efficiency of the θ = 0 channel (use together with --eta-pi2)
    #[arg(long, requires = "eta_pi2")]
    eta0: Option<f64>,
    /// Efficiency of the θ = π/2 channel
    #[arg(long, requires = "eta0")]
    eta_pi2: Option<f64>,
    /// Spin-measurement fidelity ξ ∈ [0, 1]
    #[arg(long, default_value_t = 1.0)]
    xi: f64,
}

impl DetectorArgs {
    fn build(&self) -> Result<DetectorModel, CliError> {
        let detector = match (self.eta0, self.eta_pi2) {
            (Some(eta0), Some(eta_pi2)) => {
                DetectorModel::with_phase_efficiencies(eta0, eta_pi2, self.xi)
            }
            _ => DetectorModel::new(self.eta, self.xi),
        };
        detector.map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[derive(Args)]
struct BellArgs {
    /// Coherent amplitude α > 0
    #[arg(long)]
    alpha: f64,
    #[command(flatten)]
    detector: DetectorArgs,
}

#[derive(Args)]
struct SweepArgs {
    /// Variable to sweep
    #[arg(long, value_enum)]
    var: SweepVariable,
    /// Sweep start
    #[arg(long, allow_negative_numbers = true)]
    from: f64,
    /// Sweep end (exclusive of nothing; the grid is inclusive)
    #[arg(long, allow_negative_numbers = true)]
    to: f64,
    /// Number of grid points (≥ 2)
    #[arg(long)]
    steps: usize,
    /// Fixed amplitude (required when sweeping η)
    #[arg(long)]
    alpha: Option<f64>,
    #[command(flatten)]
    detector: DetectorArgs,
    /// Output CSV path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepVariable {
    Alpha,
    Eta,
}

#[derive(Args)]
struct McArgs {
    /// Coherent amplitude α > 0
    #[arg(long)]
    alpha: f64,
    #[command(flatten)]
    detector: DetectorArgs,
    /// Shots per setting (≥ 100)
    #[arg(long)]
    shots: usize,
    /// RNG seed
    #[arg(long)]
    seed: u64,
    /// Settings file overriding the optimal directions: four lines of
    /// `ax ay az theta`, combined as E₁ + E₂ + E₃ − E₄
    #[arg(long)]
    settings: Option<PathBuf>,
    /// Output JSON path
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct OracleCheckArgs {
    /// Coherent amplitude α ∈ (0, 4] (the oracle is capped for runtime)
    #[arg(long)]
    alpha: f64,
    /// Homodyne efficiency η ∈ (0, 1]
    #[arg(long, default_value_t = 1.0)]
    eta: f64,
    /// Largest accepted discrepancy
    #[arg(long)]
    tol: f64,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(message) => write!(f, "{message}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
        }
    }
}

fn usage<T: fmt::Display>(error: T) -> CliError {
    CliError::Usage(error.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Dist(args) => cmd_dist(&args),
        Command::Bell(args) => cmd_bell(&args),
        Command::Sweep(args) => cmd_sweep(&args),
        Command::Mc(args) => cmd_mc(&args),
        Command::OracleCheck(args) => cmd_oracle_check(&args),
    };
    match result {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(2)
        }
    }
}

/// Round-trip float formatting used in every CSV cell.
fn csv_float(value: f64) -> String {
    format!("{value:.16e}")
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_theta(text: &str) -> Result<HomodynePhase, CliError> {
    if text == "pi/2" {
        return Ok(HomodynePhase::momentum());
    }
    if text == "0" {
        return Ok(HomodynePhase::position());
    }
    let radians: f64 = text.parse().map_err(|_| {
        CliError::Usage(format!(
            "--theta must be `0`, `pi/2` or radians, got `{text}`"
        ))
    })?;
    HomodynePhase::new(radians).map_err(usage)
}

fn cmd_dist(args: &DistArgs) -> Result<ExitCode, CliError> {
    let p = CatParams::new(args.alpha).map_err(usage)?;
    let theta = parse_theta(&args.theta)?;
    if args.points < 2 {
        return Err(CliError::Usage(format!(
            "--points must be ≥ 2, got {}",
            args.points
        )));
    }
    let (domain_lo, domain_hi) = quadrature::integration_domain(&p, theta, args.eta);
    let lo = args.lo.unwrap_or(domain_lo);
    let hi = args.hi.unwrap_or(domain_hi);
    if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
        return Err(CliError::Usage(format!(
            "grid bounds must satisfy lo < hi, got [{lo}, {hi}]"
        )));
    }

    let density: Box<dyn Fn(f64) -> f64> = match args.state {
        DistState::Plus | DistState::Minus => {
            let sign = if args.state == DistState::Plus {
                catbell::SuperpositionSign::Plus
            } else {
                catbell::SuperpositionSign::Minus
            };
            if theta.is_momentum() {
                let eta = args.eta;
                Box::new(move |x| quadrature::dist_superposition(sign, x, &p, eta).unwrap())
            } else {
                // General phase: assemble the pattern from the POVM
                // elements of the two packets.
                let norm = p.norm_constant(sign).map_err(usage)?;
                let amp = Complex64::new(p.alpha(), 0.0);
                let eta = args.eta;
                let signum = sign.signum();
                Box::new(move |x| {
                    let diag = quadrature::povm_coherent_element(amp, amp, x, theta, eta).re
                        + quadrature::povm_coherent_element(-amp, -amp, x, theta, eta).re;
                    let cross =
                        2.0 * quadrature::povm_coherent_element(amp, -amp, x, theta, eta).re;
                    ((diag + signum * cross) / norm).max(0.0)
                })
            }
        }
        DistState::CondUp => {
            let direction_text = args.direction.as_deref().expect("required by clap");
            let direction = settings::parse_direction(direction_text).map_err(usage)?;
            let m = MeasurementSetting::new(direction, theta).map_err(|_| {
                CliError::Usage("cond-up distributions need --theta 0 or pi/2".into())
            })?;
            let d = DetectorModel::new(args.eta, 1.0).map_err(usage)?;
            // Normalize over the full integration domain, independent of
            // the requested grid window.
            let steps = 1 << 14;
            let h = (domain_hi - domain_lo) / (steps - 1) as f64;
            let mut mass = 0.0;
            let mut prev = experiment::joint_density(1, domain_lo, &m, &p, &d);
            for i in 1..steps {
                let x = domain_lo + i as f64 * h;
                let current = experiment::joint_density(1, x, &m, &p, &d);
                mass += 0.5 * (prev + current) * h;
                prev = current;
            }
            Box::new(move |x| experiment::joint_density(1, x, &m, &p, &d) / mass)
        }
    };

    let mut csv = String::from("x,p\n");
    let step = (hi - lo) / (args.points - 1) as f64;
    for i in 0..args.points {
        let x = lo + i as f64 * step;
        csv.push_str(&csv_float(x));
        csv.push(',');
        csv.push_str(&csv_float(density(x)));
        csv.push('\n');
    }
    write_file(&args.out, &csv)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct DirectionReport {
    ax: f64,
    ay: f64,
    az: f64,
}

impl From<SpinDirection> for DirectionReport {
    fn from(a: SpinDirection) -> Self {
        Self {
            ax: a.ax(),
            ay: a.ay(),
            az: a.az(),
        }
    }
}

#[derive(Serialize)]
struct ComplexReport {
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct BellReport {
    alpha: f64,
    eta0: f64,
    eta_pi2: f64,
    xi: f64,
    c0_diag: f64,
    cpi2_offdiag: ComplexReport,
    cpi2_diag: f64,
    s_max: f64,
    s_max_approx: f64,
    a_opt: DirectionReport,
    a_prime_opt: DirectionReport,
    violation: bool,
}

fn bell_report(alpha: f64, detector: &DetectorArgs) -> Result<BellReport, CliError> {
    let p = CatParams::new(alpha).map_err(usage)?;
    let d = detector.build()?;
    let result = bell::s_max(&p, &d);
    Ok(BellReport {
        alpha,
        eta0: d.eta0(),
        eta_pi2: d.eta_pi2(),
        xi: d.xi(),
        c0_diag: result.elements.c0_diag,
        cpi2_offdiag: ComplexReport {
            re: result.elements.cpi2_offdiag.re,
            im: result.elements.cpi2_offdiag.im,
        },
        cpi2_diag: result.elements.cpi2_diag,
        s_max: result.s_max,
        s_max_approx: bell::s_max_approx(&p, &d),
        a_opt: result.a_opt.into(),
        a_prime_opt: result.a_prime_opt.into(),
        violation: result.violates(),
    })
}

fn cmd_bell(args: &BellArgs) -> Result<ExitCode, CliError> {
    let report = bell_report(args.alpha, &args.detector)?;
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(args: &SweepArgs) -> Result<ExitCode, CliError> {
    if args.steps < 2 {
        return Err(CliError::Usage(format!(
            "--steps must be ≥ 2, got {}",
            args.steps
        )));
    }
    if !(args.from.is_finite() && args.to.is_finite()) || args.from >= args.to {
        return Err(CliError::Usage(format!(
            "sweep range must satisfy from < to, got [{}, {}]",
            args.from, args.to
        )));
    }

    let mut csv = String::from("var,s_max,s_max_approx\n");
    for k in 0..args.steps {
        let value = args.from + (args.to - args.from) * k as f64 / (args.steps - 1) as f64;
        let (p, d) = match args.var {
            SweepVariable::Alpha => {
                let p = CatParams::new(value)
                    .map_err(|e| CliError::Usage(format!("swept α = {value}: {e}")))?;
                (p, args.detector.build()?)
            }
            SweepVariable::Eta => {
                let alpha = args
                    .alpha
                    .ok_or_else(|| CliError::Usage("sweeping η requires a fixed --alpha".into()))?;
                let p = CatParams::new(alpha).map_err(usage)?;
                let d = DetectorModel::new(value, args.detector.xi)
                    .map_err(|e| CliError::Usage(format!("swept η = {value}: {e}")))?;
                (p, d)
            }
        };
        let result = bell::s_max(&p, &d);
        let approx = bell::s_max_approx(&p, &d);
        csv.push_str(&format!(
            "{},{},{}\n",
            csv_float(value),
            csv_float(result.s_max),
            csv_float(approx)
        ));
    }
    write_file(&args.out, &csv)?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct SettingReport {
    ax: f64,
    ay: f64,
    az: f64,
    theta: f64,
}

#[derive(Serialize)]
struct CorrelationReport {
    mean: f64,
    stderr: f64,
    shots: usize,
}

#[derive(Serialize)]
struct McReport {
    alpha: f64,
    eta0: f64,
    eta_pi2: f64,
    xi: f64,
    shots_per_setting: usize,
    seed: u64,
    settings: Vec<SettingReport>,
    correlations: Vec<CorrelationReport>,
    s: f64,
    s_stderr: f64,
    s_analytic: f64,
}

fn cmd_mc(args: &McArgs) -> Result<ExitCode, CliError> {
    let p = CatParams::new(args.alpha).map_err(usage)?;
    let d = args.detector.build()?;

    let chosen: [MeasurementSetting; 4] = match &args.settings {
        None => experiment::optimal_settings(&p, &d),
        Some(path) => {
            let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            let parsed = settings::parse_settings(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            let count = parsed.len();
            parsed.try_into().map_err(|_| {
                CliError::Usage(format!(
                    "{}: settings file must contain exactly 4 settings, found {count}",
                    path.display()
                ))
            })?
        }
    };

    let run = experiment::run_bell_experiment_with_settings(&chosen, &p, &d, args.shots, args.seed)
        .map_err(usage)?;

    // Analytic CHSH combination at the same settings, signs + + + −.
    let analytic: f64 = chosen
        .iter()
        .zip([1.0, 1.0, 1.0, -1.0])
        .map(|(m, sign)| {
            sign * bell::correlation(&m.spin(), m.phase(), &p, &d).expect("phase validated")
        })
        .sum();

    let report = McReport {
        alpha: args.alpha,
        eta0: d.eta0(),
        eta_pi2: d.eta_pi2(),
        xi: d.xi(),
        shots_per_setting: args.shots,
        seed: args.seed,
        settings: run
            .settings
            .iter()
            .map(|m| SettingReport {
                ax: m.spin().ax(),
                ay: m.spin().ay(),
                az: m.spin().az(),
                theta: m.phase().theta(),
            })
            .collect(),
        correlations: run
            .correlations
            .iter()
            .map(|c| CorrelationReport {
                mean: c.mean,
                stderr: c.stderr,
                shots: c.shots,
            })
            .collect(),
        s: run.s,
        s_stderr: run.s_stderr,
        s_analytic: analytic,
    };
    let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
    json.push('\n');
    write_file(&args.out, &json)?;
    println!(
        "S = {:.6} ± {:.6} (analytic {:.6}), report written to {}",
        run.s,
        run.s_stderr,
        analytic,
        args.out.display()
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle_check(args: &OracleCheckArgs) -> Result<ExitCode, CliError> {
    if !(args.alpha > 0.0 && args.alpha <= 4.0) {
        return Err(CliError::Usage(format!(
            "--alpha must lie in (0, 4] for oracle checks, got {}",
            args.alpha
        )));
    }
    if !(args.tol.is_finite() && args.tol > 0.0) {
        return Err(CliError::Usage(format!(
            "--tol must be > 0, got {}",
            args.tol
        )));
    }
    let p = CatParams::new(args.alpha).map_err(usage)?;
    let report = crosscheck::oracle_vs_analytic(&p, args.eta).map_err(usage)?;

    for entry in &report.entries {
        println!(
            "{:<26} analytic {:+.12e}  oracle {:+.12e}  |Δ| {:.3e}",
            entry.name, entry.analytic, entry.oracle, entry.discrepancy
        );
    }
    let worst = report.worst();
    if worst.discrepancy > args.tol {
        println!(
            "FAIL worst offender: {} |Δ| {:.3e} exceeds tolerance {:.3e}",
            worst.name, worst.discrepancy, args.tol
        );
        Ok(ExitCode::from(1))
    } else {
        println!(
            "OK worst offender: {} |Δ| {:.3e} within tolerance {:.3e}",
            worst.name, worst.discrepancy, args.tol
        );
        Ok(ExitCode::SUCCESS)
    }
}
