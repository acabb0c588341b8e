//! `susyloops` command-line front end.
//!
//! ```text
//! susyloops <command> --config <file> [--out <dir>] [--seed <int>]
//! ```
//!
//! Commands: `potential`, `spectrum`, `phase`, `loop`, `coherent`, and `run`
//! (every task listed in the config). Failures exit non-zero and print one
//! JSON object on standard error:
//!
//! - `1`: usage, configuration or I/O errors;
//! - `2`: the SUSY chain cannot be constructed (ordering, Wronskian node, …);
//! - `3`: an independent oracle disagrees with the analytic result.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::algebra::{build_polynomials, build_polynomials_exact, SpectrumDescriptor};
use crate::error::Error;
use crate::loops::{coherent_phase_closed_form, coherent_phase_sum, detect_loops, evolve, LoopKind, COHERENT_PHASE_TOL};
use crate::numverify::{compare_spectrum, discretize, loop_residual, low_eigenvalues};
use crate::seed::SeedSpec;
use crate::states::{coherent_state, eigenvalue_residual, energy_expectation, StateVector};
use crate::susychain::{format_sig17, potential_wronskian, Grid, SusyChain};

/// Environment variable overriding the grid resolution.
pub const GRID_POINTS_ENV: &str = "SUSYLOOPS_GRID_POINTS";

/// Analytic levels up to this energy are checked by the spectrum oracle.
const SPECTRUM_CUTOFF: f64 = 4.0;

#[derive(Debug, Parser)]
#[command(name = "susyloops", version, about = "SUSY partners of the harmonic oscillator: spectra, loops and geometric phases")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Experiment descriptor (JSON).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output directory (overrides the config's `output_dir`).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Seed for the random states used in verification blocks.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write `potential.csv` with columns `x,v0,vk`.
    Potential,
    /// Compare analytic and discretized spectra, write `spectrum.json`.
    Spectrum,
    /// Write `phase.csv` with the coherent-state geometric phase.
    Phase {
        #[arg(long)]
        r_min: Option<f64>,
        #[arg(long)]
        r_max: Option<f64>,
        #[arg(long)]
        r_steps: Option<usize>,
    },
    /// Detect evolution loops, write `loop.json`.
    Loop,
    /// Dump a nonlinear coherent state to `coherent.json`.
    Coherent {
        #[arg(long, allow_hyphen_values = true)]
        z_re: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        z_im: Option<f64>,
    },
    /// Run every task listed in the config.
    Run,
}

/// A factorization energy, either a float or an exact `[numerator, denominator]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EpsilonSpec {
    Exact([i64; 2]),
    Float(f64),
}

impl EpsilonSpec {
    pub fn value(&self) -> f64 {
        match self {
            Self::Exact([n, d]) => *n as f64 / *d as f64,
            Self::Float(v) => *v,
        }
    }

    pub fn rational(&self) -> Option<Ratio<i64>> {
        match self {
            Self::Exact([n, d]) => Some(Ratio::new(*n, *d)),
            Self::Float(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeedConfig {
    pub epsilon: EpsilonSpec,
    pub nu: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseRange {
    pub r_min: f64,
    pub r_max: f64,
    pub r_steps: usize,
}

impl Default for PhaseRange {
    fn default() -> Self {
        Self {
            r_min: 0.0,
            r_max: 5.0,
            r_steps: 51,
        }
    }
}

/// Experiment descriptor read from `--config`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub seeds: Vec<SeedConfig>,
    #[serde(default)]
    pub grid: Option<Grid>,
    #[serde(default)]
    pub tasks: Vec<String>,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub phase: Option<PhaseRange>,
    /// Coherent-state amplitude `[re, im]`.
    #[serde(default)]
    pub z: Option<[f64; 2]>,
}

pub const TASKS: [&str; 5] = ["potential", "spectrum", "phase", "loop", "coherent"];

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| CliError::config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), CliError> {
        if let Some(t) = self.tasks.iter().find(|t| !TASKS.contains(&t.as_str())) {
            return Err(CliError::config(format!("unknown task {t:?}")));
        }
        for (i, s) in self.seeds.iter().enumerate() {
            if let EpsilonSpec::Exact([_, 0]) = s.epsilon {
                return Err(CliError::config(format!("seed {} has a zero denominator", i + 1)));
            }
        }
        let exact = self.seeds.iter().filter(|s| s.epsilon.rational().is_some()).count();
        let wants_loop = self.tasks.iter().any(|t| t == "loop");
        if wants_loop && exact != 0 && exact != self.seeds.len() {
            return Err(CliError::config(
                "loop task needs every ε as an exact [numerator, denominator] pair (or none, for a partial-only report)",
            ));
        }
        Ok(())
    }

    fn seeds(&self) -> Vec<SeedSpec> {
        self.seeds
            .iter()
            .map(|s| SeedSpec::new(s.epsilon.value(), s.nu))
            .collect()
    }

    fn rationals(&self) -> Result<Option<Vec<Ratio<i64>>>, CliError> {
        let r: Vec<_> = self.seeds.iter().filter_map(|s| s.epsilon.rational()).collect();
        if r.is_empty() && !self.seeds.is_empty() {
            Ok(None)
        } else if r.len() == self.seeds.len() {
            Ok(Some(r))
        } else {
            Err(CliError::config(
                "mixing float and exact ε is not allowed for loop detection",
            ))
        }
    }

    /// Grid from the config, with the environment override applied.
    pub fn effective_grid(&self) -> Result<Grid, CliError> {
        let mut grid = self.grid.unwrap_or_default();
        if let Ok(v) = std::env::var(GRID_POINTS_ENV) {
            grid.n_points = v
                .trim()
                .parse()
                .map_err(|_| CliError::config(format!("{GRID_POINTS_ENV}={v:?} is not an integer")))?;
        }
        grid.validate().map_err(CliError::from)?;
        Ok(grid)
    }

    fn spectrum(&self) -> Result<SpectrumDescriptor, CliError> {
        SpectrumDescriptor::new(self.seeds().iter().map(|s| s.epsilon).collect()).map_err(|e| CliError {
            code: 2,
            kind: "chain",
            message: e.to_string(),
            details: None,
        })
    }

    fn chain(&self) -> Result<SusyChain, CliError> {
        SusyChain::new(self.seeds(), self.effective_grid()?).map_err(CliError::from)
    }
}

/// Error reported by the CLI as `{"error": kind, "message": …, "exit_code": …}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub kind: &'static str,
    pub message: String,
    pub details: Option<serde_json::Value>,
}

impl CliError {
    fn config(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            kind: "config",
            message: message.into(),
            details: None,
        }
    }

    fn oracle(message: impl Into<String>, details: serde_json::Value) -> Self {
        Self {
            code: 3,
            kind: "oracle",
            message: message.into(),
            details: Some(details),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = json!({ "error": self.kind, "message": self.message, "exit_code": self.code });
        if let Some(d) = &self.details {
            v["details"] = d.clone();
        }
        v
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let (code, kind, details) = match &e {
            Error::WronskianNode { x } => (2, "chain", Some(json!({ "node_x": x }))),
            Error::RiccatiSingular { level, x } => (2, "chain", Some(json!({ "level": level, "x": x }))),
            Error::SeedNode { x, .. } => (2, "chain", Some(json!({ "node_x": x }))),
            Error::InvalidChain(_) | Error::GammaPole { .. } => (2, "chain", None),
            Error::InvalidGrid(_) => (1, "config", None),
            Error::Mismatch { a, b, .. } => (3, "oracle", Some(json!({ "a": a, "b": b }))),
            Error::Io(_) => (1, "io", None),
            Error::Json(_) => (1, "config", None),
            _ => (1, "computation", None),
        };
        Self {
            code,
            kind,
            message: e.to_string(),
            details,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e).into()
    }
}

struct Context {
    config: ExperimentConfig,
    out: PathBuf,
    seed: u64,
}

impl Context {
    fn write(&self, name: &str, contents: &str) -> Result<PathBuf, CliError> {
        fs::create_dir_all(&self.out)?;
        let path = self.out.join(name);
        fs::write(&path, contents)?;
        Ok(path)
    }

    fn write_json(&self, name: &str, value: &serde_json::Value) -> Result<PathBuf, CliError> {
        let mut text = serde_json::to_string_pretty(value).map_err(Error::from)?;
        text.push('\n');
        self.write(name, &text)
    }
}

fn cmd_potential(ctx: &Context) -> Result<(), CliError> {
    let chain = ctx.config.chain()?;
    let pot = potential_wronskian(&chain)?;
    let mut csv = String::from("x,v0,vk\n");
    for (i, vk) in pot.v.iter().enumerate() {
        let x = pot.grid.x(i);
        csv.push_str(&format!("{},{},{}\n", format_sig17(x), format_sig17(0.5 * x * x), format_sig17(*vk)));
    }
    ctx.write("potential.csv", &csv)?;
    Ok(())
}

fn cmd_spectrum(ctx: &Context) -> Result<(), CliError> {
    let chain = ctx.config.chain()?;
    let spectrum = ctx.config.spectrum()?;
    let pot = potential_wronskian(&chain)?;
    let h = discretize(&pot)?;
    let analytic = spectrum.lowest_levels(spectrum.order() + 4);
    let report = compare_spectrum(&h, &analytic, SPECTRUM_CUTOFF)?;
    let passes = report.passes();
    let mut value = serde_json::to_value(&report).map_err(Error::from)?;
    value["passes"] = json!(passes);
    value["polynomials"] = match ctx.config.rationals() {
        Ok(Some(r)) => build_polynomials_exact(&r).to_exact_json(),
        _ => serde_json::to_value(build_polynomials(&spectrum)).map_err(Error::from)?,
    };
    ctx.write_json("spectrum.json", &value)?;
    if !passes {
        return Err(CliError::oracle("discretized spectrum disagrees with the analytic levels", value));
    }
    Ok(())
}

fn cmd_phase(ctx: &Context, range: PhaseRange) -> Result<(), CliError> {
    if range.r_steps == 0 || !(range.r_max >= range.r_min) || range.r_min < 0.0 {
        return Err(CliError::config(format!("bad r range {range:?}")));
    }
    let spectrum = ctx.config.spectrum()?;
    let mut csv = String::from("r,beta_closed,beta_sum,beta_standard\n");
    let mut worst: Option<(f64, f64, f64)> = None;
    for i in 0..range.r_steps {
        let r = if range.r_steps == 1 {
            range.r_min
        } else {
            range.r_min + (range.r_max - range.r_min) * i as f64 / (range.r_steps - 1) as f64
        };
        let closed = coherent_phase_closed_form(&spectrum, r)?;
        let sum = coherent_phase_sum(&spectrum, r)?.beta;
        let standard = 2.0 * std::f64::consts::PI * r * r;
        if (closed - sum).abs() > COHERENT_PHASE_TOL * closed.abs() && worst.is_none() {
            worst = Some((r, closed, sum));
        }
        csv.push_str(&format!(
            "{},{},{},{}\n",
            format_sig17(r),
            format_sig17(closed),
            format_sig17(sum),
            format_sig17(standard)
        ));
    }
    ctx.write("phase.csv", &csv)?;
    if let Some((r, a, b)) = worst {
        return Err(CliError::oracle(
            "closed-form and coefficient-sum phases disagree",
            json!({ "r": r, "beta_closed": a, "beta_sum": b }),
        ));
    }
    Ok(())
}

fn random_state(rng: &mut ChaCha8Rng, k: usize, len: usize) -> StateVector {
    let mut s = StateVector::zeros(k, len);
    for v in s.b.iter_mut().chain(s.c.iter_mut()) {
        *v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    }
    s.normalized()
}

fn cmd_loop(ctx: &Context) -> Result<(), CliError> {
    let spectrum = ctx.config.spectrum()?;
    let rationals = ctx.config.rationals()?;
    let report = detect_loops(&spectrum, rationals.as_deref())?;
    let mut value = json!({ "report": report });
    if report.kind == LoopKind::Global {
        let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
        let target = report.phase_factor();
        let roundtrip = (0..10)
            .map(|_| {
                let s = random_state(&mut rng, spectrum.order(), 32);
                evolve(&spectrum, &s, report.tau).max_coefficient_error(&s.scaled(target))
            })
            .fold(0.0, f64::max);
        let chain = ctx.config.chain()?;
        let h = discretize(&potential_wronskian(&chain)?)?;
        let eigs = low_eigenvalues(&h, spectrum.order() + 4)?;
        let residual = loop_residual(&eigs, report.tau, report.phi);
        value["verification"] = json!({
            "random_states": 10,
            "seed": ctx.seed,
            "max_roundtrip_error": roundtrip,
            "numeric_levels": eigs,
            "loop_residual": residual,
        });
        ctx.write_json("loop.json", &value)?;
        if roundtrip > 1e-12 {
            return Err(CliError::oracle("U(τ) does not return states to themselves", value));
        }
        return Ok(());
    }
    ctx.write_json("loop.json", &value)?;
    Ok(())
}

fn cmd_coherent(ctx: &Context, z: Complex64) -> Result<(), CliError> {
    let spectrum = ctx.config.spectrum()?;
    let cs = coherent_state(&spectrum, z)?;
    let residual = eigenvalue_residual(&spectrum, &cs);
    let energy = energy_expectation(&spectrum, &cs.state);
    let mut value = serde_json::to_value(&cs).map_err(Error::from)?;
    value["epsilons"] = json!(spectrum.epsilons());
    value["eigenvalue_residual"] = json!(residual);
    value["energy"] = json!(energy);
    ctx.write_json("coherent.json", &value)?;
    if residual > 1e-10 {
        return Err(CliError::oracle("‖L⁻|z⟩ − z|z⟩‖ above 1e-10", json!({ "residual": residual })));
    }
    Ok(())
}

fn run_task(ctx: &Context, task: &str, phase: PhaseRange, z: Complex64) -> Result<(), CliError> {
    match task {
        "potential" => cmd_potential(ctx),
        "spectrum" => cmd_spectrum(ctx),
        "phase" => cmd_phase(ctx, phase),
        "loop" => cmd_loop(ctx),
        "coherent" => cmd_coherent(ctx, z),
        other => Err(CliError::config(format!("unknown task {other:?}"))),
    }
}

fn load_config(path: Option<&Path>) -> Result<ExperimentConfig, CliError> {
    let path = path.ok_or_else(|| CliError::config("--config <file> is required"))?;
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    ExperimentConfig::from_json(&text)
}

/// Executes a parsed command line.
pub fn execute(cli: Cli) -> Result<(), CliError> {
    let mut config = load_config(cli.config.as_deref())?;
    let out = cli
        .out
        .clone()
        .or_else(|| config.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("."));
    let seed = cli.seed.or(config.seed).unwrap_or(0);
    let mut phase = config.phase.clone().unwrap_or_default();
    let mut z = config.z.map(|[re, im]| Complex64::new(re, im)).unwrap_or(Complex64::new(1.0, 0.0));

    let tasks: Vec<String> = match &cli.command {
        Command::Potential => vec!["potential".into()],
        Command::Spectrum => vec!["spectrum".into()],
        Command::Phase { r_min, r_max, r_steps } => {
            phase.r_min = r_min.unwrap_or(phase.r_min);
            phase.r_max = r_max.unwrap_or(phase.r_max);
            phase.r_steps = r_steps.unwrap_or(phase.r_steps);
            vec!["phase".into()]
        }
        Command::Loop => vec!["loop".into()],
        Command::Coherent { z_re, z_im } => {
            z = Complex64::new(z_re.unwrap_or(z.re), z_im.unwrap_or(z.im));
            vec!["coherent".into()]
        }
        Command::Run => {
            if config.tasks.is_empty() {
                return Err(CliError::config("config lists no tasks"));
            }
            config.tasks.clone()
        }
    };
    if !matches!(cli.command, Command::Run) {
        config.tasks = tasks.clone();
    }
    config.validate()?;
    let ctx = Context { config, out, seed };
    for task in &tasks {
        run_task(&ctx, task, phase.clone(), z)?;
    }
    Ok(())
}

/// Parses `args`, runs, prints any error as JSON on stderr and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) {
                print!("{e}");
                return 0;
            }
            let err = CliError {
                code: 1,
                kind: "usage",
                message: e.to_string(),
                details: None,
            };
            eprintln!("{}", err.to_json());
            return 1;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{}", e.to_json());
            e.code
        }
    }
}
