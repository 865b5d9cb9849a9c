//! Command-line front end: JSON config ingestion, the `modulus`, `verify`,
//! and `sweep` subcommands, and plot-ready CSV emission.
//!
//! Flags override config fields. Every run echoes the fully resolved config
//! inside its result document, so the echo can be fed back through
//! `--config` to reproduce the run bit-for-bit. Exit codes: 0 when all
//! checks pass, 1 when a verified inequality is numerically violated, 2 on
//! input or validation errors.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::bounds::{asymptotic_constant, liminf_estimate, GrowthRegime, PowerLawMajorant};
use crate::error::{Error, Result};
use crate::geometry::{Dimension, Exponent, SphericalRing};
use crate::maps::{growth_sweep, verify_ring_q_with, GrowthSweep, RadialProfile};
use crate::modulus::{ring_modulus_exact, ring_modulus_grid};
use crate::qfield::{PowerSegment, QField, QuadratureSpec, SphereRule};
use crate::util::{lin_spaced, log_spaced, rel_err};

/// Default relative tolerance for verification verdicts.
const DEFAULT_TOL: f64 = 1e-9;

fn fmt17(x: f64) -> String {
    // 17 significant digits round-trip any f64
    format!("{x:.16e}")
}

// ---------------------------------------------------------------------------
// Config document
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub problem: Option<ProblemConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub majorant: Option<MajorantConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qfield: Option<QFieldConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<ProfileConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rings: Option<Vec<RingConfig>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrature: Option<QuadratureConfig>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemConfig {
    pub n: u32,
    pub p: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MajorantConfig {
    #[serde(rename = "K")]
    pub coeff: f64,
    pub alpha: f64,
    #[serde(default = "default_r0")]
    pub r0: f64,
}

fn default_r0() -> f64 {
    1.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum QFieldConfig {
    Constant {
        c: f64,
    },
    PowerLaw {
        #[serde(rename = "K")]
        coeff: f64,
        alpha: f64,
    },
    PiecewisePower {
        segments: Vec<SegmentConfig>,
    },
    TabulatedRadial {
        radii: Vec<f64>,
        values: Vec<f64>,
    },
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentConfig {
    pub lo: f64,
    pub hi: f64,
    #[serde(rename = "K")]
    pub coeff: f64,
    pub alpha: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ProfileConfig {
    Power { c: f64, beta: f64 },
    LogPower { c: f64, gamma: f64 },
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingConfig {
    pub r1: f64,
    pub r2: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(rename = "R_start")]
    pub r_start: f64,
    #[serde(rename = "R_end")]
    pub r_end: f64,
    pub steps: usize,
    pub spacing: Spacing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Log,
    Linear,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuadratureConfig {
    #[serde(default = "default_rel_tol")]
    pub rel_tol: f64,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_seed")]
    pub seed: u64,
}

fn default_rel_tol() -> f64 {
    1e-10
}

fn default_samples() -> usize {
    100_000
}

fn default_seed() -> u64 {
    42
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rel_tol: default_rel_tol(),
            samples: default_samples(),
            seed: default_seed(),
        }
    }
}

impl QuadratureConfig {
    fn to_spec(self, n: Dimension) -> Result<QuadratureSpec> {
        let sphere_rule = if n.get() <= 3 {
            SphereRule::Product { order: 64 }
        } else {
            SphereRule::MonteCarlo {
                samples: self.samples,
                seed: self.seed,
            }
        };
        QuadratureSpec::new(sphere_rule, self.rel_tol, 10_000)
    }
}

// ---------------------------------------------------------------------------
// Result document
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct Versions {
    pub package: &'static str,
    pub version: &'static str,
}

/// Machine-readable record of one command execution. The `config` field is
/// the fully resolved input; re-running the same subcommand with it through
/// `--config` reproduces `results` exactly.
#[derive(Debug, Serialize)]
pub struct ResultDocument {
    pub command: String,
    pub config: ConfigDocument,
    pub seed: u64,
    pub versions: Versions,
    pub results: serde_json::Value,
}

impl ResultDocument {
    fn new(command: &str, config: ConfigDocument, seed: u64, results: serde_json::Value) -> Self {
        Self {
            command: command.to_string(),
            config,
            seed,
            versions: Versions {
                package: env!("CARGO_PKG_NAME"),
                version: env!("CARGO_PKG_VERSION"),
            },
            results,
        }
    }
}

/// What a command produced: the document, whether an inequality failed, and
/// an optional CSV payload.
#[derive(Debug)]
pub struct CommandOutcome {
    pub document: ResultDocument,
    pub violation: bool,
    pub csv: Option<String>,
}

// ---------------------------------------------------------------------------
// Argument definitions
// ---------------------------------------------------------------------------

#[derive(Debug, Parser)]
#[command(
    name = "ringq",
    version,
    about = "p-moduli of spherical rings, capacity bounds, and radial-map growth bounds"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ring p-modulus via the closed form and/or the discrete grid solver
    Modulus(ModulusArgs),
    /// Check ring inequalities for a radial map against a weight Q
    Verify(VerifyArgs),
    /// Emit a distortion growth sweep as CSV with bounds and liminf summary
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverChoice {
    Exact,
    Grid,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MapChoice {
    F1,
    F2,
    Config,
}

#[derive(Debug, Args)]
pub struct ModulusArgs {
    /// JSON config document; flags override its fields
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub r1: Option<f64>,
    #[arg(long)]
    pub r2: Option<f64>,
    #[arg(long, value_enum, default_value_t = SolverChoice::Exact)]
    pub solver: SolverChoice,
    #[arg(long = "grid-points", default_value_t = 10_000)]
    pub grid_points: usize,
    /// Write the result document to this path as well as stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// f1 / f2 build the extremal profile from the majorant; config reads
    /// the profile section of the config document
    #[arg(long, value_enum)]
    pub map: MapChoice,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long = "K")]
    pub coeff: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub r0: Option<f64>,
    /// Weight spec, e.g. "powerlaw:2,1" or "constant:1.5"; defaults to the
    /// power law induced by the majorant
    #[arg(long)]
    pub q: Option<String>,
    /// Rings as r1:r2 pairs, e.g. --rings 1:2,1:16
    #[arg(long, value_delimiter = ',')]
    pub rings: Option<Vec<String>>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    pub tol: f64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub map: MapChoice,
    #[arg(long)]
    pub n: Option<u32>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long = "K")]
    pub coeff: Option<f64>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub r0: Option<f64>,
    #[arg(long = "R-start")]
    pub r_start: Option<f64>,
    #[arg(long = "R-end")]
    pub r_end: Option<f64>,
    #[arg(long = "R-steps")]
    pub r_steps: Option<usize>,
    #[arg(long, value_enum)]
    pub spacing: Option<Spacing>,
    /// CSV output path; without it the CSV goes to stdout instead of the
    /// result document
    #[arg(long)]
    pub out: Option<PathBuf>,
}

// ---------------------------------------------------------------------------
// Config resolution helpers
// ---------------------------------------------------------------------------

fn load_config(path: &Option<PathBuf>) -> Result<ConfigDocument> {
    match path {
        None => Ok(ConfigDocument::default()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| Error::domain(format!("cannot read config {}: {e}", p.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| Error::domain(format!("invalid config {}: {e}", p.display())))
        }
    }
}

fn require<T>(value: Option<T>, what: &str) -> Result<T> {
    value.ok_or_else(|| Error::domain(format!("missing required input: {what} (flag or config)")))
}

fn resolve_problem(
    cfg: &ConfigDocument,
    n: Option<u32>,
    p: Option<f64>,
) -> Result<(Dimension, Exponent, ProblemConfig)> {
    let n = n.or(cfg.problem.map(|pr| pr.n));
    let p = p.or(cfg.problem.map(|pr| pr.p));
    let n = require(n, "dimension n")?;
    let p = require(p, "exponent p")?;
    let dim = Dimension::new(n)?;
    let exp = Exponent::new(p, dim)?;
    Ok((dim, exp, ProblemConfig { n, p }))
}

fn resolve_majorant(
    cfg: &ConfigDocument,
    coeff: Option<f64>,
    alpha: Option<f64>,
    r0: Option<f64>,
) -> Result<(PowerLawMajorant, MajorantConfig)> {
    let coeff = require(coeff.or(cfg.majorant.map(|m| m.coeff)), "majorant K")?;
    let alpha = require(alpha.or(cfg.majorant.map(|m| m.alpha)), "majorant alpha")?;
    let r0 = r0.or(cfg.majorant.map(|m| m.r0)).unwrap_or_else(default_r0);
    let maj = PowerLawMajorant::new(coeff, alpha, r0)?;
    Ok((maj, MajorantConfig { coeff, alpha, r0 }))
}

fn parse_ring_flag(s: &str) -> Result<RingConfig> {
    let (a, b) = s
        .split_once(':')
        .ok_or_else(|| Error::domain(format!("ring must look like r1:r2, got {s:?}")))?;
    let r1: f64 = a
        .trim()
        .parse()
        .map_err(|_| Error::domain(format!("bad ring radius {a:?}")))?;
    let r2: f64 = b
        .trim()
        .parse()
        .map_err(|_| Error::domain(format!("bad ring radius {b:?}")))?;
    Ok(RingConfig { r1, r2 })
}

fn parse_q_flag(s: &str) -> Result<QFieldConfig> {
    let (kind, params) = s
        .split_once(':')
        .ok_or_else(|| Error::domain(format!("weight must look like kind:params, got {s:?}")))?;
    match kind.trim() {
        "constant" => {
            let c: f64 = params
                .trim()
                .parse()
                .map_err(|_| Error::domain(format!("bad constant weight {params:?}")))?;
            Ok(QFieldConfig::Constant { c })
        }
        "powerlaw" | "power_law" => {
            let mut it = params.split(',');
            let coeff: f64 = it
                .next()
                .and_then(|t| t.trim().parse().ok())
                .ok_or_else(|| Error::domain(format!("bad power-law weight {params:?}")))?;
            let alpha: f64 = it
                .next()
                .and_then(|t| t.trim().parse().ok())
                .ok_or_else(|| Error::domain(format!("bad power-law weight {params:?}")))?;
            Ok(QFieldConfig::PowerLaw { coeff, alpha })
        }
        other => Err(Error::domain(format!("unknown weight kind {other:?}"))),
    }
}

fn build_qfield(cfg: &QFieldConfig, n: Dimension) -> Result<QField> {
    let center = vec![0.0; n.get() as usize];
    match cfg {
        QFieldConfig::Constant { c } => QField::constant(*c, center),
        QFieldConfig::PowerLaw { coeff, alpha } => QField::power_law(*coeff, *alpha, center),
        QFieldConfig::PiecewisePower { segments } => {
            let segs = segments
                .iter()
                .map(|s| PowerSegment {
                    lo: s.lo,
                    hi: s.hi,
                    coeff: s.coeff,
                    exponent: s.alpha,
                })
                .collect();
            QField::piecewise_power(segs, center)
        }
        QFieldConfig::TabulatedRadial { radii, values } => {
            QField::tabulated_radial(radii.clone(), values.clone(), center)
        }
    }
}

fn build_profile(cfg: &ProfileConfig) -> Result<RadialProfile> {
    match cfg {
        ProfileConfig::Power { c, beta } => RadialProfile::power(*c, *beta),
        ProfileConfig::LogPower { c, gamma } => RadialProfile::log_power(*c, *gamma),
    }
}

fn profile_echo(profile: &RadialProfile) -> Result<ProfileConfig> {
    match profile.kind() {
        crate::maps::ProfileKind::Power { coeff, exponent } => Ok(ProfileConfig::Power {
            c: *coeff,
            beta: *exponent,
        }),
        crate::maps::ProfileKind::LogPower { coeff, exponent } => Ok(ProfileConfig::LogPower {
            c: *coeff,
            gamma: *exponent,
        }),
        _ => Err(Error::domain(
            "only power and log profiles can be echoed to a config",
        )),
    }
}

/// Resolve the map selection into a profile plus the majorant used to build
/// it (the majorant is also the default weight).
fn resolve_profile(
    map: MapChoice,
    cfg: &ConfigDocument,
    maj: Option<&PowerLawMajorant>,
    p: Exponent,
    n: Dimension,
) -> Result<RadialProfile> {
    match map {
        MapChoice::F1 => {
            let maj = maj.ok_or_else(|| Error::domain("--map f1 needs a majorant (K, alpha)"))?;
            RadialProfile::extremal_power(maj, p, n)
        }
        MapChoice::F2 => {
            let maj = maj.ok_or_else(|| Error::domain("--map f2 needs a majorant (K, alpha)"))?;
            RadialProfile::extremal_log(maj, p, n)
        }
        MapChoice::Config => {
            let pc = cfg.profile.as_ref().ok_or_else(|| {
                Error::domain("--map config needs a profile section in the config")
            })?;
            build_profile(pc)
        }
    }
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

pub fn cmd_modulus(args: &ModulusArgs) -> Result<CommandOutcome> {
    let cfg = load_config(&args.config)?;
    let (n, p, problem) = resolve_problem(&cfg, args.n, args.p)?;
    let ring_cfg = match (args.r1, args.r2) {
        (Some(r1), Some(r2)) => RingConfig { r1, r2 },
        _ => *cfg
            .rings
            .as_ref()
            .and_then(|r| r.first())
            .ok_or_else(|| Error::domain("missing required input: ring radii --r1/--r2"))?,
    };
    let ring = SphericalRing::origin(n, ring_cfg.r1, ring_cfg.r2)?;
    let quadrature = cfg.quadrature.unwrap_or_default();

    let mut results = serde_json::Map::new();
    let mut exact_value = None;
    if matches!(args.solver, SolverChoice::Exact | SolverChoice::Both) {
        let r = ring_modulus_exact(&ring, p, n)?;
        exact_value = Some(r.value);
        results.insert("exact".into(), serde_json::to_value(r).unwrap());
    }
    if matches!(args.solver, SolverChoice::Grid | SolverChoice::Both) {
        let r = ring_modulus_grid(&ring, p, n, args.grid_points)?;
        if let Some(exact) = exact_value {
            results.insert(
                "relative_discrepancy".into(),
                json!(rel_err(r.value, exact)),
            );
        }
        results.insert("grid".into(), serde_json::to_value(r).unwrap());
    }

    let resolved = ConfigDocument {
        problem: Some(problem),
        rings: Some(vec![ring_cfg]),
        quadrature: Some(quadrature),
        ..Default::default()
    };
    let document = ResultDocument::new("modulus", resolved, quadrature.seed, results.into());
    Ok(CommandOutcome {
        document,
        violation: false,
        csv: None,
    })
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<CommandOutcome> {
    let cfg = load_config(&args.config)?;
    let (n, p, problem) = resolve_problem(&cfg, args.n, args.p)?;

    // majorant is required for f1/f2 and optional otherwise
    let majorant = match resolve_majorant(&cfg, args.coeff, args.alpha, args.r0) {
        Ok((m, echo)) => Some((m, echo)),
        Err(_) if args.map == MapChoice::Config => None,
        Err(e) => return Err(e),
    };

    let profile = resolve_profile(args.map, &cfg, majorant.as_ref().map(|(m, _)| m), p, n)?;

    let q_cfg = match (&args.q, &cfg.qfield, &majorant) {
        (Some(flag), _, _) => parse_q_flag(flag)?,
        (None, Some(c), _) => c.clone(),
        (None, None, Some((m, _))) => QFieldConfig::PowerLaw {
            coeff: m.coeff,
            alpha: m.alpha,
        },
        (None, None, None) => {
            return Err(Error::domain(
                "missing required input: weight --q or config qfield",
            ))
        }
    };
    let q = build_qfield(&q_cfg, n)?;

    let ring_cfgs: Vec<RingConfig> = match &args.rings {
        Some(list) => list
            .iter()
            .map(|s| parse_ring_flag(s))
            .collect::<Result<_>>()?,
        None => cfg
            .rings
            .clone()
            .ok_or_else(|| Error::domain("missing required input: --rings or config rings"))?,
    };
    if ring_cfgs.is_empty() {
        return Err(Error::domain("at least one ring is required"));
    }
    let rings: Vec<SphericalRing> = ring_cfgs
        .iter()
        .map(|r| SphericalRing::origin(n, r.r1, r.r2))
        .collect::<Result<_>>()?;

    let mut quadrature = cfg.quadrature.unwrap_or_default();
    if let Some(seed) = args.seed {
        quadrature.seed = seed;
    }
    let quad_spec = quadrature.to_spec(n)?;

    let reports = verify_ring_q_with(&profile, &q, &rings, p, n, args.tol, &quad_spec)?;
    let all_pass = reports.iter().all(|r| r.verdict);
    let rows: Vec<serde_json::Value> = ring_cfgs
        .iter()
        .zip(&reports)
        .map(|(rc, rep)| {
            json!({
                "r1": rc.r1,
                "r2": rc.r2,
                "lhs": rep.lhs,
                "rhs": rep.rhs,
                "slack": rep.slack,
                "verdict": rep.verdict,
                "sharpness_residual": rep.relative_residual(),
            })
        })
        .collect();

    let resolved = ConfigDocument {
        problem: Some(problem),
        majorant: majorant.as_ref().map(|(_, echo)| *echo),
        qfield: Some(q_cfg),
        profile: Some(profile_echo(&profile)?),
        rings: Some(ring_cfgs),
        quadrature: Some(quadrature),
        ..Default::default()
    };
    let results = json!({
        "tolerance": args.tol,
        "all_pass": all_pass,
        "reports": rows,
    });
    let document = ResultDocument::new("verify", resolved, quadrature.seed, results);
    Ok(CommandOutcome {
        document,
        violation: !all_pass,
        csv: None,
    })
}

/// Fixed CSV header consumed by downstream parsers.
pub const SWEEP_CSV_HEADER: &str = "R,L,normalizer,ratio,finite_bound,asymptotic_constant";

fn render_csv(sweep: &GrowthSweep, liminf: f64) -> String {
    let mut out = String::with_capacity(64 * (sweep.rows().len() + 2));
    out.push_str(SWEEP_CSV_HEADER);
    out.push('\n');
    for row in sweep.rows() {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            fmt17(row.radius),
            fmt17(row.sup_distortion),
            fmt17(row.normalizer),
            fmt17(row.ratio),
            fmt17(row.finite_bound),
            fmt17(sweep.constant()),
        ));
    }
    out.push_str(&format!("# liminf_estimate = {}\n", fmt17(liminf)));
    out
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<CommandOutcome> {
    let cfg = load_config(&args.config)?;
    let (n, p, problem) = resolve_problem(&cfg, args.n, args.p)?;
    let (maj, maj_echo) = resolve_majorant(&cfg, args.coeff, args.alpha, args.r0)?;
    let profile = resolve_profile(args.map, &cfg, Some(&maj), p, n)?;

    let sweep_cfg = SweepConfig {
        r_start: require(args.r_start.or(cfg.sweep.map(|s| s.r_start)), "--R-start")?,
        r_end: require(args.r_end.or(cfg.sweep.map(|s| s.r_end)), "--R-end")?,
        steps: require(args.r_steps.or(cfg.sweep.map(|s| s.steps)), "--R-steps")?,
        spacing: args
            .spacing
            .or(cfg.sweep.map(|s| s.spacing))
            .unwrap_or(Spacing::Log),
    };
    if sweep_cfg.steps < 10 {
        return Err(Error::domain(format!(
            "sweep needs at least 10 rows for the liminf estimate, got {}",
            sweep_cfg.steps
        )));
    }
    if !(sweep_cfg.r_start > 0.0 && sweep_cfg.r_end > sweep_cfg.r_start) {
        return Err(Error::domain(format!(
            "sweep range must satisfy 0 < R_start < R_end, got {} .. {}",
            sweep_cfg.r_start, sweep_cfg.r_end
        )));
    }
    let grid = match sweep_cfg.spacing {
        Spacing::Log => log_spaced(sweep_cfg.r_start, sweep_cfg.r_end, sweep_cfg.steps),
        Spacing::Linear => lin_spaced(sweep_cfg.r_start, sweep_cfg.r_end, sweep_cfg.steps),
    };

    let sweep = growth_sweep(&profile, &maj, p, n, &grid)?;
    let liminf = liminf_estimate(&sweep)?;
    let regime = GrowthRegime::classify(&maj, p, n)?;
    let bound = asymptotic_constant(&maj, p, n, regime)?;

    // soundness: the finite bound must never exceed the measured distortion
    let violation = sweep
        .rows()
        .iter()
        .any(|r| r.finite_bound > r.sup_distortion * (1.0 + DEFAULT_TOL));

    let csv = render_csv(&sweep, liminf);
    let quadrature = cfg.quadrature.unwrap_or_default();
    let resolved = ConfigDocument {
        problem: Some(problem),
        majorant: Some(maj_echo),
        profile: Some(profile_echo(&profile)?),
        sweep: Some(sweep_cfg),
        quadrature: Some(quadrature),
        ..Default::default()
    };
    let results = json!({
        "rows": sweep.rows().len(),
        "regime": regime,
        "normalizer": bound.normalizer.to_string(),
        "asymptotic_constant": bound.constant,
        "liminf_estimate": liminf,
        "soundness_pass": !violation,
    });
    let document = ResultDocument::new("sweep", resolved, quadrature.seed, results);
    Ok(CommandOutcome {
        document,
        violation,
        csv: Some(csv),
    })
}

// ---------------------------------------------------------------------------
// Entry point
// ---------------------------------------------------------------------------

fn write_out(path: &PathBuf, payload: &str) -> Result<()> {
    fs::write(path, payload)
        .map_err(|e| Error::domain(format!("cannot write {}: {e}", path.display())))
}

fn execute(command: &Command) -> Result<(CommandOutcome, Option<PathBuf>, bool)> {
    match command {
        Command::Modulus(args) => Ok((cmd_modulus(args)?, args.out.clone(), false)),
        Command::Verify(args) => Ok((cmd_verify(args)?, args.out.clone(), false)),
        Command::Sweep(args) => Ok((cmd_sweep(args)?, args.out.clone(), true)),
    }
}

/// Runs the parsed CLI and returns the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match execute(&cli.command) {
        Ok((outcome, out_path, out_is_csv)) => {
            let doc_json = serde_json::to_string_pretty(&outcome.document)
                .expect("result document serializes");
            let emit = if out_is_csv {
                let csv = outcome.csv.as_deref().unwrap_or("");
                match &out_path {
                    Some(path) => {
                        if let Err(e) = write_out(path, csv) {
                            eprintln!("error: {e}");
                            return 2;
                        }
                        doc_json
                    }
                    // CSV to stdout when no --out is given
                    None => csv.trim_end().to_string(),
                }
            } else {
                if let Some(path) = &out_path {
                    if let Err(e) = write_out(path, &doc_json) {
                        eprintln!("error: {e}");
                        return 2;
                    }
                }
                doc_json
            };
            println!("{emit}");
            i32::from(outcome.violation)
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_flag_parsing() {
        let r = parse_ring_flag("1:16").unwrap();
        assert_eq!((r.r1, r.r2), (1.0, 16.0));
        let r = parse_ring_flag(" 0.5 : 2.25 ").unwrap();
        assert_eq!((r.r1, r.r2), (0.5, 2.25));
        assert!(parse_ring_flag("1-16").is_err());
        assert!(parse_ring_flag("a:b").is_err());
    }

    #[test]
    fn q_flag_parsing() {
        match parse_q_flag("powerlaw:2,1").unwrap() {
            QFieldConfig::PowerLaw { coeff, alpha } => {
                assert_eq!((coeff, alpha), (2.0, 1.0));
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_q_flag("constant:1.5").unwrap() {
            QFieldConfig::Constant { c } => assert_eq!(c, 1.5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse_q_flag("gaussian:1").is_err());
        assert!(parse_q_flag("powerlaw:2").is_err());
    }

    #[test]
    fn config_round_trips_through_json() {
        let text = r#"{
            "problem": {"n": 2, "p": 4.0},
            "majorant": {"K": 2.0, "alpha": 1.0},
            "qfield": {"kind": "power_law", "K": 2.0, "alpha": 1.0},
            "profile": {"kind": "power", "c": 2.0, "beta": 0.5},
            "rings": [{"r1": 1.0, "r2": 16.0}],
            "sweep": {"R_start": 10.0, "R_end": 1e6, "steps": 25, "spacing": "log"},
            "quadrature": {"rel_tol": 1e-10, "samples": 100000, "seed": 42}
        }"#;
        let cfg: ConfigDocument = serde_json::from_str(text).unwrap();
        assert_eq!(cfg.problem.unwrap().n, 2);
        assert_eq!(cfg.majorant.unwrap().r0, 1.0); // default applies
        let echoed = serde_json::to_string(&cfg).unwrap();
        let back: ConfigDocument = serde_json::from_str(&echoed).unwrap();
        assert_eq!(back.sweep.unwrap().steps, 25);
    }

    #[test]
    fn unknown_config_fields_rejected() {
        let text = r#"{"problem": {"n": 2, "p": 4.0, "extra": 1}}"#;
        assert!(serde_json::from_str::<ConfigDocument>(text).is_err());
    }

    #[test]
    fn modulus_command_smoke() {
        let args = ModulusArgs {
            config: None,
            n: Some(2),
            p: Some(4.0),
            r1: Some(1.0),
            r2: Some(16.0),
            solver: SolverChoice::Exact,
            grid_points: 10_000,
            out: None,
        };
        let outcome = cmd_modulus(&args).unwrap();
        let value = outcome.document.results["exact"]["value"].as_f64().unwrap();
        assert!((value - 1.216021170167572e-2).abs() < 1e-15);
        assert!(!outcome.violation);
        assert_eq!(outcome.document.seed, 42);
    }

    #[test]
    fn seventeen_digit_formatting() {
        let s = fmt17(std::f64::consts::PI);
        assert_eq!(s, "3.1415926535897931e0");
        let parsed: f64 = s.parse().unwrap();
        assert_eq!(parsed.to_bits(), std::f64::consts::PI.to_bits());
    }
}
