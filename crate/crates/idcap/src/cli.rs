//! The `idcap` command-line front end.
//!
//! Subcommands:
//!
//! - `bounds` — bound curves over a p-grid (CSV/JSON), plus the crossing of
//!   the ellipsoid and general-channel bounds.
//! - `verify-reduction` — measurement-reduction identity on seeded random
//!   (state, basis) pairs; exits 1 if any TV distance exceeds 1e−10.
//! - `soft-cover` — Monte Carlo soft-covering runs against the expectation
//!   bound; exits 1 on a statistical violation (mean > bound + 3·SE).
//! - `finite-n` — finite-blocklength bounds next to their asymptotic values.
//!
//! Shared flags: `--seed`, `--out`, `--format {csv,json}`, `--config FILE`
//! (flat `key = value` lines; command-line flags override file entries).
//! `IDCAP_THREADS` caps worker threads (0 or unset = automatic). Identical
//! configurations produce byte-identical outputs.
//!
//! Exit codes: 0 success, 1 claim violation, 2 usage error, 3 I/O error.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bounds_api::{sweep_curves, BoundCurve, SweepParams};
use crate::channels::{reduction_check, ChannelKernel, ProbDist, ProductBasis};
use crate::covering_geometry::{asymptotic_unrestricted_bound, finite_n_unrestricted_bound};
use crate::info_measures::sibson_mi;
use crate::pauli_bloch::DensityMatrix;
use crate::rng::stream;
use crate::soft_covering::{
    covering_rhs, default_sim_eps, finite_n_sim_bound, monte_carlo_covering, sufficient_m,
    SoftCoverRecord,
};
use crate::Result;

const EXIT_OK: i32 = 0;
const EXIT_VIOLATION: i32 = 1;
const EXIT_USAGE: i32 = 2;
const EXIT_IO: i32 = 3;

/// Reduction identity tolerance enforced by `verify-reduction`.
const REDUCTION_TOL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(
    name = "idcap",
    version,
    about = "Identification-capacity bounds for the qubit depolarizing channel",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Emit bound curves over a grid of noise parameters
    Bounds(BoundsArgs),
    /// Check the product-measurement reduction identity on random states
    VerifyReduction(VerifyReductionArgs),
    /// Run seeded soft-covering Monte Carlo experiments
    SoftCover(SoftCoverArgs),
    /// Tabulate finite-n bounds against asymptotic values
    FiniteN(FiniteNArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct SharedArgs {
    /// Base seed for all randomness
    #[arg(long)]
    seed: Option<u64>,
    /// Output path (stdout when absent)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum)]
    format: Option<OutFormat>,
    /// Flat key = value config file; flags override file entries
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct BoundsArgs {
    /// Grid: start:stop:step (start inclusive, stop exclusive) or p1,p2,...
    #[arg(long)]
    p_grid: Option<String>,
    #[arg(long)]
    lambda1: Option<f64>,
    #[arg(long)]
    lambda2: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    /// Also evaluate the finite-n unrestricted bound at this blocklength
    #[arg(long)]
    finite_n: Option<u32>,
    #[command(flatten)]
    shared: SharedArgs,
}

#[derive(Debug, Args)]
struct VerifyReductionArgs {
    /// Number of qubits (at most 5)
    #[arg(long)]
    n: Option<u32>,
    /// Depolarizing probability
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    trials: Option<u64>,
    #[command(flatten)]
    shared: SharedArgs,
}

#[derive(Debug, Args)]
struct SoftCoverArgs {
    /// Blocklength of the BSC_{p/2} power
    #[arg(long)]
    n: Option<u32>,
    /// Depolarizing probability (crossover is p/2)
    #[arg(long)]
    p: Option<f64>,
    /// Rényi orders, comma separated
    #[arg(long)]
    alpha: Option<String>,
    /// Target expected TV for the codebook-size rule
    #[arg(long)]
    eps: Option<f64>,
    /// Codebook size override (chosen from eps when absent)
    #[arg(long)]
    m: Option<u64>,
    #[arg(long)]
    trials: Option<u64>,
    #[command(flatten)]
    shared: SharedArgs,
}

#[derive(Debug, Args)]
struct FiniteNArgs {
    #[arg(long)]
    p: Option<f64>,
    /// Blocklengths, comma separated
    #[arg(long)]
    n_list: Option<String>,
    #[arg(long)]
    lambda1: Option<f64>,
    #[arg(long)]
    lambda2: Option<f64>,
    #[arg(long)]
    theta: Option<f64>,
    /// Rényi order for the simultaneous column
    #[arg(long)]
    alpha: Option<f64>,
    /// Soft-covering target for the simultaneous column
    #[arg(long)]
    eps: Option<f64>,
    #[command(flatten)]
    shared: SharedArgs,
}

/// Parses `std::env::args` and runs; returns the process exit code.
pub fn run() -> i32 {
    run_from(std::env::args())
}

/// Testable entry point.
pub fn run_from<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    init_thread_pool();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match cli.command {
        Command::Bounds(args) => BoundsConfig::resolve(args).map(|c| cmd_bounds(&c)),
        Command::VerifyReduction(args) => {
            VerifyReductionConfig::resolve(args).map(|c| cmd_verify_reduction(&c))
        }
        Command::SoftCover(args) => SoftCoverConfig::resolve(args).map(|c| cmd_soft_cover(&c)),
        Command::FiniteN(args) => FiniteNConfig::resolve(args).map(|c| cmd_finite_n(&c)),
    };
    match outcome {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("idcap: {}", failure.message);
            failure.code
        }
    }
}

fn init_thread_pool() {
    if let Ok(v) = std::env::var("IDCAP_THREADS") {
        if let Ok(k) = v.trim().parse::<usize>() {
            if k > 0 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build_global();
            }
        }
    }
}

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: msg.into(),
        }
    }

    fn io(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_IO,
            message: msg.into(),
        }
    }
}

type Resolved<T> = std::result::Result<T, Failure>;

/// Flat `key = value` config file; `#` starts a comment.
fn load_config(path: Option<&Path>) -> Resolved<HashMap<String, String>> {
    let mut map = HashMap::new();
    let Some(path) = path else {
        return Ok(map);
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::io(format!("cannot read config {}: {e}", path.display())))?;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Failure::usage(format!(
                "config {} line {}: expected key = value",
                path.display(),
                lineno + 1
            )));
        };
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn cfg_parse<T: FromStr>(map: &HashMap<String, String>, key: &str) -> Resolved<Option<T>> {
    match map.get(key) {
        None => Ok(None),
        Some(raw) => raw
            .parse::<T>()
            .map(Some)
            .map_err(|_| Failure::usage(format!("config key {key}: cannot parse {raw:?}"))),
    }
}

fn cfg_format(map: &HashMap<String, String>) -> Resolved<Option<OutFormat>> {
    match map.get("format").map(|s| s.as_str()) {
        None => Ok(None),
        Some("csv") => Ok(Some(OutFormat::Csv)),
        Some("json") => Ok(Some(OutFormat::Json)),
        Some(other) => Err(Failure::usage(format!(
            "config key format: unknown value {other:?}"
        ))),
    }
}

/// `start:stop:step` (start inclusive, stop exclusive) or a comma list.
fn parse_grid(spec: &str) -> Resolved<Vec<f64>> {
    let parse_f = |s: &str| -> Resolved<f64> {
        s.trim()
            .parse()
            .map_err(|_| Failure::usage(format!("bad number {s:?} in grid")))
    };
    let grid: Vec<f64> = if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(Failure::usage(format!(
                "grid {spec:?} is not start:stop:step"
            )));
        }
        let (start, stop, step) = (parse_f(parts[0])?, parse_f(parts[1])?, parse_f(parts[2])?);
        if step.is_nan() || step <= 0.0 || stop <= start {
            return Err(Failure::usage(
                "grid needs stop > start and step > 0".to_string(),
            ));
        }
        let mut grid = Vec::new();
        for k in 0.. {
            let v = start + k as f64 * step;
            if v >= stop - 1e-12 {
                break;
            }
            grid.push(v);
        }
        grid
    } else {
        spec.split(',').map(parse_f).collect::<Resolved<_>>()?
    };
    if grid.is_empty() {
        return Err(Failure::usage("empty grid".to_string()));
    }
    Ok(grid)
}

fn parse_list<T: FromStr>(spec: &str, what: &str) -> Resolved<Vec<T>> {
    let vals: Vec<T> = spec
        .split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Failure::usage(format!("bad {what}: {s:?}")))
        })
        .collect::<Resolved<_>>()?;
    if vals.is_empty() {
        return Err(Failure::usage(format!("empty {what} list")));
    }
    Ok(vals)
}

fn usage_err(e: crate::Error) -> Failure {
    Failure::usage(e.to_string())
}

/// Writes to the path (or stdout) and maps failures to exit code 3.
fn emit(out: Option<&Path>, content: &str) -> Resolved<()> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Failure::io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Nine significant digits, scientific below 1e−4.
fn fmt_sig9(x: f64) -> String {
    if x == 0.0 {
        return "0.00000000".to_string();
    }
    if !x.is_finite() {
        return if x > 0.0 {
            "inf".to_string()
        } else {
            "-inf".to_string()
        };
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-5..=14).contains(&mag) {
        return format!("{x:.8e}");
    }
    let decimals = (8 - mag).clamp(0, 16) as usize;
    format!("{x:.decimals$}")
}

// ---------------------------------------------------------------------------
// bounds
// ---------------------------------------------------------------------------

/// Resolved configuration of the `bounds` command.
#[derive(Debug, Clone)]
pub struct BoundsConfig {
    pub p_grid: Vec<f64>,
    pub params: SweepParams,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: OutFormat,
}

impl BoundsConfig {
    fn resolve(args: BoundsArgs) -> Resolved<Self> {
        let cfg = load_config(args.shared.config.as_deref())?;
        let grid_spec = args
            .p_grid
            .or_else(|| cfg.get("p-grid").cloned())
            .ok_or_else(|| Failure::usage("missing --p-grid".to_string()))?;
        Ok(Self {
            p_grid: parse_grid(&grid_spec)?,
            params: SweepParams {
                lambda1: args.lambda1.or(cfg_parse(&cfg, "lambda1")?).unwrap_or(0.1),
                lambda2: args.lambda2.or(cfg_parse(&cfg, "lambda2")?).unwrap_or(0.1),
                theta: args.theta.or(cfg_parse(&cfg, "theta")?).unwrap_or(0.25),
                finite_n: args.finite_n.or(cfg_parse(&cfg, "finite-n")?),
            },
            seed: args.shared.seed.or(cfg_parse(&cfg, "seed")?).unwrap_or(0),
            out: args
                .shared
                .out
                .or_else(|| cfg.get("out").map(PathBuf::from)),
            format: args
                .shared
                .format
                .or(cfg_format(&cfg)?)
                .unwrap_or(OutFormat::Csv),
        })
    }
}

#[derive(Serialize)]
struct BoundsReport<'a> {
    schema_version: u32,
    seed: u64,
    #[serde(flatten)]
    curve: &'a BoundCurve,
}

fn bounds_csv(curve: &BoundCurve) -> String {
    let mut s = String::from("p,sim_cap,unrestricted_bound,general_bound,finite_n_bound\n");
    for row in &curve.rows {
        let finite = row.finite_n_bound.map(fmt_sig9).unwrap_or_default();
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            fmt_sig9(row.p),
            fmt_sig9(row.sim_cap),
            fmt_sig9(row.unrestricted_bound),
            fmt_sig9(row.general_bound),
            finite
        );
    }
    s
}

/// Evaluates the bound curves and writes them; prints the crossing point to
/// stderr so CSV on stdout stays machine-readable.
pub fn cmd_bounds(config: &BoundsConfig) -> i32 {
    let curve = match sweep_curves(&config.p_grid, &config.params) {
        Ok(c) => c,
        Err(e) => return fail(usage_err(e)),
    };
    let content = match config.format {
        OutFormat::Csv => bounds_csv(&curve),
        OutFormat::Json => to_json(&BoundsReport {
            schema_version: 1,
            seed: config.seed,
            curve: &curve,
        }),
    };
    if let Err(f) = emit(config.out.as_deref(), &content) {
        return fail(f);
    }
    eprintln!("crossing p = {}", fmt_sig9(curve.crossing));
    EXIT_OK
}

// ---------------------------------------------------------------------------
// verify-reduction
// ---------------------------------------------------------------------------

/// Resolved configuration of the `verify-reduction` command.
#[derive(Debug, Clone)]
pub struct VerifyReductionConfig {
    pub n: u32,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: OutFormat,
}

impl VerifyReductionConfig {
    fn resolve(args: VerifyReductionArgs) -> Resolved<Self> {
        let cfg = load_config(args.shared.config.as_deref())?;
        let resolved = Self {
            n: args.n.or(cfg_parse(&cfg, "n")?).unwrap_or(3),
            p: args.p.or(cfg_parse(&cfg, "p")?).unwrap_or(0.5),
            trials: args.trials.or(cfg_parse(&cfg, "trials")?).unwrap_or(100),
            seed: args.shared.seed.or(cfg_parse(&cfg, "seed")?).unwrap_or(0),
            out: args
                .shared
                .out
                .or_else(|| cfg.get("out").map(PathBuf::from)),
            format: args
                .shared
                .format
                .or(cfg_format(&cfg)?)
                .unwrap_or(OutFormat::Json),
        };
        if resolved.n == 0 || resolved.n > 5 {
            return Err(Failure::usage(format!("n = {} not in 1..=5", resolved.n)));
        }
        if !(0.0..=1.0).contains(&resolved.p) {
            return Err(Failure::usage(format!("p = {} not in [0, 1]", resolved.p)));
        }
        if resolved.trials == 0 {
            return Err(Failure::usage("trials must be ≥ 1".to_string()));
        }
        Ok(resolved)
    }
}

#[derive(Serialize)]
struct VerifyReductionReport {
    schema_version: u32,
    seed: u64,
    n: u32,
    p: f64,
    trials: u64,
    tolerance: f64,
    max_tv: f64,
    pass: bool,
    /// Stream index of the worst trial when the identity fails.
    offending_trial: Option<u64>,
}

/// Random (state, basis) pairs through the reduction identity; exit 0 iff
/// the worst TV distance stays within 1e−10.
pub fn cmd_verify_reduction(config: &VerifyReductionConfig) -> i32 {
    use rayon::prelude::*;
    let dim = 1usize << config.n;
    let tvs: Vec<f64> = (0..config.trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream(config.seed, t);
            let rho = DensityMatrix::random(dim, &mut rng);
            let basis = ProductBasis::random(config.n as usize, &mut rng);
            reduction_check(&rho, &basis, config.p).expect("valid inputs by construction")
        })
        .collect();
    let (worst_trial, max_tv) =
        tvs.iter().enumerate().fold(
            (0usize, 0.0f64),
            |acc, (i, &tv)| if tv > acc.1 { (i, tv) } else { acc },
        );
    let pass = max_tv <= REDUCTION_TOL;
    let report = VerifyReductionReport {
        schema_version: 1,
        seed: config.seed,
        n: config.n,
        p: config.p,
        trials: config.trials,
        tolerance: REDUCTION_TOL,
        max_tv,
        pass,
        offending_trial: if pass { None } else { Some(worst_trial as u64) },
    };
    let content = match config.format {
        OutFormat::Json => to_json(&report),
        OutFormat::Csv => {
            let mut s = String::from("trial,tv\n");
            for (t, tv) in tvs.iter().enumerate() {
                let _ = writeln!(s, "{t},{}", fmt_sig9(*tv));
            }
            s
        }
    };
    if let Err(f) = emit(config.out.as_deref(), &content) {
        return fail(f);
    }
    if pass {
        EXIT_OK
    } else {
        eprintln!(
            "idcap: reduction identity violated: max TV {max_tv:.3e} at trial {worst_trial} (seed {})",
            config.seed
        );
        EXIT_VIOLATION
    }
}

// ---------------------------------------------------------------------------
// soft-cover
// ---------------------------------------------------------------------------

/// Resolved configuration of the `soft-cover` command.
#[derive(Debug, Clone)]
pub struct SoftCoverConfig {
    pub n: u32,
    pub p: f64,
    pub alphas: Vec<f64>,
    pub eps: f64,
    pub m_override: Option<u64>,
    pub trials: u64,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: OutFormat,
}

impl SoftCoverConfig {
    fn resolve(args: SoftCoverArgs) -> Resolved<Self> {
        let cfg = load_config(args.shared.config.as_deref())?;
        let alphas = match args.alpha.or_else(|| cfg.get("alpha").cloned()) {
            Some(spec) => parse_list::<f64>(&spec, "alpha")?,
            None => vec![1.25, 1.5, 1.75],
        };
        let resolved = Self {
            n: args.n.or(cfg_parse(&cfg, "n")?).unwrap_or(6),
            p: args.p.or(cfg_parse(&cfg, "p")?).unwrap_or(0.5),
            alphas,
            eps: args.eps.or(cfg_parse(&cfg, "eps")?).unwrap_or(0.1),
            m_override: args.m.or(cfg_parse(&cfg, "m")?),
            trials: args.trials.or(cfg_parse(&cfg, "trials")?).unwrap_or(200),
            seed: args.shared.seed.or(cfg_parse(&cfg, "seed")?).unwrap_or(0),
            out: args
                .shared
                .out
                .or_else(|| cfg.get("out").map(PathBuf::from)),
            format: args
                .shared
                .format
                .or(cfg_format(&cfg)?)
                .unwrap_or(OutFormat::Json),
        };
        if resolved.n == 0 || resolved.n > 16 {
            return Err(Failure::usage(format!("n = {} not in 1..=16", resolved.n)));
        }
        if !(0.0..=1.0).contains(&resolved.p) {
            return Err(Failure::usage(format!("p = {} not in [0, 1]", resolved.p)));
        }
        if !(resolved.eps > 0.0 && resolved.eps < 1.0) {
            return Err(Failure::usage(format!(
                "eps = {} not in (0, 1)",
                resolved.eps
            )));
        }
        if resolved.trials < 30 {
            return Err(Failure::usage("trials must be ≥ 30".to_string()));
        }
        Ok(resolved)
    }
}

#[derive(Serialize)]
struct SoftCoverReport {
    schema_version: u32,
    seed: u64,
    n: u32,
    p: f64,
    eps: f64,
    trials: u64,
    pass: bool,
    records: Vec<SoftCoverEntry>,
}

#[derive(Serialize)]
struct SoftCoverEntry {
    #[serde(flatten)]
    record: SoftCoverRecord,
    pass: bool,
}

fn soft_cover_run(config: &SoftCoverConfig) -> Result<Vec<SoftCoverEntry>> {
    let w = ChannelKernel::bsc(config.p / 2.0)?.tensor_power(config.n as usize);
    let px = ProbDist::uniform(1usize << config.n);
    let mut entries = Vec::with_capacity(config.alphas.len());
    for &alpha in &config.alphas {
        let i_alpha = sibson_mi(&px, &w, alpha)?;
        let m = match config.m_override {
            Some(m) => m,
            None => sufficient_m(alpha, config.eps, i_alpha)?,
        };
        let rhs = covering_rhs(alpha, i_alpha, m)?;
        let mc = monte_carlo_covering(&px, &w, m as usize, config.trials as usize, config.seed)?;
        let pass = mc.mean_tv <= rhs + 3.0 * mc.std_err;
        entries.push(SoftCoverEntry {
            record: SoftCoverRecord {
                seed: config.seed,
                n: config.n,
                p: config.p,
                alpha,
                m,
                trials: config.trials as usize,
                mean_tv: mc.mean_tv,
                std_err: mc.std_err,
                bound_rhs: rhs,
            },
            pass,
        });
    }
    Ok(entries)
}

/// Monte Carlo soft covering for BSC_{p/2}^⊗n at each requested α; exit 0
/// iff every empirical mean stays within bound + 3·SE.
pub fn cmd_soft_cover(config: &SoftCoverConfig) -> i32 {
    let entries = match soft_cover_run(config) {
        Ok(e) => e,
        Err(e) => return fail(usage_err(e)),
    };
    let all_pass = entries.iter().all(|e| e.pass);
    let content = match config.format {
        OutFormat::Json => to_json(&SoftCoverReport {
            schema_version: 1,
            seed: config.seed,
            n: config.n,
            p: config.p,
            eps: config.eps,
            trials: config.trials,
            pass: all_pass,
            records: entries,
        }),
        OutFormat::Csv => {
            let mut s = String::from("alpha,m,trials,mean_tv,std_err,bound_rhs,pass\n");
            for e in &entries {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{},{}",
                    fmt_sig9(e.record.alpha),
                    e.record.m,
                    e.record.trials,
                    fmt_sig9(e.record.mean_tv),
                    fmt_sig9(e.record.std_err),
                    fmt_sig9(e.record.bound_rhs),
                    e.pass
                );
            }
            s
        }
    };
    if let Err(f) = emit(config.out.as_deref(), &content) {
        return fail(f);
    }
    if all_pass {
        EXIT_OK
    } else {
        eprintln!("idcap: soft-covering mean exceeded bound + 3·SE");
        EXIT_VIOLATION
    }
}

// ---------------------------------------------------------------------------
// finite-n
// ---------------------------------------------------------------------------

/// Resolved configuration of the `finite-n` command.
#[derive(Debug, Clone)]
pub struct FiniteNConfig {
    pub p: f64,
    pub n_list: Vec<u32>,
    pub lambda1: f64,
    pub lambda2: f64,
    pub theta: f64,
    pub alpha: f64,
    pub eps: Option<f64>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub format: OutFormat,
}

impl FiniteNConfig {
    fn resolve(args: FiniteNArgs) -> Resolved<Self> {
        let cfg = load_config(args.shared.config.as_deref())?;
        let n_spec = args
            .n_list
            .or_else(|| cfg.get("n-list").cloned())
            .unwrap_or_else(|| "50,100,200,400".to_string());
        let resolved = Self {
            p: args.p.or(cfg_parse(&cfg, "p")?).unwrap_or(0.9),
            n_list: parse_list(&n_spec, "blocklength")?,
            lambda1: args.lambda1.or(cfg_parse(&cfg, "lambda1")?).unwrap_or(0.1),
            lambda2: args.lambda2.or(cfg_parse(&cfg, "lambda2")?).unwrap_or(0.1),
            theta: args.theta.or(cfg_parse(&cfg, "theta")?).unwrap_or(0.25),
            alpha: args.alpha.or(cfg_parse(&cfg, "alpha")?).unwrap_or(1.5),
            eps: args.eps.or(cfg_parse(&cfg, "eps")?),
            seed: args.shared.seed.or(cfg_parse(&cfg, "seed")?).unwrap_or(0),
            out: args
                .shared
                .out
                .or_else(|| cfg.get("out").map(PathBuf::from)),
            format: args
                .shared
                .format
                .or(cfg_format(&cfg)?)
                .unwrap_or(OutFormat::Csv),
        };
        if resolved.n_list.contains(&0) {
            return Err(Failure::usage("blocklengths must be ≥ 1".to_string()));
        }
        Ok(resolved)
    }
}

#[derive(Serialize)]
struct FiniteNRow {
    n: u32,
    finite_unrestricted: f64,
    asymptotic_unrestricted: f64,
    finite_simultaneous: f64,
    asymptotic_simultaneous: f64,
}

#[derive(Serialize)]
struct FiniteNReport {
    schema_version: u32,
    seed: u64,
    p: f64,
    lambda1: f64,
    lambda2: f64,
    theta: f64,
    alpha: f64,
    eps: f64,
    rows: Vec<FiniteNRow>,
}

fn finite_n_rows(config: &FiniteNConfig, eps: f64) -> Result<Vec<FiniteNRow>> {
    let asym_unres = asymptotic_unrestricted_bound(config.p)?;
    let asym_sim = crate::bounds_api::simultaneous_capacity_product(config.p)?;
    config
        .n_list
        .iter()
        .map(|&n| {
            Ok(FiniteNRow {
                n,
                finite_unrestricted: finite_n_unrestricted_bound(
                    n,
                    config.p,
                    config.lambda1,
                    config.lambda2,
                    config.theta,
                )?,
                asymptotic_unrestricted: asym_unres,
                finite_simultaneous: finite_n_sim_bound(
                    n,
                    config.p,
                    config.alpha,
                    eps,
                    config.lambda1,
                    config.lambda2,
                )? / n as f64,
                asymptotic_simultaneous: asym_sim,
            })
        })
        .collect()
}

/// Finite-n unrestricted and simultaneous bounds (per channel use) next to
/// their asymptotic limits.
pub fn cmd_finite_n(config: &FiniteNConfig) -> i32 {
    let eps = config
        .eps
        .unwrap_or_else(|| default_sim_eps(config.lambda1, config.lambda2));
    let rows = match finite_n_rows(config, eps) {
        Ok(r) => r,
        Err(e) => return fail(usage_err(e)),
    };
    let content = match config.format {
        OutFormat::Json => to_json(&FiniteNReport {
            schema_version: 1,
            seed: config.seed,
            p: config.p,
            lambda1: config.lambda1,
            lambda2: config.lambda2,
            theta: config.theta,
            alpha: config.alpha,
            eps,
            rows,
        }),
        OutFormat::Csv => {
            let mut s = String::from(
                "n,finite_unrestricted,asymptotic_unrestricted,finite_simultaneous,asymptotic_simultaneous\n",
            );
            for r in &rows {
                let _ = writeln!(
                    s,
                    "{},{},{},{},{}",
                    r.n,
                    fmt_sig9(r.finite_unrestricted),
                    fmt_sig9(r.asymptotic_unrestricted),
                    fmt_sig9(r.finite_simultaneous),
                    fmt_sig9(r.asymptotic_simultaneous)
                );
            }
            s
        }
    };
    if let Err(f) = emit(config.out.as_deref(), &content) {
        return fail(f);
    }
    EXIT_OK
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn fail(f: Failure) -> i32 {
    eprintln!("idcap: {}", f.message);
    f.code
}
