//! Flag parsing and config-file merging.
//!
//! Every command has a clap struct whose options are all optional and a
//! parameter struct with concrete types. Built-in defaults, then the command's
//! table in the config file, then explicit flags are layered as JSON objects
//! and deserialized into the parameter struct. The merged object is the
//! effective configuration echoed into the manifest.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "csmlab", version, about = "Ground states, densities and pair correlations of the Calogero-Sutherland family")]
pub struct Cli {
    /// Worker threads for scans, grids and chains (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// TOML file with one table per command, e.g. `[density]`.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory (default: $CSMLAB_OUT_DIR, else the working directory).
    #[arg(long, global = true)]
    pub out_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that the ground state diagonalizes the Hamiltonian.
    Verify(VerifyArgs),
    /// One-point density on a grid.
    Density(DensityArgs),
    /// Unfolded pair correlation function.
    Pcf(PcfArgs),
    /// Band count, dip flag and ground-state energy along a range of a1.
    PhaseScan(ScanArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::Verify(_) => "verify",
            Self::Density(_) => "density",
            Self::Pcf(_) => "pcf",
            Self::PhaseScan(_) => "phase-scan",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    Harmonic,
    Quartic,
    Sextic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DensityMethod {
    Kernel,
    Analytic,
    Mc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PcfMethod {
    Kernel,
    Mc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanCase {
    Quartic,
    Sextic,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct SystemArgs {
    #[arg(long, value_enum)]
    pub case: Option<Case>,
    /// Number of particles.
    #[arg(long)]
    pub n: Option<usize>,
    /// Coupling; the Dyson index is 2λ.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    /// Linear coefficient (quartic: P = γ(x³ − a1 x); sextic: P = γ(x⁵ + a3 x³ + a1 x)).
    #[arg(long, allow_hyphen_values = true)]
    pub a1: Option<f64>,
    /// Cubic coefficient of the sextic trap.
    #[arg(long, allow_hyphen_values = true)]
    pub a3: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct ChainArgs {
    /// Dyson index for the sampler (default 2λ).
    #[arg(long)]
    pub beta: Option<f64>,
    /// Sweeps per chain, burn-in included.
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub burn_in: Option<usize>,
    #[arg(long)]
    pub chains: Option<usize>,
    #[arg(long)]
    pub thinning: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Initial Gaussian proposal width (tuned during burn-in).
    #[arg(long)]
    pub sigma: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct VerifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,
    /// Random configurations per check.
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Residual threshold for a pass.
    #[arg(long)]
    pub tol: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct DensityArgs {
    #[arg(long, value_enum)]
    pub method: Option<DensityMethod>,
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub chain: ChainArgs,
    /// Grid points (kernel, analytic).
    #[arg(long)]
    pub points: Option<usize>,
    /// Histogram bins (mc).
    #[arg(long)]
    pub bins: Option<usize>,
    /// Lower end of the grid in rescaled units.
    #[arg(long, allow_hyphen_values = true)]
    pub lo: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub hi: Option<f64>,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct PcfArgs {
    #[arg(long, value_enum)]
    pub method: Option<PcfMethod>,
    #[command(flatten)]
    #[serde(flatten)]
    pub system: SystemArgs,
    #[command(flatten)]
    #[serde(flatten)]
    pub chain: ChainArgs,
    /// Kernel: fixed separation of the sweep. Mc: width of a separation bin.
    #[arg(long)]
    pub dy: Option<f64>,
    /// Sweep grid points (kernel).
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub lo: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub hi: Option<f64>,
    /// Moving-average width of the sorted sweep (kernel).
    #[arg(long)]
    pub smooth: Option<usize>,
    /// Relative density floor below which sweep points are dropped (kernel).
    #[arg(long)]
    pub floor: Option<f64>,
    /// Number of separation bins (mc).
    #[arg(long)]
    pub bins: Option<usize>,
    /// Reference window for the first particle of a pair (mc).
    #[arg(long, allow_hyphen_values = true)]
    pub window_lo: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub window_hi: Option<f64>,
    /// Bins with fewer pairs are flagged low-statistics (mc).
    #[arg(long)]
    pub min_pairs: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub case: Option<ScanCase>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub gamma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub a3: Option<f64>,
    /// First a1 of the scan.
    #[arg(long, allow_hyphen_values = true)]
    pub from: Option<f64>,
    /// Last a1 of the scan; may be below `from` for a descending scan.
    #[arg(long, allow_hyphen_values = true)]
    pub to: Option<f64>,
    #[arg(long)]
    pub step: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct VerifyParams {
    pub case: Case,
    pub n: usize,
    pub lambda: f64,
    pub gamma: f64,
    pub a1: f64,
    pub a3: Option<f64>,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct DensityParams {
    pub method: DensityMethod,
    pub case: Case,
    pub n: usize,
    pub lambda: f64,
    pub gamma: f64,
    pub a1: f64,
    pub a3: Option<f64>,
    pub beta: Option<f64>,
    pub steps: usize,
    pub burn_in: usize,
    pub chains: usize,
    pub thinning: usize,
    pub seed: u64,
    pub sigma: Option<f64>,
    pub points: usize,
    pub bins: usize,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct PcfParams {
    pub method: PcfMethod,
    pub case: Case,
    pub n: usize,
    pub lambda: f64,
    pub gamma: f64,
    pub a1: f64,
    pub a3: Option<f64>,
    pub beta: Option<f64>,
    pub steps: usize,
    pub burn_in: usize,
    pub chains: usize,
    pub thinning: usize,
    pub seed: u64,
    pub sigma: Option<f64>,
    pub dy: f64,
    pub points: usize,
    pub lo: Option<f64>,
    pub hi: Option<f64>,
    pub smooth: usize,
    pub floor: f64,
    pub bins: usize,
    pub window_lo: Option<f64>,
    pub window_hi: Option<f64>,
    pub min_pairs: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct ScanParams {
    pub case: ScanCase,
    pub n: usize,
    pub lambda: f64,
    pub gamma: f64,
    pub a3: Option<f64>,
    pub from: f64,
    pub to: f64,
    pub step: f64,
}

fn system_defaults(n: usize) -> Value {
    serde_json::json!({ "case": "quartic", "n": n, "lambda": 1.0, "gamma": 1.0, "a1": 0.0 })
}

fn chain_defaults() -> Value {
    serde_json::json!({ "steps": 20000, "burn-in": 2000, "chains": 8, "thinning": 1, "seed": 0 })
}

fn extend(base: &mut Map<String, Value>, more: Value) {
    if let Value::Object(m) = more {
        base.extend(m);
    }
}

pub fn verify_defaults() -> Map<String, Value> {
    let mut m = Map::new();
    extend(&mut m, system_defaults(4));
    extend(&mut m, serde_json::json!({ "samples": 100, "seed": 0, "tol": 1e-9 }));
    m
}

pub fn density_defaults() -> Map<String, Value> {
    let mut m = Map::new();
    extend(&mut m, system_defaults(50));
    extend(&mut m, chain_defaults());
    extend(&mut m, serde_json::json!({ "method": "kernel", "points": 2001, "bins": 200 }));
    m
}

pub fn pcf_defaults() -> Map<String, Value> {
    let mut m = Map::new();
    extend(&mut m, system_defaults(50));
    extend(&mut m, chain_defaults());
    extend(
        &mut m,
        serde_json::json!({ "method": "kernel", "points": 4001, "smooth": 21, "floor": 1e-6, "bins": 60, "min-pairs": 100 }),
    );
    m
}

pub fn scan_defaults() -> Map<String, Value> {
    serde_json::json!({ "case": "quartic", "n": 50, "lambda": 1.0, "gamma": 1.0 })
        .as_object()
        .cloned()
        .unwrap_or_default()
}

/// The command's table from a TOML config file, as JSON.
pub fn load_section(path: &Path, command: &str) -> Result<Map<String, Value>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
    let doc: toml::Table = text
        .parse()
        .map_err(|e| CliError::Usage(format!("config {} is not valid TOML: {e}", path.display())))?;
    for (k, v) in &doc {
        if !v.is_table() {
            return Err(CliError::Usage(format!("config key `{k}` must sit inside a command table such as [density]")));
        }
    }
    match doc.get(command) {
        Some(t) => match serde_json::to_value(t) {
            Ok(Value::Object(m)) => Ok(m),
            _ => Err(CliError::Usage(format!("config table [{command}] could not be read"))),
        },
        None => Ok(Map::new()),
    }
}

/// Defaults, then config values, then explicit flags.
pub fn merge<A: Serialize, P: DeserializeOwned>(defaults: Map<String, Value>, file: Map<String, Value>, flags: &A) -> Result<(P, Value), CliError> {
    let mut merged = defaults;
    merged.extend(file);
    let flag_map = match serde_json::to_value(flags) {
        Ok(Value::Object(m)) => m,
        _ => unreachable!("argument structs serialize to objects"),
    };
    for (k, v) in flag_map {
        if !v.is_null() {
            merged.insert(k, v);
        }
    }
    let value = Value::Object(merged);
    let params = serde_json::from_value(value.clone()).map_err(|e| CliError::Usage(format!("invalid parameters: {e}")))?;
    Ok((params, value))
}
