mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use serde_json::{json, Map};

use config::{Cli, Command};
use output::{write_manifest, Manifest, Outputs, MANIFEST_SCHEMA_VERSION};

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "CSMLAB_OUT_DIR";

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or parameters: exit 2.
    Usage(String),
    /// Numerical or convergence failure: exit 1.
    Numeric(String),
    Io(String),
}

impl From<csm_core::Error> for CliError {
    fn from(e: csm_core::Error) -> Self {
        use csm_core::Error as E;
        match e {
            E::InvalidParameter(_) | E::UnsupportedForm { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Numeric(e.to_string()),
        }
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| CliError::Io(format!("cannot start the thread pool: {e}")))?;
    }
    let out_dir = cli
        .out_dir
        .clone()
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."));
    let name = cli.command.name();
    let file = match &cli.config {
        Some(p) => config::load_section(p, name)?,
        None => Map::new(),
    };
    let start = Instant::now();
    let mut out = Outputs::new(out_dir);
    let (report, params) = match &cli.command {
        Command::Verify(a) => {
            let (p, v) = config::merge(config::verify_defaults(), file, a)?;
            (commands::verify(&p, &mut out)?, v)
        }
        Command::Density(a) => {
            let (p, v) = config::merge(config::density_defaults(), file, a)?;
            (commands::density(&p, &mut out)?, v)
        }
        Command::Pcf(a) => {
            let (p, v) = config::merge(config::pcf_defaults(), file, a)?;
            (commands::pcf(&p, &mut out)?, v)
        }
        Command::PhaseScan(a) => {
            let (p, v) = config::merge(config::scan_defaults(), file, a)?;
            (commands::phase_scan(&p, &mut out)?, v)
        }
    };
    let wall = start.elapsed().as_secs_f64();
    let dir = out.dir().to_path_buf();
    let outputs = out.write()?;
    let manifest = Manifest {
        schema_version: MANIFEST_SCHEMA_VERSION,
        command: name.to_string(),
        code_version: env!("CARGO_PKG_VERSION").to_string(),
        parameters: params,
        seed: report.seed,
        threads: rayon::current_num_threads(),
        wall_time_s: wall,
        outputs,
        summary: report.summary,
        warnings: report.warnings,
    };
    let path = write_manifest(&dir, name, &manifest)?;
    eprintln!("wrote {}", path.display());
    Ok(!report.failed)
}

fn main() -> ExitCode {
    // clap prints usage errors itself and exits with status 2.
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(m)) => {
            println!("{}", json!({ "status": "numerical_failure", "error": m }));
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(CliError::Io(m)) => {
            println!("{}", json!({ "status": "io_failure", "error": m }));
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
