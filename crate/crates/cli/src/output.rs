use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::Value;

use crate::CliError;

/// Version of the manifest layout described by `schema/manifest.schema.json`.
pub const MANIFEST_SCHEMA_VERSION: u32 = 1;

/// A CSV cell: floats in 17-significant-digit scientific notation.
pub enum Cell {
    F(f64),
    I(i64),
    S(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::F(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::I(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::I(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::I(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::S(v.to_string())
    }
}

pub fn csv(header: &[&str], rows: &[Vec<Cell>]) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for row in rows {
        for (i, c) in row.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            match c {
                Cell::F(v) => write!(s, "{v:.16e}").unwrap(),
                Cell::I(v) => write!(s, "{v}").unwrap(),
                // Commas and quotes would break the column layout.
                Cell::S(v) => s.push_str(&v.replace([',', '"', '\n'], " ")),
                Cell::Empty => {}
            }
        }
        s.push('\n');
    }
    s
}

#[derive(Debug, Serialize)]
pub struct OutputFile {
    pub path: String,
    pub bytes: usize,
    pub description: String,
}

#[derive(Debug, Serialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub command: String,
    pub code_version: String,
    pub parameters: Value,
    pub seed: Option<u64>,
    pub threads: usize,
    pub wall_time_s: f64,
    pub outputs: Vec<OutputFile>,
    pub summary: Value,
    pub warnings: Vec<String>,
}

/// Collects files in memory and writes them together at the end.
pub struct Outputs {
    dir: PathBuf,
    files: Vec<(String, String, String)>,
}

impl Outputs {
    pub fn new(dir: PathBuf) -> Self {
        Self { dir, files: Vec::new() }
    }

    pub fn add(&mut self, name: &str, contents: String, description: &str) {
        self.files.push((name.to_string(), contents, description.to_string()));
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    /// Writes all files and returns their manifest entries.
    pub fn write(self) -> Result<Vec<OutputFile>, CliError> {
        fs::create_dir_all(&self.dir).map_err(|e| CliError::Io(format!("cannot create {}: {e}", self.dir.display())))?;
        let mut entries = Vec::new();
        for (name, contents, description) in self.files {
            let path = self.dir.join(&name);
            fs::write(&path, &contents).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
            entries.push(OutputFile {
                path: name,
                bytes: contents.len(),
                description,
            });
        }
        Ok(entries)
    }
}

pub fn write_manifest(dir: &Path, command: &str, manifest: &Manifest) -> Result<PathBuf, CliError> {
    let path = dir.join(format!("{}.manifest.json", command.replace('-', "_")));
    let text = serde_json::to_string_pretty(manifest).expect("manifest serializes") + "\n";
    fs::write(&path, text).map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}
