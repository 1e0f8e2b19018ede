//! Sampled one-point densities and their band decomposition.

use serde::{Deserialize, Serialize};

/// Default band floor, relative to the density maximum.
pub const DEFAULT_BAND_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DensitySource {
    Kernel,
    Analytic,
    #[serde(rename = "mc")]
    MonteCarlo,
}

/// Maximal intervals where the density exceeds the floor, sorted and disjoint.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BandStructure {
    pub intervals: Vec<(f64, f64)>,
}

impl BandStructure {
    pub fn count(&self) -> usize {
        self.intervals.len()
    }
}

/// A density on a uniform grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityProfile {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub source: DensitySource,
    pub bands: BandStructure,
    /// One-sigma errors per grid point, for sampled densities.
    pub errors: Option<Vec<f64>>,
}

impl DensityProfile {
    pub fn new(grid: Vec<f64>, values: Vec<f64>, source: DensitySource) -> Self {
        assert_eq!(grid.len(), values.len(), "grid and values differ in length");
        let bands = band_intervals(&grid, &values, DEFAULT_BAND_FLOOR);
        Self {
            grid,
            values,
            source,
            bands,
            errors: None,
        }
    }

    pub fn with_errors(mut self, errors: Vec<f64>) -> Self {
        assert_eq!(errors.len(), self.values.len(), "one error per grid point");
        self.errors = Some(errors);
        self
    }

    /// Trapezoidal integral.
    pub fn integral(&self) -> f64 {
        trapezoid(&self.grid, &self.values)
    }

    /// `∫|ρ − other| / n` on the shared grid.
    pub fn l1_relative(&self, other: &[f64], n: f64) -> f64 {
        let diff: Vec<f64> = self.values.iter().zip(other).map(|(a, b)| (a - b).abs()).collect();
        trapezoid(&self.grid, &diff) / n
    }

    /// Centered moving average over `width` grid points (truncated at the ends).
    pub fn smoothed(&self, width: usize) -> Self {
        let values = moving_average(&self.values, width);
        Self::new(self.grid.clone(), values, self.source)
    }
}

pub fn trapezoid(x: &[f64], y: &[f64]) -> f64 {
    x.windows(2)
        .zip(y.windows(2))
        .map(|(xs, ys)| 0.5 * (xs[1] - xs[0]) * (ys[0] + ys[1]))
        .sum()
}

pub fn moving_average(v: &[f64], width: usize) -> Vec<f64> {
    let half = width.max(1) / 2;
    let mut prefix = vec![0.0; v.len() + 1];
    for (i, x) in v.iter().enumerate() {
        prefix[i + 1] = prefix[i] + x;
    }
    (0..v.len())
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half + 1).min(v.len());
            (prefix[hi] - prefix[lo]) / (hi - lo) as f64
        })
        .collect()
}

/// Uniform grid of `points` values on `[lo, hi]`.
pub fn uniform_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![0.5 * (lo + hi)];
    }
    let h = (hi - lo) / (points - 1) as f64;
    (0..points).map(|i| lo + h * i as f64).collect()
}

/// Bands of a profile at a relative floor.
pub fn band_structure(profile: &DensityProfile, floor: f64) -> BandStructure {
    band_intervals(&profile.grid, &profile.values, floor)
}

fn band_intervals(grid: &[f64], values: &[f64], floor: f64) -> BandStructure {
    let peak = values.iter().cloned().fold(0.0f64, f64::max);
    if peak <= 0.0 {
        return BandStructure { intervals: Vec::new() };
    }
    let cut = floor * peak;
    let mut runs: Vec<(usize, usize)> = Vec::new();
    let mut start = None;
    for (i, &v) in values.iter().enumerate() {
        match (v > cut, start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                runs.push((s, i - 1));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        runs.push((s, values.len() - 1));
    }
    // A single sub-floor grid point between two runs is ripple, not a gap.
    let mut merged: Vec<(usize, usize)> = Vec::new();
    for r in runs {
        match merged.last_mut() {
            Some(last) if r.0 <= last.1 + 2 => last.1 = r.1,
            _ => merged.push(r),
        }
    }
    BandStructure {
        intervals: merged.into_iter().map(|(a, b)| (grid[a], grid[b])).collect(),
    }
}
