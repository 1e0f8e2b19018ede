//! Large-N equilibrium densities, band classification and phase scans.
//!
//! All densities here live in the rescaled variables `y` of the monic trap
//! `P₁`, the same variables used by the kernel and the sampler.

mod quartic;
mod sextic;

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

pub use quartic::{quartic_density, QuarticDensityParams, QuarticRegime};
pub use sextic::{
    sextic_density_solve, sextic_density_solve_with, sextic_fixed_point, sextic_matching_depth, structural_candidates, Moments, SexticDensity,
    SexticMomentState, SexticParams, SexticSolveOptions, SexticTopology, StructuralCandidate,
};

use crate::error::{Error, Result};
use crate::model::{ground_state_energy, rescale_to_monic, ConfinementSpec, CouplingSpec, SystemSpec};
use crate::profile::{band_structure, uniform_grid, DensityProfile, DensitySource, DEFAULT_BAND_FLOOR};

/// Grid resolution used when classifying bands.
pub const CLASSIFY_POINTS: usize = 4001;

/// Closed-form or self-consistent density of one model instance.
#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticDensity {
    /// Harmonic trap: `πR₁ = √(2Nγ − γ²y²)`.
    Semicircle { gamma: f64, n_particles: usize },
    Quartic(QuarticDensityParams),
    Sextic(Box<SexticDensity>),
}

impl AnalyticDensity {
    pub fn eval(&self, y: f64) -> f64 {
        match self {
            Self::Semicircle { gamma, n_particles } => {
                (2.0 * *n_particles as f64 * gamma - gamma * gamma * y * y).max(0.0).sqrt() / PI
            }
            Self::Quartic(p) => quartic_density(p, y),
            Self::Sextic(d) => d.eval(y),
        }
    }

    pub fn support(&self) -> Vec<(f64, f64)> {
        match self {
            Self::Semicircle { gamma, n_particles } => {
                let r = (2.0 * *n_particles as f64 / gamma).sqrt();
                vec![(-r, r)]
            }
            Self::Quartic(p) => p.support(),
            Self::Sextic(d) => d.support(),
        }
    }

    /// Single band whose density has a local minimum at the origin.
    pub fn has_dip(&self) -> bool {
        match self {
            Self::Semicircle { .. } => false,
            Self::Quartic(p) => p.has_dip(),
            Self::Sextic(d) => {
                let s = d.support();
                s.len() == 1 && d.coeffs()[0] > 0.0 && d.coeffs()[1] > 0.0
            }
        }
    }

    /// Uniform-grid profile covering the support with a 10% margin.
    pub fn profile(&self, points: usize) -> DensityProfile {
        let edge = self.support().iter().fold(0.0f64, |m, b| m.max(b.0.abs()).max(b.1.abs()));
        let grid = uniform_grid(-1.1 * edge, 1.1 * edge, points);
        let values = grid.iter().map(|&y| self.eval(y)).collect();
        DensityProfile::new(grid, values, DensitySource::Analytic)
    }
}

/// Analytic density of `spec` in rescaled variables.
pub fn analytic_density(spec: &SystemSpec, sextic_opts: &SexticSolveOptions) -> Result<AnalyticDensity> {
    let r = rescale_to_monic(spec);
    let n = spec.n_particles();
    let gamma = r.poly.gamma();
    let c = r.coeffs();
    match c.len() - 1 {
        0 => Ok(AnalyticDensity::Semicircle { gamma, n_particles: n }),
        1 => Ok(AnalyticDensity::Quartic(QuarticDensityParams::new(gamma, -c[0], n)?)),
        2 => {
            let params = SexticParams::new(gamma, c[1], c[0], n)?;
            let (_, d) = sextic_density_solve_with(&params, sextic_opts)?;
            Ok(AnalyticDensity::Sextic(Box::new(d)))
        }
        m => Err(Error::InvalidParameter(format!("no analytic density for half-degree m = {m}"))),
    }
}

/// Critical linear coefficient and the ground-state energy there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalParams {
    pub a_c: f64,
    /// `E₀` at `a₁ = a_c`, signed like [`ground_state_energy`].
    pub e0_c: f64,
}

/// Quartic: `a_c = √(2N/γ)`, where the single band splits. Sextic:
/// `a_c = a₃²/4`, where the trap becomes a triple well.
pub fn critical_params(spec: &SystemSpec) -> Result<CriticalParams> {
    let conf = spec.confinement();
    let n = spec.n_particles() as f64;
    let lam = spec.coupling().lambda();
    let factor = conf.gamma() * n * (1.0 + lam * (n - 1.0));
    match conf.half_degree() {
        1 => {
            let a_c = (2.0 * n / conf.gamma()).sqrt();
            Ok(CriticalParams { a_c, e0_c: -factor * a_c })
        }
        2 => {
            let a3 = conf.coeffs()[1];
            let a_c = a3 * a3 / 4.0;
            Ok(CriticalParams { a_c, e0_c: factor * a_c })
        }
        m => Err(Error::InvalidParameter(format!("critical parameters are defined for m = 1, 2 only, got m = {m}"))),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "case", rename_all = "lowercase")]
pub enum PhaseCase {
    /// `P = γ(x³ − a₁x)`.
    Quartic { gamma: f64, n: usize, lambda: f64 },
    /// `P = γ(x⁵ + a₃x³ + a₁x)`.
    Sextic { gamma: f64, a3: f64, n: usize, lambda: f64 },
}

impl PhaseCase {
    pub fn system(&self, a1: f64) -> Result<SystemSpec> {
        let (conf, n, lambda) = match *self {
            Self::Quartic { gamma, n, lambda } => (ConfinementSpec::quartic(gamma, a1)?, n, lambda),
            Self::Sextic { gamma, a3, n, lambda } => (ConfinementSpec::sextic(gamma, a3, a1)?, n, lambda),
        };
        SystemSpec::new(n, conf, CouplingSpec::from_lambda(lambda)?)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseRow {
    pub a1: f64,
    pub band_count: Option<usize>,
    pub dip: Option<bool>,
    pub e0: f64,
    /// Set when the density could not be built for this row.
    pub error: Option<String>,
}

/// Band count, dip flag and `E₀` along a grid of linear coefficients. Rows keep
/// the grid order; a failing row is marked and the scan continues.
pub fn phase_scan(case: &PhaseCase, a1_grid: &[f64], sextic_opts: &SexticSolveOptions) -> Result<Vec<PhaseRow>> {
    if a1_grid.is_empty() {
        return Err(Error::InvalidParameter("phase scan grid is empty".into()));
    }
    // Validate the fixed parameters once so bad input fails the whole scan.
    case.system(a1_grid[0])?;
    Ok(a1_grid
        .par_iter()
        .map(|&a1| {
            let spec = case.system(a1).expect("validated above");
            let e0 = ground_state_energy(&spec);
            match analytic_density(&spec, sextic_opts) {
                Ok(d) => {
                    let bands = band_structure(&d.profile(CLASSIFY_POINTS), DEFAULT_BAND_FLOOR);
                    PhaseRow {
                        a1,
                        band_count: Some(bands.count()),
                        dip: Some(d.has_dip()),
                        e0,
                        error: None,
                    }
                }
                Err(e) => PhaseRow {
                    a1,
                    band_count: None,
                    dip: None,
                    e0,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quartic(gamma: f64, a1: f64, n: usize) -> SystemSpec {
        SystemSpec::new(n, ConfinementSpec::quartic(gamma, a1).unwrap(), CouplingSpec::from_lambda(1.0).unwrap()).unwrap()
    }

    #[test]
    fn critical_values() {
        let c = critical_params(&quartic(1.0, 3.0, 50)).unwrap();
        assert!((c.a_c - 10.0).abs() < 1e-14);
        assert!((c.e0_c + 10.0 * 50.0 * 50.0).abs() < 1e-9);
        assert!((critical_params(&quartic(2.0, 0.0, 4)).unwrap().a_c - 2.0).abs() < 1e-14);
        let s = SystemSpec::new(10, ConfinementSpec::sextic(1.0, -4.0, 0.0).unwrap(), CouplingSpec::from_lambda(1.0).unwrap()).unwrap();
        assert_eq!(critical_params(&s).unwrap().a_c, 4.0);
        let h = SystemSpec::new(3, ConfinementSpec::csm(1.0).unwrap(), CouplingSpec::from_lambda(1.0).unwrap()).unwrap();
        assert!(critical_params(&h).is_err());
    }

    #[test]
    fn quartic_band_counts() {
        for (a1, want) in [(12.0, 2), (5.0, 1)] {
            let d = analytic_density(&quartic(1.0, a1, 50), &SexticSolveOptions::default()).unwrap();
            let b = band_structure(&d.profile(CLASSIFY_POINTS), DEFAULT_BAND_FLOOR);
            assert_eq!(b.count(), want, "a1 = {a1}");
        }
    }

    #[test]
    fn quartic_scan_transition_and_energy_slope() {
        let grid: Vec<f64> = (0..=40).map(|i| 5.0 + 0.25 * i as f64).collect();
        let case = PhaseCase::Quartic { gamma: 1.0, n: 50, lambda: 1.0 };
        let rows = phase_scan(&case, &grid, &SexticSolveOptions::default()).unwrap();
        let first_two = rows.iter().find(|r| r.band_count == Some(2)).unwrap().a1;
        // At a₁ = a_c the density touches zero at the origin, so either count is fair there.
        assert!((10.0..=10.25).contains(&first_two), "{first_two}");
        assert!(rows.iter().take_while(|r| r.a1 < 10.0).all(|r| r.band_count == Some(1)));
        assert!(rows.iter().filter(|r| r.a1 > 10.0).all(|r| r.band_count == Some(2)));
        let slope = (rows[1].e0 - rows[0].e0) / 0.25;
        assert!((slope + 50.0 * 50.0).abs() < 1e-9);
    }

    #[test]
    fn empty_scan_is_rejected() {
        let case = PhaseCase::Quartic { gamma: 1.0, n: 50, lambda: 1.0 };
        assert!(phase_scan(&case, &[], &SexticSolveOptions::default()).is_err());
    }

    #[test]
    fn semicircle_profile_integrates_to_n() {
        let h = SystemSpec::new(50, ConfinementSpec::csm(1.0).unwrap(), CouplingSpec::from_lambda(1.0).unwrap()).unwrap();
        let d = analytic_density(&h, &SexticSolveOptions::default()).unwrap();
        assert!((d.profile(20001).integral() - 50.0).abs() < 1e-3);
    }

    #[test]
    fn sextic_scan_goes_one_three_two() {
        let case = PhaseCase::Sextic {
            gamma: sextic_matching_depth(-4.0, 50).unwrap(),
            a3: -4.0,
            n: 50,
            lambda: 1.0,
        };
        let grid: Vec<f64> = (0..=48).map(|i| 6.0 - 0.125 * i as f64).collect();
        let rows = phase_scan(&case, &grid, &SexticSolveOptions::default()).unwrap();
        let mut seq: Vec<usize> = rows.iter().filter_map(|r| r.band_count).collect();
        seq.dedup();
        assert_eq!(seq, vec![1, 3, 2]);
        assert!(rows.iter().all(|r| r.error.is_none()));
    }
}
