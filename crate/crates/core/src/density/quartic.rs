//! Closed-form large-N densities for the quartic trap `P₁ = γ(y³ − a₁y)`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuarticRegime {
    TwoBand,
    SingleBand,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuarticDensityParams {
    pub gamma: f64,
    pub a1: f64,
    pub n_particles: usize,
}

impl QuarticDensityParams {
    pub fn new(gamma: f64, a1: f64, n_particles: usize) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) || !a1.is_finite() || n_particles == 0 {
            return Err(Error::InvalidParameter(format!(
                "quartic density needs gamma > 0, finite a1 and N >= 1 (got {gamma}, {a1}, {n_particles})"
            )));
        }
        Ok(Self { gamma, a1, n_particles })
    }

    fn filling(&self) -> f64 {
        self.n_particles as f64 / self.gamma
    }

    /// `a_c = √(2N/γ)`.
    pub fn critical_a1(&self) -> f64 {
        (2.0 * self.filling()).sqrt()
    }

    pub fn regime(&self) -> QuarticRegime {
        if self.a1 > self.critical_a1() {
            QuarticRegime::TwoBand
        } else {
            QuarticRegime::SingleBand
        }
    }

    /// `(b, c²)` of the single-band form `πR₁ = γ(b + y²)√(c² − y²)`.
    fn single_band_shape(&self) -> (f64, f64) {
        let s = (self.a1 * self.a1 + 6.0 * self.filling()).sqrt();
        ((s - 2.0 * self.a1) / 3.0, 2.0 * (s + self.a1) / 3.0)
    }

    /// Support as disjoint sorted intervals.
    pub fn support(&self) -> Vec<(f64, f64)> {
        match self.regime() {
            QuarticRegime::TwoBand => {
                let w = self.critical_a1();
                let (lo, hi) = ((self.a1 - w).sqrt(), (self.a1 + w).sqrt());
                vec![(-hi, -lo), (lo, hi)]
            }
            QuarticRegime::SingleBand => {
                let c = self.single_band_shape().1.sqrt();
                vec![(-c, c)]
            }
        }
    }

    /// True when the single-band density has a local minimum at the origin.
    pub fn has_dip(&self) -> bool {
        match self.regime() {
            QuarticRegime::TwoBand => false,
            QuarticRegime::SingleBand => {
                let (b, c2) = self.single_band_shape();
                2.0 * c2 > b
            }
        }
    }
}

/// Large-N density `R₁(y)`; zero outside the support.
pub fn quartic_density(params: &QuarticDensityParams, y: f64) -> f64 {
    let g = params.gamma;
    let u = y * y;
    let v = match params.regime() {
        QuarticRegime::TwoBand => {
            let r = 2.0 * params.filling() - (u - params.a1).powi(2);
            g * y.abs() * r.max(0.0).sqrt()
        }
        QuarticRegime::SingleBand => {
            let (b, c2) = params.single_band_shape();
            g * (b + u) * (c2 - u).max(0.0).sqrt()
        }
    };
    v / PI
}
