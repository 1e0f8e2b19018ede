//! Orthogonal polynomials for the weight `w(y) = exp(−2∫_0^y P₁)` and the
//! β = 2 correlation functions built from them.
//!
//! Recurrences come from a discretized Stieltjes procedure. Everything
//! downstream works with the weighted orthonormal functions
//! `φ_μ(y) = q_μ(y) √(w(y)/h_μ)`, evaluated with a running log scale so the
//! enormous dynamic range of strongly double-welled weights never overflows.

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{rescale_to_monic, RescaledSpec, SystemSpec};
use crate::poly::{brent, real_roots};
use crate::quadrature::{composite, GaussLegendre, QuadratureOptions};

/// Off-diagonal Gram tolerance of the orthogonality check.
pub const ORTHOGONALITY_TOL: f64 = 1e-8;

/// The orthogonality weight of a rescaled model.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSpec {
    rescaled: RescaledSpec,
    log_max: f64,
}

impl WeightSpec {
    pub fn new(rescaled: RescaledSpec) -> Self {
        let poly = &rescaled.poly;
        // Stationary points of log w are the zeros of P₁: y = 0 and y² = u for
        // each positive real zero u of Σ c_k u^k.
        let mut log_max = 0.0f64;
        for u in real_roots(poly.coeffs(), 1e-9) {
            if u > 0.0 {
                log_max = log_max.max(-2.0 * poly.antiderivative(u.sqrt()));
            }
        }
        Self { rescaled, log_max }
    }

    pub fn from_system(spec: &SystemSpec) -> Self {
        Self::new(rescale_to_monic(spec))
    }

    pub fn rescaled(&self) -> &RescaledSpec {
        &self.rescaled
    }

    pub fn log_weight(&self, y: f64) -> f64 {
        -2.0 * self.rescaled.poly.antiderivative(y)
    }

    /// `max_y log w(y)`.
    pub fn log_weight_max(&self) -> f64 {
        self.log_max
    }

    /// Half-width `L` beyond which `w(y)·y^(2·degree)` sits more than
    /// `tail_log` below its peak (and `w` alone likewise).
    pub fn truncation(&self, degree: usize, tail_log: f64) -> f64 {
        self.envelope_cut(0, tail_log).max(self.envelope_cut(degree, tail_log))
    }

    fn envelope_cut(&self, degree: usize, tail_log: f64) -> f64 {
        let k = 2.0 * degree as f64;
        let env = |y: f64| self.log_weight(y) + if k > 0.0 { k * y.ln() } else { 0.0 };
        const SAMPLES: usize = 4000;
        let mut hi = 2.0f64;
        loop {
            let grid: Vec<f64> = (1..=SAMPLES).map(|i| hi * i as f64 / SAMPLES as f64).collect();
            let vals: Vec<f64> = grid.iter().map(|&y| env(y)).collect();
            let peak = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max).max(self.log_max);
            let cut = peak - tail_log;
            if vals[SAMPLES - 1] < cut && vals[SAMPLES - 2] > vals[SAMPLES - 1] {
                let last = vals.iter().rposition(|&v| v >= cut);
                return match last {
                    None => grid[0],
                    Some(i) => brent(|y| env(y) - cut, grid[i], grid[i + 1], 1e-12 * hi).unwrap_or(grid[i + 1]),
                };
            }
            hi *= 2.0;
        }
    }
}

/// Recurrence data for the orthogonal polynomials of one weight.
///
/// Monic polynomials obey `q_{n+1} = y q_n − β_n q_{n−1}`; the diagonal
/// coefficients vanish because the weight is even.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecurrenceTable {
    order: usize,
    /// `β_1 … β_order`.
    beta_coeffs: Vec<f64>,
    /// `log h_0 … log h_{order−1}`.
    log_norms: Vec<f64>,
    /// Quadrature half-width used for the construction.
    pub support: f64,
    /// Largest normalized off-diagonal Gram entry found by the independent check.
    pub orthogonality_residual: f64,
}

impl RecurrenceTable {
    pub fn order(&self) -> usize {
        self.order
    }

    /// `β_1 … β_order` (index 0 holds `β_1`).
    pub fn beta_coeffs(&self) -> &[f64] {
        &self.beta_coeffs
    }

    /// `β_n` for `1 ≤ n ≤ order`.
    pub fn beta(&self, n: usize) -> f64 {
        self.beta_coeffs[n - 1]
    }

    pub fn log_norms(&self) -> &[f64] {
        &self.log_norms
    }
}

/// Orthonormal values `√w p_n` at the given nodes, for `n < count`, using
/// orthonormal recurrence coefficients `b_n = √β_n`; `start` holds `√w p_0`.
fn orthonormal_columns(b: &[f64], start: &[f64], nodes: &[f64], count: usize) -> Vec<Vec<f64>> {
    let mut cols = Vec::with_capacity(count);
    let mut prev = vec![0.0; nodes.len()];
    let mut cur = start.to_vec();
    for n in 0..count {
        cols.push(cur.clone());
        if n + 1 == count {
            break;
        }
        let bn = if n == 0 { 0.0 } else { b[n - 1] };
        let next: Vec<f64> = nodes
            .iter()
            .zip(cur.iter().zip(&prev))
            .map(|(&y, (&c, &p))| (y * c - bn * p) / b[n])
            .collect();
        prev = cur;
        cur = next;
    }
    cols
}

/// Discretized Stieltjes construction of `order` recurrence steps, followed by
/// an orthogonality check on an independent composite rule.
pub fn build_recurrence(weight: &WeightSpec, order: usize, quad: &QuadratureOptions) -> Result<RecurrenceTable> {
    if order == 0 {
        return Err(Error::InvalidParameter("recurrence order must be at least 1".into()));
    }
    if quad.panels == 0 || quad.order < 2 {
        return Err(Error::InvalidParameter("quadrature needs at least one panel of order 2".into()));
    }
    let support = weight.truncation(order, quad.tail_log);
    let rule = GaussLegendre::new(quad.order);
    let (nodes, gw) = composite(-support, support, quad.panels, &rule);
    let log_max = weight.log_weight_max();
    let w: Vec<f64> = nodes
        .iter()
        .zip(&gw)
        .map(|(&y, &g)| g * (weight.log_weight(y) - log_max).exp())
        .collect();
    let mass: f64 = w.iter().sum();
    let log_h0 = log_max + mass.ln();

    // Orthonormal p_n at the nodes; b_{n+1} = ‖y p_n − b_n p_{n−1}‖_w.
    let mut b = Vec::with_capacity(order);
    let mut prev = vec![0.0; nodes.len()];
    let mut cur = vec![1.0 / mass.sqrt(); nodes.len()];
    for n in 0..order {
        let bn = if n == 0 { 0.0 } else { b[n - 1] };
        let q: Vec<f64> = nodes
            .iter()
            .zip(cur.iter().zip(&prev))
            .map(|(&y, (&c, &p))| y * c - bn * p)
            .collect();
        let norm2: f64 = q.iter().zip(&w).map(|(v, wi)| wi * v * v).sum();
        let bnext = norm2.sqrt();
        if !(bnext.is_finite() && bnext > 0.0) {
            return Err(Error::QuadratureResolution {
                mu: n + 1,
                nu: n + 1,
                residual: f64::NAN,
            });
        }
        b.push(bnext);
        prev = cur;
        cur = q.into_iter().map(|v| v / bnext).collect();
    }

    let beta_coeffs: Vec<f64> = b.iter().map(|v| v * v).collect();
    let mut log_norms = Vec::with_capacity(order);
    let mut acc = log_h0;
    for n in 0..order {
        if n > 0 {
            acc += beta_coeffs[n - 1].ln();
        }
        log_norms.push(acc);
    }

    let residual = orthogonality_check(weight, &b, support, order, quad)?;
    Ok(RecurrenceTable {
        order,
        beta_coeffs,
        log_norms,
        support,
        orthogonality_residual: residual,
    })
}

fn orthogonality_check(weight: &WeightSpec, b: &[f64], support: f64, count: usize, quad: &QuadratureOptions) -> Result<f64> {
    // Different panel count and order from the construction rule.
    let rule = GaussLegendre::new(quad.order + 7);
    let (nodes, gw) = composite(-support, support, quad.panels * 3 / 2 + 1, &rule);
    let log_max = weight.log_weight_max();
    let sqrt_w: Vec<f64> = nodes
        .iter()
        .map(|&y| (0.5 * (weight.log_weight(y) - log_max)).exp())
        .collect();
    let mass: f64 = sqrt_w.iter().zip(&gw).map(|(s, g)| g * s * s).sum();
    let start: Vec<f64> = sqrt_w.iter().map(|s| s / mass.sqrt()).collect();
    let cols = orthonormal_columns(b, &start, &nodes, count);

    let gram = |i: usize, j: usize| -> f64 { gw.iter().zip(cols[i].iter().zip(&cols[j])).map(|(g, (a, c))| g * a * c).sum() };
    let diag: Vec<f64> = (0..count).map(|i| gram(i, i)).collect();
    let mut worst = (0.0f64, 0, 0);
    for mu in 0..count {
        for nu in mu + 1..count {
            let r = gram(mu, nu).abs() / (diag[mu] * diag[nu]).sqrt();
            if !(r <= worst.0) {
                worst = (r, mu, nu);
            }
        }
    }
    if !(worst.0 <= ORTHOGONALITY_TOL) {
        return Err(Error::QuadratureResolution {
            mu: worst.1,
            nu: worst.2,
            residual: worst.0,
        });
    }
    Ok(worst.0)
}

/// `φ_μ(y) = q_μ(y) √(w(y)/h_μ)` for `μ < order`.
pub fn eval_weighted_polys(table: &RecurrenceTable, weight: &WeightSpec, y: f64) -> Vec<f64> {
    weighted_polys_upto(table, weight, y, table.order)
}

fn weighted_polys_upto(table: &RecurrenceTable, weight: &WeightSpec, y: f64, count: usize) -> Vec<f64> {
    const BIG: f64 = 1e150;
    let mut out = Vec::with_capacity(count);
    // Values are carried as mantissa × exp(scale).
    let mut scale = 0.5 * (weight.log_weight(y) - table.log_norms[0]);
    let mut prev = 0.0;
    let mut cur = 1.0;
    let mut raw = Vec::with_capacity(count);
    for n in 0..count {
        raw.push((cur, scale));
        if n + 1 == count {
            break;
        }
        let bn = if n == 0 { 0.0 } else { table.beta_coeffs[n - 1].sqrt() };
        let next = (y * cur - bn * prev) / table.beta_coeffs[n].sqrt();
        prev = cur;
        cur = next;
        let mag = cur.abs().max(prev.abs());
        if mag > BIG || (mag < 1.0 / BIG && mag > 0.0) {
            let l = mag.ln();
            cur /= mag;
            prev /= mag;
            scale += l;
        }
    }
    for (m, s) in raw {
        out.push(if m == 0.0 { 0.0 } else { m * s.exp() });
    }
    out
}

/// One-point function `R₁(y) = Σ_{μ<N} φ_μ(y)²` with `N = table.order()`.
pub fn kernel_density(table: &RecurrenceTable, weight: &WeightSpec, y: f64) -> f64 {
    eval_weighted_polys(table, weight, y).iter().map(|v| v * v).sum()
}

/// Weighted kernel at the pairs (y1,y1), (y2,y2), (y1,y2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KernelValue {
    pub k11: f64,
    pub k22: f64,
    pub k12: f64,
}

pub fn kernel_value(table: &RecurrenceTable, weight: &WeightSpec, y1: f64, y2: f64) -> KernelValue {
    let a = eval_weighted_polys(table, weight, y1);
    let b = eval_weighted_polys(table, weight, y2);
    KernelValue {
        k11: a.iter().map(|v| v * v).sum(),
        k22: b.iter().map(|v| v * v).sum(),
        k12: a.iter().zip(&b).map(|(u, v)| u * v).sum(),
    }
}

fn lagrange_det(a: &[f64], b: &[f64]) -> f64 {
    // K11 K22 − K12² = Σ_{μ<ν} (φ_μ(a)φ_ν(b) − φ_ν(a)φ_μ(b))², free of the
    // catastrophic cancellation of the direct form at small separations.
    let mut s = 0.0;
    for mu in 0..a.len() {
        for nu in mu + 1..a.len() {
            let d = a[mu] * b[nu] - a[nu] * b[mu];
            s += d * d;
        }
    }
    s
}

/// Two-point function `R₂(y1,y2) = K(y1,y1)K(y2,y2) − K(y1,y2)²`.
pub fn pcf_beta2(table: &RecurrenceTable, weight: &WeightSpec, y1: f64, y2: f64) -> f64 {
    let a = eval_weighted_polys(table, weight, y1);
    let b = eval_weighted_polys(table, weight, y2);
    lagrange_det(&a, &b)
}

/// `R₂(y, y') / (R₁(y) R₁(y'))` with `y' = y + r / R₁(y)`, the PCF in units of
/// the local mean spacing.
pub fn unfolded_pcf(table: &RecurrenceTable, weight: &WeightSpec, y: f64, r: f64) -> f64 {
    let a = eval_weighted_polys(table, weight, y);
    let r1a: f64 = a.iter().map(|v| v * v).sum();
    let b = eval_weighted_polys(table, weight, y + r / r1a);
    let r1b: f64 = b.iter().map(|v| v * v).sum();
    lagrange_det(&a, &b) / (r1a * r1b)
}

/// `1 − sin²(πr)/(πr)²`.
pub fn sine_kernel_reference(r: f64) -> f64 {
    if r == 0.0 {
        return 0.0;
    }
    let x = PI * r;
    let s = x.sin() / x;
    1.0 - s * s
}

/// Density on a grid, evaluated in parallel.
pub fn kernel_density_grid(table: &RecurrenceTable, weight: &WeightSpec, grid: &[f64]) -> Vec<f64> {
    grid.par_iter().map(|&y| kernel_density(table, weight, y)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepOptions {
    /// Moving-average width, in consecutive points of the r-sorted curve.
    pub window: usize,
    /// Points with `R₁ < floor · max R₁` are dropped.
    pub floor: f64,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { window: 21, floor: 1e-6 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepPoint {
    pub y: f64,
    pub r: f64,
    pub value: f64,
    pub smoothed: f64,
    pub reference: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PcfSweep {
    pub delta_y: f64,
    /// Sorted by r.
    pub points: Vec<SweepPoint>,
    pub dropped: usize,
}

impl PcfSweep {
    pub fn r_range(&self) -> (f64, f64) {
        match (self.points.first(), self.points.last()) {
            (Some(a), Some(b)) => (a.r, b.r),
            _ => (f64::NAN, f64::NAN),
        }
    }

    /// Largest `|Y − reference|` over the unsmoothed curve.
    pub fn max_deviation(&self) -> f64 {
        self.points.iter().fold(0.0f64, |m, p| m.max((p.value - p.reference).abs()))
    }
}

/// For each grid point: `r = Δy·R₁(y)` and `Y = R₂(y, y+Δy)/(R₁(y)R₁(y+Δy))`.
pub fn scaled_pcf_sweep(table: &RecurrenceTable, weight: &WeightSpec, delta_y: f64, y_grid: &[f64], opts: &SweepOptions) -> Result<PcfSweep> {
    if !(delta_y > 0.0 && delta_y.is_finite()) {
        return Err(Error::InvalidParameter(format!("delta_y must be positive, got {delta_y}")));
    }
    if opts.window == 0 {
        return Err(Error::InvalidParameter("smoothing window must be at least 1".into()));
    }
    let raw: Vec<(f64, f64, f64, f64)> = y_grid
        .par_iter()
        .map(|&y| {
            let a = eval_weighted_polys(table, weight, y);
            let b = eval_weighted_polys(table, weight, y + delta_y);
            let r1a: f64 = a.iter().map(|v| v * v).sum();
            let r1b: f64 = b.iter().map(|v| v * v).sum();
            (y, r1a, r1b, lagrange_det(&a, &b))
        })
        .collect();
    let peak = raw.iter().fold(0.0f64, |m, v| m.max(v.1));
    let cut = opts.floor * peak;
    let mut points: Vec<SweepPoint> = raw
        .iter()
        .filter(|v| v.1 >= cut && v.2 >= cut && v.1 > 0.0 && v.2 > 0.0)
        .map(|&(y, r1a, r1b, det)| {
            let r = delta_y * r1a;
            SweepPoint {
                y,
                r,
                value: det / (r1a * r1b),
                smoothed: f64::NAN,
                reference: sine_kernel_reference(r),
            }
        })
        .collect();
    let dropped = raw.len() - points.len();
    points.sort_by(|a, b| a.r.total_cmp(&b.r).then(a.y.total_cmp(&b.y)));
    let half = opts.window / 2;
    let values: Vec<f64> = points.iter().map(|p| p.value).collect();
    for (i, p) in points.iter_mut().enumerate() {
        let lo = i.saturating_sub(half);
        let hi = (i + half + 1).min(values.len());
        p.smoothed = values[lo..hi].iter().sum::<f64>() / (hi - lo) as f64;
    }
    Ok(PcfSweep {
        delta_y,
        points,
        dropped,
    })
}
