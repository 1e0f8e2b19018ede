//! Self-consistent large-N density for the sextic trap
//! `P₁ = γ(x⁵ + c₃x³ + c₁x)`, written in terms of the signed coefficients.
//!
//! The density is `πR₁(x) = γ √F(x²)` with a quintic `F(u)` whose two lowest
//! coefficients involve the moments `M₂ = ∫x²R₁` and `M₄ = ∫x⁴R₁`. Plain
//! iteration on the moments has a degenerate fixed-point set once the support
//! splits, so candidates are first obtained from the factorized form of `F` for
//! each band topology (one band through the origin, a symmetric pair, or a
//! central band plus a pair). Each reduces to a one-dimensional root find. The
//! chosen candidate must be a genuine equilibrium (constant effective potential
//! on the support, no lower value off it) and is then confirmed by the moment
//! map. Damped iteration with a Broyden fallback remains available on its own.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{brent, horner, real_roots, roots};
use crate::quadrature::{cosine_mapped, GaussLegendre};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SexticParams {
    pub gamma: f64,
    /// Signed cubic coefficient of `P₁/γ`.
    pub a3: f64,
    /// Signed linear coefficient of `P₁/γ`.
    pub a1: f64,
    pub n_particles: usize,
}

impl SexticParams {
    pub fn new(gamma: f64, a3: f64, a1: f64, n_particles: usize) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) || !a3.is_finite() || !a1.is_finite() || n_particles == 0 {
            return Err(Error::InvalidParameter(format!(
                "sextic density needs gamma > 0, finite coefficients and N >= 1 (got {gamma}, {a3}, {a1}, {n_particles})"
            )));
        }
        Ok(Self {
            gamma,
            a3,
            a1,
            n_particles,
        })
    }

    fn filling(&self) -> f64 {
        self.n_particles as f64 / self.gamma
    }

    /// Classical triple-well threshold `a₃²/4`.
    pub fn critical_a1(&self) -> f64 {
        self.a3 * self.a3 / 4.0
    }

    /// Coefficients of `F(u)`, lowest degree first.
    pub fn radicand_coeffs(&self, m2: f64, m4: f64) -> [f64; 6] {
        let (g, n, k) = (self.gamma, self.n_particles as f64, self.filling());
        let (c3, c1) = (self.a3, self.a1);
        [
            (2.0 * c1 * n + 2.0 * m4 + 2.0 * c3 * m2) / g,
            2.0 * m2 / g + 2.0 * c3 * k - c1 * c1,
            2.0 * k - 2.0 * c1 * c3,
            -(c3 * c3 + 2.0 * c1),
            -2.0 * c3,
            -1.0,
        ]
    }

    /// Inverse of [`Self::radicand_coeffs`] on its two free coefficients.
    fn moments_from(&self, f1: f64, f0: f64) -> (f64, f64) {
        let (g, n) = (self.gamma, self.n_particles as f64);
        let (c3, c1) = (self.a3, self.a1);
        let m2 = (f1 + c1 * c1 - 2.0 * c3 * self.filling()) * g / 2.0;
        let m4 = (f0 * g - 2.0 * c1 * n - 2.0 * c3 * m2) / 2.0;
        (m2, m4)
    }

    fn trap_potential(&self, x: f64) -> f64 {
        // 2 ∫_0^x P₁
        let u = x * x;
        2.0 * self.gamma * u * (u * u / 6.0 + self.a3 * u / 4.0 + self.a1 / 2.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SexticMomentState {
    pub m2: f64,
    pub m4: f64,
    /// `max(|M₂ − I₂|, |M₄ − I₄|)` against the moments of the density built from this state.
    pub residual: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SexticTopology {
    OneBand,
    TwoBand,
    ThreeBand,
}

impl SexticTopology {
    pub fn band_count(&self) -> usize {
        match self {
            Self::OneBand => 1,
            Self::TwoBand => 2,
            Self::ThreeBand => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SexticSolveOptions {
    pub tol: f64,
    pub max_iter: usize,
    pub damping: f64,
}

impl Default for SexticSolveOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            max_iter: 500,
            damping: 0.3,
        }
    }
}

/// Density built from one moment state.
#[derive(Debug, Clone, PartialEq)]
pub struct SexticDensity {
    pub params: SexticParams,
    pub state: SexticMomentState,
    /// Topology of the accepted equilibrium, when it came from the structural solver.
    pub topology: Option<SexticTopology>,
    coeffs: [f64; 6],
    /// Intervals in `u = x²` where `F > 0`.
    bands_u: Vec<(f64, f64)>,
    /// Interior double roots (in `u`) used as quadrature breakpoints.
    kinks_u: Vec<f64>,
}

/// `∫x^p ρ` for p = 0, 2, 4.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Moments {
    pub norm: f64,
    pub m2: f64,
    pub m4: f64,
}

impl SexticDensity {
    fn build(params: SexticParams, m2: f64, m4: f64) -> Result<Self> {
        let coeffs = params.radicand_coeffs(m2, m4);
        let (bands_u, kinks_u) = positive_set(&coeffs);
        if bands_u.is_empty() {
            return Err(Error::Infeasible(format!(
                "radicand is negative everywhere for M2 = {m2}, M4 = {m4}"
            )));
        }
        Ok(Self {
            params,
            state: SexticMomentState {
                m2,
                m4,
                residual: f64::NAN,
                iterations: 0,
            },
            topology: None,
            coeffs,
            bands_u,
            kinks_u,
        })
    }

    pub fn coeffs(&self) -> &[f64; 6] {
        &self.coeffs
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.params.gamma / PI * horner(&self.coeffs, x * x).max(0.0).sqrt()
    }

    /// Support in `x`, sorted, symmetric about 0.
    pub fn support(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for &(a, b) in &self.bands_u {
            let (lo, hi) = (a.sqrt(), b.sqrt());
            if a <= 0.0 {
                out.push((-hi, hi));
            } else {
                out.push((-hi, -lo));
                out.push((lo, hi));
            }
        }
        out.sort_by(|p, q| p.0.total_cmp(&q.0));
        out
    }

    /// Quadrature nodes and weights on the positive half of the support.
    fn half_nodes(&self, panels: usize) -> (Vec<f64>, Vec<f64>) {
        let gl = GaussLegendre::new(40);
        let mut xs = Vec::new();
        let mut ws = Vec::new();
        for &(a, b) in &self.bands_u {
            let breaks: Vec<f64> = self
                .kinks_u
                .iter()
                .filter(|&&k| k > a && k < b)
                .map(|k| k.sqrt())
                .collect();
            let (x, w) = cosine_mapped(a.max(0.0).sqrt(), b.sqrt(), panels, &gl, &breaks);
            xs.extend(x);
            ws.extend(w);
        }
        (xs, ws)
    }

    pub fn moments(&self) -> Moments {
        let (xs, ws) = self.half_nodes(8);
        let mut m = Moments {
            norm: 0.0,
            m2: 0.0,
            m4: 0.0,
        };
        for (&x, &w) in xs.iter().zip(&ws) {
            let r = 2.0 * w * self.eval(x);
            let u = x * x;
            m.norm += r;
            m.m2 += r * u;
            m.m4 += r * u * u;
        }
        m
    }

    fn residual(&self) -> (f64, Moments) {
        let m = self.moments();
        ((self.state.m2 - m.m2).abs().max((self.state.m4 - m.m4).abs()), m)
    }

    /// Most negative `V_eff(x) − V_eff(edge)` found outside the support on
    /// `[0, 1.5·edge + 1]`, together with the spread of `V_eff` across band
    /// edges. Both vanish for an equilibrium.
    pub fn equilibrium_defect(&self) -> (f64, f64) {
        let (xs, ws) = self.half_nodes(16);
        let rho: Vec<f64> = xs.iter().zip(&ws).map(|(&x, &w)| w * self.eval(x)).collect();
        let veff = |y: f64| -> f64 {
            let mut log_part = 0.0;
            for (&x, &r) in xs.iter().zip(&rho) {
                log_part += r * ((y - x).abs().ln() + (y + x).abs().ln());
            }
            self.params.trap_potential(y) - 2.0 * log_part
        };
        let edge = self.bands_u.last().map(|b| b.1.sqrt()).unwrap_or(0.0);
        let reference = veff(edge);
        let inside = |y: f64| {
            let u = y * y;
            self.bands_u.iter().any(|&(a, b)| u >= a - 1e-9 && u <= b + 1e-9)
        };
        let top = 1.5 * edge + 1.0;
        let mut worst = 0.0f64;
        for i in 0..=400 {
            let y = top * i as f64 / 400.0;
            if !inside(y) {
                worst = worst.min(veff(y) - reference);
            }
        }
        // The density vanishes at every band edge, so the log integral is
        // well resolved there.
        let mut spread = 0.0f64;
        for &(a, b) in &self.bands_u {
            for edge_u in [a, b] {
                if edge_u > 0.0 {
                    spread = spread.max((veff(edge_u.sqrt()) - reference).abs());
                }
            }
        }
        (worst, spread)
    }
}

/// Positive set of `F` on `u ≥ 0` and the interior near-double roots.
fn positive_set(f: &[f64; 6]) -> (Vec<(f64, f64)>, Vec<f64>) {
    let all = roots(f);
    let close_to_real = |z: &Complex64, tol: f64| z.im.abs() <= tol * z.re.abs().max(1.0);
    let mut real: Vec<f64> = all
        .iter()
        .filter(|z| close_to_real(z, 1e-7) && z.re > 0.0)
        .map(|z| z.re)
        .collect();
    real.sort_by(f64::total_cmp);
    let mut kinks: Vec<f64> = all
        .iter()
        .filter(|z| !close_to_real(z, 1e-7) && close_to_real(z, 1e-3) && z.re > 0.0)
        .map(|z| z.re)
        .collect();
    // A double root perturbed by rounding shows up as two nearly equal real
    // roots; it is a kink, not a band edge.
    let mut cuts = vec![0.0];
    let mut i = 0;
    while i < real.len() {
        if i + 1 < real.len() && real[i + 1] - real[i] < 1e-6 * real[i + 1].max(1.0) {
            kinks.push(0.5 * (real[i] + real[i + 1]));
            i += 2;
        } else {
            cuts.push(real[i]);
            i += 1;
        }
    }
    cuts.dedup();

    let mut bands: Vec<(f64, f64)> = Vec::new();
    for (i, &a) in cuts.iter().enumerate() {
        let b = cuts.get(i + 1).copied();
        let probe = match b {
            Some(b) => 0.5 * (a + b),
            None => a + 1.0,
        };
        if horner(f, probe) > 0.0 {
            let b = match b {
                Some(b) => b,
                // F has a negative leading coefficient, so this cannot happen
                // for a well-formed radicand.
                None => continue,
            };
            match bands.last_mut() {
                Some(last) if last.1 == a => last.1 = b,
                _ => bands.push((a, b)),
            }
        }
    }
    (bands, kinks)
}

/// A moment state proposed by the factorized form for one topology.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StructuralCandidate {
    pub topology: SexticTopology,
    pub m2: f64,
    pub m4: f64,
}

/// All moment states compatible with one of the three band topologies.
/// Validity as an equilibrium is not checked here.
pub fn structural_candidates(params: &SexticParams) -> Vec<StructuralCandidate> {
    let mut out = Vec::new();
    let (c3, c1) = (params.a3, params.a1);
    let k = params.filling();
    let f2 = 2.0 * k - 2.0 * c1 * c3;
    let f3 = -(c3 * c3 + 2.0 * c1);

    // One band: F = (s − u)(u² + pu + q)² with M(u) = u² + pu + q ≥ 0 on [0, s].
    for s in real_roots(&[-2.0 * k, c1, 0.75 * c3, 0.625], 1e-9) {
        if s <= 0.0 {
            continue;
        }
        let p = s / 2.0 + c3;
        let q = 3.0 * s * s / 8.0 + c3 * s / 2.0 + c1;
        let mval = |u: f64| u * u + p * u + q;
        let vertex = (-p / 2.0).clamp(0.0, s);
        let scale = q.abs().max(s * s).max(1.0);
        if mval(0.0).min(mval(s)).min(mval(vertex)) < -1e-12 * scale {
            continue;
        }
        let (m2, m4) = params.moments_from(2.0 * p * q * s - q * q, q * q * s);
        out.push(StructuralCandidate {
            topology: SexticTopology::OneBand,
            m2,
            m4,
        });
    }

    // Symmetric pair: F = −u(u² − σu + π)(u − d)², band [s₁, s₂] ∌ d.
    for d in real_roots(&[-f2, -2.0 * f3, 6.0 * c3, 4.0], 1e-9) {
        let sigma = -2.0 * c3 - 2.0 * d;
        let pi_ = -f3 + 3.0 * d * d + 4.0 * c3 * d;
        let disc = sigma * sigma - 4.0 * pi_;
        if disc <= 0.0 {
            continue;
        }
        let s1 = 0.5 * (sigma - disc.sqrt());
        let s2 = 0.5 * (sigma + disc.sqrt());
        if s1 <= 0.0 || (d > s1 && d < s2) {
            continue;
        }
        let (m2, m4) = params.moments_from(-pi_ * d * d, 0.0);
        out.push(StructuralCandidate {
            topology: SexticTopology::TwoBand,
            m2,
            m4,
        });
    }

    // Central band plus pair: F = −A(u)(u − d)², A monic cubic with roots
    // 0 < s₁ < d < s₂ < s₃; d fixed by equal effective potential on all bands.
    let cubic = |d: f64| {
        let a2 = 2.0 * d + 2.0 * c3;
        let a1 = -f3 + 2.0 * d * a2 - d * d;
        let a0 = -f2 + 2.0 * d * a1 - d * d * a2;
        [a0, a1, a2]
    };
    let gap_roots = |d: f64| -> Option<[f64; 3]> {
        let a = cubic(d);
        let r = real_roots(&[a[0], a[1], a[2], 1.0], 1e-9);
        (r.len() == 3 && r[0] > 0.0 && r[0] < d && d < r[1]).then(|| [r[0], r[1], r[2]])
    };
    let gl = GaussLegendre::new(40);
    let balance = |d: f64| -> f64 {
        let Some(r) = gap_roots(d) else { return f64::NAN };
        let a = cubic(d);
        let (xs, ws) = cosine_mapped(r[0].sqrt(), r[1].sqrt(), 4, &gl, &[d.sqrt()]);
        xs.iter()
            .zip(&ws)
            .map(|(&x, &w)| {
                let u = x * x;
                w * (d - u) * horner(&[a[0], a[1], a[2], 1.0], u).max(0.0).sqrt()
            })
            .sum()
    };
    let d_max = 4.0 * (c3.abs() + c1.abs().sqrt() + k.cbrt()) + 1.0;
    const SCAN: usize = 4000;
    let mut prev: Option<(f64, f64)> = None;
    for i in 1..=SCAN {
        let d = d_max * i as f64 / SCAN as f64;
        let g = balance(d);
        if g.is_nan() {
            prev = None;
            continue;
        }
        if let Some((d0, g0)) = prev {
            if g0.signum() != g.signum() {
                if let Some(root) = brent(&balance, d0, d, 1e-14 * d_max) {
                    let a = cubic(root);
                    let f1 = 2.0 * root * a[0] - root * root * a[1];
                    let f0 = -root * root * a[0];
                    let (m2, m4) = params.moments_from(f1, f0);
                    out.push(StructuralCandidate {
                        topology: SexticTopology::ThreeBand,
                        m2,
                        m4,
                    });
                }
            }
        }
        prev = Some((d, g));
    }
    out
}

fn topology_matches(density: &SexticDensity, topology: SexticTopology) -> bool {
    let b = &density.bands_u;
    match topology {
        SexticTopology::OneBand => b.len() == 1 && b[0].0 <= 0.0,
        SexticTopology::TwoBand => b.len() == 1 && b[0].0 > 0.0,
        SexticTopology::ThreeBand => b.len() == 2 && b[0].0 <= 0.0,
    }
}

/// Damped fixed-point iteration `M ← M + α(I(M) − M)` on `(M₂, M₄)`, switching
/// to Broyden's method on the same residual when the damped map stalls.
pub fn sextic_fixed_point(params: &SexticParams, initial: (f64, f64), opts: &SexticSolveOptions) -> Result<SexticDensity> {
    if !(opts.tol > 0.0) {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    let map = |m: [f64; 2]| -> Result<(SexticDensity, [f64; 2])> {
        let d = SexticDensity::build(*params, m[0], m[1])?;
        let mo = d.moments();
        Ok((d, [mo.m2 - m[0], mo.m4 - m[1]]))
    };
    let norm = |r: [f64; 2]| r[0].abs().max(r[1].abs());

    let mut m = [initial.0, initial.1];
    let (mut dens, mut r) = map(m)?;
    let mut best = (norm(r), m);
    let mut iterations = 0;
    let mut stall = 0;
    let damped_budget = opts.max_iter / 2;

    let finish = |mut d: SexticDensity, r: [f64; 2], iterations: usize| {
        d.state.residual = norm(r);
        d.state.iterations = iterations;
        d
    };

    while iterations < damped_budget {
        if norm(r) < opts.tol {
            return Ok(finish(dens, r, iterations));
        }
        m = [m[0] + opts.damping * r[0], m[1] + opts.damping * r[1]];
        (dens, r) = map(m)?;
        iterations += 1;
        if norm(r) < best.0 * 0.999 {
            best = (norm(r), m);
            stall = 0;
        } else {
            stall += 1;
            if stall >= 25 {
                break;
            }
        }
    }
    if norm(r) < opts.tol {
        return Ok(finish(dens, r, iterations));
    }

    // Broyden from the best state seen.
    m = best.1;
    (dens, r) = map(m)?;
    let mut jinv = [[-1.0, 0.0], [0.0, -1.0]];
    while iterations < opts.max_iter {
        if norm(r) < opts.tol {
            return Ok(finish(dens, r, iterations));
        }
        let step = [
            -(jinv[0][0] * r[0] + jinv[0][1] * r[1]),
            -(jinv[1][0] * r[0] + jinv[1][1] * r[1]),
        ];
        let trial = [m[0] + step[0], m[1] + step[1]];
        let Ok((d_new, r_new)) = map(trial) else {
            break;
        };
        iterations += 1;
        let dr = [r_new[0] - r[0], r_new[1] - r[1]];
        let jdr = [jinv[0][0] * dr[0] + jinv[0][1] * dr[1], jinv[1][0] * dr[0] + jinv[1][1] * dr[1]];
        let denom = step[0] * jdr[0] + step[1] * jdr[1];
        if denom.abs() > 1e-300 {
            let u = [step[0] - jdr[0], step[1] - jdr[1]];
            let v = [step[0] * jinv[0][0] + step[1] * jinv[1][0], step[0] * jinv[0][1] + step[1] * jinv[1][1]];
            for i in 0..2 {
                for j in 0..2 {
                    jinv[i][j] += u[i] * v[j] / denom;
                }
            }
        }
        m = trial;
        dens = d_new;
        r = r_new;
        if norm(r) < best.0 {
            best = (norm(r), m);
        }
    }
    if norm(r) < opts.tol {
        return Ok(finish(dens, r, iterations));
    }
    Err(Error::Convergence {
        iterations,
        residual: best.0,
        m2: best.1[0],
        m4: best.1[1],
    })
}

/// Equilibrium density and its moments.
///
/// Structural candidates are screened for equilibrium and normalization, the
/// accepted one is confirmed by the moment map. Without an acceptable
/// candidate the damped iteration runs from a single-band guess.
pub fn sextic_density_solve_with(params: &SexticParams, opts: &SexticSolveOptions) -> Result<(SexticMomentState, SexticDensity)> {
    let n = params.n_particles as f64;
    let mut first_guess = None;
    for cand in structural_candidates(params) {
        first_guess.get_or_insert((cand.m2, cand.m4));
        let Ok(d) = SexticDensity::build(*params, cand.m2, cand.m4) else {
            continue;
        };
        if !topology_matches(&d, cand.topology) {
            continue;
        }
        let (worst, spread) = d.equilibrium_defect();
        let allowance = 1e-4 * n.max(1.0);
        if worst < -allowance || spread > allowance {
            continue;
        }
        let (residual, mo) = d.residual();
        if (mo.norm - n).abs() > 1e-6 * n {
            continue;
        }
        if residual < opts.tol {
            let mut d = d;
            d.topology = Some(cand.topology);
            d.state.residual = residual;
            return Ok((d.state, d));
        }
        let mut polished = sextic_fixed_point(params, (cand.m2, cand.m4), opts)?;
        polished.topology = Some(cand.topology);
        return Ok((polished.state, polished));
    }
    let guess = first_guess.unwrap_or_else(|| {
        let x0 = params.filling().powf(1.0 / 6.0);
        (0.3 * n * x0 * x0, 0.15 * n * x0.powi(4))
    });
    let d = sextic_fixed_point(params, guess, opts)?;
    Ok((d.state, d))
}

/// [`sextic_density_solve_with`] with default damping.
pub fn sextic_density_solve(gamma: f64, a3: f64, a1: f64, n: usize, tol: f64, max_iter: usize) -> Result<(SexticMomentState, SexticDensity)> {
    let params = SexticParams::new(gamma, a3, a1, n)?;
    sextic_density_solve_with(
        &params,
        &SexticSolveOptions {
            tol,
            max_iter,
            ..SexticSolveOptions::default()
        },
    )
}

/// Depth `γ` at which the single band of a sextic trap with cubic coefficient
/// `a3 < 0` splits exactly at the classical threshold `a₁ = a₃²/4`.
pub fn sextic_matching_depth(a3: f64, n: usize) -> Result<f64> {
    if !(a3 < 0.0) || n == 0 {
        return Err(Error::InvalidParameter(format!("need a3 < 0 and N >= 1, got a3 = {a3}")));
    }
    Ok(-50.0 * n as f64 / (a3 * a3 * a3))
}
