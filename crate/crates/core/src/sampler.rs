//! Metropolis sampling of `ψ₀²` in rescaled variables,
//! `p(y) ∝ Π_{i<j}|y_i − y_j|^β exp(−β Σ_i ∫_0^{y_i} P₁)`, with streaming
//! estimators for the density, moments and pair correlations.
//!
//! Sampling uses unordered coordinates. The target is symmetric under
//! permutations and every observable here is too, so restricting to one
//! ordering sector would only relabel particles.
//!
//! One step is a sweep of N single-particle updates. Each update draws from a
//! fixed mixture of symmetric proposals: a Gaussian displacement, the
//! reflection `y → −y`, and (for particles inside the box `[−B, B]`) a uniform
//! redraw in that box. The last two let particles cross the empty gaps of
//! multi-band densities, which local moves essentially never do.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{rescale_to_monic, ConfinementSpec, Configuration, SystemSpec};
use crate::profile::{DensityProfile, DensitySource};

/// Total number of batches targeted by the batch-means error model.
pub const TARGET_BATCHES: usize = 50;
/// Acceptance rate the burn-in tuner steers the Gaussian step toward.
pub const TARGET_ACCEPTANCE: f64 = 0.4;

/// The sampled distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JpdTarget {
    /// Monic trap `P₁`.
    pub poly: ConfinementSpec,
    pub beta: f64,
    pub n_particles: usize,
}

impl JpdTarget {
    pub fn new(poly: ConfinementSpec, beta: f64, n_particles: usize) -> Result<Self> {
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::InvalidParameter(format!("beta must be positive, got {beta}")));
        }
        if n_particles == 0 {
            return Err(Error::InvalidParameter("need at least one particle".into()));
        }
        Ok(Self { poly, beta, n_particles })
    }

    /// Rescaled trap with `β = 2λ`.
    pub fn from_system(spec: &SystemSpec) -> Self {
        Self {
            poly: rescale_to_monic(spec).poly,
            beta: spec.coupling().beta(),
            n_particles: spec.n_particles(),
        }
    }

    /// `log p(y)` up to the normalization constant; `-inf` at coincidences.
    pub fn log_density(&self, y: &[f64]) -> f64 {
        let mut pair = 0.0;
        for i in 0..y.len() {
            for j in i + 1..y.len() {
                let d = (y[i] - y[j]).abs();
                if d == 0.0 {
                    return f64::NEG_INFINITY;
                }
                pair += d.ln();
            }
        }
        let trap: f64 = y.iter().map(|&v| self.poly.antiderivative(v)).sum();
        self.beta * (pair - trap)
    }

    fn box_half_width(&self) -> f64 {
        self.poly.classical_radius(self.n_particles)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainConfig {
    /// Sweeps per chain, burn-in included.
    pub steps: usize,
    pub burn_in: usize,
    /// Initial Gaussian step; `None` picks `0.5·(box width)/√N`.
    pub proposal_sigma: Option<f64>,
    pub seed: u64,
    /// Keep every `thinning`-th sweep after burn-in.
    pub thinning: usize,
    pub chains: usize,
    /// Probability of a reflection proposal.
    pub reflect_prob: f64,
    /// Probability of a uniform in-box proposal.
    pub global_prob: f64,
}

impl Default for ChainConfig {
    fn default() -> Self {
        Self {
            steps: 20_000,
            burn_in: 2_000,
            proposal_sigma: None,
            seed: 0,
            thinning: 1,
            chains: 8,
            reflect_prob: 0.1,
            global_prob: 0.1,
        }
    }
}

impl ChainConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidParameter(m.to_string()));
        if self.steps <= self.burn_in {
            return bad("steps must exceed burn_in");
        }
        if self.thinning == 0 {
            return bad("thinning must be at least 1");
        }
        if self.chains == 0 {
            return bad("need at least one chain");
        }
        if let Some(s) = self.proposal_sigma {
            if !(s.is_finite() && s > 0.0) {
                return bad("proposal_sigma must be positive");
            }
        }
        let probs_ok = |p: f64| (0.0..=1.0).contains(&p);
        if !probs_ok(self.reflect_prob) || !probs_ok(self.global_prob) || self.reflect_prob + self.global_prob > 1.0 {
            return bad("proposal mixture probabilities must be in [0, 1] and sum to at most 1");
        }
        Ok(())
    }

    /// Kept sweeps per chain.
    pub fn kept_per_chain(&self) -> usize {
        (self.steps - self.burn_in) / self.thinning
    }

    /// Batches per chain so that all chains together give about
    /// [`TARGET_BATCHES`], never more than the kept sweeps.
    pub fn batches_per_chain(&self) -> usize {
        TARGET_BATCHES.div_ceil(self.chains).min(self.kept_per_chain()).max(1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleStats {
    /// Over all measured proposals of every kind.
    pub acceptance_rate: f64,
    /// Acceptance of the Gaussian moves alone (the tuned kind).
    pub local_acceptance_rate: f64,
    /// Integrated autocorrelation time of `Σ y_i²/N`, in kept sweeps, from batch means.
    pub autocorrelation_time: f64,
    /// Kept configurations over all chains.
    pub samples: usize,
    /// Tuned Gaussian steps, per chain.
    pub proposal_sigmas: Vec<f64>,
    pub warnings: Vec<String>,
}

/// Receives kept configurations from one chain.
pub trait Observer: Send {
    fn observe(&mut self, y: &[f64]);
    /// Called after the last configuration of each batch.
    fn end_batch(&mut self) {}
}

struct ChainSummary {
    proposals: u64,
    accepted: u64,
    local_proposals: u64,
    local_accepted: u64,
    sigma: f64,
    /// Batch means and per-sample moments of `Σ y²/N`.
    batch_means: Vec<f64>,
    batch_size: usize,
    sum: f64,
    sum_sq: f64,
    count: usize,
}

fn initial_configuration(target: &JpdTarget) -> Vec<f64> {
    let n = target.n_particles;
    let half = 0.5 * target.box_half_width();
    (0..n)
        .map(|i| if n == 1 { 0.0 } else { -half + 2.0 * half * i as f64 / (n - 1) as f64 })
        .collect()
}

/// Change of the log target when particle `i` moves from `y[i]` to `new`.
fn log_ratio(target: &JpdTarget, y: &[f64], i: usize, new: f64) -> f64 {
    let old = y[i];
    // Product of distance ratios in short chunks keeps the log count low
    // without risking overflow.
    let mut acc = 0.0;
    let mut prod = 1.0;
    let mut in_chunk = 0;
    for (j, &yj) in y.iter().enumerate() {
        if j == i {
            continue;
        }
        let dn = (new - yj).abs();
        if dn == 0.0 {
            return f64::NEG_INFINITY;
        }
        prod *= dn / (old - yj).abs();
        in_chunk += 1;
        if in_chunk == 8 {
            acc += prod.ln();
            prod = 1.0;
            in_chunk = 0;
        }
    }
    acc += prod.ln();
    target.beta * (acc - (target.poly.antiderivative(new) - target.poly.antiderivative(old)))
}

fn run_chain<O: Observer>(target: &JpdTarget, cfg: &ChainConfig, chain: usize, observer: &mut O) -> ChainSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(chain as u64);
    let n = target.n_particles;
    let b = target.box_half_width();
    let mut sigma = cfg.proposal_sigma.unwrap_or(0.5 * 2.0 * b / (n as f64).sqrt());
    let mut y = initial_configuration(target);

    let kept = cfg.kept_per_chain();
    let batches = cfg.batches_per_chain();
    let batch_size = kept / batches;
    let mut s = ChainSummary {
        proposals: 0,
        accepted: 0,
        local_proposals: 0,
        local_accepted: 0,
        sigma,
        batch_means: Vec::with_capacity(batches),
        batch_size,
        sum: 0.0,
        sum_sq: 0.0,
        count: 0,
    };
    let mut batch_sum = 0.0;
    let mut in_batch = 0;
    let mut kept_so_far = 0;

    let mut tune_prop = 0u64;
    let mut tune_acc = 0u64;

    for step in 0..cfg.steps {
        let measuring = step >= cfg.burn_in;
        for i in 0..n {
            let u: f64 = rng.random();
            let (new, local) = if u < cfg.reflect_prob {
                (-y[i], false)
            } else if u < cfg.reflect_prob + cfg.global_prob {
                if y[i].abs() > b {
                    continue;
                }
                (rng.random_range(-b..b), false)
            } else {
                let z: f64 = rng.sample(StandardNormal);
                (y[i] + sigma * z, true)
            };
            let lr = log_ratio(target, &y, i, new);
            let accept = lr >= 0.0 || rng.random::<f64>().ln() < lr;
            if accept {
                y[i] = new;
            }
            if measuring {
                s.proposals += 1;
                s.accepted += accept as u64;
                if local {
                    s.local_proposals += 1;
                    s.local_accepted += accept as u64;
                }
            } else if local {
                tune_prop += 1;
                tune_acc += accept as u64;
            }
        }
        if !measuring {
            // Multiplicative Robbins-Monro style update every 50 sweeps; frozen after burn-in.
            if (step + 1) % 50 == 0 && tune_prop > 0 {
                let rate = tune_acc as f64 / tune_prop as f64;
                sigma *= (2.0 * (rate - TARGET_ACCEPTANCE)).exp();
                sigma = sigma.clamp(1e-6 * b, 4.0 * b);
                tune_prop = 0;
                tune_acc = 0;
            }
            continue;
        }
        if !(step - cfg.burn_in).is_multiple_of(cfg.thinning) || kept_so_far >= kept {
            continue;
        }
        kept_so_far += 1;
        observer.observe(&y);
        let q = y.iter().map(|v| v * v).sum::<f64>() / n as f64;
        s.sum += q;
        s.sum_sq += q * q;
        s.count += 1;
        batch_sum += q;
        in_batch += 1;
        // Batch k ends at ⌊(k+1)·kept/batches⌋ so the remainder is spread out.
        if kept_so_far == (s.batch_means.len() + 1) * kept / batches {
            s.batch_means.push(batch_sum / in_batch as f64);
            observer.end_batch();
            batch_sum = 0.0;
            in_batch = 0;
        }
    }
    s.sigma = sigma;
    s
}

/// Runs `cfg.chains` independent chains in parallel, each feeding its own
/// observer. Observers come back in chain order.
pub fn run_chains<O, F>(target: &JpdTarget, cfg: &ChainConfig, make_observer: F) -> Result<(Vec<O>, SampleStats)>
where
    O: Observer,
    F: Fn(usize) -> O + Sync,
{
    cfg.validate()?;
    if cfg.kept_per_chain() == 0 {
        return Err(Error::InvalidParameter("no sweeps are kept after burn-in and thinning".into()));
    }
    let results: Vec<(O, ChainSummary)> = (0..cfg.chains)
        .into_par_iter()
        .map(|c| {
            let mut obs = make_observer(c);
            let s = run_chain(target, cfg, c, &mut obs);
            (obs, s)
        })
        .collect();

    let mut observers = Vec::with_capacity(results.len());
    let mut summaries = Vec::with_capacity(results.len());
    for (o, s) in results {
        observers.push(o);
        summaries.push(s);
    }
    Ok((observers, summarize(&summaries)))
}

fn summarize(chains: &[ChainSummary]) -> SampleStats {
    let total = |f: fn(&ChainSummary) -> u64| chains.iter().map(f).sum::<u64>() as f64;
    let acceptance_rate = total(|c| c.accepted) / total(|c| c.proposals).max(1.0);
    let local_acceptance_rate = total(|c| c.local_accepted) / total(|c| c.local_proposals).max(1.0);
    let samples: usize = chains.iter().map(|c| c.count).sum();

    // τ ≈ (batch size) · Var(batch means) / Var(samples).
    let count = samples as f64;
    let mean = chains.iter().map(|c| c.sum).sum::<f64>() / count;
    let var = chains.iter().map(|c| c.sum_sq).sum::<f64>() / count - mean * mean;
    let means: Vec<f64> = chains.iter().flat_map(|c| c.batch_means.iter().copied()).collect();
    let bsize = chains.first().map(|c| c.batch_size).unwrap_or(1) as f64;
    let autocorrelation_time = if means.len() > 1 && var > 0.0 {
        let bm = means.iter().sum::<f64>() / means.len() as f64;
        let bvar = means.iter().map(|m| (m - bm).powi(2)).sum::<f64>() / (means.len() - 1) as f64;
        (bsize * bvar / var).max(0.5)
    } else {
        f64::NAN
    };

    let mut warnings = Vec::new();
    if acceptance_rate < 0.01 {
        warnings.push(format!("pathological acceptance rate {acceptance_rate:.4}; the chain is barely moving"));
    } else if !(0.1..=0.9).contains(&acceptance_rate) {
        warnings.push(format!("acceptance rate {acceptance_rate:.3} outside [0.1, 0.9]"));
    }
    if autocorrelation_time.is_finite() && autocorrelation_time > 0.2 * bsize {
        warnings.push(format!(
            "autocorrelation time {autocorrelation_time:.1} is not small against the batch size {bsize}; errors may be underestimated"
        ));
    }
    SampleStats {
        acceptance_rate,
        local_acceptance_rate,
        autocorrelation_time,
        samples,
        proposal_sigmas: chains.iter().map(|c| c.sigma).collect(),
        warnings,
    }
}

struct Collector(Vec<Configuration>);

impl Observer for Collector {
    fn observe(&mut self, y: &[f64]) {
        self.0.push(Configuration(y.to_vec()));
    }
}

/// All kept configurations, chains concatenated in chain order. Intended for
/// modest runs; large runs should stream through [`run_chains`].
pub fn sample_jpd(target: &JpdTarget, cfg: &ChainConfig) -> Result<(Vec<Configuration>, SampleStats)> {
    let (obs, stats) = run_chains(target, cfg, |_| Collector(Vec::new()))?;
    Ok((obs.into_iter().flat_map(|c| c.0).collect(), stats))
}

fn mean_and_error(batches: &[f64]) -> (f64, f64) {
    let b = batches.len() as f64;
    let mean = batches.iter().sum::<f64>() / b;
    if batches.len() < 2 {
        return (mean, f64::NAN);
    }
    let var = batches.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (b - 1.0);
    (mean, (var / b).sqrt())
}

/// Streaming histogram of particle positions with per-batch counts.
#[derive(Debug, Clone)]
pub struct DensityHistogram {
    edges: Vec<f64>,
    current: Vec<u64>,
    batches: Vec<Vec<u64>>,
    samples_in_batch: u64,
    batch_samples: Vec<u64>,
}

impl DensityHistogram {
    /// `edges` must be uniform and increasing.
    pub fn new(edges: Vec<f64>) -> Self {
        assert!(edges.len() >= 2, "need at least one bin");
        let bins = edges.len() - 1;
        Self {
            edges,
            current: vec![0; bins],
            batches: Vec::new(),
            samples_in_batch: 0,
            batch_samples: Vec::new(),
        }
    }

    fn flush(&mut self) {
        if self.samples_in_batch > 0 {
            let bins = self.current.len();
            self.batches.push(std::mem::replace(&mut self.current, vec![0; bins]));
            self.batch_samples.push(self.samples_in_batch);
            self.samples_in_batch = 0;
        }
    }

    /// Combines per-chain histograms (in the given order) into one profile
    /// integrating to exactly `n` over the binned range, with batch-means errors.
    pub fn merge(mut parts: Vec<DensityHistogram>, n: usize) -> Result<DensityProfile> {
        for p in parts.iter_mut() {
            p.flush();
        }
        let first = parts.first().ok_or_else(|| Error::InvalidParameter("no histograms to merge".into()))?;
        let edges = first.edges.clone();
        let bins = edges.len() - 1;
        let width = edges[1] - edges[0];
        let batches: Vec<&Vec<u64>> = parts.iter().flat_map(|p| p.batches.iter()).collect();
        if batches.is_empty() {
            return Err(Error::InvalidParameter("histogram holds no samples".into()));
        }
        let mut totals = vec![0u64; bins];
        for b in &batches {
            for (t, c) in totals.iter_mut().zip(b.iter()) {
                *t += c;
            }
        }
        let in_range: u64 = totals.iter().sum();
        if in_range == 0 {
            return Err(Error::InvalidParameter("no samples fell inside the histogram range".into()));
        }
        let nf = n as f64;
        let scale = nf / (in_range as f64 * width);
        let values: Vec<f64> = totals.iter().map(|&c| c as f64 * scale).collect();

        let batch_density: Vec<Vec<f64>> = batches
            .iter()
            .map(|b| {
                let total: u64 = b.iter().sum();
                let s = if total > 0 { nf / (total as f64 * width) } else { 0.0 };
                b.iter().map(|&c| c as f64 * s).collect()
            })
            .collect();
        let errors: Vec<f64> = (0..bins)
            .map(|k| {
                let col: Vec<f64> = batch_density.iter().map(|b| b[k]).collect();
                let (_, se) = mean_and_error(&col);
                // Counting floor: never below the Poisson error, and one count for empty bins.
                let poisson = (totals[k].max(1) as f64).sqrt() * scale;
                if se.is_finite() {
                    se.max(poisson)
                } else {
                    poisson
                }
            })
            .collect();
        let centres: Vec<f64> = edges.windows(2).map(|e| 0.5 * (e[0] + e[1])).collect();
        Ok(DensityProfile::new(centres, values, DensitySource::MonteCarlo).with_errors(errors))
    }
}

impl Observer for DensityHistogram {
    fn observe(&mut self, y: &[f64]) {
        let lo = self.edges[0];
        let hi = *self.edges.last().unwrap();
        let bins = self.current.len();
        let inv = bins as f64 / (hi - lo);
        for &v in y {
            if v >= lo && v < hi {
                let k = (((v - lo) * inv) as usize).min(bins - 1);
                self.current[k] += 1;
            }
        }
        self.samples_in_batch += 1;
    }

    fn end_batch(&mut self) {
        self.flush();
    }
}

/// `n + 1` uniform bin edges on `[lo, hi]`.
pub fn uniform_edges(lo: f64, hi: f64, bins: usize) -> Vec<f64> {
    (0..=bins).map(|i| lo + (hi - lo) * i as f64 / bins as f64).collect()
}

fn feed<O: Observer>(obs: &mut O, samples: &[Configuration]) {
    let per = samples.len().div_ceil(TARGET_BATCHES).max(1);
    for (i, s) in samples.iter().enumerate() {
        obs.observe(s.positions());
        if (i + 1) % per == 0 {
            obs.end_batch();
        }
    }
    obs.end_batch();
}

/// Histogram density of stored samples; errors from [`TARGET_BATCHES`]
/// consecutive batches.
pub fn histogram_density(samples: &[Configuration], edges: &[f64]) -> Result<DensityProfile> {
    let first = samples.first().ok_or_else(|| Error::InvalidParameter("no samples".into()))?;
    let mut h = DensityHistogram::new(edges.to_vec());
    feed(&mut h, samples);
    DensityHistogram::merge(vec![h], first.len())
}

/// Streaming `⟨Σ y²⟩` and `⟨Σ y⁴⟩` per configuration with batch means.
#[derive(Debug, Clone, Default)]
pub struct MomentAccumulator {
    sums: [f64; 2],
    count: u64,
    batches: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentEstimate {
    pub m2: f64,
    pub m2_error: f64,
    pub m4: f64,
    pub m4_error: f64,
}

impl MomentAccumulator {
    pub fn merge(mut parts: Vec<MomentAccumulator>) -> MomentEstimate {
        for p in parts.iter_mut() {
            p.end_batch();
        }
        let batches: Vec<[f64; 2]> = parts.iter().flat_map(|p| p.batches.iter().copied()).collect();
        let (m2, e2) = mean_and_error(&batches.iter().map(|b| b[0]).collect::<Vec<_>>());
        let (m4, e4) = mean_and_error(&batches.iter().map(|b| b[1]).collect::<Vec<_>>());
        MomentEstimate {
            m2,
            m2_error: e2,
            m4,
            m4_error: e4,
        }
    }
}

impl Observer for MomentAccumulator {
    fn observe(&mut self, y: &[f64]) {
        for &v in y {
            let u = v * v;
            self.sums[0] += u;
            self.sums[1] += u * u;
        }
        self.count += 1;
    }

    fn end_batch(&mut self) {
        if self.count > 0 {
            let c = self.count as f64;
            self.batches.push([self.sums[0] / c, self.sums[1] / c]);
            self.sums = [0.0; 2];
            self.count = 0;
        }
    }
}

/// Ordered-pair counter: pairs `(i, j)` with `y_i` in `window` and
/// `y_j − y_i` binned by `dy_edges` (all positive).
#[derive(Debug, Clone)]
pub struct PairCounter {
    window: (f64, f64),
    dy_edges: Vec<f64>,
    current: Vec<u64>,
    samples_in_batch: u64,
    batches: Vec<(Vec<u64>, u64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PcfPoint {
    pub dy: f64,
    pub r: f64,
    pub value: f64,
    pub error: f64,
    pub pairs: u64,
    pub low_statistics: bool,
}

impl PairCounter {
    pub fn new(window: (f64, f64), dy_edges: Vec<f64>) -> Self {
        assert!(window.1 > window.0, "empty window");
        assert!(dy_edges.len() >= 2 && dy_edges[0] >= 0.0, "need non-negative separation bins");
        let bins = dy_edges.len() - 1;
        Self {
            window,
            dy_edges,
            current: vec![0; bins],
            samples_in_batch: 0,
            batches: Vec::new(),
        }
    }

    fn flush(&mut self) {
        if self.samples_in_batch > 0 {
            let bins = self.current.len();
            self.batches.push((std::mem::replace(&mut self.current, vec![0; bins]), self.samples_in_batch));
            self.samples_in_batch = 0;
        }
    }

    /// Unfolded PCF `⟨R₂(y, y+Δy)⟩ / ⟨R₁(y)R₁(y+Δy)⟩` over the window, against
    /// `r = Δy·⟨R₁⟩_window`; `density` supplies `R₁` by linear interpolation.
    pub fn merge(mut parts: Vec<PairCounter>, density: &DensityProfile, min_pairs: u64) -> Result<Vec<PcfPoint>> {
        for p in parts.iter_mut() {
            p.flush();
        }
        let first = parts.first().ok_or_else(|| Error::InvalidParameter("no pair counters to merge".into()))?;
        let (lo, hi) = first.window;
        let edges = first.dy_edges.clone();
        let batches: Vec<&(Vec<u64>, u64)> = parts.iter().flat_map(|p| p.batches.iter()).collect();
        let samples: u64 = batches.iter().map(|b| b.1).sum();
        if samples == 0 {
            return Err(Error::InvalidParameter("pair counter holds no samples".into()));
        }
        let r1 = |y: f64| interpolate(&density.grid, &density.values, y);
        const AVG: usize = 200;
        let ys: Vec<f64> = (0..AVG).map(|k| lo + (hi - lo) * (k as f64 + 0.5) / AVG as f64).collect();
        let mean_r1 = ys.iter().map(|&y| r1(y)).sum::<f64>() / AVG as f64;
        let width = hi - lo;

        let mut out = Vec::with_capacity(edges.len() - 1);
        for k in 0..edges.len() - 1 {
            let (d0, d1) = (edges[k], edges[k + 1]);
            let dc = 0.5 * (d0 + d1);
            let norm = ys.iter().map(|&y| r1(y) * r1(y + dc)).sum::<f64>() / AVG as f64;
            let to_value = |count: u64, n: u64| count as f64 / (n as f64 * width * (d1 - d0) * norm);
            let pairs: u64 = batches.iter().map(|b| b.0[k]).sum();
            let value = to_value(pairs, samples);
            let per_batch: Vec<f64> = batches.iter().map(|b| to_value(b.0[k], b.1)).collect();
            let (_, se) = mean_and_error(&per_batch);
            let poisson = (pairs.max(1) as f64).sqrt() * to_value(1, samples);
            out.push(PcfPoint {
                dy: dc,
                r: dc * mean_r1,
                value,
                error: if se.is_finite() { se.max(poisson) } else { poisson },
                pairs,
                low_statistics: pairs < min_pairs,
            });
        }
        Ok(out)
    }
}

impl Observer for PairCounter {
    fn observe(&mut self, y: &[f64]) {
        let (lo, hi) = self.window;
        let dmin = self.dy_edges[0];
        let dmax = *self.dy_edges.last().unwrap();
        let bins = self.current.len();
        for &a in y {
            if a < lo || a >= hi {
                continue;
            }
            for &b in y {
                let d = b - a;
                if d <= dmin || d >= dmax {
                    continue;
                }
                let k = self.dy_edges.partition_point(|&e| e <= d).saturating_sub(1).min(bins - 1);
                self.current[k] += 1;
            }
        }
        self.samples_in_batch += 1;
    }

    fn end_batch(&mut self) {
        self.flush();
    }
}

fn interpolate(x: &[f64], v: &[f64], at: f64) -> f64 {
    if x.is_empty() || at < x[0] || at > x[x.len() - 1] {
        return 0.0;
    }
    let k = x.partition_point(|&g| g <= at).clamp(1, x.len() - 1);
    let t = (at - x[k - 1]) / (x[k] - x[k - 1]);
    v[k - 1] + t * (v[k] - v[k - 1])
}

/// Unfolded PCF from stored samples.
pub fn pcf_estimate(samples: &[Configuration], window: (f64, f64), dy_edges: &[f64], density: &DensityProfile, min_pairs: u64) -> Result<Vec<PcfPoint>> {
    if samples.is_empty() {
        return Err(Error::InvalidParameter("no samples".into()));
    }
    let mut c = PairCounter::new(window, dy_edges.to_vec());
    feed(&mut c, samples);
    PairCounter::merge(vec![c], density, min_pairs)
}
