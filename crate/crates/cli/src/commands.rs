use csm_core::density::{analytic_density, AnalyticDensity, SexticSolveOptions};
use csm_core::model::{
    expanded_constant_check, ground_state_energy, local_energy_terms, random_configuration, rescale_to_monic, ConfinementSpec, CouplingSpec,
    HamiltonianForm, SystemSpec,
};
use csm_core::orthopoly::{build_recurrence, kernel_density, kernel_density_grid, scaled_pcf_sweep, RecurrenceTable, SweepOptions, WeightSpec};
use csm_core::profile::uniform_grid;
use csm_core::quadrature::{composite, cosine_mapped, GaussLegendre, QuadratureOptions};
use csm_core::sampler::{run_chains, uniform_edges, ChainConfig, DensityHistogram, JpdTarget, Observer, PairCounter, SampleStats};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::{Case, DensityMethod, DensityParams, PcfMethod, PcfParams, ScanCase, ScanParams, VerifyParams};
use crate::output::{csv, Cell, Outputs};
use crate::CliError;

/// What a command hands back to the manifest writer.
pub struct Report {
    pub summary: Value,
    pub warnings: Vec<String>,
    pub seed: Option<u64>,
    /// Residual-style failure: outputs are still written, exit code 1.
    pub failed: bool,
}

fn system(case: Case, n: usize, lambda: f64, gamma: f64, a1: f64, a3: Option<f64>) -> Result<SystemSpec, CliError> {
    let conf = match case {
        Case::Harmonic => {
            if a1 != 0.0 || a3.is_some() {
                return Err(CliError::Usage("the harmonic case takes no a1 or a3".into()));
            }
            ConfinementSpec::csm(gamma)?
        }
        Case::Quartic => {
            if a3.is_some() {
                return Err(CliError::Usage("a3 is only meaningful for --case sextic".into()));
            }
            ConfinementSpec::quartic(gamma, a1)?
        }
        Case::Sextic => {
            let a3 = a3.ok_or_else(|| CliError::Usage("--case sextic needs --a3".into()))?;
            ConfinementSpec::sextic(gamma, a3, a1)?
        }
    };
    Ok(SystemSpec::new(n, conf, CouplingSpec::from_lambda(lambda)?)?)
}

const KERNEL_ONLY_BETA2: &str = "the kernel method is exact only at β = 2 (λ = 1); use --method mc for other couplings";

fn require_beta2(lambda: f64, beta: Option<f64>) -> Result<(), CliError> {
    if lambda != 1.0 || beta.is_some_and(|b| b != 2.0) {
        return Err(CliError::Usage(KERNEL_ONLY_BETA2.into()));
    }
    Ok(())
}

fn kernel_table(spec: &SystemSpec) -> Result<(WeightSpec, RecurrenceTable), CliError> {
    let w = WeightSpec::from_system(spec);
    let t = build_recurrence(&w, spec.n_particles(), &QuadratureOptions::default())?;
    Ok((w, t))
}

fn kernel_integral(t: &RecurrenceTable, w: &WeightSpec) -> f64 {
    let rule = GaussLegendre::new(30);
    let (x, wt) = composite(-t.support, t.support, 200, &rule);
    x.iter().zip(&wt).map(|(&y, g)| g * kernel_density(t, w, y)).sum()
}

fn analytic_integral(d: &AnalyticDensity) -> f64 {
    let rule = GaussLegendre::new(30);
    d.support()
        .iter()
        .map(|&(a, b)| {
            let (x, wt) = cosine_mapped(a, b, 16, &rule, &[0.0]);
            x.iter().zip(&wt).map(|(&y, g)| g * d.eval(y)).sum::<f64>()
        })
        .sum()
}

/// Grid bounds: explicit, or the classical box of the rescaled trap.
fn range(spec: &SystemSpec, lo: Option<f64>, hi: Option<f64>) -> Result<(f64, f64), CliError> {
    let r = rescale_to_monic(spec).poly.classical_radius(spec.n_particles());
    let (lo, hi) = (lo.unwrap_or(-r), hi.unwrap_or(r));
    if !(lo < hi && lo.is_finite() && hi.is_finite()) {
        return Err(CliError::Usage(format!("empty range [{lo}, {hi}]")));
    }
    Ok((lo, hi))
}

fn chain_config(steps: usize, burn_in: usize, chains: usize, thinning: usize, seed: u64, sigma: Option<f64>) -> Result<ChainConfig, CliError> {
    let cfg = ChainConfig {
        steps,
        burn_in,
        proposal_sigma: sigma,
        seed,
        thinning,
        chains,
        ..ChainConfig::default()
    };
    cfg.validate()?;
    Ok(cfg)
}

fn target(spec: &SystemSpec, beta: Option<f64>) -> Result<JpdTarget, CliError> {
    let mut t = JpdTarget::from_system(spec);
    if let Some(b) = beta {
        t = JpdTarget::new(t.poly, b, t.n_particles)?;
    }
    Ok(t)
}

fn stats_json(s: &SampleStats) -> Value {
    json!({
        "acceptance_rate": s.acceptance_rate,
        "local_acceptance_rate": s.local_acceptance_rate,
        "autocorrelation_time": s.autocorrelation_time,
        "samples": s.samples,
        "proposal_sigmas": s.proposal_sigmas,
    })
}

pub fn verify(p: &VerifyParams, out: &mut Outputs) -> Result<Report, CliError> {
    let spec = system(p.case, p.n, p.lambda, p.gamma, p.a1, p.a3)?;
    if p.samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut canonical: f64 = 0.0;
    let mut done = 0;
    while done < p.samples {
        let c = random_configuration(&spec, &mut rng);
        let t = local_energy_terms(&spec, &c, HamiltonianForm::Canonical)?;
        canonical = canonical.max(t.total().abs() / t.scale());
        done += 1;
    }
    let e0 = ground_state_energy(&spec);
    let chk = expanded_constant_check(&spec, p.samples, p.seed)?;
    // Relative to |E₀|, or absolute when E₀ is of order one or smaller.
    let denom = e0.abs().max(1.0);
    let spread = chk.spread / denom;
    let mean_err = (chk.mean - e0).abs() / denom;
    let pass = canonical < p.tol && spread < p.tol && mean_err < p.tol;
    let report = json!({
        "canonical_max_relative_residual": canonical,
        "expanded_spread_relative": spread,
        "expanded_mean": chk.mean,
        "ground_state_energy": e0,
        "expanded_mean_error_relative": mean_err,
        "samples": p.samples,
        "tol": p.tol,
        "pass": pass,
    });
    out.add("verify.json", serde_json::to_string_pretty(&report).unwrap() + "\n", "residual report");
    println!("{}", serde_json::to_string(&report).unwrap());
    Ok(Report {
        summary: report,
        warnings: Vec::new(),
        seed: Some(p.seed),
        failed: !pass,
    })
}

pub fn density(p: &DensityParams, out: &mut Outputs) -> Result<Report, CliError> {
    let spec = system(p.case, p.n, p.lambda, p.gamma, p.a1, p.a3)?;
    let (lo, hi) = range(&spec, p.lo, p.hi)?;
    let n = p.n as f64;
    let header = ["y (rescaled length)", "R1 (particles per unit length)"];
    match p.method {
        DensityMethod::Kernel => {
            require_beta2(p.lambda, p.beta)?;
            let (w, t) = kernel_table(&spec)?;
            let grid = uniform_grid(lo, hi, p.points.max(2));
            let values = kernel_density_grid(&t, &w, &grid);
            let rows: Vec<Vec<Cell>> = grid.iter().zip(&values).map(|(&y, &v)| vec![y.into(), v.into()]).collect();
            out.add("density.csv", csv(&header, &rows), "kernel density on a uniform grid");
            let integral = kernel_integral(&t, &w);
            println!("kernel density: {} points, integral {integral:.10}", grid.len());
            Ok(Report {
                summary: json!({
                    "integral": integral,
                    "integral_error": integral - n,
                    "orthogonality_residual": t.orthogonality_residual,
                    "quadrature_support": t.support,
                }),
                warnings: Vec::new(),
                seed: None,
                failed: false,
            })
        }
        DensityMethod::Analytic => {
            let d = analytic_density(&spec, &SexticSolveOptions::default())?;
            let grid = uniform_grid(lo, hi, p.points.max(2));
            let rows: Vec<Vec<Cell>> = grid.iter().map(|&y| vec![y.into(), d.eval(y).into()]).collect();
            out.add("density.csv", csv(&header, &rows), "large-N density on a uniform grid");
            let bands = d.support();
            let band_rows: Vec<Vec<Cell>> = bands
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| vec![(i + 1).into(), a.into(), b.into()])
                .collect();
            out.add(
                "bands.csv",
                csv(&["band", "lower (rescaled length)", "upper (rescaled length)"], &band_rows),
                "support intervals",
            );
            let integral = analytic_integral(&d);
            let mut summary = json!({
                "band_count": bands.len(),
                "bands": bands,
                "dip": d.has_dip(),
                "integral": integral,
                "integral_error": integral - n,
            });
            if let AnalyticDensity::Sextic(s) = &d {
                summary["moments"] = json!({ "m2": s.state.m2, "m4": s.state.m4, "residual": s.state.residual, "iterations": s.state.iterations });
            }
            println!("analytic density: {} band(s), integral {integral:.10}", bands.len());
            Ok(Report {
                summary,
                warnings: Vec::new(),
                seed: None,
                failed: false,
            })
        }
        DensityMethod::Mc => {
            let tgt = target(&spec, p.beta)?;
            let cfg = chain_config(p.steps, p.burn_in, p.chains, p.thinning, p.seed, p.sigma)?;
            let bins = p.bins.max(1);
            let edges = uniform_edges(lo, hi, bins);
            let (obs, stats) = run_chains(&tgt, &cfg, |_| DensityHistogram::new(edges.clone()))?;
            let prof = DensityHistogram::merge(obs, p.n)?;
            let errs = prof.errors.clone().unwrap_or_default();
            let rows: Vec<Vec<Cell>> = prof
                .grid
                .iter()
                .zip(&prof.values)
                .zip(&errs)
                .map(|((&y, &v), &e)| vec![y.into(), v.into(), e.into()])
                .collect();
            out.add(
                "density.csv",
                csv(&["y (rescaled length)", "R1 (particles per unit length)", "stderr (particles per unit length)"], &rows),
                "histogram density at bin centres",
            );
            for w in &stats.warnings {
                eprintln!("warning: {w}");
            }
            println!(
                "mc density: {} kept configurations, acceptance {:.3}, {} band(s) above the floor",
                stats.samples,
                stats.acceptance_rate,
                prof.bands.count()
            );
            Ok(Report {
                summary: json!({
                    "beta": tgt.beta,
                    "band_count": prof.bands.count(),
                    "sampler": stats_json(&stats),
                }),
                warnings: stats.warnings.clone(),
                seed: Some(p.seed),
                failed: false,
            })
        }
    }
}

struct PcfObserver {
    density: DensityHistogram,
    pairs: PairCounter,
}

impl Observer for PcfObserver {
    fn observe(&mut self, y: &[f64]) {
        self.density.observe(y);
        self.pairs.observe(y);
    }

    fn end_batch(&mut self) {
        self.density.end_batch();
        self.pairs.end_batch();
    }
}

pub fn pcf(p: &PcfParams, out: &mut Outputs) -> Result<Report, CliError> {
    let spec = system(p.case, p.n, p.lambda, p.gamma, p.a1, p.a3)?;
    if !(p.dy > 0.0 && p.dy.is_finite()) {
        return Err(CliError::Usage(format!("--dy must be positive, got {}", p.dy)));
    }
    let (lo, hi) = range(&spec, p.lo, p.hi)?;
    match p.method {
        PcfMethod::Kernel => {
            require_beta2(p.lambda, p.beta)?;
            let (w, t) = kernel_table(&spec)?;
            let grid = uniform_grid(lo, hi, p.points.max(2));
            let opts = SweepOptions {
                window: p.smooth,
                floor: p.floor,
            };
            let sweep = scaled_pcf_sweep(&t, &w, p.dy, &grid, &opts)?;
            let rows: Vec<Vec<Cell>> = sweep
                .points
                .iter()
                .map(|q| vec![q.r.into(), q.value.into(), q.smoothed.into(), q.reference.into(), q.y.into()])
                .collect();
            out.add(
                "pcf.csv",
                csv(&["r (mean spacings)", "Y (dimensionless)", "Y_smoothed (dimensionless)", "sine_ref (dimensionless)", "y (rescaled length)"], &rows),
                "scaled pair correlation sweep sorted by r",
            );
            let smoothed_dev = sweep.points.iter().fold(0.0f64, |m, q| m.max((q.smoothed - q.reference).abs()));
            let (r0, r1) = sweep.r_range();
            println!(
                "kernel pcf: {} points, r in [{r0:.4e}, {r1:.4e}], max deviation {:.4e}",
                sweep.points.len(),
                sweep.max_deviation()
            );
            Ok(Report {
                summary: json!({
                    "delta_y": p.dy,
                    "r_min": r0,
                    "r_max": r1,
                    "max_deviation": sweep.max_deviation(),
                    "max_smoothed_deviation": smoothed_dev,
                    "points": sweep.points.len(),
                    "dropped": sweep.dropped,
                }),
                warnings: Vec::new(),
                seed: None,
                failed: false,
            })
        }
        PcfMethod::Mc => {
            let tgt = target(&spec, p.beta)?;
            let cfg = chain_config(p.steps, p.burn_in, p.chains, p.thinning, p.seed, p.sigma)?;
            let half = 0.1 * hi.abs().max(lo.abs());
            let window = (p.window_lo.unwrap_or(-half), p.window_hi.unwrap_or(half));
            if window.0 >= window.1 {
                return Err(CliError::Usage("empty reference window".into()));
            }
            let dy_edges = uniform_edges(0.0, p.dy * p.bins.max(1) as f64, p.bins.max(1));
            let edges = uniform_edges(lo, hi, 400);
            let (obs, stats) = run_chains(&tgt, &cfg, |_| PcfObserver {
                density: DensityHistogram::new(edges.clone()),
                pairs: PairCounter::new(window, dy_edges.clone()),
            })?;
            let (dens, pairs): (Vec<_>, Vec<_>) = obs.into_iter().map(|o| (o.density, o.pairs)).unzip();
            let prof = DensityHistogram::merge(dens, p.n)?;
            let curve = PairCounter::merge(pairs, &prof, p.min_pairs)?;
            let rows: Vec<Vec<Cell>> = curve
                .iter()
                .map(|q| {
                    vec![
                        q.r.into(),
                        q.value.into(),
                        csm_core::orthopoly::sine_kernel_reference(q.r).into(),
                        q.error.into(),
                        q.dy.into(),
                        q.pairs.into(),
                        q.low_statistics.into(),
                    ]
                })
                .collect();
            out.add(
                "pcf.csv",
                csv(
                    &[
                        "r (mean spacings)",
                        "Y (dimensionless)",
                        "sine_ref (dimensionless)",
                        "stderr (dimensionless)",
                        "dy (rescaled length)",
                        "pairs (count)",
                        "low_statistics (flag)",
                    ],
                    &rows,
                ),
                "binned pair correlation against unfolded separation",
            );
            let low = curve.iter().filter(|q| q.low_statistics).count();
            for w in &stats.warnings {
                eprintln!("warning: {w}");
            }
            println!("mc pcf: {} bins ({low} low-statistics), acceptance {:.3}", curve.len(), stats.acceptance_rate);
            Ok(Report {
                summary: json!({
                    "beta": tgt.beta,
                    "window": [window.0, window.1],
                    "low_statistics_bins": low,
                    "sampler": stats_json(&stats),
                }),
                warnings: stats.warnings.clone(),
                seed: Some(p.seed),
                failed: false,
            })
        }
    }
}

/// `from, from ± step, …` up to `to`, in the direction of `to`.
pub fn scan_grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>, CliError> {
    if !(step > 0.0 && step.is_finite() && from.is_finite() && to.is_finite()) || from == to {
        return Err(CliError::Usage(format!("empty scan range from {from} to {to} in steps of {step}")));
    }
    let count = ((to - from).abs() / step + 1e-9).floor() as usize + 1;
    let dir = (to - from).signum();
    Ok((0..count).map(|i| from + dir * step * i as f64).collect())
}

pub fn phase_scan(p: &ScanParams, out: &mut Outputs) -> Result<Report, CliError> {
    use csm_core::density::{phase_scan, PhaseCase};
    let case = match p.case {
        ScanCase::Quartic => {
            if p.a3.is_some() {
                return Err(CliError::Usage("a3 is only meaningful for --case sextic".into()));
            }
            PhaseCase::Quartic {
                gamma: p.gamma,
                n: p.n,
                lambda: p.lambda,
            }
        }
        ScanCase::Sextic => PhaseCase::Sextic {
            gamma: p.gamma,
            a3: p.a3.ok_or_else(|| CliError::Usage("--case sextic needs --a3".into()))?,
            n: p.n,
            lambda: p.lambda,
        },
    };
    let grid = scan_grid(p.from, p.to, p.step)?;
    let rows = phase_scan(&case, &grid, &SexticSolveOptions::default())?;
    let cells: Vec<Vec<Cell>> = rows
        .iter()
        .map(|r| {
            vec![
                r.a1.into(),
                r.band_count.map(Cell::from).unwrap_or(Cell::Empty),
                r.dip.map(Cell::from).unwrap_or(Cell::Empty),
                r.e0.into(),
                r.error.as_deref().map(Cell::from).unwrap_or(Cell::Empty),
            ]
        })
        .collect();
    out.add(
        "phase_scan.csv",
        csv(&["a1 (coupling units)", "band_count (count)", "dip_flag (flag)", "E0 (energy units)", "error (text)"], &cells),
        "band structure along the scan",
    );
    let mut seq: Vec<usize> = rows.iter().filter_map(|r| r.band_count).collect();
    seq.dedup();
    let failed_rows = rows.iter().filter(|r| r.error.is_some()).count();
    let warnings = if failed_rows > 0 {
        vec![format!("{failed_rows} rows could not be solved and are marked in the error column")]
    } else {
        Vec::new()
    };
    println!("phase scan: {} rows, band sequence {seq:?}", rows.len());
    Ok(Report {
        summary: json!({ "rows": rows.len(), "band_sequence": seq, "failed_rows": failed_rows }),
        warnings,
        seed: None,
        failed: false,
    })
}
