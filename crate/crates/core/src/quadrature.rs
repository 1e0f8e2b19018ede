//! Gauss-Legendre rules and the composite panel layouts built on them.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Gauss-Legendre nodes and weights on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(order: usize) -> Self {
        assert!(order >= 1, "Gauss-Legendre order must be positive");
        let n = order;
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            // Tricomi initial guess, then Newton on P_n.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            dp = if d != 0.0 { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        Self { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&t, &w)| w * f(mid + half * t))
            .sum::<f64>()
            * half
    }
}

fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Panel layout for integrals against the orthogonality weight.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureOptions {
    pub panels: usize,
    pub order: usize,
    /// Tail cut in natural-log units below the peak of the integrand envelope.
    pub tail_log: f64,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            panels: 64,
            order: 30,
            tail_log: 138.0,
        }
    }
}

/// Nodes and weights of a composite rule over `[a, b]` with equal panels.
pub fn composite(a: f64, b: f64, panels: usize, rule: &GaussLegendre) -> (Vec<f64>, Vec<f64>) {
    let mut xs = Vec::with_capacity(panels * rule.order());
    let mut ws = Vec::with_capacity(panels * rule.order());
    let width = (b - a) / panels as f64;
    for p in 0..panels {
        let lo = a + width * p as f64;
        let half = 0.5 * width;
        let mid = lo + half;
        for (&t, &w) in rule.nodes().iter().zip(rule.weights()) {
            xs.push(mid + half * t);
            ws.push(w * half);
        }
    }
    (xs, ws)
}

/// Composite rule on `[a, b]` after the substitution x = a + (b-a)(1-cos t)/2.
///
/// Square-root endpoint behaviour becomes smooth in t, so band integrals of
/// densities vanishing like sqrt at their edges converge geometrically.
/// `breaks` are interior points (in x) where the integrand has a kink; panels
/// are split there.
pub fn cosine_mapped(a: f64, b: f64, panels: usize, rule: &GaussLegendre, breaks: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let to_t = |x: f64| (1.0 - 2.0 * (x - a) / (b - a)).clamp(-1.0, 1.0).acos();
    let mut cuts = vec![0.0];
    cuts.extend(breaks.iter().filter(|&&x| x > a && x < b).map(|&x| to_t(x)));
    cuts.push(PI);
    cuts.sort_by(f64::total_cmp);

    let mut xs = Vec::new();
    let mut ws = Vec::new();
    for seg in cuts.windows(2) {
        let (t0, t1) = (seg[0], seg[1]);
        if t1 - t0 <= 0.0 {
            continue;
        }
        let (ts, wts) = composite(t0, t1, panels, rule);
        for (t, wt) in ts.into_iter().zip(wts) {
            xs.push(a + 0.5 * (b - a) * (1.0 - t.cos()));
            ws.push(wt * 0.5 * (b - a) * t.sin());
        }
    }
    (xs, ws)
}
