//! The model family: trap polynomial, couplings, ground-state wavefunction,
//! local energies and the rescaling to monic matrix-model variables.
//!
//! The trap polynomial is `P(x) = γ Σ_k c_k x^(2k+1)` with the top coefficient
//! `c_m = 1`. Coefficients are stored signed, exactly as they appear in `P`,
//! so one evaluator and one energy formula serve every case.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::horner;

/// Minimum pairwise separation enforced on randomly drawn configurations.
pub const MIN_SEPARATION: f64 = 1e-6;

/// Odd trap polynomial `P(x)/γ = Σ_k c_k x^(2k+1)`, monic in its top term.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfinementSpec {
    gamma: f64,
    coeffs: Vec<f64>,
}

/// `P(x)`, `P'(x)` and `∫_0^x P(t) dt` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConfinementValue {
    pub value: f64,
    pub derivative: f64,
    pub integral: f64,
}

impl ConfinementSpec {
    /// `coeffs[k]` multiplies `x^(2k+1)`; the last entry must be exactly 1.
    pub fn new(gamma: f64, coeffs: Vec<f64>) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::InvalidParameter(format!("gamma must be positive, got {gamma}")));
        }
        if coeffs.last() != Some(&1.0) {
            return Err(Error::InvalidParameter("trap polynomial must have top coefficient 1".into()));
        }
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::InvalidParameter("non-finite trap coefficient".into()));
        }
        Ok(Self { gamma, coeffs })
    }

    /// Harmonic trap `P = γx` (the pure inverse-square model).
    pub fn csm(gamma: f64) -> Result<Self> {
        Self::new(gamma, vec![1.0])
    }

    /// `P = γ(x³ − a1 x)`.
    pub fn quartic(gamma: f64, a1: f64) -> Result<Self> {
        Self::new(gamma, vec![-a1, 1.0])
    }

    /// `P = γ(x⁵ + a3 x³ + a1 x)`; `a3 < 0` raises barriers around the origin,
    /// with the classical single-to-triple well threshold at `a1 = a3²/4`.
    pub fn sextic(gamma: f64, a3: f64, a1: f64) -> Result<Self> {
        Self::new(gamma, vec![a1, a3, 1.0])
    }

    /// `m`, with polynomial degree `2m + 1`.
    pub fn half_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Signed coefficient of `x` in `P(x)/γ`.
    pub fn linear_coeff(&self) -> f64 {
        self.coeffs[0]
    }

    pub fn eval(&self, x: f64) -> ConfinementValue {
        let u = x * x;
        let value = self.gamma * x * horner(&self.coeffs, u);
        let mut derivative = 0.0;
        let mut integral = 0.0;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            derivative = derivative * u + (2 * k + 1) as f64 * c;
            integral = integral * u + c / (2 * k + 2) as f64;
        }
        ConfinementValue {
            value,
            derivative: self.gamma * derivative,
            integral: self.gamma * u * integral,
        }
    }

    /// `∫_0^x P(t) dt`.
    pub fn antiderivative(&self, x: f64) -> f64 {
        let u = x * x;
        let mut acc = 0.0;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            acc = acc * u + c / (2 * k + 2) as f64;
        }
        self.gamma * u * acc
    }

    /// Half-width of a box that comfortably holds `n` particles in this trap.
    pub fn classical_radius(&self, n: usize) -> f64 {
        let m = self.half_degree();
        let mut r = (n as f64 / self.gamma).powf(1.0 / (2 * m + 2) as f64);
        for (k, &c) in self.coeffs[..m].iter().enumerate() {
            r = r.max(c.abs().powf(1.0 / (2 * (m - k)) as f64));
        }
        1.5 * r.max(1.0)
    }
}

/// Coupling constants, all fixed by λ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingSpec {
    lambda: f64,
    g: f64,
    h: f64,
    beta: f64,
}

impl CouplingSpec {
    /// `g = 2(λ² − λ)`, `h = −2λ`, `β = 2λ`. Real λ > 0 always gives `g ≥ −1/2`.
    pub fn from_lambda(lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidParameter(format!("lambda must be positive, got {lambda}")));
        }
        Ok(Self {
            lambda,
            g: 2.0 * (lambda * lambda - lambda),
            h: -2.0 * lambda,
            beta: 2.0 * lambda,
        })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Inverse-square strength.
    pub fn g(&self) -> f64 {
        self.g
    }

    /// Long-range strength.
    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// True when `g` sits on the stability boundary `g = −1/2` (λ = 1/2).
    pub fn at_stability_boundary(&self) -> bool {
        (self.g + 0.5).abs() <= 4.0 * f64::EPSILON
    }
}

/// One complete model instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SystemSpec {
    n_particles: usize,
    confinement: ConfinementSpec,
    coupling: CouplingSpec,
}

impl SystemSpec {
    pub fn new(n_particles: usize, confinement: ConfinementSpec, coupling: CouplingSpec) -> Result<Self> {
        if n_particles == 0 {
            return Err(Error::InvalidParameter("need at least one particle".into()));
        }
        Ok(Self {
            n_particles,
            confinement,
            coupling,
        })
    }

    pub fn n_particles(&self) -> usize {
        self.n_particles
    }

    pub fn confinement(&self) -> &ConfinementSpec {
        &self.confinement
    }

    pub fn coupling(&self) -> &CouplingSpec {
        &self.coupling
    }
}

/// Particle positions. No ordering is imposed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Configuration(pub Vec<f64>);

impl Configuration {
    pub fn positions(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn check_distinct(&self) -> Result<()> {
        let x = &self.0;
        for i in 0..x.len() {
            for j in i + 1..x.len() {
                if x[i] == x[j] {
                    return Err(Error::Singular { i, j });
                }
            }
        }
        Ok(())
    }
}

fn check_size(spec: &SystemSpec, config: &Configuration) -> Result<()> {
    if config.len() != spec.n_particles {
        return Err(Error::InvalidParameter(format!(
            "configuration has {} positions, system has {} particles",
            config.len(),
            spec.n_particles
        )));
    }
    Ok(())
}

/// `log ψ₀ = λ Σ_{i<j} log|x_i − x_j| − Σ_i ∫_0^{x_i} P`.
///
/// A coincident pair gives `-inf`.
pub fn log_ground_state(spec: &SystemSpec, config: &Configuration) -> f64 {
    let x = config.positions();
    let lambda = spec.coupling.lambda;
    let mut log_vdm = 0.0;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            let d = (x[i] - x[j]).abs();
            if d == 0.0 {
                return f64::NEG_INFINITY;
            }
            log_vdm += d.ln();
        }
    }
    let trap: f64 = x.iter().map(|&xi| spec.confinement.antiderivative(xi)).sum();
    lambda * log_vdm - trap
}

/// Which potential accompanies the kinetic term in `Hψ₀/ψ₀`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HamiltonianForm {
    /// `Σ g/(x_i−x_j)² + h Σ_{i≠j} P(x_i)/(x_i−x_j) + Σ (P² − P')`.
    Canonical,
    /// Pair and one-body polynomials with all constants removed.
    Expanded,
}

/// The four contributions to a local energy, kept apart so residuals can be
/// measured against the largest of them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalEnergyTerms {
    pub kinetic: f64,
    pub inverse_square: f64,
    /// `h Σ P_i/(x_i−x_j)` (canonical) or the pair polynomials (expanded).
    pub long_range: f64,
    pub one_body: f64,
}

impl LocalEnergyTerms {
    pub fn total(&self) -> f64 {
        self.kinetic + self.inverse_square + self.long_range + self.one_body
    }

    pub fn scale(&self) -> f64 {
        [self.kinetic, self.inverse_square, self.long_range, self.one_body]
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Expanded-form potential coefficients for the harmonic, quartic and sextic traps.
///
/// Pair part: `α₂ Σ(x_i−x_j)² + α₁ Σ(x_i−x_j)⁴ + α₃ Σ(x_i+x_j)⁴`.
/// One-body part: `Σ_i Σ_k one_body[k-1] x_i^(2k)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExpandedPotential {
    pub alpha_diff2: f64,
    pub alpha_diff4: f64,
    pub alpha_sum4: f64,
    pub one_body: Vec<f64>,
}

impl ExpandedPotential {
    pub fn new(spec: &SystemSpec) -> Result<Self> {
        let conf = &spec.confinement;
        let g = conf.gamma;
        let lam = spec.coupling.lambda;
        let nm1 = spec.n_particles as f64 - 1.0;
        let c = &conf.coeffs;
        match conf.half_degree() {
            0 => Ok(Self {
                alpha_diff2: 0.0,
                alpha_diff4: 0.0,
                alpha_sum4: 0.0,
                one_body: vec![g * g],
            }),
            1 => {
                let l = c[0];
                Ok(Self {
                    alpha_diff2: lam * g,
                    alpha_diff4: 0.0,
                    alpha_sum4: 0.0,
                    one_body: vec![
                        g * g * l * l - g * (3.0 + 3.0 * lam * nm1),
                        2.0 * g * g * l,
                        g * g,
                    ],
                })
            }
            2 => {
                let (c1, c3) = (c[0], c[1]);
                Ok(Self {
                    alpha_diff2: lam * g * c3,
                    alpha_diff4: lam * g / 12.0,
                    alpha_sum4: -5.0 * lam * g / 12.0,
                    one_body: vec![
                        g * g * c1 * c1 - g * c3 * (3.0 + 3.0 * lam * nm1),
                        2.0 * g * g * c1 * c3 - g * (5.0 + 5.0 * lam * nm1 / 3.0),
                        g * g * (c3 * c3 + 2.0 * c1),
                        2.0 * g * g * c3,
                        g * g,
                    ],
                })
            }
            m => Err(Error::UnsupportedForm { m }),
        }
    }

    /// One-body coefficients divided by γ² (the `b_{2k}` of the expanded Hamiltonian).
    pub fn b_coeffs(&self, gamma: f64) -> Vec<f64> {
        self.one_body.iter().map(|v| v / (gamma * gamma)).collect()
    }

    fn pair(&self, xi: f64, xj: f64) -> f64 {
        let d2 = (xi - xj).powi(2);
        let s2 = (xi + xj).powi(2);
        self.alpha_diff2 * d2 + self.alpha_diff4 * d2 * d2 + self.alpha_sum4 * s2 * s2
    }

    fn single(&self, x: f64) -> f64 {
        let u = x * x;
        u * horner(&self.one_body, u)
    }
}

/// `Hψ₀/ψ₀` split into its parts; see [`local_energy`].
pub fn local_energy_terms(spec: &SystemSpec, config: &Configuration, form: HamiltonianForm) -> Result<LocalEnergyTerms> {
    check_size(spec, config)?;
    config.check_distinct()?;
    let expanded = match form {
        HamiltonianForm::Expanded => Some(ExpandedPotential::new(spec)?),
        HamiltonianForm::Canonical => None,
    };
    let x = config.positions();
    let n = x.len();
    let lam = spec.coupling.lambda;
    let conf = &spec.confinement;
    let p: Vec<ConfinementValue> = x.iter().map(|&xi| conf.eval(xi)).collect();

    let mut kinetic = 0.0;
    let mut inv_sq = 0.0;
    let mut long_range = 0.0;
    for i in 0..n {
        let mut s = 0.0;
        let mut t = 0.0;
        for j in 0..n {
            if j == i {
                continue;
            }
            let r = 1.0 / (x[i] - x[j]);
            s += r;
            t += r * r;
            if form == HamiltonianForm::Canonical {
                long_range += spec.coupling.h * p[i].value * r;
            }
            if j > i {
                inv_sq += spec.coupling.g * r * r;
                if let Some(e) = &expanded {
                    long_range += e.pair(x[i], x[j]);
                }
            }
        }
        // ∂_i log ψ = λ S_i − P_i ;  ∂²_i log ψ = −λ T_i − P'_i
        let grad = lam * s - p[i].value;
        let lap = -lam * t - p[i].derivative;
        kinetic -= lap + grad * grad;
    }

    let one_body = match &expanded {
        None => p.iter().map(|v| v.value * v.value - v.derivative).sum(),
        Some(e) => x.iter().map(|&xi| e.single(xi)).sum(),
    };

    Ok(LocalEnergyTerms {
        kinetic,
        inverse_square: inv_sq,
        long_range,
        one_body,
    })
}

/// Local energy `Hψ₀/ψ₀`, evaluated in closed form from derivatives of `log ψ₀`.
///
/// The canonical form vanishes identically; the expanded form is the constant
/// [`ground_state_energy`].
pub fn local_energy(spec: &SystemSpec, config: &Configuration, form: HamiltonianForm) -> Result<f64> {
    local_energy_terms(spec, config, form).map(|t| t.total())
}

/// `E₀ = γ ℓ N (1 + λ(N−1))` with ℓ the signed linear coefficient of `P/γ`.
pub fn ground_state_energy(spec: &SystemSpec) -> f64 {
    let n = spec.n_particles as f64;
    let conf = &spec.confinement;
    conf.gamma * conf.linear_coeff() * n * (1.0 + spec.coupling.lambda * (n - 1.0))
}

/// Monic form `P₁(y) = γ Σ c_k y^(2k+1)` in variables `y = x / scale`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RescaledSpec {
    pub poly: ConfinementSpec,
    /// `x = scale · y`, `scale = λ^(1/(2m+2))`.
    pub scale: f64,
}

impl RescaledSpec {
    pub fn coeffs(&self) -> &[f64] {
        self.poly.coeffs()
    }
}

/// `c_k = λ^(−(m−k)/(m+1)) a_k`, chosen so that `ψ₀² ∝ Π|y_i−y_j|^β exp(−β Σ ∫P₁)`.
pub fn rescale_to_monic(spec: &SystemSpec) -> RescaledSpec {
    let conf = &spec.confinement;
    let lam = spec.coupling.lambda;
    let m = conf.half_degree();
    let coeffs: Vec<f64> = conf
        .coeffs
        .iter()
        .enumerate()
        .map(|(k, &a)| {
            if k == m {
                1.0
            } else {
                a * lam.powf(-((m - k) as f64) / (m + 1) as f64)
            }
        })
        .collect();
    RescaledSpec {
        poly: ConfinementSpec {
            gamma: conf.gamma,
            coeffs,
        },
        scale: lam.powf(1.0 / (2 * m + 2) as f64),
    }
}

/// Uniform draw in the classical box with pairwise separation at least
/// [`MIN_SEPARATION`]; violating draws are discarded and redrawn whole.
pub fn random_configuration<R: Rng>(spec: &SystemSpec, rng: &mut R) -> Configuration {
    let radius = spec.confinement.classical_radius(spec.n_particles);
    loop {
        let mut x: Vec<f64> = (0..spec.n_particles)
            .map(|_| rng.random_range(-radius..radius))
            .collect();
        x.sort_by(f64::total_cmp);
        if x.windows(2).all(|w| w[1] - w[0] >= MIN_SEPARATION) {
            return Configuration(x);
        }
    }
}

/// Mean and spread of `E_expanded − E_canonical` over random configurations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstantCheck {
    pub mean: f64,
    /// Largest absolute deviation of any sample from the mean.
    pub spread: f64,
    pub samples: usize,
}

pub fn expanded_constant_check(spec: &SystemSpec, samples: usize, seed: u64) -> Result<ConstantCheck> {
    if samples == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    ExpandedPotential::new(spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = Vec::with_capacity(samples);
    while values.len() < samples {
        let config = random_configuration(spec, &mut rng);
        let diff = local_energy(spec, &config, HamiltonianForm::Expanded)
            .and_then(|e| Ok(e - local_energy(spec, &config, HamiltonianForm::Canonical)?));
        match diff {
            Ok(v) => values.push(v),
            Err(Error::Singular { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    let mean = values.iter().sum::<f64>() / samples as f64;
    let spread = values.iter().fold(0.0f64, |m, v| m.max((v - mean).abs()));
    Ok(ConstantCheck { mean, spread, samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn system(n: usize, conf: ConfinementSpec, lambda: f64) -> SystemSpec {
        SystemSpec::new(n, conf, CouplingSpec::from_lambda(lambda).unwrap()).unwrap()
    }

    #[test]
    fn confinement_values() {
        let q = ConfinementSpec::new(1.0, vec![-2.0, 1.0]).unwrap().eval(1.0);
        assert_relative_eq!(q.value, -1.0);
        assert_relative_eq!(q.derivative, 1.0);
        assert_relative_eq!(q.integral, -0.75);

        let c = ConfinementSpec::csm(2.0).unwrap().eval(3.0);
        assert_relative_eq!(c.value, 6.0);
        assert_relative_eq!(c.derivative, 2.0);
        assert_relative_eq!(c.integral, 9.0);

        let s = ConfinementSpec::new(0.5, vec![3.0, 4.0, 1.0]).unwrap().eval(1.0);
        assert_relative_eq!(s.value, 4.0);
        assert_relative_eq!(s.derivative, 10.0);
        assert_relative_eq!(s.integral, 4.0 / 3.0, max_relative = 1e-15);
    }

    #[test]
    fn constructors_validate() {
        assert!(ConfinementSpec::new(0.0, vec![1.0]).is_err());
        assert!(ConfinementSpec::new(1.0, vec![1.0, 2.0]).is_err());
        assert!(ConfinementSpec::new(1.0, vec![]).is_err());
        assert_eq!(ConfinementSpec::quartic(1.0, 3.0).unwrap().coeffs(), &[-3.0, 1.0]);
        assert_eq!(ConfinementSpec::sextic(1.0, -4.0, 2.0).unwrap().coeffs(), &[2.0, -4.0, 1.0]);
        assert!(SystemSpec::new(0, ConfinementSpec::csm(1.0).unwrap(), CouplingSpec::from_lambda(1.0).unwrap()).is_err());
    }

    #[test]
    fn coupling_relations() {
        let c = CouplingSpec::from_lambda(1.0).unwrap();
        assert_eq!((c.g(), c.h(), c.beta()), (0.0, -2.0, 2.0));
        let c = CouplingSpec::from_lambda(2.0).unwrap();
        assert_eq!((c.g(), c.h(), c.beta()), (4.0, -4.0, 4.0));
        let c = CouplingSpec::from_lambda(0.5).unwrap();
        assert_eq!((c.g(), c.h(), c.beta()), (-0.5, -1.0, 1.0));
        assert!(c.at_stability_boundary());
        assert!(!CouplingSpec::from_lambda(0.3).unwrap().at_stability_boundary());
        assert!(CouplingSpec::from_lambda(0.0).is_err());
        assert!(CouplingSpec::from_lambda(-1.0).is_err());
        assert!(CouplingSpec::from_lambda(f64::NAN).is_err());
    }

    #[test]
    fn log_ground_state_examples() {
        let s = system(2, ConfinementSpec::csm(1.0).unwrap(), 1.0);
        assert_relative_eq!(log_ground_state(&s, &Configuration(vec![1.0, -1.0])), 2f64.ln() - 1.0);

        let s = system(3, ConfinementSpec::quartic(1.0, 2.0).unwrap(), 2.0);
        assert_relative_eq!(
            log_ground_state(&s, &Configuration(vec![0.0, 1.0, 2.0])),
            2.0 * 2f64.ln() + 0.75,
            max_relative = 1e-14
        );
        assert_eq!(log_ground_state(&s, &Configuration(vec![0.5, 1.0, 0.5])), f64::NEG_INFINITY);
    }

    #[test]
    fn single_particle_expanded_energy() {
        // Independent hand computation for N=1, P = x³ − 2x:
        // log ψ = −x⁴/4 + x², (log ψ)' = −x³ + 2x, (log ψ)'' = −3x² + 2,
        // V = x⁶ − 4x⁴ + 4x² − 3x², so −[(log ψ)'' + (log ψ)'²] + V = −2.
        let s = system(1, ConfinementSpec::quartic(1.0, 2.0).unwrap(), 1.0);
        let x = 0.7f64;
        let hand = -((-3.0 * x * x + 2.0) + (-x.powi(3) + 2.0 * x).powi(2)) + x.powi(6) - 4.0 * x.powi(4) + x * x;
        assert_relative_eq!(hand, -2.0, max_relative = 1e-14);
        let e = local_energy(&s, &Configuration(vec![x]), HamiltonianForm::Expanded).unwrap();
        assert_relative_eq!(e, -2.0, max_relative = 1e-13);
        assert_relative_eq!(ground_state_energy(&s), -2.0);
    }

    #[test]
    fn harmonic_pair_matches_free_fermion_reading() {
        let s = system(2, ConfinementSpec::csm(1.3).unwrap(), 1.0);
        let e = local_energy(&s, &Configuration(vec![0.4, -0.9]), HamiltonianForm::Expanded).unwrap();
        assert_relative_eq!(e, 4.0 * 1.3, max_relative = 1e-13);
    }

    #[test]
    fn ground_state_energy_examples() {
        assert_relative_eq!(ground_state_energy(&system(1, ConfinementSpec::csm(1.0).unwrap(), 1.0)), 1.0);
        assert_relative_eq!(ground_state_energy(&system(2, ConfinementSpec::quartic(1.0, 3.0).unwrap(), 1.0)), -12.0);
        assert_eq!(ground_state_energy(&system(5, ConfinementSpec::quartic(2.0, 0.0).unwrap(), 1.5)), 0.0);
    }

    #[test]
    fn singular_and_unsupported_inputs() {
        let s = system(3, ConfinementSpec::quartic(1.0, 2.0).unwrap(), 1.0);
        let err = local_energy(&s, &Configuration(vec![0.1, 0.3, 0.1]), HamiltonianForm::Canonical).unwrap_err();
        assert_eq!(err, Error::Singular { i: 0, j: 2 });
        let octic = ConfinementSpec::new(1.0, vec![0.0, 0.0, 0.0, 1.0]).unwrap();
        let s = system(2, octic, 1.0);
        let cfg = Configuration(vec![0.1, 0.5]);
        assert_eq!(local_energy(&s, &cfg, HamiltonianForm::Expanded).unwrap_err(), Error::UnsupportedForm { m: 3 });
        // The canonical form is valid for any degree.
        assert!(local_energy(&s, &cfg, HamiltonianForm::Canonical).unwrap().abs() < 1e-12);
        assert!(local_energy(&s, &Configuration(vec![0.1]), HamiltonianForm::Canonical).is_err());
    }

    #[test]
    fn expanded_coefficients_reduce_to_printed_values_at_three_particles() {
        let (g, lam, a1) = (0.7, 1.3, 2.5);
        let s = system(3, ConfinementSpec::quartic(g, a1).unwrap(), lam);
        let b = ExpandedPotential::new(&s).unwrap().b_coeffs(g);
        assert_relative_eq!(b[2], 1.0);
        assert_relative_eq!(b[1], -2.0 * a1);
        assert_relative_eq!(b[0], a1 * a1 - (6.0 * lam + 3.0) / g, max_relative = 1e-14);

        let (a3, a1) = (-4.0, 2.0);
        let s = system(3, ConfinementSpec::sextic(g, a3, a1).unwrap(), lam);
        let e = ExpandedPotential::new(&s).unwrap();
        let b = e.b_coeffs(g);
        // Printed convention uses P = γ(x⁵ − A x³ + a1 x), i.e. A = −a3.
        let big_a = -a3;
        assert_relative_eq!(e.alpha_diff4, lam * g / 12.0);
        assert_relative_eq!(e.alpha_diff2, -lam * g * big_a);
        assert_relative_eq!(e.alpha_sum4, -5.0 * lam * g / 12.0);
        assert_relative_eq!(b[4], 1.0);
        assert_relative_eq!(b[3], -2.0 * big_a);
        assert_relative_eq!(b[2], big_a * big_a + 2.0 * a1);
        assert_relative_eq!(b[1], -(2.0 * a1 * big_a + (5.0 + 10.0 * lam / 3.0) / g), max_relative = 1e-14);
        assert_relative_eq!(b[0], a1 * a1 + big_a * (6.0 * lam + 3.0) / g, max_relative = 1e-14);
    }

    #[test]
    fn rescale_examples() {
        let s = system(2, ConfinementSpec::new(1.0, vec![2.0, 1.0]).unwrap(), 4.0);
        let r = rescale_to_monic(&s);
        assert_relative_eq!(r.coeffs()[0], 1.0, max_relative = 1e-15);
        assert_eq!(r.coeffs()[1], 1.0);
        assert_relative_eq!(r.scale, 2f64.sqrt(), max_relative = 1e-15);

        let s = system(2, ConfinementSpec::sextic(0.5, -4.0, 3.0).unwrap(), 1.0);
        let r = rescale_to_monic(&s);
        assert_eq!(r.coeffs(), s.confinement().coeffs());
        assert_eq!(r.scale, 1.0);

        let s = system(2, ConfinementSpec::csm(1.0).unwrap(), 4.0);
        let r = rescale_to_monic(&s);
        assert_eq!(r.coeffs(), &[1.0]);
        assert_relative_eq!(r.scale, 2.0, max_relative = 1e-15);
    }

    #[test]
    fn rescaled_weight_matches_squared_wavefunction() {
        // 2 ∫_0^x P = β ∫_0^y P₁ with x = scale·y, β = 2λ.
        let s = system(4, ConfinementSpec::sextic(0.8, -3.0, 1.5).unwrap(), 2.5);
        let r = rescale_to_monic(&s);
        for y in [-1.3, 0.2, 0.9, 2.0] {
            let lhs = 2.0 * s.confinement().antiderivative(r.scale * y);
            let rhs = s.coupling().beta() * r.poly.antiderivative(y);
            assert_relative_eq!(lhs, rhs, max_relative = 1e-13);
        }
    }

    #[test]
    fn constant_check_single_particle() {
        let s = system(1, ConfinementSpec::quartic(1.0, 3.0).unwrap(), 2.0);
        let c = expanded_constant_check(&s, 20, 1).unwrap();
        assert_relative_eq!(c.mean, -3.0, max_relative = 1e-12);
        assert!(c.spread < 1e-9);
    }
}
