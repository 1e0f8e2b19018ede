use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("particles {i} and {j} coincide")]
    Singular { i: usize, j: usize },

    #[error("expanded Hamiltonian is not available for half-degree m = {m}")]
    UnsupportedForm { m: usize },

    #[error("orthogonality residual {residual:.3e} between q_{mu} and q_{nu} exceeds tolerance; refine the quadrature")]
    QuadratureResolution { mu: usize, nu: usize, residual: f64 },

    /// The best state reached is carried along so callers can inspect it.
    #[error("no convergence after {iterations} iterations (residual {residual:.3e}, M2 = {m2}, M4 = {m4})")]
    Convergence {
        iterations: usize,
        residual: f64,
        m2: f64,
        m4: f64,
    },

    #[error("infeasible parameters: {0}")]
    Infeasible(String),
}

pub type Result<T> = std::result::Result<T, Error>;
