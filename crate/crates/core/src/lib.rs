//! Exactly solvable many-body ground states with polynomial confinement,
//! their orthogonal-polynomial correlation kernels, large-N band densities and
//! a Monte Carlo sampler for the squared wavefunction.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod density;
pub mod error;
pub mod model;
pub mod orthopoly;
pub mod poly;
pub mod profile;
pub mod quadrature;
pub mod sampler;

pub use error::{Error, Result};
