//! Estimation, confidence intervals, tests and least squares for Gaussian
//! random elements `Y ~ N(zeta, sigma^2 Q)` of a separable Hilbert space,
//! worked in the eigenbasis of the covariance operator `Q`.
//!
//! Modes are numbered from 1 throughout the public API.

pub mod diagnostics;
pub mod distributions;
pub mod error;
pub mod estimators;
pub mod harness;
pub mod inference;
pub mod io;
pub mod processes;
pub mod regression;
pub mod sampling;
pub mod spectral;

pub use error::{Error, Result};
pub use spectral::{HVector, SpectralModel, Subspace};
