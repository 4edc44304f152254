//! Wiener process, Brownian bridge and user-supplied spectra on `L^2([0,1])`.

use std::f64::consts::{PI, SQRT_2};

use crate::error::{invalid, Error, Result};
use crate::spectral::{check_dim, check_mode, BasisKind, HVector, SpectralModel};

/// Evaluation points `0 <= t_1 < ... < t_M <= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    points: Vec<f64>,
}

impl Grid {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(invalid("grid", "at least one point is required"));
        }
        if points.iter().any(|t| !(0.0..=1.0).contains(t)) {
            return Err(invalid("grid", "points must lie in [0, 1]"));
        }
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("grid", "points must be strictly increasing"));
        }
        Ok(Self { points })
    }

    /// `m` equally spaced points from 0 to 1 inclusive.
    pub fn uniform(m: usize) -> Result<Self> {
        match m {
            0 => Err(invalid("grid", "at least one point is required")),
            1 => Self::new(vec![0.0]),
            _ => Self::new((0..m).map(|i| i as f64 / (m - 1) as f64).collect()),
        }
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Trapezoidal rule for samples `values` taken on this grid.
    pub fn trapezoid(&self, values: &[f64]) -> Result<f64> {
        check_dim(self.len(), values.len())?;
        Ok(self
            .points
            .windows(2)
            .zip(values.windows(2))
            .map(|(t, v)| 0.5 * (t[1] - t[0]) * (v[0] + v[1]))
            .sum())
    }
}

/// Karhunen–Loève spectrum of the standard Wiener process on `[0,1]`,
/// `lambda_k = 1 / ((k - 1/2)^2 pi^2)`, truncated at `n` modes.
pub fn wiener_model(n: usize) -> Result<SpectralModel> {
    if n == 0 {
        return Err(invalid("n", "truncation level must be at least 1"));
    }
    let eigenvalues = (1..=n)
        .map(|k| {
            let w = (k as f64 - 0.5) * PI;
            1.0 / (w * w)
        })
        .collect();
    // sum_{k>n} 1/((k-1/2)^2 pi^2) = trigamma(n + 1/2) / pi^2
    let tail = trigamma(n as f64 + 0.5) / (PI * PI);
    SpectralModel::new(eigenvalues, tail, BasisKind::Wiener)
}

/// Karhunen–Loève spectrum of the Brownian bridge on `[0,1]`,
/// `lambda_k = 1 / (k^2 pi^2)`, truncated at `n` modes.
pub fn bridge_model(n: usize) -> Result<SpectralModel> {
    if n == 0 {
        return Err(invalid("n", "truncation level must be at least 1"));
    }
    let eigenvalues = (1..=n)
        .map(|k| {
            let w = k as f64 * PI;
            1.0 / (w * w)
        })
        .collect();
    let tail = trigamma(n as f64 + 1.0) / (PI * PI);
    SpectralModel::new(eigenvalues, tail, BasisKind::Bridge)
}

/// Diagonal covariance with no pointwise basis.
pub fn custom_model(eigenvalues: Vec<f64>, tail_trace: f64) -> Result<SpectralModel> {
    SpectralModel::new(eigenvalues, tail_trace, BasisKind::Abstract)
}

/// Exact trace of the untruncated covariance operator, when known.
pub fn analytic_trace(basis: BasisKind) -> Option<f64> {
    match basis {
        BasisKind::Wiener => Some(0.5),
        BasisKind::Bridge => Some(1.0 / 6.0),
        BasisKind::Abstract => None,
    }
}

/// `psi'(x)` for `x > 0`: upward recurrence to `x >= 20`, then the
/// asymptotic series.
pub(crate) fn trigamma(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let mut x = x;
    let mut acc = 0.0;
    while x < 20.0 {
        acc += 1.0 / (x * x);
        x += 1.0;
    }
    let z = 1.0 / (x * x);
    // 1/x + 1/(2x^2) + sum B_{2j} / x^{2j+1}
    let series = 1.0
        + z * (1.0 / 6.0 - z * (1.0 / 30.0 - z * (1.0 / 42.0 - z * (1.0 / 30.0 - z * 5.0 / 66.0))));
    acc + 1.0 / (2.0 * x * x) + series / x
}

/// `e_k(t)` for a 1-based mode.
pub fn eval_basis(model: &SpectralModel, mode: usize, t: f64) -> Result<f64> {
    check_mode(mode, model.dim())?;
    basis_value(model.basis(), mode, t)
}

fn basis_value(basis: BasisKind, mode: usize, t: f64) -> Result<f64> {
    let k = mode as f64;
    match basis {
        BasisKind::Wiener => Ok(SQRT_2 * ((k - 0.5) * PI * t).sin()),
        BasisKind::Bridge => Ok(SQRT_2 * (k * PI * t).sin()),
        BasisKind::Abstract => Err(Error::AbstractBasis(basis.label().into())),
    }
}

fn require_analytic(model: &SpectralModel) -> Result<()> {
    if model.basis().is_analytic() {
        Ok(())
    } else {
        Err(Error::AbstractBasis(model.basis().label().into()))
    }
}

/// `sum_k y_k e_k(t)` at every grid point.
pub fn eval_vector(model: &SpectralModel, y: &HVector, grid: &Grid) -> Result<Vec<f64>> {
    require_analytic(model)?;
    check_dim(model.dim(), y.dim())?;
    let basis = model.basis();
    grid.points()
        .iter()
        .map(|&t| {
            y.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| **c != 0.0)
                .map(|(i, c)| Ok(c * basis_value(basis, i + 1, t)?))
                .sum()
        })
        .collect()
}

/// Truncated Mercer sum `sum_k lambda_k e_k(s) e_k(t)`.
pub fn kernel(model: &SpectralModel, s: f64, t: f64) -> Result<f64> {
    require_analytic(model)?;
    let basis = model.basis();
    model
        .eigenvalues()
        .iter()
        .enumerate()
        .map(|(i, l)| Ok(l * basis_value(basis, i + 1, s)? * basis_value(basis, i + 1, t)?))
        .sum()
}

/// The covariance function the truncated kernel converges to.
pub fn analytic_kernel(basis: BasisKind, s: f64, t: f64) -> Option<f64> {
    match basis {
        BasisKind::Wiener => Some(s.min(t)),
        BasisKind::Bridge => Some(s.min(t) - s * t),
        BasisKind::Abstract => None,
    }
}

/// Coefficients `<y, e_k>` of a sampled trajectory, by the trapezoidal rule.
pub fn project_trajectory(model: &SpectralModel, grid: &Grid, values: &[f64]) -> Result<HVector> {
    require_analytic(model)?;
    check_dim(grid.len(), values.len())?;
    let basis = model.basis();
    let coeffs = (1..=model.dim())
        .map(|mode| {
            let integrand = grid
                .points()
                .iter()
                .zip(values)
                .map(|(&t, v)| Ok(v * basis_value(basis, mode, t)?))
                .collect::<Result<Vec<_>>>()?;
            grid.trapezoid(&integrand)
        })
        .collect::<Result<Vec<_>>>()?;
    HVector::new(coeffs)
}
