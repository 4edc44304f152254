//! Point estimators for the mean, its linear functionals and the variance
//! scale, with their closed-form risks.

use nalgebra::DMatrix;

use crate::error::{invalid, Error, Result};
use crate::spectral::{
    check_dim, neumaier_sum, spectrum_on, trace_q_on, HVector, SpectralModel, Subspace,
};

/// Tolerance on `||Π_U c - Π_U b||` for `<c, Y>` to count as unbiased.
pub const UNBIASED_TOL: f64 = 1e-10;

/// Bias, variance and mean squared error of an estimator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RiskReport {
    pub bias: f64,
    pub variance: f64,
    pub risk: f64,
}

impl RiskReport {
    /// Builds the report with `risk = variance + bias^2`.
    pub fn new(bias: f64, variance: f64) -> Self {
        Self {
            bias,
            variance,
            risk: variance + bias * bias,
        }
    }
}

/// `ζ̂(Y) = Π_U Y`.
pub fn est_mean(y: &HVector, u: &Subspace) -> Result<HVector> {
    u.project(y)
}

/// `<b, ζ̂(Y)>`, the estimator of `<b, zeta>`.
pub fn est_functional(b: &HVector, y: &HVector, u: &Subspace) -> Result<f64> {
    check_dim(b.dim(), y.dim())?;
    Ok(b.dot(&u.project(y)?))
}

/// `ŝ²(Y) = ||Y - Π_U Y||^2 / tr(Q(Π_H - Π_U))`.
pub fn est_variance(y: &HVector, model: &SpectralModel, u: &Subspace, use_tail: bool) -> Result<f64> {
    let tau = trace_q_on(model, &u.complement(), use_tail)?;
    if tau <= 0.0 {
        return Err(Error::ZeroOperator("Q(Π_H - Π_U)"));
    }
    Ok(residual_norm_sq(y, u)? / tau)
}

/// `||Y - Π_U Y||^2`, computed directly for mode sets.
pub(crate) fn residual_norm_sq(y: &HVector, u: &Subspace) -> Result<f64> {
    check_dim(u.ambient_dim(), y.dim())?;
    match u {
        Subspace::Modes(set) => {
            let modes = set.modes();
            Ok(neumaier_sum(
                y.coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| modes.binary_search(&(i + 1)).is_err())
                    .map(|(_, c)| c * c),
            ))
        }
        Subspace::Frame(_) => Ok((y - &u.project(y)?).norm_sq()),
    }
}

/// `R[ζ̂(Y)] = sigma^2 tr(Q Π_U)`.
pub fn risk_mean(model: &SpectralModel, u: &Subspace, sigma: f64, use_tail: bool) -> Result<f64> {
    check_sigma(sigma)?;
    Ok(sigma * sigma * trace_q_on(model, u, use_tail)?)
}

/// Risk of the partially observed estimator `Π_V Y`:
/// variance `sigma^2 tr(Q Π_V)`, bias `||Π_{V^⊥} zeta||`.
pub fn risk_partial(
    model: &SpectralModel,
    v: &Subspace,
    zeta: &HVector,
    sigma: f64,
) -> Result<RiskReport> {
    check_sigma(sigma)?;
    let variance = sigma * sigma * trace_q_on(model, v, false)?;
    let bias = (zeta - &v.project(zeta)?).norm();
    Ok(RiskReport::new(bias, variance))
}

/// `R[Π_{V_n} Y] - R[Π_U Y] = sum_{k > n} (zeta_k^2 - sigma^2 lambda_k)`,
/// where `V_n` keeps the first `cutoff` modes of `U` in mode order.
///
/// With `use_tail`, a subspace reaching past the truncation level also
/// subtracts `sigma^2` times the tail trace.
pub fn learning_gap(
    model: &SpectralModel,
    u: &Subspace,
    zeta: &HVector,
    sigma: f64,
    cutoff: usize,
    use_tail: bool,
) -> Result<f64> {
    check_sigma(sigma)?;
    check_dim(model.dim(), zeta.dim())?;
    let set = u
        .as_modes()
        .ok_or_else(|| Error::Unsupported("learning gap over a frame subspace".into()))?;
    let modes = set.modes();
    if cutoff > modes.len() {
        return Err(invalid(
            "cutoff",
            format!("{cutoff} exceeds the {} modes of U", modes.len()),
        ));
    }
    let s2 = sigma * sigma;
    let lambdas = model.eigenvalues();
    let mut gap = neumaier_sum(
        modes[cutoff..]
            .iter()
            .map(|&m| zeta[m - 1] * zeta[m - 1] - s2 * lambdas[m - 1]),
    );
    if use_tail && set.includes_tail() {
        gap -= s2 * model.tail_trace();
    }
    Ok(gap)
}

/// `R[ŝ²(Y)] = 2 (sigma^2 ||TQT*||_{L2} / ||TQT*||_{L1})^2` for
/// `T = Π_H - Π_U`, over the truncated complement spectrum.
pub fn variance_est_risk(model: &SpectralModel, u: &Subspace, sigma: f64) -> Result<f64> {
    check_sigma(sigma)?;
    let spectrum = spectrum_on(model, &u.complement())?;
    let l1 = neumaier_sum(spectrum.iter().copied());
    if l1 <= 0.0 {
        return Err(Error::ZeroOperator("Q(Π_H - Π_U)"));
    }
    let l2 = neumaier_sum(spectrum.iter().map(|v| v * v)).sqrt();
    let ratio = sigma * sigma * l2 / l1;
    Ok(2.0 * ratio * ratio)
}

/// Variances of the projection estimator `<b, ζ̂(Y)>` and of a competing
/// unbiased linear estimator `<c, Y>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussMarkov {
    pub var_best: f64,
    pub var_c: f64,
}

impl GaussMarkov {
    /// Excess variance of `<c, Y>`; zero exactly when `Π_{U^⊥} c ∈ ker Q`.
    pub fn excess(&self) -> f64 {
        self.var_c - self.var_best
    }
}

/// `sigma^2 <Q Π_U b, Π_U b>` against `sigma^2 <Q c, c>`.
///
/// `c` must satisfy `Π_U c = Π_U b`; it is not projected silently.
pub fn gm_variances(
    b: &HVector,
    c: &HVector,
    model: &SpectralModel,
    u: &Subspace,
    sigma: f64,
) -> Result<GaussMarkov> {
    check_sigma(sigma)?;
    let pb = u.project(b)?;
    let pc = u.project(c)?;
    let gap = (&pb - &pc).norm();
    if gap > UNBIASED_TOL * b.norm().max(1.0) {
        return Err(Error::NotUnbiased(gap));
    }
    let s2 = sigma * sigma;
    Ok(GaussMarkov {
        var_best: s2 * model.quad_form(&pb, &pb)?,
        var_c: s2 * model.quad_form(c, c)?,
    })
}

/// `sigma^2 tr(T Q T^*)`, the risk of an unbiased linear estimator `T(Y)`
/// given as a matrix in the eigenbasis.
pub fn risk_linear_operator(model: &SpectralModel, t: &DMatrix<f64>, sigma: f64) -> Result<f64> {
    check_sigma(sigma)?;
    let n = model.dim();
    if t.nrows() != n || t.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: t.nrows().max(t.ncols()),
        });
    }
    let lambdas = model.eigenvalues();
    let trace = neumaier_sum(
        (0..n).flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| t[(i, j)] * t[(i, j)] * lambdas[j]),
    );
    Ok(sigma * sigma * trace)
}

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma > 0.0 && sigma.is_finite() {
        Ok(())
    } else {
        Err(invalid("sigma", format!("{sigma}; must be positive")))
    }
}
