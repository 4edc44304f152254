//! Confidence intervals for `<b, zeta>` and the test of `zeta ∈ U0`.
//!
//! Each construction comes in two forms: a prepared object that fixes the
//! quantile and operator constants once and is then applied to many
//! observations, and a one-shot function with the same result.

use serde::Serialize;

use crate::distributions::{f_quantile, norm_quantile, t_quantile};
use crate::error::{invalid, Error, Result};
use crate::estimators::residual_norm_sq;
use crate::sampling::noise_decomposition;
use crate::spectral::{check_dim, trace_q_on, HVector, SpectralModel, Subspace};

/// Two-sided interval `center ± half_width` at confidence `level = 1 - alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub center: f64,
    pub half_width: f64,
    pub level: f64,
}

impl Interval {
    pub fn lower(&self) -> f64 {
        self.center - self.half_width
    }

    pub fn upper(&self) -> f64 {
        self.center + self.half_width
    }

    pub fn contains(&self, value: f64) -> bool {
        (value - self.center).abs() <= self.half_width
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(invalid("alpha", format!("{alpha} is not in (0, 1)")))
    }
}

/// `<Q b, Π_U b>`, required to be positive.
fn functional_variance(model: &SpectralModel, u: &Subspace, b: &HVector) -> Result<f64> {
    let pb = u.project(b)?;
    let v = model.quad_form(b, &pb)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(Error::DegenerateFunctional(v))
    }
}

/// Interval `<b, ζ̂(Y)> ± z_{1-alpha/2} sigma sqrt(<Q b, Π_U b>)` for known
/// `sigma`; its coverage is exactly `1 - alpha`.
#[derive(Debug, Clone)]
pub struct KnownSigmaCi {
    projected_b: HVector,
    half_width: f64,
    level: f64,
}

impl KnownSigmaCi {
    pub fn new(
        b: &HVector,
        model: &SpectralModel,
        u: &Subspace,
        sigma: f64,
        alpha: f64,
    ) -> Result<Self> {
        check_alpha(alpha)?;
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(invalid("sigma", format!("{sigma}; must be positive")));
        }
        let v = functional_variance(model, u, b)?;
        let z = norm_quantile(1.0 - alpha / 2.0)?;
        Ok(Self {
            projected_b: u.project(b)?,
            half_width: z * sigma * v.sqrt(),
            level: 1.0 - alpha,
        })
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn interval(&self, y: &HVector) -> Result<Interval> {
        check_dim(self.projected_b.dim(), y.dim())?;
        Ok(Interval {
            center: self.projected_b.dot(y),
            half_width: self.half_width,
            level: self.level,
        })
    }
}

pub fn ci_known(
    b: &HVector,
    y: &HVector,
    model: &SpectralModel,
    u: &Subspace,
    sigma: f64,
    alpha: f64,
) -> Result<Interval> {
    KnownSigmaCi::new(b, model, u, sigma, alpha)?.interval(y)
}

/// `tau = tr(Q(Π_H - Π_U))`, `lambda = ||Q(Π_H - Π_U)||` and
/// `n = dim ker(lambda - Q(Π_H - Π_U))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CiParams {
    pub tau: f64,
    pub lambda: f64,
    pub n: usize,
}

pub fn ci_params_unknown(model: &SpectralModel, u: &Subspace, use_tail: bool) -> Result<CiParams> {
    let decomposition = noise_decomposition(model, u, None)?;
    let tau = trace_q_on(model, &u.complement(), use_tail)?;
    Ok(CiParams {
        tau,
        lambda: decomposition.lambda,
        n: decomposition.n,
    })
}

/// Interval `<b, ζ̂(Y)> ± sqrt(tau/(lambda n)) t_{n,1-alpha/2} ŝ(Y) sqrt(<Q b, Π_U b>)`
/// for unknown `sigma`; its coverage is at least `1 - alpha`.
#[derive(Debug, Clone)]
pub struct UnknownSigmaCi {
    projected_b: HVector,
    u: Subspace,
    params: CiParams,
    /// Everything in the half-width except `ŝ(Y)`.
    factor: f64,
    level: f64,
}

impl UnknownSigmaCi {
    pub fn new(
        b: &HVector,
        model: &SpectralModel,
        u: &Subspace,
        alpha: f64,
        use_tail: bool,
    ) -> Result<Self> {
        check_alpha(alpha)?;
        let v = functional_variance(model, u, b)?;
        let params = ci_params_unknown(model, u, use_tail)?;
        let t = t_quantile(params.n as f64, 1.0 - alpha / 2.0)?;
        Ok(Self {
            projected_b: u.project(b)?,
            u: u.clone(),
            params,
            factor: (params.tau / (params.lambda * params.n as f64)).sqrt() * t * v.sqrt(),
            level: 1.0 - alpha,
        })
    }

    pub fn params(&self) -> CiParams {
        self.params
    }

    /// `sqrt(tau/(lambda n)) t_{n,1-alpha/2}`.
    pub fn prefactor(&self) -> f64 {
        let t = t_quantile(self.params.n as f64, 0.5 + self.level / 2.0)
            .expect("level was validated at construction");
        (self.params.tau / (self.params.lambda * self.params.n as f64)).sqrt() * t
    }

    /// Interval and the variance estimate `ŝ²(Y)` it was built from.
    pub fn interval_with_variance(&self, y: &HVector) -> Result<(Interval, f64)> {
        check_dim(self.projected_b.dim(), y.dim())?;
        let s2 = residual_norm_sq(y, &self.u)? / self.params.tau;
        let interval = Interval {
            center: self.projected_b.dot(y),
            half_width: self.factor * s2.sqrt(),
            level: self.level,
        };
        Ok((interval, s2))
    }

    pub fn interval(&self, y: &HVector) -> Result<Interval> {
        Ok(self.interval_with_variance(y)?.0)
    }
}

pub fn ci_unknown(
    b: &HVector,
    y: &HVector,
    model: &SpectralModel,
    u: &Subspace,
    alpha: f64,
    use_tail: bool,
) -> Result<Interval> {
    UnknownSigmaCi::new(b, model, u, alpha, use_tail)?.interval(y)
}

/// `lambda = ||Q(Π_H - Π_U)||`, `mu = ||Q(Π_U - Π_U0)||`,
/// `n = dim ker(lambda - Q(Π_H - Π_U))`, `m = dim ran Q(Π_U - Π_U0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TestParams {
    pub lambda: f64,
    pub mu: f64,
    pub n: usize,
    pub m: usize,
}

impl TestParams {
    /// `n lambda / (m mu)`.
    pub fn prefactor(&self) -> f64 {
        (self.n as f64 * self.lambda) / (self.m as f64 * self.mu)
    }
}

pub fn test_params(model: &SpectralModel, u: &Subspace, u0: &Subspace) -> Result<TestParams> {
    check_nested(u0, u)?;
    let d = noise_decomposition(model, u, Some(u0))?;
    Ok(TestParams {
        lambda: d.lambda,
        mu: d.mu.expect("U0 was supplied"),
        n: d.n,
        m: d.m.expect("U0 was supplied"),
    })
}

fn check_nested(inner: &Subspace, outer: &Subspace) -> Result<()> {
    check_dim(outer.ambient_dim(), inner.ambient_dim())?;
    if let (Some(a), Some(b)) = (inner.as_modes(), outer.as_modes()) {
        let nested = a.modes().iter().all(|m| b.modes().binary_search(m).is_ok())
            && (!a.includes_tail() || b.includes_tail());
        return if nested {
            Ok(())
        } else {
            Err(invalid("U0", "must be contained in U"))
        };
    }
    for v in inner.orthonormal_vectors()? {
        let off = (&v - &outer.project(&v)?).norm();
        if off > 1e-10 {
            return Err(invalid("U0", format!("leaves U by {off:.3e}")));
        }
    }
    Ok(())
}

/// Outcome of the subspace test.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TestResult {
    pub statistic: f64,
    pub threshold: f64,
    pub reject: bool,
    pub params: TestParams,
}

/// Level-`alpha` test of `zeta ∈ U0` against `zeta ∉ U0`, rejecting when
/// `(n lambda / (m mu)) ||Π_U Y - Π_U0 Y||^2 / ||Y - Π_U Y||^2 >= F_{m,n,1-alpha}`.
#[derive(Debug, Clone)]
pub struct SubspaceTest {
    u: Subspace,
    between: Subspace,
    params: TestParams,
    threshold: f64,
}

impl SubspaceTest {
    pub fn new(model: &SpectralModel, u: &Subspace, u0: &Subspace, alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        let params = test_params(model, u, u0)?;
        let threshold = f_quantile(params.m as f64, params.n as f64, 1.0 - alpha)?;
        Ok(Self {
            u: u.clone(),
            between: u.minus(u0, model)?,
            params,
            threshold,
        })
    }

    pub fn params(&self) -> TestParams {
        self.params
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn apply(&self, y: &HVector) -> Result<TestResult> {
        let denominator = residual_norm_sq(y, &self.u)?;
        if denominator <= 0.0 {
            return Err(Error::ZeroResidual);
        }
        let numerator = self.between.project(y)?.norm_sq();
        let statistic = self.params.prefactor() * numerator / denominator;
        Ok(TestResult {
            statistic,
            threshold: self.threshold,
            reject: statistic >= self.threshold,
            params: self.params,
        })
    }
}

pub fn test_subspace(
    y: &HVector,
    model: &SpectralModel,
    u: &Subspace,
    u0: &Subspace,
    alpha: f64,
) -> Result<TestResult> {
    SubspaceTest::new(model, u, u0, alpha)?.apply(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimators::{est_functional, est_variance};
    use crate::processes::{custom_model, wiener_model};
    use crate::sampling::{sample, FixedNormals, GaussianLaw};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn lam(k: f64) -> f64 {
        1.0 / ((k - 0.5).powi(2) * PI * PI)
    }

    fn amplitude_setup() -> (SpectralModel, Subspace, HVector) {
        let w = wiener_model(256).unwrap();
        let u = Subspace::modes(256, &[4]).unwrap();
        let b = HVector::from_modes(256, &[(4, 2f64.sqrt())]).unwrap();
        (w, u, b)
    }

    #[test]
    fn known_sigma_half_width() {
        let (w, u, b) = amplitude_setup();
        let y = HVector::from_modes(256, &[(4, 0.3), (9, 1.0)]).unwrap();
        let ci = ci_known(&b, &y, &w, &u, 1.0, 0.05).unwrap();
        let z = norm_quantile(0.975).unwrap();
        assert_abs_diff_eq!(ci.half_width, z * (2.0 * lam(4.0)).sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(ci.half_width, 0.25209, epsilon = 1e-5);
        assert_eq!(ci.center, est_functional(&b, &y, &u).unwrap());
        assert_eq!(ci.level, 0.95);
        let wider = ci_known(&b, &y, &w, &u, 1.0, 0.01).unwrap();
        let narrower = ci_known(&b, &y, &w, &u, 1.0, 0.10).unwrap();
        assert!(wider.half_width > ci.half_width && ci.half_width > narrower.half_width);

        let b_perp = HVector::basis(256, 5).unwrap();
        assert!(matches!(
            ci_known(&b_perp, &y, &w, &u, 1.0, 0.05),
            Err(Error::DegenerateFunctional(_))
        ));
        assert!(ci_known(&b, &y, &w, &u, 1.0, 1.0).is_err());
    }

    #[test]
    fn unknown_sigma_parameters_and_prefactor() {
        let (w, u, b) = amplitude_setup();
        let p = ci_params_unknown(&w, &u, true).unwrap();
        assert_abs_diff_eq!(p.tau, 0.5 - lam(4.0), epsilon = 1e-15);
        assert_abs_diff_eq!(p.tau, 0.4917289, epsilon = 1e-7);
        assert_abs_diff_eq!(p.lambda, 4.0 / (PI * PI), epsilon = 1e-16);
        assert_eq!(p.n, 1);
        let ci = UnknownSigmaCi::new(&b, &w, &u, 0.05, true).unwrap();
        let expected = (p.tau / p.lambda).sqrt() * (0.475 * PI).tan();
        assert_abs_diff_eq!(ci.prefactor(), expected, epsilon = 1e-9);
        assert_abs_diff_eq!(ci.prefactor(), 13.996, epsilon = 1e-3);
    }

    #[test]
    fn unknown_sigma_interval_uses_variance_estimate() {
        let (w, u, b) = amplitude_setup();
        let law = GaussianLaw::new(&w, HVector::from_modes(256, &[(4, 0.5)]).unwrap(), 1.0).unwrap();
        let y = sample(&law, &mut FixedNormals::new(vec![0.3, -1.2, 0.8, 1.1, -0.4]));
        let ci = ci_unknown(&b, &y, &w, &u, 0.05, true).unwrap();
        let s = est_variance(&y, &w, &u, true).unwrap().sqrt();
        let prefactor = UnknownSigmaCi::new(&b, &w, &u, 0.05, true).unwrap().prefactor();
        assert_abs_diff_eq!(ci.half_width, prefactor * s * (2.0 * lam(4.0)).sqrt(), epsilon = 1e-10);

        // zero residual: zero-width interval
        let y = HVector::from_modes(256, &[(4, 0.5)]).unwrap();
        assert_eq!(ci_unknown(&b, &y, &w, &u, 0.05, true).unwrap().half_width, 0.0);
    }

    #[test]
    fn finite_dimensional_reduction() {
        let id = custom_model(vec![1.0; 5], 0.0).unwrap();
        let u = Subspace::modes(5, &[1, 2]).unwrap();
        let p = ci_params_unknown(&id, &u, false).unwrap();
        assert_eq!((p.tau, p.lambda, p.n), (3.0, 1.0, 3));
        let b = HVector::from(vec![0.3, -2.0, 1.0, 0.0, 4.0]);
        let y = HVector::from(vec![1.0, 2.0, -0.5, 0.25, 1.5]);
        let ci = ci_unknown(&b, &y, &id, &u, 0.05, false).unwrap();
        let s = est_variance(&y, &id, &u, false).unwrap().sqrt();
        let classic = t_quantile(3.0, 0.975).unwrap() * s * u.project(&b).unwrap().norm();
        assert_abs_diff_eq!(ci.half_width, classic, epsilon = 1e-12);

        let u0 = Subspace::modes(5, &[1]).unwrap();
        let tp = test_params(&id, &u, &u0).unwrap();
        assert_eq!((tp.lambda, tp.mu, tp.n, tp.m), (1.0, 1.0, 3, 1));

        let all = Subspace::modes(5, &[1, 2, 3, 4, 5]).unwrap();
        assert!(matches!(
            ci_params_unknown(&id, &all, false),
            Err(Error::ZeroOperator(_))
        ));
    }

    #[test]
    fn subspace_test_constants() {
        let w = wiener_model(256).unwrap();
        let u = Subspace::modes(256, &[4, 5, 6]).unwrap();
        let u0 = Subspace::modes(256, &[4]).unwrap();
        let p = test_params(&w, &u, &u0).unwrap();
        assert_abs_diff_eq!(p.lambda, 4.0 / (PI * PI), epsilon = 1e-16);
        assert_abs_diff_eq!(p.mu, lam(5.0), epsilon = 1e-16);
        assert_eq!((p.n, p.m), (1, 2));
        assert_abs_diff_eq!(p.prefactor(), 40.5, epsilon = 1e-12);
        assert!(test_params(&w, &u, &u).is_err());
        assert!(test_params(&w, &u0, &u).is_err());
    }

    #[test]
    fn subspace_test_statistic() {
        let w = wiener_model(64).unwrap();
        let u = Subspace::modes(64, &[4, 5, 6]).unwrap();
        let u0 = Subspace::modes(64, &[4]).unwrap();
        let y = HVector::from_modes(64, &[(4, 2.0), (1, 0.3), (20, -0.1)]).unwrap();
        let r = test_subspace(&y, &w, &u, &u0, 0.05).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert!(!r.reject);

        let y = HVector::from_modes(64, &[(4, 2.0), (5, 0.2), (6, -0.1), (1, 0.3)]).unwrap();
        let r = test_subspace(&y, &w, &u, &u0, 0.05).unwrap();
        assert_abs_diff_eq!(r.statistic, 40.5 * 0.05 / 0.09, epsilon = 1e-10);
        assert_eq!(r.reject, r.statistic >= r.threshold);
        let looser = test_subspace(&y, &w, &u, &u0, 0.2).unwrap();
        assert!(looser.threshold < r.threshold);

        let on_u = HVector::from_modes(64, &[(4, 1.0), (5, 1.0)]).unwrap();
        assert!(matches!(
            test_subspace(&on_u, &w, &u, &u0, 0.05),
            Err(Error::ZeroResidual)
        ));
    }

    #[test]
    fn pythagorean_split() {
        let w = wiener_model(32).unwrap();
        let u = Subspace::modes(32, &[2, 3, 7]).unwrap();
        let u0 = Subspace::modes(32, &[3]).unwrap();
        let law = GaussianLaw::centered(&w, 1.0).unwrap();
        let y = sample(&law, &mut FixedNormals::new(vec![0.4, -1.0, 2.2, 0.1, -0.7]));
        let total = (&y - &u0.project(&y).unwrap()).norm_sq();
        let outer = (&y - &u.project(&y).unwrap()).norm_sq();
        let between = (&u.project(&y).unwrap() - &u0.project(&y).unwrap()).norm_sq();
        assert_abs_diff_eq!(total, outer + between, epsilon = 1e-12);
    }
}
