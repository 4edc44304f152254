//! Draws from `N(zeta, sigma^2 Q)` through the truncated series
//! `Y = zeta + sigma * sum_k sqrt(lambda_k) beta_k e_k`, and the closed-form
//! moments of `||Y||^2` and `||Π_S Y||^2`.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{invalid, Error, Result};
use crate::spectral::{
    check_dim, neumaier_sum, rank_on, spectrum_on, sup_eig_on, top_multiplicity, trace_q_on,
    HVector, SpectralModel, Subspace, DEFAULT_MULTIPLICITY_TOL,
};

/// Tolerance on `||zeta - Π_U zeta||` for a law with an attached subspace.
pub const MEAN_IN_SUBSPACE_TOL: f64 = 1e-10;

/// Source of independent standard normal variates.
pub trait NormalSource {
    fn next_normal(&mut self) -> f64;
}

impl<R: Rng> NormalSource for R {
    fn next_normal(&mut self) -> f64 {
        StandardNormal.sample(self)
    }
}

/// Replays a fixed list of normals, cycling when exhausted.
///
/// Makes [`sample`] deterministic in tests; an all-zero list returns the mean.
#[derive(Debug, Clone)]
pub struct FixedNormals {
    values: Vec<f64>,
    next: usize,
}

impl FixedNormals {
    pub fn new(values: Vec<f64>) -> Self {
        assert!(!values.is_empty(), "FixedNormals needs at least one value");
        Self { values, next: 0 }
    }

    pub fn zeros() -> Self {
        Self::new(vec![0.0])
    }
}

impl NormalSource for FixedNormals {
    fn next_normal(&mut self) -> f64 {
        let v = self.values[self.next % self.values.len()];
        self.next += 1;
        v
    }
}

/// The measure `N(zeta, sigma^2 Q)`, optionally tied to the subspace `U`
/// that the mean is known to lie in.
#[derive(Debug, Clone)]
pub struct GaussianLaw<'m> {
    model: &'m SpectralModel,
    mean: HVector,
    sigma: f64,
    subspace: Option<Subspace>,
}

impl<'m> GaussianLaw<'m> {
    pub fn new(model: &'m SpectralModel, mean: HVector, sigma: f64) -> Result<Self> {
        check_dim(model.dim(), mean.dim())?;
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(invalid("sigma", format!("{sigma}; must be positive")));
        }
        Ok(Self {
            model,
            mean,
            sigma,
            subspace: None,
        })
    }

    pub fn centered(model: &'m SpectralModel, sigma: f64) -> Result<Self> {
        Self::new(model, HVector::zeros(model.dim()), sigma)
    }

    /// Attaches `U`; the mean must already lie in it.
    pub fn with_subspace(mut self, u: Subspace) -> Result<Self> {
        let off = (&self.mean - &u.project(&self.mean)?).norm();
        if off > MEAN_IN_SUBSPACE_TOL {
            return Err(invalid(
                "mean",
                format!("mean is {off:.3e} away from the attached subspace"),
            ));
        }
        self.subspace = Some(u);
        Ok(self)
    }

    pub fn model(&self) -> &'m SpectralModel {
        self.model
    }

    pub fn mean(&self) -> &HVector {
        &self.mean
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn subspace(&self) -> Option<&Subspace> {
        self.subspace.as_ref()
    }
}

/// One draw of `Y`.
pub fn sample<S: NormalSource + ?Sized>(law: &GaussianLaw<'_>, noise: &mut S) -> HVector {
    let mut y = law.mean.clone();
    sample_into(law, noise, &mut y);
    y
}

/// Draws into a preallocated vector; the harness reuses buffers.
pub fn sample_into<S: NormalSource + ?Sized>(law: &GaussianLaw<'_>, noise: &mut S, out: &mut HVector) {
    assert_eq!(out.dim(), law.model.dim(), "output buffer has wrong dimension");
    let coeffs = out.coeffs_mut();
    for ((c, mean), lambda) in coeffs
        .iter_mut()
        .zip(law.mean.coeffs())
        .zip(law.model.eigenvalues())
    {
        *c = mean + law.sigma * lambda.sqrt() * noise.next_normal();
    }
}

/// Mean and variance of a scalar statistic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Moments {
    pub mean: f64,
    pub variance: f64,
}

/// `E||Y||^2 = sigma^2 tr(Q) + ||zeta||^2` and
/// `Var||Y||^2 = 2 (sigma^4 ||Q||_{L2}^2 + 2 sigma^2 ||Q^{1/2} zeta||^2)`.
///
/// The trace includes the model's tail; the Hilbert–Schmidt sum is truncated.
pub fn norm_sq_moments(law: &GaussianLaw<'_>) -> Moments {
    let s2 = law.sigma * law.sigma;
    let model = law.model;
    let q_zeta = model
        .quad_form(&law.mean, &law.mean)
        .expect("law mean matches model");
    Moments {
        mean: s2 * model.total_trace() + law.mean.norm_sq(),
        variance: 2.0 * (s2 * s2 * model.hilbert_schmidt_sq() + 2.0 * s2 * q_zeta),
    }
}

/// Moments of `||Π_S Y||^2`: mean `sigma^2 tr(Q Π_S) + ||Π_S zeta||^2` and
/// variance `2 (sigma^4 ||Π_S Q Π_S||_{L2}^2 + 2 sigma^2 <Q Π_S zeta, Π_S zeta>)`.
///
/// Mode sets reaching past the truncation include the tail trace in the mean.
pub fn transformed_norm_sq_moments(law: &GaussianLaw<'_>, s: &Subspace) -> Result<Moments> {
    let model = law.model;
    let s2 = law.sigma * law.sigma;
    let with_tail = matches!(s, Subspace::Modes(set) if set.includes_tail());
    let trace = trace_q_on(model, s, with_tail)?;
    let hs = neumaier_sum(spectrum_on(model, s)?.into_iter().map(|v| v * v));
    let pz = s.project(&law.mean)?;
    let q_pz = model.quad_form(&pz, &pz)?;
    Ok(Moments {
        mean: s2 * trace + pz.norm_sq(),
        variance: 2.0 * (s2 * s2 * hs + 2.0 * s2 * q_pz),
    })
}

/// Gamma-law parameters of the noise norms in the interval and test
/// constructions: `||S(Y/sigma)||^2 ~ Gamma(n/2, 1/(2 lambda))` and, when
/// `U0` is given, `||T(Y/sigma)||^2 ~ Gamma(m/2, 1/(2 mu))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseDecomposition {
    pub lambda: f64,
    pub n: usize,
    pub mu: Option<f64>,
    pub m: Option<usize>,
}

impl NoiseDecomposition {
    /// Shape and rate of the law of `||S(Y/sigma)||^2`.
    pub fn residual_gamma(&self) -> (f64, f64) {
        (0.5 * self.n as f64, 0.5 / self.lambda)
    }

    /// Shape and rate of the law of `||T(Y/sigma)||^2`.
    ///
    /// The shape is `m/2`; a proof line elsewhere writes `n/2`, but `T` is
    /// built from `m` independent coordinates.
    pub fn between_gamma(&self) -> Option<(f64, f64)> {
        Some((0.5 * self.m? as f64, 0.5 / self.mu?))
    }
}

/// `lambda = ||Q(Π_H - Π_U)||`, `n = dim ker(lambda - Q(Π_H - Π_U))`, and
/// with `U0`, `mu = ||Q(Π_U - Π_U0)||`, `m = dim ran Q(Π_U - Π_U0)`.
pub fn noise_decomposition(
    model: &SpectralModel,
    u: &Subspace,
    u0: Option<&Subspace>,
) -> Result<NoiseDecomposition> {
    let complement = u.complement();
    let lambda = match sup_eig_on(model, &complement) {
        Ok(l) if l > 0.0 => l,
        Ok(_) | Err(Error::EmptySubspace(_)) => {
            return Err(Error::ZeroOperator("Q(Π_H - Π_U)"))
        }
        Err(e) => return Err(e),
    };
    let n = top_multiplicity(model, &complement, DEFAULT_MULTIPLICITY_TOL)?;
    let (mu, m) = match u0 {
        None => (None, None),
        Some(u0) => {
            let between = u.minus(u0, model)?;
            let m = rank_on(model, &between)?;
            if m == 0 {
                return Err(Error::ZeroOperator("Q(Π_U - Π_U0)"));
            }
            (Some(sup_eig_on(model, &between)?), Some(m))
        }
    };
    Ok(NoiseDecomposition { lambda, n, mu, m })
}

/// Modes of the top eigenspace `V = ker(lambda - Q(Π_H - Π_U))`; the
/// operator `S` of the interval construction is `Π_V`.
pub fn top_eigenspace(model: &SpectralModel, u: &Subspace, rel_tol: f64) -> Result<Subspace> {
    let set = u
        .as_modes()
        .ok_or_else(|| Error::Unsupported("top eigenspace of a frame complement".into()))?;
    let complement = u.complement();
    let lambda = sup_eig_on(model, &complement)?;
    let lambdas = model.eigenvalues();
    let modes: Vec<usize> = (1..=model.dim())
        .filter(|m| set.modes().binary_search(m).is_err())
        .filter(|&m| (lambda - lambdas[m - 1]).abs() <= rel_tol * lambda)
        .collect();
    Subspace::modes(model.dim(), &modes)
}

/// `||T y||^2` for `T y = sum_{i in I0} sqrt(mu / lambda_i) <y, e_i> e_i`,
/// where `I0` are the modes of `U ∩ U0^⊥` with positive eigenvalue.
pub fn between_operator_norm_sq(
    model: &SpectralModel,
    between: &Subspace,
    mu: f64,
    y: &HVector,
) -> Result<f64> {
    let set = between
        .as_modes()
        .ok_or_else(|| Error::Unsupported("explicit T operator on a frame subspace".into()))?;
    check_dim(model.dim(), y.dim())?;
    let lambdas = model.eigenvalues();
    Ok(neumaier_sum(
        set.modes()
            .iter()
            .filter(|&&m| lambdas[m - 1] > 0.0)
            .map(|&m| mu / lambdas[m - 1] * y[m - 1] * y[m - 1]),
    ))
}
