//! Normal, Student-t, Fisher, Gamma and chi-square laws, plus the two ratio
//! reductions used by the interval and test constructions:
//!
//! * `X / sqrt(Y)` with `X ~ N(0,1)`, `Y ~ Gamma(a, b)` is `sqrt(b/a)` times a
//!   `t_{2a}` variable, i.e. Pearson type VII `P(sqrt(2b), a + 1/2)`.
//! * `X / Y` with `X ~ Gamma(a, b)`, `Y ~ Gamma(c, d)` is `(a d)/(b c)` times an
//!   `F_{2a, 2c}` variable, i.e. the generalized Fisher `F_{2a,2c}((a d)/(b c), 1)`.
//!
//! Gamma laws are parameterized by shape and *rate*. CDFs come from the
//! regularized incomplete gamma and beta functions; quantiles invert them by
//! bracketing bisection down to adjacent floating point numbers.

use std::f64::consts::{PI, SQRT_2};

use rand::Rng;
use rand_distr::Distribution;
use statrs::function::beta::{beta_reg, ln_beta};
use statrs::function::gamma::{gamma_lr, ln_gamma};

use crate::error::{invalid, Result};

fn check_prob(a: f64) -> Result<()> {
    if a > 0.0 && a < 1.0 {
        Ok(())
    } else {
        Err(invalid("probability", format!("{a} is not in (0, 1)")))
    }
}

fn check_positive(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(name, format!("{v}; must be positive and finite")))
    }
}

/// Smallest `x` in the bracket with `cdf(x) >= a`, to floating point
/// resolution. The bracket is widened geometrically until it holds `a`.
fn invert_cdf(cdf: impl Fn(f64) -> f64, a: f64, mut lo: f64, mut hi: f64, floor: Option<f64>) -> f64 {
    let mut step = (hi - lo).max(1.0);
    while cdf(hi) < a {
        lo = hi;
        hi += step;
        step *= 2.0;
    }
    while cdf(lo) > a {
        hi = lo;
        lo -= step;
        step *= 2.0;
        if let Some(f) = floor {
            if lo < f {
                lo = f;
                break;
            }
        }
    }
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if cdf(mid) < a {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // pick whichever end matches a more closely
    if (cdf(lo) - a).abs() < (cdf(hi) - a).abs() {
        lo
    } else {
        hi
    }
}

/// `Phi(x)`.
pub fn norm_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / SQRT_2)
}

pub fn norm_pdf(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * PI).sqrt()
}

/// `z_a`, the `a`-quantile of `N(0,1)`.
pub fn norm_quantile(a: f64) -> Result<f64> {
    check_prob(a)?;
    if a == 0.5 {
        return Ok(0.0);
    }
    // solve in the lower half and reflect, so both tails get full precision
    let p = a.min(1.0 - a);
    let z = invert_cdf(norm_cdf, p, -40.0, 0.0, None);
    Ok(if a < 0.5 { z } else { -z })
}

/// CDF of Student's `t_nu`; `nu` need not be an integer.
pub fn t_cdf(x: f64, nu: f64) -> f64 {
    if x == 0.0 {
        return 0.5;
    }
    let tail = 0.5 * beta_reg(0.5 * nu, 0.5, nu / (nu + x * x));
    if x > 0.0 {
        1.0 - tail
    } else {
        tail
    }
}

pub fn t_pdf(x: f64, nu: f64) -> f64 {
    let ln = -0.5 * nu.ln() - ln_beta(0.5, 0.5 * nu) - 0.5 * (nu + 1.0) * (1.0 + x * x / nu).ln();
    ln.exp()
}

/// `t_{nu,a}`, the `a`-quantile of `t_nu`.
pub fn t_quantile(nu: f64, a: f64) -> Result<f64> {
    check_positive("dof", nu)?;
    check_prob(a)?;
    if a == 0.5 {
        return Ok(0.0);
    }
    let p = a.min(1.0 - a);
    let t = invert_cdf(|x| t_cdf(x, nu), p, -10.0, 0.0, None);
    Ok(if a < 0.5 { t } else { -t })
}

/// CDF of Fisher's `F_{m,n}`.
pub fn f_cdf(x: f64, m: f64, n: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let mx = m * x;
    beta_reg(0.5 * m, 0.5 * n, mx / (mx + n))
}

pub fn f_pdf(x: f64, m: f64, n: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let ln = 0.5 * m * (m / n).ln() + (0.5 * m - 1.0) * x.ln()
        - 0.5 * (m + n) * (1.0 + m * x / n).ln()
        - ln_beta(0.5 * m, 0.5 * n);
    ln.exp()
}

/// `F_{m,n,a}`, the `a`-quantile of `F_{m,n}`.
pub fn f_quantile(m: f64, n: f64, a: f64) -> Result<f64> {
    check_positive("dof", m)?;
    check_positive("dof", n)?;
    check_prob(a)?;
    Ok(invert_cdf(|x| f_cdf(x, m, n), a, 0.0, 1.0, Some(0.0)))
}

/// CDF of `Gamma(shape, rate)`.
pub fn gamma_cdf(x: f64, shape: f64, rate: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        gamma_lr(shape, rate * x)
    }
}

pub fn gamma_pdf(x: f64, shape: f64, rate: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    (shape * rate.ln() + (shape - 1.0) * x.ln() - rate * x - ln_gamma(shape)).exp()
}

pub fn gamma_quantile(shape: f64, rate: f64, a: f64) -> Result<f64> {
    check_positive("shape", shape)?;
    check_positive("rate", rate)?;
    check_prob(a)?;
    Ok(invert_cdf(|x| gamma_cdf(x, shape, rate), a, 0.0, shape / rate, Some(0.0)))
}

/// CDF of `chi^2_k = Gamma(k/2, 1/2)`.
pub fn chi2_cdf(x: f64, k: f64) -> f64 {
    gamma_cdf(x, 0.5 * k, 0.5)
}

pub fn chi2_quantile(k: f64, a: f64) -> Result<f64> {
    gamma_quantile(0.5 * k, 0.5, a)
}

/// One draw from `Gamma(shape, rate)`.
///
/// Marsaglia–Tsang squeeze for shape >= 1; smaller shapes are boosted from
/// shape + 1.
pub fn gamma_sample<R: Rng + ?Sized>(rng: &mut R, shape: f64, rate: f64) -> Result<f64> {
    check_positive("shape", shape)?;
    check_positive("rate", rate)?;
    let dist = rand_distr::Gamma::new(shape, 1.0 / rate)
        .map_err(|e| invalid("gamma", e.to_string()))?;
    Ok(dist.sample(rng))
}

/// Student-t draw by inversion of [`t_cdf`].
pub fn t_sample<R: Rng + ?Sized>(rng: &mut R, nu: f64) -> Result<f64> {
    let u = open_unit(rng);
    t_quantile(nu, u)
}

/// Fisher draw by inversion of [`f_cdf`].
pub fn f_sample<R: Rng + ?Sized>(rng: &mut R, m: f64, n: f64) -> Result<f64> {
    let u = open_unit(rng);
    f_quantile(m, n, u)
}

fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            return u;
        }
    }
}

/// Pearson type VII law `P(alpha, m)` with density
/// `Gamma(m) / (sqrt(pi) alpha Gamma(m - 1/2)) (1 + x^2/alpha^2)^(-m)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pearson7Params {
    pub alpha: f64,
    pub m: f64,
}

impl Pearson7Params {
    pub fn new(alpha: f64, m: f64) -> Result<Self> {
        check_positive("alpha", alpha)?;
        if !(m > 0.5 && m.is_finite()) {
            return Err(invalid("m", format!("{m}; must exceed 1/2")));
        }
        Ok(Self { alpha, m })
    }

    /// `t_nu = P(sqrt(nu), (nu + 1)/2)`.
    pub fn student_t(nu: f64) -> Result<Self> {
        check_positive("dof", nu)?;
        Self::new(nu.sqrt(), 0.5 * (nu + 1.0))
    }

    /// Law of `c Z` for `Z ~ P(alpha, m)`.
    pub fn scaled(self, c: f64) -> Result<Self> {
        check_positive("scale", c)?;
        Self::new(c * self.alpha, self.m)
    }

    pub fn pdf(&self, x: f64) -> f64 {
        let ln = ln_gamma(self.m)
            - 0.5 * PI.ln()
            - self.alpha.ln()
            - ln_gamma(self.m - 0.5)
            - self.m * (1.0 + (x / self.alpha).powi(2)).ln();
        ln.exp()
    }

    /// CDF through the `t` law it rescales.
    pub fn cdf(&self, x: f64) -> f64 {
        let nu = 2.0 * self.m - 1.0;
        t_cdf(x * nu.sqrt() / self.alpha, nu)
    }
}

/// Generalized Fisher law `F_{m,n}(a, b)`; `F_{m,n}(1, 1)` is `F_{m,n}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenFisherParams {
    pub m: f64,
    pub n: f64,
    pub a: f64,
    pub b: f64,
}

impl GenFisherParams {
    pub fn new(m: f64, n: f64, a: f64, b: f64) -> Result<Self> {
        check_positive("m", m)?;
        check_positive("n", n)?;
        check_positive("a", a)?;
        check_positive("b", b)?;
        Ok(Self { m, n, a, b })
    }

    pub fn fisher(m: f64, n: f64) -> Result<Self> {
        Self::new(m, n, 1.0, 1.0)
    }

    /// Law of `c Z` for `Z ~ F_{m,n}(a, b)`.
    pub fn scaled(self, c: f64) -> Result<Self> {
        check_positive("scale", c)?;
        Self::new(self.m, self.n, c * self.a, self.b)
    }

    pub fn pdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let (m, n, a, b) = (self.m, self.n, self.a, self.b);
        let r = m / n;
        let u = x / a;
        let ln = 0.5 * m * r.ln() - (a * b).ln() - ln_beta(0.5 * m, 0.5 * n)
            + (0.5 * m / b - 1.0) * u.ln()
            - 0.5 * (m + n) * (1.0 + r * u.powf(1.0 / b)).ln();
        ln.exp()
    }

    /// CDF: `Z ~ F_{m,n}(a,b)` has `(Z/a)^(1/b) ~ F_{m,n}`.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        f_cdf((x / self.a).powf(1.0 / self.b), self.m, self.n)
    }
}

/// `X / sqrt(Y) = scale * Z` with `Z ~ t_dof`, for `X ~ N(0,1)` independent
/// of `Y ~ Gamma(shape, rate)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TRatio {
    pub scale: f64,
    pub dof: f64,
    pub pearson: Pearson7Params,
}

pub fn t_ratio_reduction(shape: f64, rate: f64) -> Result<TRatio> {
    check_positive("shape", shape)?;
    check_positive("rate", rate)?;
    Ok(TRatio {
        scale: (rate / shape).sqrt(),
        dof: 2.0 * shape,
        pearson: Pearson7Params::new((2.0 * rate).sqrt(), shape + 0.5)?,
    })
}

/// `X / Y = scale * Z` with `Z ~ F_{dof_num, dof_den}`, for independent
/// `X ~ Gamma(shape_x, rate_x)` and `Y ~ Gamma(shape_y, rate_y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaRatio {
    pub scale: f64,
    pub dof_num: f64,
    pub dof_den: f64,
    pub fisher: GenFisherParams,
}

pub fn gamma_ratio_reduction(
    shape_x: f64,
    rate_x: f64,
    shape_y: f64,
    rate_y: f64,
) -> Result<GammaRatio> {
    check_positive("shape_x", shape_x)?;
    check_positive("rate_x", rate_x)?;
    check_positive("shape_y", shape_y)?;
    check_positive("rate_y", rate_y)?;
    let scale = shape_x * rate_y / (rate_x * shape_y);
    Ok(GammaRatio {
        scale,
        dof_num: 2.0 * shape_x,
        dof_den: 2.0 * shape_y,
        fisher: GenFisherParams::new(2.0 * shape_x, 2.0 * shape_y, scale, 1.0)?,
    })
}
