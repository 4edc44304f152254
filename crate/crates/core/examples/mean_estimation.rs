//! Projection estimator of the mean, the variance estimator, and their risks.

use hilbert_gauss::estimators::{est_mean, est_variance, risk_mean, risk_partial, variance_est_risk};
use hilbert_gauss::harness::derive_stream;
use hilbert_gauss::processes::wiener_model;
use hilbert_gauss::sampling::{sample, GaussianLaw};
use hilbert_gauss::{HVector, Result, Subspace};

fn main() -> Result<()> {
    let w = wiener_model(256)?;
    let u = Subspace::modes(256, &[1, 2, 3])?;
    let zeta = HVector::from_modes(256, &[(1, 1.0), (2, -0.4), (3, 0.1)])?;
    let sigma = 0.8;
    let law = GaussianLaw::new(&w, zeta.clone(), sigma)?.with_subspace(u.clone())?;

    let y = sample(&law, &mut derive_stream(1, 0));
    let zeta_hat = est_mean(&y, &u)?;
    println!("zeta_hat[1..3] = {:.4} {:.4} {:.4}", zeta_hat[0], zeta_hat[1], zeta_hat[2]);
    println!("s2 = {:.4} (sigma^2 = {:.4})", est_variance(&y, &w, &u, false)?, sigma * sigma);

    println!("risk of zeta_hat  = {:.6}", risk_mean(&w, &u, sigma, false)?);
    println!("risk of s2        = {:.6} (bound 2 sigma^4 = {:.6})", variance_est_risk(&w, &u, sigma)?, 2.0 * sigma.powi(4));

    // dropping mode 3 trades variance for bias
    let v = Subspace::modes(256, &[1, 2])?;
    let r = risk_partial(&w, &v, &zeta, sigma)?;
    println!("observe only modes 1, 2: bias^2 {:.6} + variance {:.6} = risk {:.6}", r.bias * r.bias, r.variance, r.risk);
    Ok(())
}
