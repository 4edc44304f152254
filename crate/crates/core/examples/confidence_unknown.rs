//! Interval for the same amplitude when sigma has to be estimated.

use hilbert_gauss::inference::{ci_params_unknown, UnknownSigmaCi};
use hilbert_gauss::harness::derive_stream;
use hilbert_gauss::processes::wiener_model;
use hilbert_gauss::sampling::{sample, GaussianLaw};
use hilbert_gauss::{HVector, Result, Subspace};

fn main() -> Result<()> {
    let w = wiener_model(256)?;
    let u = Subspace::modes(256, &[4])?;
    let b = HVector::from_modes(256, &[(4, 2f64.sqrt())])?;

    let p = ci_params_unknown(&w, &u, true)?;
    println!("tau = {:.7}, lambda = {:.7}, n = {}", p.tau, p.lambda, p.n);
    let ci = UnknownSigmaCi::new(&b, &w, &u, 0.05, true)?;
    println!("half-width = {:.4} * s_hat * sqrt(<Qb, b>)", ci.prefactor());

    let law = GaussianLaw::new(&w, HVector::from_modes(256, &[(4, 0.3)])?, 0.5)?;
    for i in 0..4 {
        let y = sample(&law, &mut derive_stream(99, i));
        let (interval, s2) = ci.interval_with_variance(&y)?;
        println!(
            "draw {i}: s_hat = {:.3}, interval [{:.4}, {:.4}], truth {:.4}",
            s2.sqrt(),
            interval.lower(),
            interval.upper(),
            0.3 * 2f64.sqrt()
        );
    }
    Ok(())
}
