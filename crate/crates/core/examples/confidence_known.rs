//! Interval for the amplitude of a Wiener mode when sigma is known.

use hilbert_gauss::inference::{ci_known, KnownSigmaCi};
use hilbert_gauss::processes::wiener_model;
use hilbert_gauss::{HVector, Result, Subspace};

fn main() -> Result<()> {
    let w = wiener_model(256)?;
    let u = Subspace::modes(256, &[4])?;
    // <b, zeta> is the amplitude of sqrt(2) sin(3.5 pi t)
    let b = HVector::from_modes(256, &[(4, 2f64.sqrt())])?;
    let y = HVector::from_modes(256, &[(4, 0.35), (1, 0.6), (7, -0.1)])?;

    let ci = ci_known(&b, &y, &w, &u, 1.0, 0.05)?;
    println!(
        "95% interval: {:.5} +/- {:.5} = [{:.5}, {:.5}]",
        ci.center,
        ci.half_width,
        ci.lower(),
        ci.upper()
    );

    for alpha in [0.01, 0.05, 0.10, 0.32] {
        let prepared = KnownSigmaCi::new(&b, &w, &u, 1.0, alpha)?;
        println!("alpha = {alpha:.2}: half-width {:.5}", prepared.half_width());
    }
    Ok(())
}
