//! Testing whether the mean lies in a smaller subspace.

use hilbert_gauss::harness::derive_stream;
use hilbert_gauss::inference::SubspaceTest;
use hilbert_gauss::processes::wiener_model;
use hilbert_gauss::sampling::{sample, GaussianLaw};
use hilbert_gauss::{HVector, Result, Subspace};

fn main() -> Result<()> {
    let w = wiener_model(256)?;
    let u = Subspace::modes(256, &[4, 5, 6])?;
    let u0 = Subspace::modes(256, &[4])?;
    let test = SubspaceTest::new(&w, &u, &u0, 0.05)?;
    let p = test.params();
    println!(
        "lambda = {:.5}, mu = {:.5}, n = {}, m = {}, prefactor = {}, F threshold = {:.2}",
        p.lambda,
        p.mu,
        p.n,
        p.m,
        p.prefactor(),
        test.threshold()
    );

    for (label, zeta) in [
        ("zeta in U0", HVector::from_modes(256, &[(4, 1.0)])?),
        ("zeta off U0", HVector::from_modes(256, &[(4, 1.0), (5, 0.2), (6, 0.2)])?),
    ] {
        let law = GaussianLaw::new(&w, zeta, 0.1)?;
        let trials = 2000;
        let rejections = (0..trials)
            .filter(|&i| test.apply(&sample(&law, &mut derive_stream(5, i))).is_ok_and(|r| r.reject))
            .count();
        println!("{label}: rejected {rejections} of {trials}");
    }
    Ok(())
}
