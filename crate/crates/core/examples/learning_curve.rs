//! Risk of keeping only the first n modes of U, relative to all of U.

use hilbert_gauss::estimators::learning_gap;
use hilbert_gauss::processes::wiener_model;
use hilbert_gauss::{HVector, Result, Subspace};

fn main() -> Result<()> {
    let w = wiener_model(256)?;
    let modes: Vec<usize> = (1..=12).collect();
    let u = Subspace::modes(256, &modes)?;
    // coefficients decaying like 1/k^2
    let entries: Vec<(usize, f64)> = modes.iter().map(|&k| (k, 1.0 / (k * k) as f64)).collect();
    let zeta = HVector::from_modes(256, &entries)?;

    for sigma in [0.1, 0.5] {
        println!("sigma = {sigma}");
        let mut best = (f64::INFINITY, 0);
        for n in 0..=modes.len() {
            let gap = learning_gap(&w, &u, &zeta, sigma, n, false)?;
            if gap < best.0 {
                best = (gap, n);
            }
            println!("  keep {n:>2}: R[P_V Y] - R[P_U Y] = {gap:+.6}");
        }
        println!("  lowest risk with {} modes", best.1);
    }
    Ok(())
}
