//! Karhunen–Loève draws of Brownian motion and the bridge, evaluated on a
//! grid, and recovered coefficients from the sampled path.

use hilbert_gauss::harness::derive_stream;
use hilbert_gauss::processes::{bridge_model, eval_vector, project_trajectory, wiener_model, Grid};
use hilbert_gauss::sampling::{sample, GaussianLaw};
use hilbert_gauss::{HVector, Result};

fn main() -> Result<()> {
    let grid = Grid::uniform(513)?;
    for (name, model) in [("wiener", wiener_model(256)?), ("bridge", bridge_model(256)?)] {
        let law = GaussianLaw::new(&model, HVector::zeros(256), 1.0)?;
        let y = sample(&law, &mut derive_stream(2024, 0));
        let path = eval_vector(&model, &y, &grid)?;
        let ends = (path[0], path[path.len() - 1]);
        println!("{name}: Y(0) = {:.4}, Y(1/2) = {:.4}, Y(1) = {:.4}", ends.0, path[256], ends.1);

        let back = project_trajectory(&model, &grid, &path)?;
        let worst = (1..=10).map(|k| (back[k - 1] - y[k - 1]).abs()).fold(0.0, f64::max);
        println!("{name}: first ten coefficients recovered from the path to {worst:.1e}");
    }

    // a mean function lifts the whole path
    let w = wiener_model(64)?;
    let zeta = HVector::from_modes(64, &[(1, 1.0)])?;
    let law = GaussianLaw::new(&w, zeta, 0.25)?;
    let grid = Grid::uniform(5)?;
    for i in 0..3 {
        let path = eval_vector(&w, &sample(&law, &mut derive_stream(7, i)), &grid)?;
        let shown: Vec<String> = path.iter().map(|v| format!("{v:+.3}")).collect();
        println!("sigma = 0.25 draw {i}: {}", shown.join(" "));
    }
    Ok(())
}
