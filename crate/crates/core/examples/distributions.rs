//! Quantiles used by the intervals and tests, and the ratio laws behind them.

use hilbert_gauss::distributions::{
    f_quantile, gamma_ratio_reduction, norm_quantile, t_quantile, t_ratio_reduction,
};
use hilbert_gauss::Result;

fn main() -> Result<()> {
    println!("z_0.975        = {:.12}", norm_quantile(0.975)?);
    for n in [1.0, 2.0, 5.0, 30.0] {
        println!("t_{n},0.975     = {:.6}", t_quantile(n, 0.975)?);
    }
    println!("F_2,1,0.95     = {:.6}", f_quantile(2.0, 1.0, 0.95)?);
    println!("F_2,5,0.95     = {:.6}", f_quantile(2.0, 5.0, 0.95)?);

    // N(0,1) / sqrt(Gamma(1/2, pi^2/8)) is a scaled t_1
    let tr = t_ratio_reduction(0.5, std::f64::consts::PI.powi(2) / 8.0)?;
    println!("normal over root gamma = {:.5} * t_{}", tr.scale, tr.dof);
    println!("  Pearson VII density at 0: {:.5}", tr.pearson.pdf(0.0));

    let gr = gamma_ratio_reduction(1.0, 2.0, 0.5, 0.5)?;
    println!("gamma ratio = {:.5} * F_({}, {})", gr.scale, gr.dof_num, gr.dof_den);
    Ok(())
}
