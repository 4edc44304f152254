//! Simple linear regression Y = beta_0 e + beta_1 x + sigma eps.

use hilbert_gauss::processes::custom_model;
use hilbert_gauss::regression::{ci_beta_unknown, test_beta, DesignOperator};
use hilbert_gauss::{HVector, Result};

fn main() -> Result<()> {
    let x = [0.0, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5];
    let y = [0.9, 1.7, 2.1, 2.8, 3.2, 4.1, 4.4, 5.2];
    // white noise on eight coordinates
    let model = custom_model(vec![1.0; 8], 0.0)?;
    let a = DesignOperator::new(&model, vec![HVector::from(vec![1.0; 8]), HVector::from(x.to_vec())])?;
    let obs = HVector::from(y.to_vec());

    let beta = a.lse(&obs)?;
    println!("intercept {:.4}, slope {:.4}", beta[0], beta[1]);

    let slope = ci_beta_unknown(&[0.0, 1.0], &a, &obs, &model, 0.05, false)?;
    println!("95% interval for the slope: [{:.4}, {:.4}]", slope.lower(), slope.upper());

    // is the slope zero?
    let r = test_beta(&obs, &a, &[vec![1.0, 0.0]], &model, 0.05)?;
    println!("F statistic {:.2} against {:.2}: reject = {}", r.statistic, r.threshold, r.reject);

    let b = a.pullback_functional(&[0.0, 1.0])?;
    let pulled: Vec<String> = b.coeffs().iter().map(|v| format!("{v:+.3}")).collect();
    println!("slope as a functional of Y: {}", pulled.join(" "));
    Ok(())
}
