//! The projection estimator of <b, zeta> against other unbiased linear
//! estimators <c, Y>.

use hilbert_gauss::estimators::gm_variances;
use hilbert_gauss::processes::wiener_model;
use hilbert_gauss::{Error, HVector, Result, Subspace};

fn main() -> Result<()> {
    let w = wiener_model(32)?;
    let u = Subspace::modes(32, &[2, 5])?;
    let b = HVector::from_modes(32, &[(2, 1.0), (5, 0.5)])?;

    for extra in [0.0, 0.1, 1.0] {
        // c agrees with b on U and adds mass outside it
        let c = HVector::from_modes(32, &[(2, 1.0), (5, 0.5), (1, extra), (9, extra)])?;
        let gm = gm_variances(&b, &c, &w, &u, 1.0)?;
        println!(
            "extra = {extra:>3}: var best {:.6}, var c {:.6}, excess {:.6}",
            gm.var_best,
            gm.var_c,
            gm.excess()
        );
    }

    let biased = HVector::from_modes(32, &[(2, 2.0)])?;
    match gm_variances(&b, &biased, &w, &u, 1.0) {
        Err(Error::NotUnbiased(gap)) => println!("c differs from b on U by {gap:.3}: rejected"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
