//! Subspaces that are not spanned by single eigenvectors.

use hilbert_gauss::processes::custom_model;
use hilbert_gauss::spectral::{span, spectrum_on, trace_q_on};
use hilbert_gauss::{Error, HVector, Result};

fn main() -> Result<()> {
    // eigenvalue 2 has multiplicity 2
    let model = custom_model(vec![2.0, 2.0, 1.0, 0.5], 0.0)?;
    let diag = HVector::from(vec![1.0, 1.0, 0.0, 0.0]);
    let u = span(&model, std::slice::from_ref(&diag))?;
    println!("span(e_1 + e_2) has rank {}", u.truncated_rank());
    println!("tr(Q P_U) = {}", trace_q_on(&model, &u, false)?);
    println!("spectrum on the complement: {:?}", spectrum_on(&model, &u.complement())?);

    let y = HVector::from(vec![3.0, 1.0, 4.0, 1.0]);
    let p = u.project(&y)?;
    println!("projection of (3, 1, 4, 1): {:?}", p.coeffs());

    let skewed = custom_model(vec![2.0, 1.5, 1.0, 0.5], 0.0)?;
    match span(&skewed, &[diag]) {
        Err(Error::NotInvariant { defect }) => println!("with distinct eigenvalues: not invariant ({defect:.3})"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
