//! Wiener and Brownian bridge covariance operators in their eigenbases.

use hilbert_gauss::processes::{analytic_kernel, bridge_model, kernel, wiener_model};
use hilbert_gauss::spectral::{sup_eig_on, trace_q_on};
use hilbert_gauss::{Result, Subspace};

fn main() -> Result<()> {
    let w = wiener_model(256)?;
    let b = bridge_model(256)?;
    println!("wiener: lambda_1 = {:.6}, lambda_4 = {:.6}", w.eigenvalue(1)?, w.eigenvalue(4)?);
    println!(
        "wiener: truncated trace {:.9}, tail {:.3e}, total {}",
        w.truncated_trace(),
        w.tail_trace(),
        w.total_trace()
    );
    println!("bridge: total trace {} (1/6 = {})", b.total_trace(), 1.0 / 6.0);

    for (s, t) in [(0.25, 0.5), (0.5, 0.5), (0.9, 0.3)] {
        println!(
            "k({s}, {t}): wiener {:.5} vs min = {:.5}; bridge {:.5} vs min - st = {:.5}",
            kernel(&w, s, t)?,
            analytic_kernel(w.basis(), s, t).unwrap(),
            kernel(&b, s, t)?,
            analytic_kernel(b.basis(), s, t).unwrap(),
        );
    }

    let u = Subspace::modes(256, &[4])?;
    let rest = u.complement();
    println!(
        "U = span(e_4): tr(Q P_U) = {:.7}, tr(Q P_U^perp) = {:.7}, ||Q P_U^perp|| = {:.7}",
        trace_q_on(&w, &u, false)?,
        trace_q_on(&w, &rest, true)?,
        sup_eig_on(&w, &rest)?,
    );
    Ok(())
}
