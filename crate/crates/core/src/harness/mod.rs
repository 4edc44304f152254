//! Monte Carlo experiments with reproducible, replicate-indexed streams.
//!
//! Replicate `i` draws from `derive_stream(seed, i)` whether replicates run
//! serially or on the rayon pool, and results are reduced in index order, so
//! a report depends only on its configuration.

mod config;
mod report;

use std::collections::BTreeMap;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use config::{ExperimentConfig, ExperimentKind, ModelSpec};
pub use report::{Check, Comparison, Provenance, RawData, Report};

use crate::diagnostics::{binomial_se, correlation, ks_critical_one, ks_critical_two, ks_one_sample, ks_two_sample, summarize};
use crate::distributions::{f_sample, gamma_cdf, gamma_ratio_reduction, t_ratio_reduction, t_sample};
use crate::error::{Error, Result};
use crate::estimators::{est_variance, learning_gap, risk_mean, variance_est_risk};
use crate::inference::{KnownSigmaCi, SubspaceTest, UnknownSigmaCi};
use crate::sampling::{
    between_operator_norm_sq, noise_decomposition, norm_sq_moments, sample, top_eigenspace,
    transformed_norm_sq_moments, GaussianLaw, NormalSource,
};
use crate::spectral::{HVector, Subspace, DEFAULT_MULTIPLICITY_TOL};
use config::Resolved;

/// Significance level of the Kolmogorov–Smirnov checks.
pub const KS_ALPHA: f64 = 0.05;

/// Independent stream for replicate `replicate` under `master_seed`.
pub fn derive_stream(master_seed: u64, replicate: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(replicate);
    rng
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<Report> {
    let kind = config
        .kind
        .ok_or_else(|| Error::Config("experiment kind is missing".into()))?;
    let r = config.resolve()?;
    let start = Instant::now();
    let outcome = match kind {
        ExperimentKind::CoverageKnown => coverage_known(config, &r)?,
        ExperimentKind::CoverageUnknown => coverage_unknown(config, &r)?,
        ExperimentKind::Level => level(config, &r)?,
        ExperimentKind::Unbiasedness => unbiasedness(config, &r)?,
        ExperimentKind::Moments => moments(config, &r)?,
        ExperimentKind::Independence => independence(config, &r)?,
        ExperimentKind::NoiseLaw => noise_law(config, &r)?,
        ExperimentKind::Risk => risk(config, &r)?,
        ExperimentKind::LearningCurve => learning_curve(config, &r)?,
    };
    Ok(Report {
        kind: kind.label().into(),
        model: config.model.label(),
        seed: config.seed,
        replicates: config.replicates,
        params: outcome.params,
        pass: outcome.checks.iter().all(|c| c.pass),
        checks: outcome.checks,
        runtime_secs: start.elapsed().as_secs_f64(),
        raw: outcome.raw,
    })
}

struct Outcome {
    params: BTreeMap<String, f64>,
    checks: Vec<Check>,
    raw: RawData,
}

fn params<const K: usize>(entries: [(&str, f64); K]) -> BTreeMap<String, f64> {
    entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// Runs `f` once per replicate on its own stream and stacks the rows.
fn simulate<F>(config: &ExperimentConfig, columns: &[&str], f: F) -> Result<RawData>
where
    F: Fn(&mut ChaCha8Rng) -> Result<Vec<f64>> + Sync,
{
    let run = |i: usize| f(&mut derive_stream(config.seed, i as u64));
    let rows: Result<Vec<Vec<f64>>> = if config.parallel {
        (0..config.replicates).into_par_iter().map(run).collect()
    } else {
        (0..config.replicates).map(run).collect()
    };
    Ok(RawData {
        columns: columns.iter().map(|c| c.to_string()).collect(),
        rows: rows?,
    })
}

fn column(raw: &RawData, j: usize) -> Vec<f64> {
    raw.rows.iter().map(|row| row[j]).collect()
}

fn require_b(r: &Resolved) -> Result<&HVector> {
    r.b.as_ref()
        .ok_or_else(|| Error::Config("this experiment needs a functional `b`".into()))
}

fn require_u0(r: &Resolved) -> Result<&Subspace> {
    r.u0.as_ref()
        .ok_or_else(|| Error::Config("this experiment needs a null subspace `u0`".into()))
}

/// Law of `Y` with the mean checked to lie in `s`.
fn law_in<'m>(config: &ExperimentConfig, r: &'m Resolved, s: &Subspace) -> Result<GaussianLaw<'m>> {
    GaussianLaw::new(&r.model, r.zeta.clone(), config.sigma)?
        .with_subspace(s.clone())
        .map_err(|e| Error::Config(format!("zeta is not in the required subspace: {e}")))
}

fn proportion_check(
    name: &str,
    hits: &[f64],
    target: f64,
    comparison: Comparison,
) -> Check {
    let se = binomial_se(target, hits.len());
    let p = hits.iter().sum::<f64>() / hits.len() as f64;
    Check::new(name, p, se, target, Provenance::Paper, 3.0 * se, comparison)
}

fn coverage_known(config: &ExperimentConfig, r: &Resolved) -> Result<Outcome> {
    let b = require_b(r)?;
    let law = law_in(config, r, &r.u)?;
    let ci = KnownSigmaCi::new(b, &r.model, &r.u, config.sigma, config.alpha)?;
    let truth = b.dot(&r.zeta);
    let raw = simulate(config, &["center", "covered"], |rng| {
        let interval = ci.interval(&sample(&law, rng))?;
        Ok(vec![interval.center, f64::from(u8::from(interval.contains(truth)))])
    })?;
    Ok(Outcome {
        params: params([("half_width", ci.half_width())]),
        checks: vec![proportion_check(
            "coverage",
            &column(&raw, 1),
            1.0 - config.alpha,
            Comparison::TwoSided,
        )],
        raw,
    })
}

fn coverage_unknown(config: &ExperimentConfig, r: &Resolved) -> Result<Outcome> {
    let b = require_b(r)?;
    let law = law_in(config, r, &r.u)?;
    let ci = UnknownSigmaCi::new(b, &r.model, &r.u, config.alpha, config.use_tail)?;
    let truth = b.dot(&r.zeta);
    let raw = simulate(config, &["center", "half_width", "covered"], |rng| {
        let interval = ci.interval(&sample(&law, rng))?;
        Ok(vec![
            interval.center,
            interval.half_width,
            f64::from(u8::from(interval.contains(truth))),
        ])
    })?;
    let p = ci.params();
    Ok(Outcome {
        params: params([
            ("tau", p.tau),
            ("lambda", p.lambda),
            ("n", p.n as f64),
            ("prefactor", ci.prefactor()),
        ]),
        checks: vec![proportion_check(
            "coverage",
            &column(&raw, 2),
            1.0 - config.alpha,
            Comparison::AtLeast,
        )],
        raw,
    })
}

fn level(config: &ExperimentConfig, r: &Resolved) -> Result<Outcome> {
    let u0 = require_u0(r)?;
    let law = law_in(config, r, u0)?;
    let test = SubspaceTest::new(&r.model, &r.u, u0, config.alpha)?;
    let raw = simulate(config, &["statistic", "reject"], |rng| {
        let result = test.apply(&sample(&law, rng))?;
        Ok(vec![result.statistic, f64::from(u8::from(result.reject))])
    })?;
    let p = test.params();
    Ok(Outcome {
        params: params([
            ("lambda", p.lambda),
            ("mu", p.mu),
            ("n", p.n as f64),
            ("m", p.m as f64),
            ("prefactor", p.prefactor()),
            ("threshold", test.threshold()),
        ]),
        checks: vec![proportion_check(
            "rejection rate",
            &column(&raw, 1),
            config.alpha,
            Comparison::AtMost,
        )],
        raw,
    })
}

fn mean_check(name: String, values: &[f64], target: f64, provenance: Provenance) -> Check {
    let s = summarize(values);
    Check::new(name, s.mean, s.mean_se, target, provenance, 3.0 * s.mean_se, Comparison::TwoSided)
}

fn unbiasedness(config: &ExperimentConfig, r: &Resolved) -> Result<Outcome> {
    let law = law_in(config, r, &r.u)?;
    let modes = r.u.as_modes().expect("configured subspaces are mode sets").modes().to_vec();
    let mut columns: Vec<String> = modes.iter().map(|m| format!("zeta_hat[{m}]")).collect();
    columns.push("s2".into());
    let column_refs: Vec<&str> = columns.iter().map(String::as_str).collect();
    let raw = simulate(config, &column_refs, |rng| {
        let y = sample(&law, rng);
        let mut row: Vec<f64> = modes.iter().map(|&m| y[m - 1]).collect();
        row.push(est_variance(&y, &r.model, &r.u, config.use_tail)?);
        Ok(row)
    })?;
    let mut checks: Vec<Check> = modes
        .iter()
        .enumerate()
        .map(|(j, &m)| {
            mean_check(format!("mean of zeta_hat[{m}]"), &column(&raw, j), r.zeta[m - 1], Provenance::Paper)
        })
        .collect();
    let s2 = config.sigma * config.sigma;
    checks.push(mean_check("mean of s2".into(), &column(&raw, modes.len()), s2, Provenance::Paper));
    Ok(Outcome {
        params: params([("sigma2", s2)]),
        checks,
        raw,
    })
}

fn moments(config: &ExperimentConfig, r: &Resolved) -> Result<Outcome> {
    let law = GaussianLaw::new(&r.model, r.zeta.clone(), config.sigma)?;
    let whole = r.u.truncated_rank() == 0;
    let target = if whole {
        norm_sq_moments(&law)
    } else {
        transformed_norm_sq_moments(&law, &r.u)?
    };
    let raw = simulate(config, &["norm_sq"], |rng| {
        let y = sample(&law, rng);
        Ok(vec![if whole { y.norm_sq() } else { r.u.project(&y)?.norm_sq() }])
    })?;
    let s = summarize(&column(&raw, 0));
    let label = if whole { "||Y||^2" } else { "||P_U Y||^2" };
    Ok(Outcome {
        params: params([("mean", target.mean), ("variance", target.variance)]),
        checks: vec![
            Check::new(
                format!("mean of {label}"),
                s.mean,
                s.mean_se,
                target.mean,
                Provenance::Paper,
                3.0 * s.mean_se,
                Comparison::TwoSided,
            ),
            Check::new(
                format!("variance of {label}"),
                s.variance,
                s.variance_se,
                target.variance,
                Provenance::Paper,
                3.0 * s.variance_se,
                Comparison::TwoSided,
            ),
        ],
        raw,
    })
}

fn independence(config: &ExperimentConfig, r: &Resolved) -> Result<Outcome> {
    let b = require_b(r)?;
    let law = law_in(config, r, &r.u)?;
    let pb = r.u.project(b)?;
    let raw = simulate(config, &["functional", "s2"], |rng| {
        let y = sample(&law, rng);
        Ok(vec![pb.dot(&y), est_variance(&y, &r.model, &r.u, config.use_tail)?])
    })?;
    let rho = correlation(&column(&raw, 0), &column(&raw, 1));
    let se = 1.0 / (config.replicates as f64).sqrt();
    Ok(Outcome {
        params: BTreeMap::new(),
        checks: vec![Check::new(
            "correlation of <b, zeta_hat> and s2",
            rho,
            se,
            0.0,
            Provenance::Paper,
            3.0 * se,
            Comparison::TwoSided,
        )],
        raw,
    })
}

fn ks_check(name: &str, statistic: f64, critical: f64, count: usize) -> Check {
    Check::new(
        name,
        statistic,
        1.0 / (count as f64).sqrt(),
        0.0,
        Provenance::Paper,
        critical,
        Comparison::AtMost,
    )
}

fn noise_law(config: &ExperimentConfig, r: &Resolved) -> Result<Outcome> {
    let law = match &r.u0 {
        Some(u0) => law_in(config, r, u0)?,
        None => law_in(config, r, &r.u)?,
    };
    let d = noise_decomposition(&r.model, &r.u, r.u0.as_ref())?;
    let top = top_eigenspace(&r.model, &r.u, DEFAULT_MULTIPLICITY_TOL)?;
    let between = r.u0.as_ref().map(|u0| r.u.minus(u0, &r.model)).transpose()?;
    let (s_shape, s_rate) = d.residual_gamma();
    let t_ratio = t_ratio_reduction(s_shape, s_rate)?;
    let f_ratio = match d.between_gamma() {
        Some((shape, rate)) => Some(gamma_ratio_reduction(shape, rate, s_shape, s_rate)?),
        None => None,
    };
    let inv_sigma = 1.0 / config.sigma;
    let raw = simulate(
        config,
        &["s_norm_sq", "t_norm_sq", "normal_over_root_gamma", "t_reference", "gamma_ratio", "f_reference"],
        |rng| {
            let y = sample(&law, rng).scaled(inv_sigma);
            let gs = top.project(&y)?.norm_sq();
            let z = rng.next_normal();
            let mut row = vec![gs, 0.0, z / gs.sqrt(), t_ratio.scale * t_sample(rng, t_ratio.dof)?, 0.0, 0.0];
            if let (Some(between), Some(fr)) = (&between, &f_ratio) {
                let gt = between_operator_norm_sq(&r.model, between, d.mu.expect("u0 given"), &y)?;
                row[1] = gt;
                row[4] = gt / gs;
                row[5] = fr.scale * f_sample(rng, fr.dof_num, fr.dof_den)?;
            }
            Ok(row)
        },
    )?;
    let count = config.replicates;
    let crit_one = ks_critical_one(count, KS_ALPHA);
    let crit_two = ks_critical_two(count, count, KS_ALPHA);
    let mut checks = vec![
        ks_check(
            "KS of ||S(Y/sigma)||^2 against Gamma(n/2, 1/(2 lambda))",
            ks_one_sample(&column(&raw, 0), |x| gamma_cdf(x, s_shape, s_rate)),
            crit_one,
            count,
        ),
        ks_check(
            "two-sample KS of N/sqrt(G) against scaled Student t",
            ks_two_sample(&column(&raw, 2), &column(&raw, 3)),
            crit_two,
            count,
        ),
    ];
    let mut p = params([("lambda", d.lambda), ("n", d.n as f64), ("t_scale", t_ratio.scale)]);
    if let (Some((t_shape, t_rate)), Some(fr)) = (d.between_gamma(), f_ratio) {
        checks.push(ks_check(
            "KS of ||T(Y/sigma)||^2 against Gamma(m/2, 1/(2 mu))",
            ks_one_sample(&column(&raw, 1), |x| gamma_cdf(x, t_shape, t_rate)),
            crit_one,
            count,
        ));
        checks.push(ks_check(
            "two-sample KS of G1/G2 against scaled Fisher",
            ks_two_sample(&column(&raw, 4), &column(&raw, 5)),
            crit_two,
            count,
        ));
        p.insert("mu".into(), d.mu.expect("u0 given"));
        p.insert("m".into(), d.m.expect("u0 given") as f64);
        p.insert("f_scale".into(), fr.scale);
    }
    Ok(Outcome { params: p, checks, raw })
}

fn risk(config: &ExperimentConfig, r: &Resolved) -> Result<Outcome> {
    let law = law_in(config, r, &r.u)?;
    let s2 = config.sigma * config.sigma;
    let raw = simulate(config, &["mean_loss", "variance_loss"], |rng| {
        let y = sample(&law, rng);
        let loss = (&r.u.project(&y)? - &r.zeta).norm_sq();
        let v = est_variance(&y, &r.model, &r.u, config.use_tail)?;
        Ok(vec![loss, (v - s2) * (v - s2)])
    })?;
    let mean_risk = risk_mean(&r.model, &r.u, config.sigma, false)?;
    let var_risk = variance_est_risk(&r.model, &r.u, config.sigma)?;
    let v = summarize(&column(&raw, 1));
    Ok(Outcome {
        params: params([("risk_mean", mean_risk), ("risk_variance_estimator", var_risk)]),
        checks: vec![
            mean_check("risk of zeta_hat".into(), &column(&raw, 0), mean_risk, Provenance::Paper),
            mean_check("risk of s2".into(), &column(&raw, 1), var_risk, Provenance::Paper),
            Check::new(
                "risk of s2 against 2 sigma^4",
                v.mean,
                v.mean_se,
                2.0 * s2 * s2,
                Provenance::Paper,
                3.0 * v.mean_se,
                Comparison::AtMost,
            ),
        ],
        raw,
    })
}

fn learning_curve(config: &ExperimentConfig, r: &Resolved) -> Result<Outcome> {
    let law = GaussianLaw::new(&r.model, r.zeta.clone(), config.sigma)?;
    let modes = r.u.as_modes().expect("configured subspaces are mode sets").modes().to_vec();
    let k = modes.len();
    let columns: Vec<String> = (0..=k).map(|c| format!("gap[{c}]")).collect();
    let column_refs: Vec<&str> = columns.iter().map(String::as_str).collect();
    // R[P_{V_c} Y] - R[P_U Y] per replicate: sum over dropped modes of
    // zeta_k^2 - (Y_k - zeta_k)^2
    let raw = simulate(config, &column_refs, |rng| {
        let y = sample(&law, rng);
        let mut row = vec![0.0; k + 1];
        for c in (0..k).rev() {
            let m = modes[c] - 1;
            let z = r.zeta[m];
            row[c] = row[c + 1] + z * z - (y[m] - z).powi(2);
        }
        Ok(row)
    })?;
    let checks = (0..=k)
        .map(|c| {
            let target = learning_gap(&r.model, &r.u, &r.zeta, config.sigma, c, false)?;
            let s = summarize(&column(&raw, c));
            Ok(Check::new(
                format!("risk gap keeping {c} modes"),
                s.mean,
                s.mean_se,
                target,
                Provenance::Paper,
                3.0 * s.mean_se + 1e-12,
                Comparison::TwoSided,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Outcome {
        params: params([("modes", k as f64)]),
        checks,
        raw,
    })
}
