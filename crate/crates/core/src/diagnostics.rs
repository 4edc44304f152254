//! Summary statistics and goodness-of-fit checks for Monte Carlo output.

use serde::Serialize;

use crate::spectral::neumaier_sum;

/// Sample mean and variance with the standard errors of both.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Summary {
    pub count: usize,
    pub mean: f64,
    pub variance: f64,
    pub mean_se: f64,
    /// `sqrt((m4 - s^4) / M)` with central moments `m4` and `s^2`.
    pub variance_se: f64,
}

pub fn summarize(values: &[f64]) -> Summary {
    let n = values.len();
    assert!(n > 1, "need at least two values");
    let nf = n as f64;
    let mean = neumaier_sum(values.iter().copied()) / nf;
    let m2 = neumaier_sum(values.iter().map(|v| (v - mean).powi(2))) / nf;
    let m4 = neumaier_sum(values.iter().map(|v| (v - mean).powi(4))) / nf;
    let variance = m2 * nf / (nf - 1.0);
    Summary {
        count: n,
        mean,
        variance,
        mean_se: (variance / nf).sqrt(),
        variance_se: ((m4 - m2 * m2).max(0.0) / nf).sqrt(),
    }
}

/// Binomial standard error of a proportion whose true value is `p`.
pub fn binomial_se(p: f64, count: usize) -> f64 {
    (p * (1.0 - p) / count as f64).sqrt()
}

/// Pearson correlation.
pub fn correlation(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len(), "correlation needs paired samples");
    let n = x.len() as f64;
    let mx = neumaier_sum(x.iter().copied()) / n;
    let my = neumaier_sum(y.iter().copied()) / n;
    let sxy = neumaier_sum(x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)));
    let sxx = neumaier_sum(x.iter().map(|a| (a - mx).powi(2)));
    let syy = neumaier_sum(y.iter().map(|b| (b - my).powi(2)));
    sxy / (sxx * syy).sqrt()
}

/// One-sample Kolmogorov–Smirnov statistic `sup |F_n - F|`.
pub fn ks_one_sample(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

/// Two-sample Kolmogorov–Smirnov statistic `sup |F_n - G_m|`.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut xs = a.to_vec();
    let mut ys = b.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let (n, m) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j, mut d) = (0, 0, 0.0f64);
    while i < xs.len() && j < ys.len() {
        let x = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] <= x {
            i += 1;
        }
        while j < ys.len() && ys[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    d
}

/// Asymptotic Kolmogorov quantile `c(alpha) = sqrt(-ln(alpha/2) / 2)`.
pub fn kolmogorov_c(alpha: f64) -> f64 {
    (-(alpha / 2.0).ln() / 2.0).sqrt()
}

pub fn ks_critical_one(n: usize, alpha: f64) -> f64 {
    kolmogorov_c(alpha) / (n as f64).sqrt()
}

pub fn ks_critical_two(n: usize, m: usize, alpha: f64) -> f64 {
    let (n, m) = (n as f64, m as f64);
    kolmogorov_c(alpha) * ((n + m) / (n * m)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn summary_of_small_sample() {
        let s = summarize(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(s.mean, 2.5);
        assert_abs_diff_eq!(s.variance, 5.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s.mean_se, (5.0 / 12.0f64).sqrt(), epsilon = 1e-15);
        // m2 = 1.25, m4 = 2.5625
        assert_abs_diff_eq!(s.variance_se, ((2.5625 - 1.5625) / 4.0f64).sqrt(), epsilon = 1e-15);
    }

    #[test]
    fn correlation_extremes() {
        let x = [1.0, 2.0, 3.0, 5.0];
        let y: Vec<f64> = x.iter().map(|v| -2.0 * v + 1.0).collect();
        assert_abs_diff_eq!(correlation(&x, &y), -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(correlation(&[1.0, -1.0, 1.0, -1.0], &[1.0, 1.0, -1.0, -1.0]), 0.0);
    }

    #[test]
    fn ks_statistics() {
        // uniform grid midpoints are at distance 1/(2n) from the uniform cdf
        let xs: Vec<f64> = (0..10).map(|i| (i as f64 + 0.5) / 10.0).collect();
        assert_abs_diff_eq!(ks_one_sample(&xs, |x| x.clamp(0.0, 1.0)), 0.05, epsilon = 1e-15);
        assert_eq!(ks_two_sample(&xs, &xs), 0.0);
        assert_eq!(ks_two_sample(&[0.0, 1.0], &[2.0, 3.0]), 1.0);
        assert_eq!(ks_two_sample(&[0.0, 2.0], &[1.0, 3.0]), 0.5);
        assert_abs_diff_eq!(kolmogorov_c(0.05), 1.3581, epsilon = 1e-4);
        assert_abs_diff_eq!(ks_critical_two(100, 100, 0.05), 1.3581 * 0.02f64.sqrt(), epsilon = 1e-4);
    }
}
