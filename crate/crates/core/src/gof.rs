//! Goodness of fit against a synthetic q-Gaussian sample.
//!
//! Two checks are made per fit:
//!
//! * the two-sample Kolmogorov–Smirnov distance `D_max` between the empirical
//!   and synthetic CDFs, compared with `D_crit = c(γ) √((n₁ + n₂)/(n₁ n₂))`;
//! * the closeness fraction `P`: the share of empirical points at which the
//!   empirical CDF is at least as close to the model CDF as the synthetic
//!   CDF is. Fits with `P < 0.1` are rejected.

use serde::Serialize;

use crate::distribution::QGaussianParams;
use crate::error::{Error, Result};
use crate::sampling::{sample_q_gaussian, SeededStream};

/// Rejection threshold for the closeness fraction.
pub const P_CRIT: f64 = 0.1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GofReport {
    pub d_max: f64,
    pub d_crit: f64,
    pub significance: f64,
    pub p_close: f64,
    pub pass_d: bool,
    pub pass_p: bool,
    pub n_empirical: usize,
    pub n_synthetic: usize,
}

/// Options for [`goodness_of_fit`].
#[derive(Debug, Clone, Copy)]
pub struct GofOptions {
    pub significance: f64,
    /// Synthetic sample size as a multiple of the empirical size.
    pub synthetic_factor: f64,
    /// Re-center the synthetic sample and rescale it to the empirical
    /// standard deviation before comparing.
    pub restandardize_synthetic: bool,
}

impl Default for GofOptions {
    fn default() -> Self {
        Self {
            significance: 0.05,
            synthetic_factor: 1.0,
            restandardize_synthetic: false,
        }
    }
}

fn sorted(v: &[f64]) -> Vec<f64> {
    let mut out = v.to_vec();
    out.sort_by(f64::total_cmp);
    out
}

/// Number of elements of sorted `v` that are `<= x`.
fn count_le(v: &[f64], x: f64) -> usize {
    v.partition_point(|&y| y <= x)
}

/// Sup-norm distance between the empirical CDFs of `a` and `b`.
pub fn ks_distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySample);
    }
    let a = sorted(a);
    let b = sorted(b);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    // walk the merged jump points, consuming ties on both sides together
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(d)
}

/// `c(γ) = √(-ln(γ/2)/2)`, the asymptotic two-sample KS coefficient.
pub fn ks_coefficient(gamma: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::domain(format!(
            "significance {gamma} outside (0, 1)"
        )));
    }
    Ok((-(0.5 * gamma).ln() / 2.0).sqrt())
}

/// Critical distance `c(γ) √((n₁ + n₂)/(n₁ n₂))`.
pub fn ks_critical(n1: usize, n2: usize, gamma: f64) -> Result<f64> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::EmptySample);
    }
    let (a, b) = (n1 as f64, n2 as f64);
    Ok(ks_coefficient(gamma)? * ((a + b) / (a * b)).sqrt())
}

/// Fraction of empirical points where `|F_emp - F_model| <= |F_syn - F_model|`.
/// Ties count in favour of the empirical sample.
pub fn closeness_p_value(
    empirical: &[f64],
    synthetic: &[f64],
    model: &QGaussianParams,
) -> Result<f64> {
    if empirical.is_empty() || synthetic.is_empty() {
        return Err(Error::EmptySample);
    }
    let emp = sorted(empirical);
    let syn = sorted(synthetic);
    let (ne, ns) = (emp.len() as f64, syn.len() as f64);
    let closer = emp
        .iter()
        .filter(|&&x| {
            let f_model = model.cdf(x);
            let f_emp = count_le(&emp, x) as f64 / ne;
            let f_syn = count_le(&syn, x) as f64 / ns;
            (f_emp - f_model).abs() <= (f_syn - f_model).abs()
        })
        .count();
    Ok(closer as f64 / ne)
}

fn restandardize(synthetic: &mut [f64], target_std: f64) {
    let n = synthetic.len() as f64;
    let mean = synthetic.iter().sum::<f64>() / n;
    let std = (synthetic.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
    let scale = if std > 0.0 { target_std / std } else { 1.0 };
    for v in synthetic.iter_mut() {
        *v = (*v - mean) * scale;
    }
}

/// Draw a synthetic sample from `model` and run both tests against
/// `empirical`.
pub fn goodness_of_fit(
    empirical: &[f64],
    model: &QGaussianParams,
    opts: &GofOptions,
    stream: &mut SeededStream,
) -> Result<GofReport> {
    if empirical.is_empty() {
        return Err(Error::EmptySample);
    }
    if !(opts.synthetic_factor > 0.0) {
        return Err(Error::Config(format!(
            "synthetic factor {} must be positive",
            opts.synthetic_factor
        )));
    }
    let n1 = empirical.len();
    let n2 = ((n1 as f64 * opts.synthetic_factor).round() as usize).max(1);
    let mut synthetic = sample_q_gaussian(model, n2, stream)?;
    if opts.restandardize_synthetic {
        let n = n1 as f64;
        let mean = empirical.iter().sum::<f64>() / n;
        let std = (empirical.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n).sqrt();
        restandardize(&mut synthetic, std);
    }
    let d_max = ks_distance(empirical, &synthetic)?;
    let d_crit = ks_critical(n1, n2, opts.significance)?;
    let p_close = closeness_p_value(empirical, &synthetic, model)?;
    Ok(GofReport {
        d_max,
        d_crit,
        significance: opts.significance,
        p_close,
        pass_d: d_max <= d_crit,
        pass_p: p_close >= P_CRIT,
        n_empirical: n1,
        n_synthetic: n2,
    })
}
