//! Time evolution of `β` under the nonlinear Fokker–Planck models, and fits
//! of the estimated `β̂(t)` against them.
//!
//! With drift `f(Ω) = -bΩ` and nonlinear diffusion `D`, the q-Gaussian
//! solution started from a delta function has
//!
//! ```text
//! β(t)^(-(3-q)/2) = [2(2-q) D / b] (C_q²)^((q-1)/2) (1 - e^(-t/τ)),   τ = 1/(b(3-q))
//! ```
//!
//! For `t ≪ τ` (or `b → 0`) this collapses to the pure power law
//! `β(t) ∝ t^(-2/(3-q))`, i.e. superdiffusion for any `q > 1`.

use serde::Serialize;

use crate::distribution::normalization_cq;
use crate::error::{Error, Result};
use crate::optimize::golden_section_min;

/// Search interval for the drift rate `b` (1/day).
pub const B_MIN: f64 = 1e-6;
pub const B_MAX: f64 = 10.0;

/// Estimated `β̂` per delay with standard errors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetaSeries {
    delays: Vec<u32>,
    beta_hat: Vec<f64>,
    stderr: Vec<f64>,
}

impl BetaSeries {
    pub fn new(delays: Vec<u32>, beta_hat: Vec<f64>, stderr: Vec<f64>) -> Result<Self> {
        if delays.len() != beta_hat.len() || delays.len() != stderr.len() {
            return Err(Error::domain("beta series columns differ in length"));
        }
        if delays.first().is_some_and(|&d| d == 0) {
            return Err(Error::domain("delays must be positive"));
        }
        if delays.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::domain("delays must be strictly increasing"));
        }
        if beta_hat.iter().any(|&b| !(b > 0.0 && b.is_finite())) {
            return Err(Error::domain("beta_hat must be positive"));
        }
        Ok(Self {
            delays,
            beta_hat,
            stderr,
        })
    }

    pub fn delays(&self) -> &[u32] {
        &self.delays
    }

    pub fn beta_hat(&self) -> &[f64] {
        &self.beta_hat
    }

    pub fn stderr(&self) -> &[f64] {
        &self.stderr
    }

    pub fn len(&self) -> usize {
        self.delays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.delays.is_empty()
    }

    fn beta_at_one(&self) -> Result<f64> {
        self.delays
            .iter()
            .position(|&d| d == 1)
            .map(|i| self.beta_hat[i])
            .ok_or_else(|| Error::domain("beta series must include delay 1"))
    }
}

/// Drift/diffusion parameters of the Fokker–Planck model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DriftDiffusionParams {
    pub b: f64,
    pub d: f64,
    /// Drift offset; only shifts the mean, fixed at zero for standardized
    /// returns.
    pub a: f64,
    pub q: f64,
    pub tau: f64,
    /// Set when the fitted `b` sits on [`B_MIN`], i.e. the data look like
    /// pure power-law (drift-free) scaling.
    pub b_at_lower_bound: bool,
}

impl DriftDiffusionParams {
    pub fn new(b: f64, d: f64, q: f64) -> Result<Self> {
        check_dd_inputs(b, q)?;
        if !(d > 0.0 && d.is_finite()) {
            return Err(Error::domain(format!("diffusion D = {d} must be positive")));
        }
        Ok(Self {
            b,
            d,
            a: 0.0,
            q,
            tau: characteristic_time(b, q),
            b_at_lower_bound: false,
        })
    }
}

/// `τ = 1/(b(3 - q))`; infinite for `b = 0`.
pub fn characteristic_time(b: f64, q: f64) -> f64 {
    1.0 / (b * (3.0 - q))
}

fn check_dd_inputs(b: f64, q: f64) -> Result<()> {
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::domain(format!(
            "drift b = {b} must be positive (use beta_superdiffusion for b = 0)"
        )));
    }
    if !(1.0..2.0).contains(&q) {
        return Err(Error::domain(format!(
            "drift+diffusion model needs 1 <= q < 2, got {q}"
        )));
    }
    Ok(())
}

/// Superdiffusion exponent `-2/(3 - q)`.
pub fn superdiffusion_exponent(q: f64) -> f64 {
    -2.0 / (3.0 - q)
}

/// `β_sd(t) = β₁ t^(-2/(3-q))`, anchored at `t = 1`. `q = 1` gives
/// ordinary diffusion, `β₁/t`.
pub fn beta_superdiffusion(t: f64, q: f64, beta1: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::domain(format!("delay t = {t} must be positive")));
    }
    if !(1.0..3.0).contains(&q) {
        return Err(Error::domain(format!("q = {q} outside [1, 3)")));
    }
    if !(beta1 > 0.0) {
        return Err(Error::domain(format!("beta1 = {beta1} must be positive")));
    }
    Ok(beta1 * t.powf(superdiffusion_exponent(q)))
}

/// `β_dd(t)` from the drift+diffusion solution.
pub fn beta_drift_diffusion(t: f64, p: &DriftDiffusionParams) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::domain(format!("delay t = {t} must be positive")));
    }
    check_dd_inputs(p.b, p.q)?;
    let q = p.q;
    let c_sq = normalization_cq(q)?.powi(2);
    let prefactor = 2.0 * (2.0 - q) * p.d / p.b * c_sq.powf(0.5 * (q - 1.0));
    let growth = -(-t / characteristic_time(p.b, q)).exp_m1();
    Ok((prefactor * growth).powf(-2.0 / (3.0 - q)))
}

/// `ln[β_dd(t)/β_dd(1)]`, independent of `D` and `C_q`.
fn log_ratio(t: f64, b: f64, q: f64) -> f64 {
    let tau = characteristic_time(b, q);
    let num = -(-t / tau).exp_m1();
    let den = -(-1.0 / tau).exp_m1();
    superdiffusion_exponent(q) * (num.ln() - den.ln())
}

/// Power-law fit `β̂ ≈ e^intercept · t^λ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PowerLawFit {
    pub lambda: f64,
    pub intercept: f64,
    pub lambda_stderr: f64,
}

/// Ordinary least squares of `ln β̂` on `ln t`.
pub fn fit_power_law(s: &BetaSeries) -> Result<PowerLawFit> {
    fit_power_law_impl(s, false)
}

/// Weighted least squares in log space with weights `(β̂/stderr)²`, the
/// inverse variance of `ln β̂` to first order.
pub fn fit_power_law_weighted(s: &BetaSeries) -> Result<PowerLawFit> {
    fit_power_law_impl(s, true)
}

fn fit_power_law_impl(s: &BetaSeries, weighted: bool) -> Result<PowerLawFit> {
    let n = s.len();
    if n < 3 {
        return Err(Error::InsufficientPoints { needed: 3, got: n });
    }
    let xs: Vec<f64> = s.delays.iter().map(|&t| (t as f64).ln()).collect();
    let ys: Vec<f64> = s.beta_hat.iter().map(|b| b.ln()).collect();
    let ws: Vec<f64> = if weighted {
        let w: Vec<f64> = s
            .beta_hat
            .iter()
            .zip(&s.stderr)
            .map(|(b, e)| (b / e).powi(2))
            .collect();
        if w.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::domain("weighted fit needs positive finite stderr"));
        }
        w
    } else {
        vec![1.0; n]
    };
    let sw: f64 = ws.iter().sum();
    let xbar = xs.iter().zip(&ws).map(|(x, w)| w * x).sum::<f64>() / sw;
    let ybar = ys.iter().zip(&ws).map(|(y, w)| w * y).sum::<f64>() / sw;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for ((x, y), w) in xs.iter().zip(&ys).zip(&ws) {
        sxx += w * (x - xbar) * (x - xbar);
        sxy += w * (x - xbar) * (y - ybar);
    }
    if sxx <= 0.0 {
        return Err(Error::InsufficientPoints { needed: 2, got: 1 });
    }
    let lambda = sxy / sxx;
    let intercept = ybar - lambda * xbar;
    let ssr: f64 = xs
        .iter()
        .zip(&ys)
        .zip(&ws)
        .map(|((x, y), w)| w * (y - intercept - lambda * x).powi(2))
        .sum();
    let sigma2 = ssr / (n as f64 - 2.0);
    let lambda_stderr = (sigma2 / sxx).sqrt();
    Ok(PowerLawFit {
        lambda,
        intercept,
        lambda_stderr,
    })
}

/// Fit the drift rate `b` to the shape of `β̂(t)/β̂(1)` and then set `D` so
/// that `β_dd(1) = β̂(1)`.
///
/// `b` is found by golden-section search over `ln b ∈ [ln B_MIN, ln B_MAX]`.
/// A minimum on the lower edge is returned with `b_at_lower_bound` set; a
/// minimum on the upper edge is an error.
pub fn fit_drift_params(s: &BetaSeries, q: f64) -> Result<DriftDiffusionParams> {
    if s.len() < 4 {
        return Err(Error::InsufficientPoints {
            needed: 4,
            got: s.len(),
        });
    }
    check_dd_inputs(1.0, q)?;
    let beta1 = s.beta_at_one()?;
    let targets: Vec<(f64, f64)> = s
        .delays
        .iter()
        .zip(&s.beta_hat)
        .map(|(&t, &b)| (t as f64, (b / beta1).ln()))
        .collect();
    let sse = |ln_b: f64| {
        let b = ln_b.exp();
        targets
            .iter()
            .map(|&(t, y)| (y - log_ratio(t, b, q)).powi(2))
            .sum::<f64>()
    };
    let min = golden_section_min(sse, B_MIN.ln(), B_MAX.ln(), 1e-10, 81);
    if min.at_upper || !min.value.is_finite() {
        return Err(Error::OptimizationFailure(format!(
            "no interior minimum for b in ({B_MIN:e}, {B_MAX})"
        )));
    }
    let b = if min.at_lower { B_MIN } else { min.x.exp() };
    let d = diffusion_from_anchor(beta1, b, q)?;
    let mut p = DriftDiffusionParams::new(b, d, q)?;
    p.b_at_lower_bound = min.at_lower;
    Ok(p)
}

/// `D` such that `β_dd(1) = beta1` for the given `b` and `q`.
pub fn diffusion_from_anchor(beta1: f64, b: f64, q: f64) -> Result<f64> {
    check_dd_inputs(b, q)?;
    let c_sq = normalization_cq(q)?.powi(2);
    let growth = -(-1.0 / characteristic_time(b, q)).exp_m1();
    Ok(beta1.powf(-(3.0 - q) / 2.0) * b
        / (2.0 * (2.0 - q) * c_sq.powf(0.5 * (q - 1.0)) * growth))
}

/// Model curves evaluated on the delay grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurvePoint {
    pub delay: u32,
    pub beta_hat: f64,
    pub stderr: f64,
    pub beta_fit_powerlaw: f64,
    pub beta_sd: f64,
    pub beta_dd: f64,
}

/// Power-law and Fokker–Planck model fits to a `β̂(t)` series.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiffusionFit {
    pub lambda: f64,
    pub lambda_stderr: f64,
    pub intercept: f64,
    pub dd: DriftDiffusionParams,
    pub curves: Vec<CurvePoint>,
}

impl DiffusionFit {
    /// Fit both models. `beta_sd` and `beta_dd` are anchored to `β̂(1)`.
    pub fn fit(s: &BetaSeries, q: f64, weighted: bool) -> Result<Self> {
        let pl = if weighted {
            fit_power_law_weighted(s)?
        } else {
            fit_power_law(s)?
        };
        let dd = fit_drift_params(s, q)?;
        let beta1 = s.beta_at_one()?;
        let curves = s
            .delays
            .iter()
            .zip(&s.beta_hat)
            .zip(&s.stderr)
            .map(|((&t, &bh), &se)| {
                let tf = t as f64;
                Ok(CurvePoint {
                    delay: t,
                    beta_hat: bh,
                    stderr: se,
                    beta_fit_powerlaw: (pl.intercept + pl.lambda * tf.ln()).exp(),
                    beta_sd: beta_superdiffusion(tf, q, beta1)?,
                    beta_dd: beta_drift_diffusion(tf, &dd)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            lambda: pl.lambda,
            lambda_stderr: pl.lambda_stderr,
            intercept: pl.intercept,
            dd,
            curves,
        })
    }
}
