//! The symmetric q-Gaussian density
//!
//! ```text
//! P(Ω) = [1 + (q - 1) β (Ω - Ω̄)²]^(1/(1-q)) / Z_q,     Z_q = C_q / √β
//! ```
//!
//! parameterized by the entropic index `q` and the inverse mean-square
//! deviation `β`. The estimators work in the transformed coordinates
//! `α = 1/(q - 1)` and `κ = β/α`, in which the density reads
//! `(1 + κ Ω²)^(-α) / Z_q`.
//!
//! For `|q - 1| < 1e-8` every quantity switches to its Gaussian limit
//! `exp(-β Ω²) / √(π/β)`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::special::{ln_gamma_ratio_half, normal_cdf, student_t_cdf};

/// `|q - 1|` below which the Gaussian limit is used.
pub const GAUSSIAN_LIMIT_EPS: f64 = 1e-8;

/// Parameters of a q-Gaussian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QGaussianParams {
    q: f64,
    beta: f64,
    mean: f64,
}

impl QGaussianParams {
    /// Zero-mean q-Gaussian. Requires `1 <= q < 3` and `beta > 0`.
    pub fn new(q: f64, beta: f64) -> Result<Self> {
        if !(q.is_finite() && (1.0..3.0).contains(&q)) {
            return Err(Error::domain(format!("q = {q} outside [1, 3)")));
        }
        if !(beta.is_finite() && beta > 0.0) {
            return Err(Error::domain(format!("beta = {beta} must be positive")));
        }
        Ok(Self {
            q,
            beta,
            mean: 0.0,
        })
    }

    /// Build from the transformed coordinates `α = 1/(q-1)`, `κ = β/α`.
    pub fn from_alpha_kappa(alpha: f64, kappa: f64) -> Result<Self> {
        if !(alpha > 0.5 && kappa > 0.0 && kappa.is_finite()) {
            return Err(Error::domain(format!(
                "alpha = {alpha}, kappa = {kappa} (need alpha > 1/2, kappa > 0)"
            )));
        }
        Self::new(1.0 + 1.0 / alpha, alpha * kappa)
    }

    pub fn with_mean(mut self, mean: f64) -> Self {
        self.mean = mean;
        self
    }

    pub fn with_beta(mut self, beta: f64) -> Result<Self> {
        self = Self::new(self.q, beta)?.with_mean(self.mean);
        Ok(self)
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn is_gaussian_limit(&self) -> bool {
        (self.q - 1.0).abs() < GAUSSIAN_LIMIT_EPS
    }

    /// `α = 1/(q - 1)`; infinite in the Gaussian limit.
    pub fn alpha(&self) -> f64 {
        if self.is_gaussian_limit() {
            f64::INFINITY
        } else {
            1.0 / (self.q - 1.0)
        }
    }

    /// `κ = β/α = β (q - 1)`; zero in the Gaussian limit.
    pub fn kappa(&self) -> f64 {
        if self.is_gaussian_limit() {
            0.0
        } else {
            self.beta * (self.q - 1.0)
        }
    }

    /// β-independent normalization factor `C_q`.
    pub fn c_q(&self) -> f64 {
        normalization_cq_unchecked(self.q)
    }

    /// Normalization `Z_q = C_q / √β`.
    pub fn z_q(&self) -> f64 {
        self.c_q() / self.beta.sqrt()
    }

    /// Escort (q-) variance `σ_q²`, from `β = 1 / (2 σ_q² Z_q^(q-1))`.
    pub fn q_variance(&self) -> f64 {
        1.0 / (2.0 * self.beta * self.z_q().powf(self.q - 1.0))
    }

    pub fn ln_pdf(&self, x: f64) -> f64 {
        let d = x - self.mean;
        let ln_z = self.z_q().ln();
        if self.is_gaussian_limit() {
            -self.beta * d * d - ln_z
        } else {
            -self.alpha() * (self.kappa() * d * d).ln_1p() - ln_z
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        self.ln_pdf(x).exp()
    }

    /// Cumulative distribution, via the equivalence with a Student-t of
    /// `ν = 2α - 1` degrees of freedom evaluated at `(x - Ω̄) √(κ ν)`.
    pub fn cdf(&self, x: f64) -> f64 {
        let d = x - self.mean;
        if self.is_gaussian_limit() {
            return normal_cdf(d * (2.0 * self.beta).sqrt());
        }
        let nu = 2.0 * self.alpha() - 1.0;
        student_t_cdf(d * (self.kappa() * nu).sqrt(), nu)
    }

    /// Ordinary variance `1 / ((5 - 3q) β)`; diverges for `q >= 5/3`.
    pub fn variance(&self) -> Result<f64> {
        let denom = 5.0 - 3.0 * self.q;
        if denom <= 0.0 {
            return Err(Error::VarianceDivergence { q: self.q });
        }
        Ok(1.0 / (denom * self.beta))
    }
}

/// q-logarithm `(x^(1-q) - 1)/(1 - q)`, with `ln x` as the `q → 1` limit.
pub fn q_log(x: f64, q: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("q_log of non-positive x = {x}")));
    }
    if (q - 1.0).abs() < GAUSSIAN_LIMIT_EPS {
        return Ok(x.ln());
    }
    let one_minus_q = 1.0 - q;
    // x^(1-q) - 1 = expm1((1-q) ln x)
    Ok((one_minus_q * x.ln()).exp_m1() / one_minus_q)
}

/// `C_q = √π Γ(α - 1/2) / (√(q-1) Γ(α))` with `α = 1/(q-1)`, for `1 <= q < 3`.
pub fn normalization_cq(q: f64) -> Result<f64> {
    if !(q.is_finite() && (1.0..3.0).contains(&q)) {
        return Err(Error::domain(format!("C_q requires 1 < q < 3, got {q}")));
    }
    Ok(normalization_cq_unchecked(q))
}

fn normalization_cq_unchecked(q: f64) -> f64 {
    if (q - 1.0).abs() < GAUSSIAN_LIMIT_EPS {
        return PI.sqrt();
    }
    let alpha = 1.0 / (q - 1.0);
    (0.5 * PI.ln() + 0.5 * alpha.ln() + ln_gamma_ratio_half(alpha)).exp()
}

/// Density of `p` at `x`.
pub fn pdf(x: f64, p: &QGaussianParams) -> f64 {
    p.pdf(x)
}

pub fn cdf(x: f64, p: &QGaussianParams) -> f64 {
    p.cdf(x)
}

pub fn variance(p: &QGaussianParams) -> Result<f64> {
    p.variance()
}

/// Tail index `(q + 1)/(q - 1)`.
pub fn tail_index(q: f64) -> Result<f64> {
    if !(q > 1.0) || !q.is_finite() {
        return Err(Error::domain(format!(
            "tail index needs q > 1 (got {q}); the Gaussian has no power-law tail"
        )));
    }
    Ok((q + 1.0) / (q - 1.0))
}
