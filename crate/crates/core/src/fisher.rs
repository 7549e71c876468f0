//! Fisher information for the q-Gaussian in `(α, κ)` coordinates and the
//! Jacobian transform to standard errors in `(q, β)`.
//!
//! Expected information (model only):
//!
//! ```text
//! I_αα = ψ₁(α - 1/2) - ψ₁(α)
//! I_ακ = 1/(2κα)
//! I_κκ = (2α - 1) / (4κ² (α + 1))
//! ```
//!
//! The measured information averages outer products of the per-sample score.

use serde::Serialize;

use crate::distribution::QGaussianParams;
use crate::error::{Error, Result};
use crate::special::{digamma, trigamma};

/// Smallest |det| accepted before a 2x2 matrix is declared singular.
pub const DET_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Basis {
    AlphaKappa,
    QBeta,
}

/// Symmetric 2x2 information matrix (per observation) tagged with its basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InfoMatrix2 {
    pub entries: [[f64; 2]; 2],
    pub basis: Basis,
}

impl InfoMatrix2 {
    pub fn new(entries: [[f64; 2]; 2], basis: Basis) -> Self {
        Self { entries, basis }
    }

    pub fn det(&self) -> f64 {
        let m = &self.entries;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    /// Explicit 2x2 inverse.
    pub fn inverse(&self) -> Result<[[f64; 2]; 2]> {
        let det = self.det();
        if !(det.abs() >= DET_FLOOR) {
            return Err(Error::Singular { det });
        }
        let m = &self.entries;
        Ok([
            [m[1][1] / det, -m[0][1] / det],
            [-m[1][0] / det, m[0][0] / det],
        ])
    }

    /// Re-express an `(α, κ)` matrix in `(q, β)` as `J I Jᵀ`.
    pub fn to_q_beta(&self, p: &QGaussianParams) -> Result<InfoMatrix2> {
        match self.basis {
            Basis::QBeta => Ok(*self),
            Basis::AlphaKappa => {
                let j = jacobian(p)?;
                Ok(InfoMatrix2::new(sandwich(&j, &self.entries), Basis::QBeta))
            }
        }
    }
}

/// `J = [[-α², κα], [0, 1/α]]`, with `J[i][j] = ∂φ_j/∂θ_i` for
/// `φ = (α, κ)` and `θ = (q, β)`.
pub fn jacobian(p: &QGaussianParams) -> Result<[[f64; 2]; 2]> {
    let (alpha, kappa) = alpha_kappa(p)?;
    Ok([[-alpha * alpha, kappa * alpha], [0.0, 1.0 / alpha]])
}

fn sandwich(j: &[[f64; 2]; 2], m: &[[f64; 2]; 2]) -> [[f64; 2]; 2] {
    let mut out = [[0.0; 2]; 2];
    for r in 0..2 {
        for c in 0..2 {
            let mut s = 0.0;
            for k in 0..2 {
                for l in 0..2 {
                    s += j[r][k] * m[k][l] * j[c][l];
                }
            }
            out[r][c] = s;
        }
    }
    out
}

fn alpha_kappa(p: &QGaussianParams) -> Result<(f64, f64)> {
    let alpha = p.alpha();
    if !(alpha.is_finite() && alpha > 0.5) {
        return Err(Error::domain(format!(
            "Fisher information needs 1/2 < alpha < inf (q = {})",
            p.q()
        )));
    }
    Ok((alpha, p.kappa()))
}

pub fn expected_fisher(p: &QGaussianParams) -> Result<InfoMatrix2> {
    let (alpha, kappa) = alpha_kappa(p)?;
    let i_aa = trigamma(alpha - 0.5) - trigamma(alpha);
    let i_ak = 1.0 / (2.0 * kappa * alpha);
    let i_kk = (2.0 * alpha - 1.0) / (4.0 * kappa * kappa * (alpha + 1.0));
    Ok(InfoMatrix2::new([[i_aa, i_ak], [i_ak, i_kk]], Basis::AlphaKappa))
}

/// Per-sample score `(∂ log P/∂α, ∂ log P/∂κ)` at `x`.
pub fn score(x: f64, p: &QGaussianParams) -> Result<(f64, f64)> {
    let (alpha, kappa) = alpha_kappa(p)?;
    let d = x - p.mean();
    let d2 = d * d;
    let s_alpha = digamma(alpha) - digamma(alpha - 0.5) - (kappa * d2).ln_1p();
    let s_kappa = 0.5 / kappa - alpha * d2 / (1.0 + kappa * d2);
    Ok((s_alpha, s_kappa))
}

/// Per-observation Hessian of `log P` in `(α, κ)`.
pub fn hessian(x: f64, p: &QGaussianParams) -> Result<[[f64; 2]; 2]> {
    let (alpha, kappa) = alpha_kappa(p)?;
    let d = x - p.mean();
    let d2 = d * d;
    let w = d2 / (1.0 + kappa * d2);
    let h_aa = trigamma(alpha) - trigamma(alpha - 0.5);
    let h_ak = -w;
    let h_kk = -0.5 / (kappa * kappa) + alpha * w * w;
    Ok([[h_aa, h_ak], [h_ak, h_kk]])
}

/// Measured information `(1/N) Σ sᵢ sᵢᵀ` from analytic scores.
pub fn measured_fisher(samples: &[f64], p: &QGaussianParams) -> Result<InfoMatrix2> {
    if samples.is_empty() {
        return Err(Error::EmptySample);
    }
    let (alpha, kappa) = alpha_kappa(p)?;
    let psi_diff = digamma(alpha) - digamma(alpha - 0.5);
    let (mut aa, mut ak, mut kk) = (0.0, 0.0, 0.0);
    for &x in samples {
        let d = x - p.mean();
        let d2 = d * d;
        let sa = psi_diff - (kappa * d2).ln_1p();
        let sk = 0.5 / kappa - alpha * d2 / (1.0 + kappa * d2);
        aa += sa * sa;
        ak += sa * sk;
        kk += sk * sk;
    }
    let n = samples.len() as f64;
    Ok(InfoMatrix2::new(
        [[aa / n, ak / n], [ak / n, kk / n]],
        Basis::AlphaKappa,
    ))
}

/// Standard errors `(S_q, S_β)` for an estimate from `n` observations.
pub fn standard_errors_q_beta(
    p: &QGaussianParams,
    n: usize,
    m: &InfoMatrix2,
) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let inv = m.to_q_beta(p)?.inverse()?;
    let n = n as f64;
    let (vq, vb) = (inv[0][0] / n, inv[1][1] / n);
    if !(vq > 0.0 && vb > 0.0) {
        return Err(Error::Singular { det: m.det() });
    }
    Ok((vq.sqrt(), vb.sqrt()))
}

/// Standard errors `(S_α, S_κ)` in the transformed coordinates.
pub fn standard_errors_alpha_kappa(n: usize, m: &InfoMatrix2) -> Result<(f64, f64)> {
    if m.basis != Basis::AlphaKappa {
        return Err(Error::domain("matrix is not in (alpha, kappa) basis"));
    }
    let inv = m.inverse()?;
    let n = n as f64;
    Ok(((inv[0][0] / n).sqrt(), (inv[1][1] / n).sqrt()))
}

/// Standard error of `β` when `q` is held fixed: only the `κκ` entry
/// carries information, and `β = α κ`.
pub fn stderr_beta_fixed_q(p: &QGaussianParams, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let n = n as f64;
    if p.is_gaussian_limit() {
        // I_ββ = 1/(2β²) for the Gaussian
        return Ok(p.beta() * (2.0 / n).sqrt());
    }
    let m = expected_fisher(p)?;
    let i_kk = m.entries[1][1];
    Ok(p.alpha() / (n * i_kk).sqrt())
}
