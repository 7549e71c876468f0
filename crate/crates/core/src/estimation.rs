//! Maximum-likelihood estimation of `(q, β)`.
//!
//! With `α = 1/(q-1)` and `κ = β/α` the log-likelihood of `N` zero-mean
//! observations is
//!
//! ```text
//! F(α, κ) = -N ln Z_q - α Σ ln(1 + κ Ωᵢ²)
//! ```
//!
//! and its stationarity conditions are
//!
//! ```text
//! ψ(α) - ψ(α - 1/2) = mean ln(1 + κ Ω²)          (score in α)
//! 1/(2κ)            = α · mean Ω²/(1 + κ Ω²)     (score in κ)
//! ```
//!
//! Solving the second for `α` and substituting leaves one equation in `κ`
//! alone, which is bracketed over the admissible `q` range and solved with
//! Brent's method. With `q` fixed only the second equation remains.

use serde::Serialize;

use crate::distribution::QGaussianParams;
use crate::error::{Error, Result};
use crate::fisher::{expected_fisher, standard_errors_q_beta, stderr_beta_fixed_q};
use crate::optimize::brent_root;
use crate::special::{digamma, ln_gamma_ratio_half};

/// Smallest sample size accepted by the estimators.
pub const MIN_SAMPLES: usize = 30;
/// Admissible range for the jointly estimated `q`.
pub const Q_MIN: f64 = 1.1;
pub const Q_MAX: f64 = 1.66;

const KAPPA_REL_TOL: f64 = 1e-13;
const MAX_ROOT_ITER: usize = 200;
/// Log-spaced probe points used to locate sign changes of the reduced
/// equation inside the admissible bracket.
const SCAN_POINTS: usize = 48;

/// A validated sample of standardized returns.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    values: Vec<f64>,
}

impl SampleSet {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.len() < MIN_SAMPLES {
            return Err(Error::InsufficientSamples {
                needed: MIN_SAMPLES,
                got: values.len(),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::DegenerateSample(format!(
                "non-finite value at index {i}"
            )));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn variance(&self) -> f64 {
        let n = self.len() as f64;
        let mean = self.values.iter().sum::<f64>() / n;
        self.values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryHit {
    None,
    QLow,
    QHigh,
}

/// Fitted parameters with their standard errors and diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimationResult {
    pub params: QGaussianParams,
    /// `None` when `q` was held fixed rather than estimated.
    pub stderr_q: Option<f64>,
    pub stderr_beta: f64,
    /// Log-likelihood at the optimum.
    pub objective: f64,
    /// Norm of `(∂F/∂α, ∂F/∂κ)` at the optimum (κ only when q is fixed).
    pub gradient_norm: f64,
    pub boundary_hit: BoundaryHit,
    pub n: usize,
}

/// Squared samples plus the sample moments the likelihood equations need.
struct Squares {
    sq: Vec<f64>,
}

impl Squares {
    fn new(s: &SampleSet) -> Self {
        Self {
            sq: s.values().iter().map(|v| v * v).collect(),
        }
    }

    fn n(&self) -> f64 {
        self.sq.len() as f64
    }

    fn mean_sq(&self) -> f64 {
        self.sq.iter().sum::<f64>() / self.n()
    }

    /// mean κΩ²/(1 + κΩ²)
    fn mean_ratio(&self, kappa: f64) -> f64 {
        self.sq
            .iter()
            .map(|&x| {
                let k = kappa * x;
                k / (1.0 + k)
            })
            .sum::<f64>()
            / self.n()
    }

    /// mean ln(1 + κΩ²)
    fn mean_log(&self, kappa: f64) -> f64 {
        self.sq.iter().map(|&x| (kappa * x).ln_1p()).sum::<f64>() / self.n()
    }

    /// α implied by the κ score equation: `1 / (2 mean κΩ²/(1+κΩ²))`.
    fn alpha_of(&self, kappa: f64) -> f64 {
        0.5 / self.mean_ratio(kappa)
    }

    fn nonzero_fraction(&self) -> f64 {
        self.sq.iter().filter(|&&x| x > 0.0).count() as f64 / self.n()
    }

    /// Reduced one-variable equation in κ.
    fn reduced(&self, kappa: f64) -> f64 {
        let alpha = self.alpha_of(kappa);
        digamma(alpha) - digamma(alpha - 0.5) - self.mean_log(kappa)
    }

    fn log_likelihood(&self, alpha: f64, kappa: f64) -> f64 {
        let ln_z = 0.5 * (std::f64::consts::PI / kappa).ln() + ln_gamma_ratio_half(alpha);
        -self.n() * (ln_z + alpha * self.mean_log(kappa))
    }

    fn gaussian_log_likelihood(&self, beta: f64) -> f64 {
        let ln_z = 0.5 * (std::f64::consts::PI / beta).ln();
        -self.n() * (ln_z + beta * self.mean_sq())
    }

    fn gradient(&self, alpha: f64, kappa: f64) -> (f64, f64) {
        let n = self.n();
        let d_alpha = n * (digamma(alpha) - digamma(alpha - 0.5) - self.mean_log(kappa));
        let d_kappa = n * (0.5 / kappa - alpha * self.mean_ratio(kappa) / kappa);
        (d_alpha, d_kappa)
    }

    /// κ solving the κ score equation at fixed α, i.e.
    /// `mean κΩ²/(1 + κΩ²) = 1/(2α)`. The left side increases from 0 to the
    /// fraction of nonzero samples, so the root is unique when it exists.
    fn kappa_at_alpha(&self, alpha: f64, seed: Option<f64>) -> Result<f64> {
        let target = 0.5 / alpha;
        if target >= self.nonzero_fraction() {
            return Err(Error::NoRoot(format!(
                "too few nonzero samples to fit alpha = {alpha}"
            )));
        }
        let h = |k: f64| self.mean_ratio(k) - target;
        let mut lo = seed.unwrap_or(1.0 / (alpha * self.mean_sq()));
        let mut hi = lo;
        for _ in 0..400 {
            if h(lo) <= 0.0 {
                break;
            }
            lo *= 0.25;
        }
        for _ in 0..400 {
            if h(hi) >= 0.0 {
                break;
            }
            hi *= 4.0;
        }
        if h(lo) > 0.0 || h(hi) < 0.0 {
            return Err(Error::NoRoot(format!(
                "could not bracket kappa at alpha = {alpha}"
            )));
        }
        if lo == hi {
            return Ok(lo);
        }
        brent_root(h, lo, hi, KAPPA_REL_TOL, MAX_ROOT_ITER)
    }
}

fn check_spread(s: &SampleSet) -> Result<()> {
    if !(s.variance() > 0.0) {
        return Err(Error::DegenerateSample("sample variance is zero".into()));
    }
    Ok(())
}

/// Joint maximum-likelihood estimate of `(q, β)`, with `q` constrained to
/// `[Q_MIN, Q_MAX]`. When the constrained optimum sits on the edge, `q` is
/// clamped there, `β` re-solved at that `q`, and `boundary_hit` is set.
pub fn estimate_q_beta(s: &SampleSet) -> Result<EstimationResult> {
    check_spread(s)?;
    let sq = Squares::new(s);
    let alpha_min = 1.0 / (Q_MAX - 1.0);
    let alpha_max = 1.0 / (Q_MIN - 1.0);

    // α(κ) decreases in κ, so the admissible α range maps onto [κ_lo, κ_hi]
    let kappa_lo = sq.kappa_at_alpha(alpha_max, None)?;
    let kappa_hi = sq.kappa_at_alpha(alpha_min, None)?;

    let ratio = kappa_hi / kappa_lo;
    let grid: Vec<f64> = (0..SCAN_POINTS)
        .map(|i| {
            if i == SCAN_POINTS - 1 {
                kappa_hi
            } else {
                kappa_lo * ratio.powf(i as f64 / (SCAN_POINTS - 1) as f64)
            }
        })
        .collect();
    let values: Vec<f64> = grid.iter().map(|&k| sq.reduced(k)).collect();
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NoRoot("reduced equation not finite on bracket".into()));
    }

    // candidates: every interior stationary point plus both clamped edges
    let mut best: Option<(f64, f64, f64, BoundaryHit)> = None;
    let mut consider = |alpha: f64, kappa: f64, hit: BoundaryHit| {
        let f = sq.log_likelihood(alpha, kappa);
        if best.map_or(true, |b| f > b.2) {
            best = Some((alpha, kappa, f, hit));
        }
    };
    for w in 0..SCAN_POINTS - 1 {
        let (a, b) = (values[w], values[w + 1]);
        if a == 0.0 || a.signum() != b.signum() {
            let kappa = brent_root(|k| sq.reduced(k), grid[w], grid[w + 1], KAPPA_REL_TOL, MAX_ROOT_ITER)?;
            let alpha = sq.alpha_of(kappa);
            if (alpha_min..=alpha_max).contains(&alpha) {
                consider(alpha, kappa, BoundaryHit::None);
            }
        }
    }
    consider(alpha_max, kappa_lo, BoundaryHit::QLow);
    consider(alpha_min, kappa_hi, BoundaryHit::QHigh);
    let (alpha, kappa, objective, boundary_hit) = best.expect("edges always considered");

    let params = match boundary_hit {
        BoundaryHit::None => QGaussianParams::from_alpha_kappa(alpha, kappa)?,
        BoundaryHit::QLow => QGaussianParams::new(Q_MIN, alpha * kappa)?,
        BoundaryHit::QHigh => QGaussianParams::new(Q_MAX, alpha * kappa)?,
    };
    let (ga, gk) = sq.gradient(alpha, kappa);
    let info = expected_fisher(&params)?;
    let (stderr_q, stderr_beta) = standard_errors_q_beta(&params, s.len(), &info)?;
    Ok(EstimationResult {
        params,
        stderr_q: Some(stderr_q),
        stderr_beta,
        objective,
        gradient_norm: ga.hypot(gk),
        boundary_hit,
        n: s.len(),
    })
}

/// Estimate `β` with `q` held fixed. `1 <= q <= Q_MAX`; `q` within 1e-8 of
/// one uses the Gaussian closed form `β = 1/(2 mean Ω²)`.
pub fn estimate_beta_fixed_q(s: &SampleSet, q: f64) -> Result<EstimationResult> {
    estimate_beta_fixed_q_seeded(s, q, None)
}

/// As [`estimate_beta_fixed_q`], starting the bracket search from
/// `beta_seed` (e.g. the delay-1 estimate scaled by `1/t`).
pub fn estimate_beta_fixed_q_seeded(
    s: &SampleSet,
    q: f64,
    beta_seed: Option<f64>,
) -> Result<EstimationResult> {
    if !(q.is_finite() && (1.0..=Q_MAX).contains(&q)) {
        return Err(Error::domain(format!(
            "fixed q = {q} outside [1, {Q_MAX}]"
        )));
    }
    check_spread(s)?;
    let sq = Squares::new(s);
    let probe = QGaussianParams::new(q, 1.0)?;
    let n = s.len();
    if probe.is_gaussian_limit() {
        let beta = 0.5 / sq.mean_sq();
        let params = QGaussianParams::new(q, beta)?;
        let grad = n as f64 * (0.5 / beta - sq.mean_sq());
        return Ok(EstimationResult {
            params,
            stderr_q: None,
            stderr_beta: stderr_beta_fixed_q(&params, n)?,
            objective: sq.gaussian_log_likelihood(beta),
            gradient_norm: grad.abs(),
            boundary_hit: BoundaryHit::None,
            n,
        });
    }
    let alpha = probe.alpha();
    let kappa = sq.kappa_at_alpha(alpha, beta_seed.map(|b| b / alpha))?;
    let params = QGaussianParams::new(q, alpha * kappa)?;
    let (_, gk) = sq.gradient(alpha, kappa);
    Ok(EstimationResult {
        params,
        stderr_q: None,
        stderr_beta: stderr_beta_fixed_q(&params, n)?,
        objective: sq.log_likelihood(alpha, kappa),
        gradient_norm: gk.abs(),
        boundary_hit: BoundaryHit::None,
        n,
    })
}

/// Per-branch estimates at fixed `q`: the left branch uses `Ω <= 0`, the
/// right `Ω >= 0`. The likelihood equations see only `Ω²`, so a half-sample
/// is fitted exactly like a full one.
pub fn estimate_branches(
    s: &SampleSet,
    q: f64,
) -> Result<(EstimationResult, EstimationResult)> {
    let left: Vec<f64> = s.values().iter().copied().filter(|&v| v <= 0.0).collect();
    let right: Vec<f64> = s.values().iter().copied().filter(|&v| v >= 0.0).collect();
    for (branch, len) in [("left", left.len()), ("right", right.len())] {
        if len < MIN_SAMPLES {
            return Err(Error::InsufficientBranchSamples {
                branch,
                needed: MIN_SAMPLES,
                got: len,
            });
        }
    }
    let l = estimate_beta_fixed_q(&SampleSet::new(left)?, q)?;
    let r = estimate_beta_fixed_q(&SampleSet::new(right)?, q)?;
    Ok((l, r))
}

/// Solve the two score equations jointly (no elimination) by Newton's method
/// from `(alpha0, kappa0)`. Used to cross-check the reduced equation.
pub fn solve_score_equations(
    s: &SampleSet,
    alpha0: f64,
    kappa0: f64,
) -> Result<(f64, f64)> {
    let sq = Squares::new(s);
    let n = sq.n();
    let (mut a, mut k) = (alpha0, kappa0);
    for _ in 0..100 {
        let (ga, gk) = sq.gradient(a, k);
        // Hessian of F
        let w2 = sq
            .sq
            .iter()
            .map(|&x| {
                let w = x / (1.0 + k * x);
                w * w
            })
            .sum::<f64>();
        let w1 = sq.sq.iter().map(|&x| x / (1.0 + k * x)).sum::<f64>();
        let h_aa = n * (crate::special::trigamma(a) - crate::special::trigamma(a - 0.5));
        let h_ak = -w1;
        let h_kk = -0.5 * n / (k * k) + a * w2;
        let det = h_aa * h_kk - h_ak * h_ak;
        if det == 0.0 || !det.is_finite() {
            return Err(Error::NoRoot("singular Hessian in Newton step".into()));
        }
        let da = (h_kk * ga - h_ak * gk) / det;
        let dk = (h_aa * gk - h_ak * ga) / det;
        // damp to keep the iterate admissible
        let mut t = 1.0;
        while (a - t * da <= 0.5 || k - t * dk <= 0.0) && t > 1e-12 {
            t *= 0.5;
        }
        a -= t * da;
        k -= t * dk;
        if (t * da).abs() < 1e-14 * a && (t * dk).abs() < 1e-14 * k {
            return Ok((a, k));
        }
    }
    Err(Error::NoRoot("Newton iteration did not converge".into()))
}
