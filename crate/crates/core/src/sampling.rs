//! Seedable q-Gaussian deviates by the generalized Box–Müller transform.
//!
//! Two open-interval uniforms `u₁, u₂` give
//!
//! ```text
//! z = √(-2 ln_q'(u₁)) cos(2π u₂),   q' = (1 + q)/(3 - q)
//! ```
//!
//! which is q-Gaussian with index `q` and `β₀ = 1/(3 - q)`. Deviates are then
//! rescaled by `√(β₀/β)` to the requested `β`.
//!
//! The uniform source is ChaCha20 keyed by the 64-bit seed, with the 64-bit
//! stream id selecting an independent keystream. The byte stream is fixed by
//! the cipher, so sequences replay identically on every platform.

use std::f64::consts::PI;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;

use crate::distribution::{q_log, QGaussianParams};
use crate::error::{Error, Result};

/// A deterministic uniform stream identified by `(seed, stream)`.
#[derive(Debug, Clone)]
pub struct SeededStream {
    seed: u64,
    stream: u64,
    rng: ChaCha20Rng,
}

impl SeededStream {
    pub fn new(seed: u64) -> Self {
        Self::with_stream(seed, 0)
    }

    pub fn with_stream(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        Self { seed, stream, rng }
    }

    /// Independent stream sharing this seed, selected by `id`.
    pub fn split(&self, id: u64) -> Self {
        // mix the parent stream in so nested splits do not collide
        let stream = self
            .stream
            .wrapping_mul(0x9E37_79B9_7F4A_7C15)
            .wrapping_add(id.wrapping_add(1));
        Self::with_stream(self.seed, stream)
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }

    /// Number of 64-bit words consumed so far.
    pub fn counter(&self) -> u128 {
        self.rng.get_word_pos() / 2
    }

    /// Uniform on the open interval (0, 1) with 53 random bits.
    pub fn next_open01(&mut self) -> f64 {
        let bits = self.rng.next_u64() >> 11;
        (bits as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }
}

/// `n` q-Gaussian deviates with the given parameters.
pub fn sample_q_gaussian(
    p: &QGaussianParams,
    n: usize,
    stream: &mut SeededStream,
) -> Result<Vec<f64>> {
    let q = p.q();
    if !(q >= 1.0 && q < 3.0) {
        return Err(Error::domain(format!("sampling needs 1 <= q < 3, got {q}")));
    }
    let q_prime = (1.0 + q) / (3.0 - q);
    let scale = (1.0 / ((3.0 - q) * p.beta())).sqrt();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let u1 = stream.next_open01();
        let u2 = stream.next_open01();
        let radius = (-2.0 * q_log(u1, q_prime)?).sqrt();
        let z = radius * (2.0 * PI * u2).cos();
        out.push(p.mean() + scale * z);
    }
    Ok(out)
}

/// Closing prices of a random walk whose log increments are i.i.d.
/// q-Gaussian deviates, starting from `start_price`. Returns `n_rows` prices.
pub fn q_gaussian_walk(
    p: &QGaussianParams,
    n_rows: usize,
    start_price: f64,
    stream: &mut SeededStream,
) -> Result<Vec<f64>> {
    if n_rows == 0 {
        return Ok(Vec::new());
    }
    let increments = sample_q_gaussian(p, n_rows - 1, stream)?;
    let mut log_price = start_price.ln();
    let mut prices = Vec::with_capacity(n_rows);
    prices.push(start_price);
    for dx in increments {
        log_price += dx;
        prices.push(log_price.exp());
    }
    Ok(prices)
}
