//! Maximum-likelihood fitting of q-Gaussian distributions to standardized
//! log returns, with Fisher-information standard errors, two-sample
//! goodness-of-fit tests, and β(t) diffusion analysis across time delays.
//!
//! ```
//! use qgauss::{estimate_q_beta, sample_q_gaussian, QGaussianParams, SampleSet, SeededStream};
//!
//! let truth = QGaussianParams::new(1.5, 1.0).unwrap();
//! let mut rng = SeededStream::new(7);
//! let xs = sample_q_gaussian(&truth, 5_000, &mut rng).unwrap();
//! let fit = estimate_q_beta(&SampleSet::new(xs).unwrap()).unwrap();
//! assert!((fit.params.q() - 1.5).abs() < 0.1);
//! ```

pub mod analysis;
pub mod diffusion;
pub mod distribution;
pub mod error;
pub mod estimation;
pub mod fisher;
pub mod gof;
pub mod optimize;
pub mod pipeline;
pub mod sampling;
pub mod special;

pub use diffusion::{BetaSeries, DiffusionFit, DriftDiffusionParams, PowerLawFit};
pub use distribution::QGaussianParams;
pub use error::{Error, ErrorClass, Result};
pub use estimation::{
    estimate_beta_fixed_q, estimate_q_beta, BoundaryHit, EstimationResult, SampleSet,
};
pub use fisher::{expected_fisher, measured_fisher, InfoMatrix2};
pub use gof::{goodness_of_fit, GofOptions, GofReport};
pub use pipeline::{build_return_panel, PriceSeries, ReturnPanel};
pub use sampling::{sample_q_gaussian, SeededStream};
