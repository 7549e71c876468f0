//! Maximum-likelihood fit of `(q, β)` to synthetic deviates, then `β` at a
//! fixed `q`, and per-branch fits.

use qgauss::estimation::estimate_branches;
use qgauss::{estimate_beta_fixed_q, estimate_q_beta, sample_q_gaussian, QGaussianParams, SampleSet, SeededStream};

fn main() -> qgauss::Result<()> {
    let truth = QGaussianParams::new(1.45, 0.8)?;
    let xs = sample_q_gaussian(&truth, 20_000, &mut SeededStream::new(42))?;
    let s = SampleSet::new(xs)?;

    let fit = estimate_q_beta(&s)?;
    println!(
        "joint:   q = {:.4} ± {:.4}   beta = {:.4} ± {:.4}   ({:?})",
        fit.params.q(),
        fit.stderr_q.unwrap_or(f64::NAN),
        fit.params.beta(),
        fit.stderr_beta,
        fit.boundary_hit
    );

    let fixed = estimate_beta_fixed_q(&s, 1.45)?;
    println!("q fixed: beta = {:.4} ± {:.4}", fixed.params.beta(), fixed.stderr_beta);

    let (left, right) = estimate_branches(&s, fit.params.q())?;
    println!(
        "branches: beta- = {:.4} ({} pts), beta+ = {:.4} ({} pts)",
        left.params.beta(),
        left.n,
        right.params.beta(),
        right.n
    );
    Ok(())
}
