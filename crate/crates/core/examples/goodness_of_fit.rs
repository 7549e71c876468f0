//! KS distance and closeness fraction for a good and a bad model.

use qgauss::{goodness_of_fit, sample_q_gaussian, GofOptions, QGaussianParams, SeededStream};

fn main() -> qgauss::Result<()> {
    let truth = QGaussianParams::new(1.5, 1.0)?;
    let mut rng = SeededStream::new(11);
    let data = sample_q_gaussian(&truth, 2_000, &mut rng)?;

    let gaussian = QGaussianParams::new(1.0, 0.25)?;
    for (name, model) in [("q-Gaussian", truth), ("Gaussian", gaussian)] {
        let r = goodness_of_fit(&data, &model, &GofOptions::default(), &mut rng)?;
        println!(
            "{name:>10}: D = {:.4} (crit {:.4}, pass {})  P = {:.3} (pass {})",
            r.d_max, r.d_crit, r.pass_d, r.p_close, r.pass_p
        );
    }
    Ok(())
}
