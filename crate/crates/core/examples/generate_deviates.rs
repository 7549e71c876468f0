//! Reproducible q-Gaussian deviates from independent random streams.

use qgauss::{sample_q_gaussian, QGaussianParams, SeededStream};

fn main() -> qgauss::Result<()> {
    let p = QGaussianParams::new(1.4, 1.0)?;
    let root = SeededStream::new(7);
    for id in 0..3 {
        let mut s = root.split(id);
        let xs = sample_q_gaussian(&p, 100_000, &mut s)?;
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        println!(
            "stream {id}: mean = {mean:+.4}  variance = {var:.4} (model {:.4})  first = {:.6}",
            p.variance()?,
            xs[0]
        );
    }
    Ok(())
}
