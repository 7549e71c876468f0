//! Density, CDF, variance and normalization of a few q-Gaussians.

use qgauss::distribution::{q_log, tail_index};
use qgauss::QGaussianParams;

fn main() -> qgauss::Result<()> {
    println!("{:>5} {:>10} {:>10} {:>10} {:>10} {:>8}", "q", "C_q", "pdf(0)", "cdf(1)", "variance", "tail");
    for q in [1.0, 1.2, 1.4, 1.5, 1.6] {
        let p = QGaussianParams::new(q, 1.0)?;
        let var = p.variance().map(|v| format!("{v:10.4}")).unwrap_or_else(|_| "inf".into());
        let tail = tail_index(q).map(|t| format!("{t:8.3}")).unwrap_or_else(|_| "-".into());
        println!(
            "{q:5.2} {:10.6} {:10.6} {:10.6} {var} {tail}",
            p.c_q(),
            p.pdf(0.0),
            p.cdf(1.0),
        );
    }
    println!("ln_q(2) at q = 1.5: {:.6}", q_log(2.0, 1.5)?);
    Ok(())
}
