//! Superdiffusion and drift+diffusion β(t) curves, and recovering the drift
//! parameters from a noiseless series.

use qgauss::diffusion::{beta_drift_diffusion, beta_superdiffusion, fit_drift_params, fit_power_law};
use qgauss::{BetaSeries, DriftDiffusionParams};

fn main() -> qgauss::Result<()> {
    let q = 1.4;
    let dd = DriftDiffusionParams::new(0.0437, 0.506, q)?;
    println!("tau = {:.2} days", dd.tau);
    println!("{:>4} {:>10} {:>10}", "t", "beta_sd", "beta_dd");
    for t in [1.0, 2.0, 5.0, 10.0, 20.0, 40.0, 60.0] {
        let b1 = beta_drift_diffusion(1.0, &dd)?;
        println!(
            "{t:4} {:10.5} {:10.5}",
            beta_superdiffusion(t, q, b1)?,
            beta_drift_diffusion(t, &dd)?
        );
    }

    let delays: Vec<u32> = (1..=60).collect();
    let beta: Vec<f64> = delays
        .iter()
        .map(|&t| beta_drift_diffusion(t as f64, &dd))
        .collect::<qgauss::Result<_>>()?;
    let series = BetaSeries::new(delays, beta, vec![0.0; 60])?;
    let pl = fit_power_law(&series)?;
    let fit = fit_drift_params(&series, q)?;
    println!("power law lambda = {:.4}", pl.lambda);
    println!("recovered b = {:.6}, D = {:.6}", fit.b, fit.d);
    Ok(())
}
