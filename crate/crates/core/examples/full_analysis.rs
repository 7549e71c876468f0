//! The complete workflow on the bundled walk, writing the report bundle to
//! a directory.
//!
//!     cargo run --example full_analysis -- [out_dir]

use qgauss::analysis::{cmd_analyze, AnalysisConfig};

fn main() -> qgauss::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "qgauss_out".into());
    let mut cfg = AnalysisConfig::new(
        concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/qgauss_walk.csv"),
        &out,
    );
    cfg.branches = true;
    cfg.seed = 1;
    let r = cmd_analyze(&cfg)?;
    let s = &r.summary;
    println!("q = {:.4} ± {:.4}", s.q_hat, s.stderr_q.unwrap_or(f64::NAN));
    println!("beta(1) = {:.4} ± {:.4}", s.beta1, s.stderr_beta1);
    println!("lambda = {:.4} ± {:.4}", s.diffusion.lambda, s.diffusion.lambda_stderr);
    println!("b = {:.5}  D = {:.5}  tau = {:.2}", s.diffusion.b, s.diffusion.d, s.diffusion.tau);
    println!(
        "KS passed at {}/{} delays, closeness at {}/{}",
        s.gof.passed_distance, s.gof.delays, s.gof.passed_closeness, s.gof.delays
    );
    println!("wrote {out}/");
    Ok(())
}
