//! Expected vs measured Fisher information and the standard errors they
//! imply for `(q, β)`.

use qgauss::fisher::standard_errors_q_beta;
use qgauss::{expected_fisher, measured_fisher, sample_q_gaussian, QGaussianParams, SeededStream};

fn main() -> qgauss::Result<()> {
    let p = QGaussianParams::new(1.5, 1.0)?;
    let xs = sample_q_gaussian(&p, 200_000, &mut SeededStream::new(3))?;

    let e = expected_fisher(&p)?;
    let m = measured_fisher(&xs, &p)?;
    println!("per-observation information in (alpha, kappa):");
    for (name, mat) in [("expected", &e), ("measured", &m)] {
        println!(
            "  {name}: [[{:.5}, {:.5}], [{:.5}, {:.5}]]",
            mat.entries[0][0], mat.entries[0][1], mat.entries[1][0], mat.entries[1][1]
        );
    }
    for n in [1_000, 10_000, 100_000] {
        let (sq, sb) = standard_errors_q_beta(&p, n, &e)?;
        println!("N = {n:>6}: S(q) = {sq:.5}  S(beta) = {sb:.5}");
    }
    Ok(())
}
