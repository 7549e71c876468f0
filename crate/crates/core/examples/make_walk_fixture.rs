//! Regenerate the bundled price-walk fixture: i.i.d. q-Gaussian log-price
//! increments (q = 1.5) on a weekday calendar.
//!
//!     cargo run --example make_walk_fixture -- tests/fixtures/qgauss_walk.csv

use std::path::PathBuf;

use chrono::NaiveDate;
use qgauss::analysis::{walk_csv, weekdays_from};
use qgauss::sampling::q_gaussian_walk;
use qgauss::{QGaussianParams, SeededStream};

const Q: f64 = 1.5;
// variance 1/((5 - 3q) β) = 1e-4, i.e. 1% daily moves
const BETA: f64 = 2.0e4;
const ROWS: usize = 10_000;
const SEED: u64 = 1;

fn main() -> qgauss::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from("qgauss_walk.csv"));
    let p = QGaussianParams::new(Q, BETA)?;
    let closes = q_gaussian_walk(&p, ROWS, 100.0, &mut SeededStream::new(SEED))?;
    let dates = weekdays_from(NaiveDate::from_ymd_opt(1990, 1, 1).unwrap(), ROWS);
    std::fs::write(&out, walk_csv(&dates, &closes)).map_err(|source| qgauss::Error::Io {
        path: out.clone(),
        source,
    })?;
    println!("wrote {} rows to {}", ROWS, out.display());
    Ok(())
}
