//! Load a price CSV and build standardized log returns for several delays.
//!
//!     cargo run --example return_panel -- [prices.csv]

use qgauss::pipeline::{build_return_panel, load_price_series};

fn main() -> qgauss::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/qgauss_walk.csv").into());
    let prices = load_price_series(&path)?;
    println!(
        "{} rows, {} to {}",
        prices.len(),
        prices.dates()[0],
        prices.dates()[prices.len() - 1]
    );
    let panel = build_return_panel(&prices, &[1, 5, 20, 60])?;
    println!("sigma1 = {:.6}", panel.sigma1());
    for t in panel.delays() {
        let w = panel.omega(t).unwrap_or_default();
        let var = w.iter().map(|v| v * v).sum::<f64>() / w.len() as f64;
        println!("t = {t:>2}: {} samples, var/t = {:.3}", w.len(), var / t as f64);
    }
    Ok(())
}
