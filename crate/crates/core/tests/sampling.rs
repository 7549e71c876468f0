mod common;

use qgauss::{sample_q_gaussian, QGaussianParams, SeededStream};

#[test]
fn mean_is_zero() {
    for q in [1.2, 1.5] {
        let p = QGaussianParams::new(q, 1.0).unwrap();
        let xs = sample_q_gaussian(&p, 1_000_000, &mut SeededStream::new(4)).unwrap();
        let se = (p.variance().unwrap() / xs.len() as f64).sqrt();
        assert!(common::mean(&xs).abs() < 4.0 * se);
    }
}

#[test]
fn ks_self_test_against_model_cdf() {
    // one-sample KS of 10⁴ deviates against the analytic cdf
    let p = QGaussianParams::new(1.4, 1.0).unwrap();
    let crit = 1.3581 / (10_000f64).sqrt();
    let passed = (0..100)
        .filter(|&i| {
            let xs = sample_q_gaussian(&p, 10_000, &mut SeededStream::with_stream(2, i)).unwrap();
            common::ks_one_sample(&xs, |x| p.cdf(x)) < crit
        })
        .count();
    assert!(passed >= 93, "{passed}/100");
}

#[test]
fn ks_pass_rate_is_calibrated() {
    // 1000 trials resolve the rate to about ±0.7%
    let p = QGaussianParams::new(1.4, 1.0).unwrap();
    let crit = 1.3581 / (10_000f64).sqrt();
    let passed = (0..1000)
        .filter(|&i| {
            let xs = sample_q_gaussian(&p, 10_000, &mut SeededStream::with_stream(7, i)).unwrap();
            common::ks_one_sample(&xs, |x| p.cdf(x)) < crit
        })
        .count();
    assert!((930..=970).contains(&passed), "{passed}/1000");
}

#[test]
fn ks_self_test_against_quadrature_cdf() {
    // the analytic cdf itself is not trusted here
    let (q, beta) = (1.6, 0.7);
    let p = QGaussianParams::new(q, beta).unwrap();
    let xs = sample_q_gaussian(&p, 20_000, &mut SeededStream::new(12)).unwrap();
    let grid: Vec<f64> = (-40..=40).map(|i| i as f64 * 0.25).collect();
    let oracle: Vec<f64> = grid
        .iter()
        .map(|&x| common::integrate_below(|y| common::density(y, q, beta), x, 1e-12))
        .collect();
    let mut s = xs.clone();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    let d = grid
        .iter()
        .zip(&oracle)
        .map(|(&x, &f)| (s.partition_point(|&v| v <= x) as f64 / n - f).abs())
        .fold(0.0, f64::max);
    assert!(d < 1.63 / n.sqrt(), "{d}");
}

#[test]
fn tail_slope_of_ccdf() {
    // the complementary cdf decays as x^(-(3-q)/(q-1)), i.e. x^-3 at q = 1.5
    let q = 1.5;
    let p = QGaussianParams::new(q, 1.0).unwrap();
    let mut xs: Vec<f64> = sample_q_gaussian(&p, 10_000_000, &mut SeededStream::new(8))
        .unwrap()
        .into_iter()
        .map(f64::abs)
        .collect();
    xs.sort_by(|a, b| b.total_cmp(a));
    let n = xs.len() as f64;
    let top = 10_000;
    let (lx, ly): (Vec<f64>, Vec<f64>) = (0..top)
        .map(|i| (xs[i].ln(), ((i + 1) as f64 / n).ln()))
        .unzip();
    let (mx, my) = (common::mean(&lx), common::mean(&ly));
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    let want = -(3.0 - q) / (q - 1.0);
    assert!((slope - want).abs() < 0.3, "slope {slope}");
}

#[test]
fn beta_scaling_stream_for_stream() {
    let a = sample_q_gaussian(&QGaussianParams::new(1.3, 1.0).unwrap(), 1000, &mut SeededStream::new(5)).unwrap();
    let b = sample_q_gaussian(&QGaussianParams::new(1.3, 9.0).unwrap(), 1000, &mut SeededStream::new(5)).unwrap();
    for (x, y) in a.iter().zip(&b) {
        assert!((x / 3.0 - y).abs() <= 1e-14 * x.abs());
    }
}
