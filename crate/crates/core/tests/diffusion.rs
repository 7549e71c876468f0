use proptest::prelude::*;
use qgauss::diffusion::{
    beta_drift_diffusion, beta_superdiffusion, characteristic_time, diffusion_from_anchor,
    fit_drift_params, fit_power_law, superdiffusion_exponent, B_MIN,
};
use qgauss::distribution::normalization_cq;
use qgauss::{BetaSeries, DiffusionFit, DriftDiffusionParams, QGaussianParams};

fn grid() -> Vec<u32> {
    (1..=60).collect()
}

fn series(delays: &[u32], f: impl Fn(f64) -> f64) -> BetaSeries {
    let b: Vec<f64> = delays.iter().map(|&t| f(t as f64)).collect();
    let se = b.iter().map(|v| 0.02 * v).collect();
    BetaSeries::new(delays.to_vec(), b, se).unwrap()
}

#[test]
fn normalization_product_is_constant_along_trajectory() {
    // β(t) Z_q(t)² = C_q² for a q-Gaussian of width β(t)
    let p = DriftDiffusionParams::new(0.05, 0.4, 1.5).unwrap();
    let cq2 = normalization_cq(1.5).unwrap().powi(2);
    for t in [0.5, 1.0, 7.0, 30.0, 200.0] {
        let beta = beta_drift_diffusion(t, &p).unwrap();
        let z = QGaussianParams::new(1.5, beta).unwrap().z_q();
        assert!((beta * z * z / cq2 - 1.0).abs() < 1e-10);
    }
}

#[test]
fn local_slope_rises_from_superdiffusion_toward_zero() {
    let q = 1.45;
    let p = DriftDiffusionParams::new(0.03, 0.5, q).unwrap();
    let tau = characteristic_time(p.b, q);
    let slope = |t: f64| {
        let h = 1e-4;
        ((beta_drift_diffusion(t * (1.0 + h), &p).unwrap()).ln()
            - (beta_drift_diffusion(t * (1.0 - h), &p).unwrap()).ln())
            / ((1.0 + h).ln() - (1.0 - h).ln())
    };
    let s0 = superdiffusion_exponent(q);
    let ts: Vec<f64> = (0..40).map(|i| tau * 1e-3 * 1.3f64.powi(i)).collect();
    let slopes: Vec<f64> = ts.iter().map(|&t| slope(t)).collect();
    assert!((slopes[0] / s0 - 1.0).abs() < 1e-3);
    assert!(slopes.windows(2).all(|w| w[1] >= w[0] - 1e-9));
    assert!(slopes.iter().all(|&s| s >= s0 - 1e-9 && s <= 0.0));
}

#[test]
fn short_time_ratio() {
    // β(t/2)/β(t) = 2^(2/(3-q)) · (1 - x/4·2/(3-q) + O(x²)) with x = t/τ
    let q = 1.5;
    let p = DriftDiffusionParams::new(0.05, 0.4, q).unwrap();
    let tau = characteristic_time(p.b, q);
    let e = 2.0 / (3.0 - q);
    let ratio = |t: f64| {
        beta_drift_diffusion(t / 2.0, &p).unwrap() / beta_drift_diffusion(t, &p).unwrap()
            / 2f64.powf(e)
    };
    let x = 0.01;
    assert!((ratio(x * tau) - (1.0 - e * x / 4.0)).abs() < 1e-5);
    assert!((ratio(tau / 1000.0) - 1.0).abs() < 1e-3);
}

#[test]
fn round_trip_recovers_b_and_d() {
    let p = DriftDiffusionParams::new(0.05, 0.4, 1.5).unwrap();
    let s = series(&grid(), |t| beta_drift_diffusion(t, &p).unwrap());
    let f = fit_drift_params(&s, 1.5).unwrap();
    assert!((f.b / 0.05 - 1.0).abs() < 1e-6, "{f:?}");
    assert!((f.d / 0.4 - 1.0).abs() < 1e-6, "{f:?}");
    assert!(!f.b_at_lower_bound);
}

#[test]
fn pure_power_law_pins_b_to_lower_bound() {
    let s = series(&grid(), |t| beta_superdiffusion(t, 1.5, 2.0).unwrap());
    let f = fit_drift_params(&s, 1.5).unwrap();
    assert!(f.b_at_lower_bound);
    assert_eq!(f.b, B_MIN);
}

#[test]
fn superdiffusion_series_slope() {
    let s = series(&grid(), |t| beta_superdiffusion(t, 1.5, 1.0).unwrap());
    let f = fit_power_law(&s).unwrap();
    assert!((f.lambda + 4.0 / 3.0).abs() < 1e-12);
}

#[test]
fn anchored_curves() {
    let p = DriftDiffusionParams::new(0.02, 0.3, 1.4).unwrap();
    let s = series(&grid(), |t| beta_drift_diffusion(t, &p).unwrap());
    let fit = DiffusionFit::fit(&s, 1.4, false).unwrap();
    let c1 = &fit.curves[0];
    assert_eq!(c1.delay, 1);
    assert!((c1.beta_sd / c1.beta_hat - 1.0).abs() < 1e-12);
    assert!((c1.beta_dd / c1.beta_hat - 1.0).abs() < 1e-9);
    let d = diffusion_from_anchor(c1.beta_hat, fit.dd.b, 1.4).unwrap();
    assert!((d / fit.dd.d - 1.0).abs() < 1e-12);
}

#[test]
fn weighted_fit_exact_on_power_law() {
    let s = series(&grid(), |t| 3.0 * t.powf(-0.97));
    let fit = DiffusionFit::fit(&s, 1.4, true).unwrap();
    assert!((fit.lambda + 0.97).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn power_law_scale_equivariance(lam in -2.0f64..-0.5, c in 0.01f64..100.0, wob in 0.0f64..0.3) {
        let f = |t: f64| t.powf(lam) * (1.0 + wob * (t * 1.7).sin());
        let a = fit_power_law(&series(&grid(), f)).unwrap();
        let b = fit_power_law(&series(&grid(), |t| c * f(t))).unwrap();
        prop_assert!((a.lambda - b.lambda).abs() < 1e-12);
        prop_assert!((b.intercept - a.intercept - c.ln()).abs() < 1e-10);
    }

    #[test]
    fn drift_fit_scale_invariance(b in 0.01f64..0.3, c in 0.1f64..10.0, q in 1.2f64..1.65) {
        let p = DriftDiffusionParams::new(b, 0.5, q).unwrap();
        let base = series(&grid(), |t| beta_drift_diffusion(t, &p).unwrap());
        let scaled = series(&grid(), |t| c * beta_drift_diffusion(t, &p).unwrap());
        let f1 = fit_drift_params(&base, q).unwrap();
        let f2 = fit_drift_params(&scaled, q).unwrap();
        prop_assert!((f1.b / f2.b - 1.0).abs() < 1e-6);
        // β ∝ D^(-2/(3-q)) at fixed b
        let want = c.powf(-(3.0 - q) / 2.0);
        prop_assert!((f2.d / f1.d / want - 1.0).abs() < 1e-6);
    }
}
