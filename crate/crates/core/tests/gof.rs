use proptest::prelude::*;
use qgauss::gof::{closeness_p_value, ks_critical, ks_distance, P_CRIT};
use qgauss::{goodness_of_fit, sample_q_gaussian, GofOptions, QGaussianParams, SeededStream};

/// Brute-force KS distance: evaluate both step functions at every point.
fn ks_brute(a: &[f64], b: &[f64]) -> f64 {
    let ecdf = |v: &[f64], x: f64| v.iter().filter(|&&y| y <= x).count() as f64 / v.len() as f64;
    a.iter()
        .chain(b)
        .map(|&x| (ecdf(a, x) - ecdf(b, x)).abs())
        .fold(0.0, f64::max)
}

#[test]
fn same_distribution_calibration() {
    let p = QGaussianParams::new(1.5, 1.0).unwrap();
    let crit = ks_critical(10_000, 10_000, 0.05).unwrap();
    let trials = 200;
    let passed = (0..trials)
        .filter(|&i| {
            let mut s = SeededStream::with_stream(404, i);
            let a = sample_q_gaussian(&p, 10_000, &mut s).unwrap();
            let b = sample_q_gaussian(&p, 10_000, &mut s).unwrap();
            ks_distance(&a, &b).unwrap() <= crit
        })
        .count();
    let rate = passed as f64 / trials as f64;
    // binomial sd at 200 trials is 1.5%
    assert!((rate - 0.95).abs() < 0.045, "{passed}/{trials}");
}

#[test]
fn missscaled_synthetic_keeps_true_model() {
    let truth = QGaussianParams::new(1.5, 1.0).unwrap();
    let wrong = truth.with_beta(100.0).unwrap();
    let good = (0..100)
        .filter(|&i| {
            let mut s = SeededStream::with_stream(5, i);
            let emp = sample_q_gaussian(&truth, 1_000, &mut s).unwrap();
            let syn = sample_q_gaussian(&wrong, 1_000, &mut s).unwrap();
            closeness_p_value(&emp, &syn, &truth).unwrap() > 0.9
        })
        .count();
    assert_eq!(good, 100);
}

#[test]
fn heavy_tails_rejected_by_light_model() {
    let truth = QGaussianParams::new(1.66, 1.0).unwrap();
    let light = QGaussianParams::new(1.1, 1.0).unwrap();
    let mut s = SeededStream::new(6);
    let emp = sample_q_gaussian(&truth, 2_000, &mut s).unwrap();
    let r = goodness_of_fit(&emp, &light, &GofOptions::default(), &mut s).unwrap();
    assert!(r.p_close < P_CRIT, "{r:?}");
    assert!(!r.pass_p);
}

#[test]
fn synthetic_factor_sets_size() {
    let p = QGaussianParams::new(1.4, 1.0).unwrap();
    let mut s = SeededStream::new(1);
    let emp = sample_q_gaussian(&p, 500, &mut s).unwrap();
    let opts = GofOptions {
        synthetic_factor: 2.5,
        ..GofOptions::default()
    };
    let r = goodness_of_fit(&emp, &p, &opts, &mut s).unwrap();
    assert_eq!(r.n_synthetic, 1250);
    assert!((r.d_crit - ks_critical(500, 1250, 0.05).unwrap()).abs() < 1e-15);
}

#[test]
fn restandardized_synthetic_matches_empirical_scale() {
    let p = QGaussianParams::new(1.4, 1.0).unwrap();
    let emp: Vec<f64> = sample_q_gaussian(&p, 3_000, &mut SeededStream::new(2))
        .unwrap()
        .into_iter()
        .map(|v| 3.0 * v + 1.0)
        .collect();
    let opts = GofOptions {
        restandardize_synthetic: true,
        ..GofOptions::default()
    };
    let plain = goodness_of_fit(&emp, &p, &GofOptions::default(), &mut SeededStream::new(3)).unwrap();
    let re = goodness_of_fit(&emp, &p, &opts, &mut SeededStream::new(3)).unwrap();
    assert!(re.d_max < plain.d_max);
}

proptest! {
    #[test]
    fn ks_matches_brute_force(
        a in prop::collection::vec(-5i32..5, 1..40),
        b in prop::collection::vec(-5i32..5, 1..40),
    ) {
        // small integer supports force many ties
        let a: Vec<f64> = a.into_iter().map(f64::from).collect();
        let b: Vec<f64> = b.into_iter().map(f64::from).collect();
        let d = ks_distance(&a, &b).unwrap();
        prop_assert!((d - ks_brute(&a, &b)).abs() < 1e-12);
        prop_assert_eq!(d, ks_distance(&b, &a).unwrap());
    }

    #[test]
    fn ks_invariant_under_monotone_map(
        a in prop::collection::vec(-10.0f64..10.0, 1..60),
        b in prop::collection::vec(-10.0f64..10.0, 1..60),
    ) {
        let f = |v: &Vec<f64>| v.iter().map(|x| (0.3 * x).exp() + x.powi(3)).collect::<Vec<_>>();
        prop_assert_eq!(ks_distance(&a, &b).unwrap(), ks_distance(&f(&a), &f(&b)).unwrap());
    }

    #[test]
    fn closeness_permutation_invariant(seed in 0u64..500, k in 0usize..200) {
        let p = QGaussianParams::new(1.5, 1.0).unwrap();
        let mut s = SeededStream::new(seed);
        let e = sample_q_gaussian(&p, 200, &mut s).unwrap();
        let y = sample_q_gaussian(&p, 150, &mut s).unwrap();
        let mut e2 = e.clone();
        e2.rotate_left(k);
        let mut y2 = y.clone();
        y2.reverse();
        prop_assert_eq!(
            closeness_p_value(&e, &y, &p).unwrap(),
            closeness_p_value(&e2, &y2, &p).unwrap()
        );
    }
}
