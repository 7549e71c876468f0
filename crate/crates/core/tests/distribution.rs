mod common;

use proptest::prelude::*;
use qgauss::distribution::{normalization_cq, q_log, tail_index};
use qgauss::special::student_t_cdf;
use qgauss::{Error, QGaussianParams};

#[test]
fn cq_matches_quadrature() {
    for q in [1.05, 1.1, 1.3, 1.4, 1.5, 1.65, 2.0, 2.5] {
        let oracle = common::z_quad(q, 1.0);
        let got = normalization_cq(q).unwrap();
        assert!((got / oracle - 1.0).abs() < 1e-9, "q = {q}: {got} vs {oracle}");
    }
}

#[test]
fn cq_at_one_point_four_against_kernel_integral() {
    // ∫(1 + 0.4x²)^(-2.5) dx
    let oracle = common::integrate_line(|x| (1.0 + 0.4 * x * x).powf(-2.5), 1e-13);
    assert!((normalization_cq(1.4).unwrap() - oracle).abs() < 1e-8);
}

#[test]
fn frozen_constants() {
    // oracle values produced by common::z_quad and frozen here
    assert!((normalization_cq(1.5).unwrap() - 2.221_441_469_079_183).abs() < 1e-12);
    assert!((normalization_cq(1.4).unwrap() - 2.108_185_106_778_919).abs() < 1e-10);
    let p = QGaussianParams::new(1.5, 1.0).unwrap();
    assert!((p.pdf(0.0) - 0.450_158_158_078_553).abs() < 1e-9);
    assert!((p.cdf(1.0) - 0.845_965_995_374_821).abs() < 1e-9);
}

#[test]
fn normalization_grid() {
    for q in [1.1, 1.3, 1.5, 1.65] {
        for beta in [0.1, 1.0, 10.0] {
            let p = QGaussianParams::new(q, beta).unwrap();
            let total = common::integrate_line(|x| p.pdf(x), 1e-12);
            assert!((total - 1.0).abs() < 1e-6, "q = {q}, beta = {beta}: {total}");
        }
    }
}

#[test]
fn cdf_against_integrated_density() {
    for (q, beta) in [(1.5, 1.0), (1.2, 3.0), (1.65, 0.4), (2.2, 1.0)] {
        let p = QGaussianParams::new(q, beta).unwrap();
        for x in [-4.0, -1.0, -0.1, 0.3, 1.0, 2.5, 12.0] {
            let oracle = common::integrate_below(|y| common::density(y, q, beta), x, 1e-14);
            assert!((p.cdf(x) - oracle).abs() < 1e-9, "q = {q}, x = {x}");
        }
    }
}

#[test]
fn cdf_limits() {
    let p = QGaussianParams::new(1.5, 1.0).unwrap();
    assert_eq!(p.cdf(0.0), 0.5);
    assert!((p.cdf(1e6) - 1.0).abs() < 1e-9);
    assert!(p.cdf(-1e6) < 1e-9);
}

#[test]
fn density_equals_rescaled_student_t() {
    // q-Gaussian(q, β) is a Student-t with ν = (3 - q)/(q - 1) scaled by
    // s = 1/√(β(3 - q)); the t density is written out directly here
    for (q, beta) in [(1.3, 1.0), (1.5, 2.0), (1.65, 0.5)] {
        let nu: f64 = (3.0 - q) / (q - 1.0);
        let s = 1.0 / (beta * (3.0 - q)).sqrt();
        let t_norm = common::integrate_line(|u| (1.0 + u * u / nu).powf(-(nu + 1.0) / 2.0), 1e-13);
        let p = QGaussianParams::new(q, beta).unwrap();
        for x in [-3.0, -0.5, 0.0, 0.7, 4.0] {
            let u = x / s;
            let t_pdf = (1.0 + u * u / nu).powf(-(nu + 1.0) / 2.0) / t_norm / s;
            assert!((p.pdf(x) / t_pdf - 1.0).abs() < 1e-9);
            assert!((p.cdf(x) - student_t_cdf(u, nu)).abs() < 1e-12);
        }
    }
}

#[test]
fn gaussian_limit_density() {
    let p = QGaussianParams::new(1.0 + 1e-10, 0.5).unwrap();
    let sup = (0..=1200)
        .map(|i| -6.0 + i as f64 * 0.01)
        .map(|x| (p.pdf(x) - (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()).abs())
        .fold(0.0, f64::max);
    assert!(sup < 1e-6);
    assert!((QGaussianParams::new(1.0, 1.0).unwrap().variance().unwrap() - 0.5).abs() < 1e-15);
}

#[test]
fn variance_against_second_moment() {
    for q in [1.1, 1.3, 1.5, 1.6] {
        let p = QGaussianParams::new(q, 1.0).unwrap();
        let m2 = common::integrate_line(|x| x * x * p.pdf(x), 1e-12);
        assert!((p.variance().unwrap() / m2 - 1.0).abs() < 1e-6, "q = {q}");
    }
    assert_eq!(QGaussianParams::new(1.5, 1.0).unwrap().variance().unwrap(), 2.0);
    assert!(matches!(
        QGaussianParams::new(5.0 / 3.0, 1.0).unwrap().variance(),
        Err(Error::VarianceDivergence { .. })
    ));
}

#[test]
fn q_log_examples() {
    assert_eq!(q_log(1.0, 1.7).unwrap(), 0.0);
    assert!((q_log(2.0, 2.0).unwrap() - 0.5).abs() < 1e-15);
    assert!((q_log(std::f64::consts::E, 1.0).unwrap() - 1.0).abs() < 1e-15);
}

#[test]
fn tail_index_examples() {
    assert!((tail_index(1.4).unwrap() - 6.0).abs() < 1e-12);
    assert!((tail_index(1.5).unwrap() - 5.0).abs() < 1e-12);
    assert!((tail_index(1.65).unwrap() - 4.077).abs() < 1e-3);
}

proptest! {
    #[test]
    fn pdf_symmetric_about_mean(q in 1.01f64..2.9, beta in 0.01f64..50.0, m in -5.0f64..5.0, x in -20.0f64..20.0) {
        let p = QGaussianParams::new(q, beta).unwrap().with_mean(m);
        let (a, b) = (p.pdf(x), p.pdf(2.0 * m - x));
        prop_assert!((a - b).abs() <= 1e-13 * a.max(b));
        prop_assert!((p.cdf(x) + p.cdf(2.0 * m - x) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn z_times_root_beta_is_cq(q in 1.01f64..2.9, beta in 1e-3f64..1e3) {
        let p = QGaussianParams::new(q, beta).unwrap();
        prop_assert!((p.z_q() * beta.sqrt() / p.c_q() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn alpha_kappa_roundtrip(q in 1.01f64..2.9, beta in 1e-3f64..1e3) {
        let p = QGaussianParams::new(q, beta).unwrap();
        prop_assert!((p.alpha() * (q - 1.0) - 1.0).abs() < 1e-12);
        prop_assert!((p.kappa() * p.alpha() / beta - 1.0).abs() < 1e-12);
        let r = QGaussianParams::from_alpha_kappa(p.alpha(), p.kappa()).unwrap();
        prop_assert!((r.q() - q).abs() < 1e-12 && (r.beta() / beta - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cdf_monotone(q in 1.01f64..2.9, x in -50.0f64..50.0, dx in 1e-6f64..5.0) {
        let p = QGaussianParams::new(q, 1.0).unwrap();
        prop_assert!(p.cdf(x + dx) >= p.cdf(x));
    }
}
