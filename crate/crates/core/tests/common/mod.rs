//! Test oracles that share no code with the library.

#![allow(dead_code)]

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss weights.
const XK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let s = f(c - h * XK[i]) + f(c + h * XK[i]);
        k += WK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Global adaptive Gauss–Kronrod: keep splitting the interval with the
/// largest error estimate until the summed estimate meets `tol`.
fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, max_intervals: usize) -> f64 {
    let (v, e) = gk15(f, a, b);
    let mut parts = vec![(a, b, v, e)];
    let (mut total, mut err) = (v, e);
    loop {
        if err <= tol.max(1e-15 * total.abs()) || parts.len() >= max_intervals {
            return total;
        }
        let worst = (0..parts.len())
            .max_by(|&i, &j| parts[i].3.total_cmp(&parts[j].3))
            .unwrap();
        let (lo, hi, v0, e0) = parts.swap_remove(worst);
        let m = 0.5 * (lo + hi);
        let (v1, e1) = gk15(f, lo, m);
        let (v2, e2) = gk15(f, m, hi);
        total += v1 + v2 - v0;
        err += e1 + e2 - e0;
        parts.push((lo, m, v1, e1));
        parts.push((m, hi, v2, e2));
    }
}

/// ∫_a^b f with absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    adapt(&f, a, b, tol, 4000)
}

/// ∫_a^∞ f for a > 0 via x = a·u^(-8), which flattens power-law tails.
fn integrate_tail<F: Fn(f64) -> f64>(f: F, a: f64, tol: f64) -> f64 {
    let g = |u: f64| {
        if u <= 0.0 {
            return 0.0;
        }
        let x = a * u.powi(-8);
        let v = f(x) * 8.0 * x / u;
        if v.is_finite() { v } else { 0.0 }
    };
    integrate(g, 0.0, 1.0, tol)
}

/// ∫_{-∞}^{∞} f, split at ±1 with substituted tails.
pub fn integrate_line<F: Fn(f64) -> f64>(f: F, tol: f64) -> f64 {
    integrate_tail(|x| f(-x), 1.0, tol / 3.0)
        + integrate(&f, -1.0, 1.0, tol / 3.0)
        + integrate_tail(&f, 1.0, tol / 3.0)
}

/// ∫_{-∞}^{x} f.
pub fn integrate_below<F: Fn(f64) -> f64>(f: F, x: f64, tol: f64) -> f64 {
    if x <= -1.0 {
        return integrate_tail(|y| f(-y), -x, tol);
    }
    integrate_tail(|y| f(-y), 1.0, tol / 2.0) + integrate(&f, -1.0, x, tol / 2.0)
}

/// Unnormalized q-Gaussian kernel written from its definition.
pub fn kernel(x: f64, q: f64, beta: f64) -> f64 {
    if (q - 1.0).abs() < 1e-12 {
        return (-beta * x * x).exp();
    }
    (1.0 + (q - 1.0) * beta * x * x).powf(-1.0 / (q - 1.0))
}

/// Normalization constant by quadrature.
pub fn z_quad(q: f64, beta: f64) -> f64 {
    integrate_line(|x| kernel(x, q, beta), 1e-13)
}

pub fn density(x: f64, q: f64, beta: f64) -> f64 {
    kernel(x, q, beta) / z_quad(q, beta)
}

/// One-sample KS statistic of `xs` against `cdf`.
pub fn ks_one_sample<F: Fn(f64) -> f64>(xs: &[f64], cdf: F) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len() as f64;
    v.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).abs().max(((i + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

pub fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Unbiased sample variance.
pub fn var(v: &[f64]) -> f64 {
    let m = mean(v);
    v.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (v.len() as f64 - 1.0)
}

pub fn fixture_path() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/qgauss_walk.csv")
}
