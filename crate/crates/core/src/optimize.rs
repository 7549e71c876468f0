//! Scalar root finding and minimization used by the estimators.

use crate::error::{Error, Result};

/// Bracketed root of `f` on `[a, b]` where `f(a)` and `f(b)` differ in sign.
///
/// Bisection safeguarded secant / inverse-quadratic steps (Brent). Stops when
/// the bracket is narrower than `rel_tol * |x|` or `f` hits zero exactly.
pub fn brent_root<F>(mut f: F, a: f64, b: f64, rel_tol: f64, max_iter: usize) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if !(fa.is_finite() && fb.is_finite()) || fa.signum() == fb.signum() {
        return Err(Error::NoRoot(format!(
            "no sign change on [{a:e}, {b:e}] (f = {fa:e}, {fb:e})"
        )));
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * rel_tol * b.abs();
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * m * s, 1.0 - s)
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0)),
                    (qq - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
        if !fb.is_finite() {
            return Err(Error::NoRoot(format!("non-finite function value at {b:e}")));
        }
    }
    Err(Error::NoRoot(format!(
        "root not converged after {max_iter} iterations"
    )))
}

/// Result of a bounded one-dimensional minimization.
#[derive(Debug, Clone, Copy)]
pub struct Minimum {
    pub x: f64,
    pub value: f64,
    pub at_lower: bool,
    pub at_upper: bool,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for the minimum of `f` on `[lo, hi]`, followed by
/// parabolic refinement through the final three points.
///
/// A coarse grid locates the basin first so that a minimum on the boundary is
/// reported as such instead of being approached asymptotically.
pub fn golden_section_min<F>(mut f: F, lo: f64, hi: f64, abs_tol: f64, grid: usize) -> Minimum
where
    F: FnMut(f64) -> f64,
{
    let grid = grid.max(3);
    let step = (hi - lo) / (grid - 1) as f64;
    let xs: Vec<f64> = (0..grid).map(|i| lo + step * i as f64).collect();
    let fs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    let best = fs
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_finite())
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .unwrap_or(0);

    if best == 0 && fs[0] <= fs[1] && f(lo + 1e-3 * step) >= fs[0] {
        return Minimum {
            x: lo,
            value: fs[0],
            at_lower: true,
            at_upper: false,
        };
    }
    if best == grid - 1 && f(hi - 1e-3 * step) >= fs[grid - 1] {
        return Minimum {
            x: hi,
            value: fs[grid - 1],
            at_lower: false,
            at_upper: true,
        };
    }

    let mut a = xs[best.saturating_sub(1)];
    let mut b = xs[(best + 1).min(grid - 1)];
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a).abs() > abs_tol {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    let (mut x, mut value) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };

    // one parabolic step through (a, x, b)
    let fa = f(a);
    let fb = f(b);
    let num = (x - a).powi(2) * (value - fb) - (x - b).powi(2) * (value - fa);
    let den = (x - a) * (value - fb) - (x - b) * (value - fa);
    if den != 0.0 {
        let xp = x - 0.5 * num / den;
        if xp > a && xp < b {
            let fp = f(xp);
            if fp < value {
                x = xp;
                value = fp;
            }
        }
    }
    Minimum {
        x,
        value,
        at_lower: false,
        at_upper: false,
    }
}
