//! Adaptive Simpson quadrature, used as an independent check on the
//! closed-form integrals.

use num_complex::Complex64;

const MAX_DEPTH: u32 = 50;

/// `int_a^b f` to absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Complex64 {
    if a == b {
        return Complex64::new(0.0, 0.0);
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    refine(&f, a, b, fa, fm, fb, whole, tol, MAX_DEPTH)
}

pub fn adaptive_simpson_real<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    adaptive_simpson(|x| Complex64::new(f(x), 0.0), a, b, tol).re
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Complex64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.norm() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    refine(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + refine(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_oscillatory() {
        let cubic = adaptive_simpson_real(|x| x * x * x - 2.0 * x, -1.0, 3.0, 1e-12);
        assert!((cubic - 12.0).abs() < 1e-12);
        let osc = adaptive_simpson(|x| Complex64::new(0.0, 5.0 * x).exp(), 0.0, 2.0, 1e-12);
        let exact = (Complex64::new(0.0, 10.0).exp() - 1.0) / Complex64::new(0.0, 5.0);
        assert!((osc - exact).norm() < 1e-10);
    }

    #[test]
    fn gaussian_tail() {
        let g = adaptive_simpson_real(|x| (-x * x).exp(), -12.0, 12.0, 1e-12);
        assert!((g - std::f64::consts::PI.sqrt()).abs() < 1e-10);
    }
}
