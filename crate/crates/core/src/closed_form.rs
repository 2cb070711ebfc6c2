//! Closed-form functions `sum_j c_j exp(r_j (x - anchor))` on an interval.
//!
//! Every region solution of a piecewise-constant problem has this form, and
//! so do products of two of them, which makes overlaps exact.

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpTerm {
    pub coef: Complex64,
    pub rate: Complex64,
}

/// A sum of exponentials restricted to `[lo, hi]`; either end may be infinite.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpSum {
    pub lo: f64,
    pub hi: f64,
    pub anchor: f64,
    pub terms: Vec<ExpTerm>,
}

impl ExpSum {
    pub fn new(lo: f64, hi: f64, anchor: f64, terms: Vec<ExpTerm>) -> Self {
        Self {
            lo,
            hi,
            anchor,
            terms,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// `n`-th derivative at `x`.
    pub fn derivative_n(&self, x: f64, n: u32) -> Complex64 {
        let t = x - self.anchor;
        self.terms
            .iter()
            .map(|term| term.coef * term.rate.powu(n) * (term.rate * t).exp())
            .sum()
    }

    pub fn value(&self, x: f64) -> Complex64 {
        self.derivative_n(x, 0)
    }

    pub fn derivative(&self, x: f64) -> Complex64 {
        self.derivative_n(x, 1)
    }

    pub fn scale(&mut self, factor: Complex64) {
        for term in &mut self.terms {
            term.coef *= factor;
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| ExpTerm {
                    coef: t.coef.conj(),
                    rate: t.rate.conj(),
                })
                .collect(),
            ..*self
        }
    }

    /// Pointwise product; both factors must share interval and anchor.
    pub fn product(&self, other: &Self) -> Self {
        debug_assert!(self.lo == other.lo && self.hi == other.hi && self.anchor == other.anchor);
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(ExpTerm {
                    coef: a.coef * b.coef,
                    rate: a.rate + b.rate,
                });
            }
        }
        Self { terms, ..*self }
    }

    /// Exact integral over `[lo, hi]`. Terms on an infinite end must decay
    /// there; a term that does not yields a non-finite result.
    pub fn integral(&self) -> Complex64 {
        self.terms
            .iter()
            .map(|t| integrate_term(t, self.lo, self.hi, self.anchor))
            .sum()
    }
}

fn integrate_term(term: &ExpTerm, lo: f64, hi: f64, anchor: f64) -> Complex64 {
    let ExpTerm { coef, rate } = *term;
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => {
            let width = hi - lo;
            coef * (rate * (lo - anchor)).exp() * exprel(rate * width) * width
        }
        (true, false) => {
            if rate.re < 0.0 {
                -coef * (rate * (lo - anchor)).exp() / rate
            } else {
                Complex64::new(f64::INFINITY, 0.0)
            }
        }
        (false, true) => {
            if rate.re > 0.0 {
                coef * (rate * (hi - anchor)).exp() / rate
            } else {
                Complex64::new(f64::INFINITY, 0.0)
            }
        }
        (false, false) => Complex64::new(f64::INFINITY, 0.0),
    }
}

/// `(e^z - 1) / z`, accurate near `z = 0`.
fn exprel(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        Complex64::new(1.0, 0.0) + z / 2.0 + z * z / 6.0 + z * z * z / 24.0
    } else {
        (z.exp() - 1.0) / z
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn oscillatory_integral_matches_trig() {
        // cos(2x) on [-1, 1] = sin(2)
        let f = ExpSum::new(
            -1.0,
            1.0,
            0.0,
            vec![
                ExpTerm { coef: c(0.5, 0.0), rate: c(0.0, 2.0) },
                ExpTerm { coef: c(0.5, 0.0), rate: c(0.0, -2.0) },
            ],
        );
        assert!((f.integral() - c(2.0f64.sin(), 0.0)).norm() < 1e-14);
        assert!((f.value(0.3) - c((0.6f64).cos(), 0.0)).norm() < 1e-15);
        assert!((f.derivative(0.3) - c(-2.0 * (0.6f64).sin(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn tails_integrate_to_reciprocal_rate() {
        let left = ExpSum::new(
            f64::NEG_INFINITY,
            -1.0,
            -1.0,
            vec![ExpTerm { coef: c(1.0, 0.0), rate: c(3.0, 0.0) }],
        );
        assert!((left.integral() - c(1.0 / 3.0, 0.0)).norm() < 1e-15);
        let right = ExpSum::new(
            2.0,
            f64::INFINITY,
            0.0,
            vec![ExpTerm { coef: c(1.0, 0.0), rate: c(-0.5, 1.0) }],
        );
        let expected = -(c(-0.5, 1.0) * 2.0).exp() / c(-0.5, 1.0);
        assert!((right.integral() - expected).norm() < 1e-15);
        let growing = ExpSum::new(
            0.0,
            f64::INFINITY,
            0.0,
            vec![ExpTerm { coef: c(1.0, 0.0), rate: c(0.1, 0.0) }],
        );
        assert!(!growing.integral().re.is_finite());
    }

    #[test]
    fn zero_rate_gives_width() {
        let f = ExpSum::new(
            0.5,
            3.0,
            1.0,
            vec![ExpTerm { coef: c(2.0, 1.0), rate: c(1e-12, 0.0) }],
        );
        assert!((f.integral() - c(5.0, 2.5)).norm() < 1e-10);
    }

    #[test]
    fn modulus_squared_via_conjugate_product() {
        let f = ExpSum::new(
            -1.0,
            1.0,
            0.0,
            vec![
                ExpTerm { coef: c(0.3, -0.2), rate: c(0.0, 1.3) },
                ExpTerm { coef: c(-0.1, 0.4), rate: c(0.0, -1.3) },
            ],
        );
        let density = f.product(&f.conj());
        // trapezoid reference on a fine grid
        let n = 200_000;
        let h = 2.0 / n as f64;
        let mut acc = 0.0;
        for i in 0..=n {
            let x = -1.0 + i as f64 * h;
            let w = if i == 0 || i == n { 0.5 } else { 1.0 };
            acc += w * f.value(x).norm_sqr();
        }
        acc *= h;
        let exact = density.integral();
        assert!(exact.im.abs() < 1e-14);
        assert!((exact.re - acc).abs() < 1e-9);
    }
}
