use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use super::region::step_profile;
use crate::error::{BandCondition, Error, Result};
use crate::model::QuantumLabel;
use crate::potential::Potential1D;

/// Exterior decay rate `p = sqrt(k^2 - eps^2)` and interior wavenumber
/// `q = sqrt((eps + v0)^2 - k^2)` of a square well of depth `v0`.
pub fn region_wavenumbers(label: QuantumLabel, v0: f64) -> Result<(f64, f64)> {
    let QuantumLabel { k, epsilon } = label;
    let p2 = k * k - epsilon * epsilon;
    if !(p2 > 0.0) {
        return Err(Error::OutsideAdmissibleBand(BandCondition::ExteriorDecay));
    }
    let q2 = (epsilon + v0) * (epsilon + v0) - k * k;
    if !(q2 > 0.0) {
        return Err(Error::OutsideAdmissibleBand(BandCondition::InteriorOscillation));
    }
    Ok((p2.sqrt(), q2.sqrt()))
}

/// `p q cos(2Lq) - (eps (eps + v0) - k^2) sin(2Lq)` for a well of depth
/// `v0` and half-width `half_width`. Zeros are the bound-state energies.
pub fn secular_det_square_well(k: f64, epsilon: f64, v0: f64, half_width: f64) -> Result<f64> {
    let (p, q) = region_wavenumbers(QuantumLabel::new(k, epsilon), v0)?;
    let (s, c) = (2.0 * half_width * q).sin_cos();
    Ok(p * q * c - (epsilon * (epsilon + v0) - k * k) * s)
}

/// Real secular function for an arbitrary step profile.
///
/// The decaying solution on the left is transferred across every region and
/// step; the returned value is the coefficient of the growing exponential on
/// the right, rotated by a phase that depends only on the right exterior so
/// that it is real. Positive rescalings of the evanescent transfers keep it
/// finite for wide regions without changing its sign.
pub fn secular_det_general(label: QuantumLabel, pot: &Potential1D) -> Result<f64> {
    let (breakpoints, values) = step_profile(pot)?;
    let QuantumLabel { k, epsilon } = label;
    let decay = |v: f64| {
        let d = epsilon - v;
        let s = k * k - d * d;
        if s > 0.0 {
            Ok((s.sqrt(), d))
        } else {
            Err(Error::OutsideAdmissibleBand(BandCondition::ExteriorDecay))
        }
    };
    let (p_left, delta_left) = decay(values[0])?;
    let (p_right, delta_right) = decay(values[values.len() - 1])?;

    // upper component of the real left-decaying solution: eigenvector of M
    // for eigenvalue +p, with a branch that never vanishes for this sign of k
    let (v1, v2) = if k > 0.0 {
        (k + p_left, delta_left)
    } else {
        (delta_left, k - p_left)
    };
    let i = Complex64::i();
    let mut psi = Complex64::new(0.5 * v1, -0.5 * v2);
    let mut dpsi = psi * p_left;

    for (b, &x0) in breakpoints.iter().enumerate() {
        if b > 0 {
            let width = x0 - breakpoints[b - 1];
            let d = epsilon - values[b];
            (psi, dpsi) = propagate(psi, dpsi, k * k - d * d, width);
        }
        dpsi += i * (values[b + 1] - values[b]) * psi;
    }

    let growing = dpsi + p_right * psi;
    let phase = (Complex64::new(p_right, -delta_right) / k.abs()).sqrt();
    let rotated = phase.conj() * growing;
    Ok(if k > 0.0 { rotated.re } else { rotated.im })
}

/// Advance `(psi, psi')` across `width` for `psi'' = s psi`. Evanescent
/// transfer is divided by `cosh(sqrt(s) width)`, which is positive and
/// analytic in `s`, so the result stays finite and continuous through `s = 0`.
fn propagate(psi: Complex64, dpsi: Complex64, s: f64, width: f64) -> (Complex64, Complex64) {
    let z = s * width * width;
    if z.abs() < 1e-8 {
        if s > 0.0 {
            // tanh(kappa w) / kappa and kappa tanh(kappa w) to first order in z
            let t = width * (1.0 - z / 3.0);
            return (psi + dpsi * t, psi * s * t + dpsi);
        }
        let c = 1.0 + z / 2.0;
        let sw = width * (1.0 + z / 6.0);
        return (psi * c + dpsi * sw, psi * s * sw + dpsi * c);
    }
    if s > 0.0 {
        let kappa = s.sqrt();
        let t = (kappa * width).tanh();
        (psi + dpsi * (t / kappa), psi * (kappa * t) + dpsi)
    } else {
        let q = (-s).sqrt();
        let (sn, cs) = (q * width).sin_cos();
        (psi * cs + dpsi * (sn / q), -psi * (q * sn) + dpsi * cs)
    }
}

/// A real function of `epsilon` at fixed `(k, potential)` together with the
/// open interval on which its zeros are bound-state energies.
#[derive(Clone)]
pub struct SecularFunction {
    eval: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    domain: (f64, f64),
}

impl fmt::Debug for SecularFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SecularFunction")
            .field("domain", &self.domain)
            .finish_non_exhaustive()
    }
}

impl SecularFunction {
    pub fn new<F>(domain: (f64, f64), eval: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            eval: Arc::new(eval),
            domain,
        }
    }

    /// Closed-form square-well function on the admissible band. Evaluations
    /// outside the band return NaN.
    pub fn square_well(k: f64, v0: f64, half_width: f64) -> Self {
        let band = crate::spectrum::admissible_interval(k, v0);
        Self::new((band.lo, band.hi), move |eps| {
            secular_det_square_well(k, eps, v0, half_width).unwrap_or(f64::NAN)
        })
    }

    /// Transfer-matrix function for any step profile. The domain is where
    /// both exterior regions decay.
    pub fn general(k: f64, pot: Potential1D) -> Result<Self> {
        let (_, values) = step_profile(&pot)?;
        let (first, last) = (values[0], values[values.len() - 1]);
        let ak = k.abs();
        let lo = (first - ak).max(last - ak);
        let hi = (first + ak).min(last + ak);
        let domain = if hi > lo { (lo, hi) } else { (0.0, 0.0) };
        Ok(Self::new(domain, move |eps| {
            secular_det_general(QuantumLabel::new(k, eps), &pot).unwrap_or(f64::NAN)
        }))
    }

    pub fn eval(&self, epsilon: f64) -> f64 {
        (self.eval)(epsilon)
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn is_empty(&self) -> bool {
        !(self.domain.1 > self.domain.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wavenumbers_at_ground_state() {
        let (p, q) = region_wavenumbers(QuantumLabel::new(2.0, 0.354274), 2.0).unwrap();
        // sqrt(4 - 0.354274^2), sqrt(2.354274^2 - 4)
        assert!((p - 1.968_372_407_072_401_5).abs() < 1e-12);
        assert!((q - 1.242_016_935_100_323).abs() < 1e-12);
    }

    #[test]
    fn wavenumbers_reject_band_edges() {
        assert_eq!(
            region_wavenumbers(QuantumLabel::new(2.0, 2.0), 2.0),
            Err(Error::OutsideAdmissibleBand(BandCondition::ExteriorDecay))
        );
        assert_eq!(
            region_wavenumbers(QuantumLabel::new(2.0, 0.0), 2.0),
            Err(Error::OutsideAdmissibleBand(BandCondition::InteriorOscillation))
        );
    }

    #[test]
    fn square_well_vanishes_at_reported_levels() {
        for eps in [0.354274, 1.13356, 1.92583] {
            let f = secular_det_square_well(2.0, eps, 2.0, 1.0).unwrap();
            assert!(f.abs() < 1e-4, "f({eps}) = {f}");
        }
        let off = secular_det_square_well(2.0, 1.0, 2.0, 1.0).unwrap();
        assert!((off - (-1.892_847_958_358_317)).abs() < 1e-12);
    }

    #[test]
    fn general_is_proportional_to_closed_form_on_square_well() {
        // for the symmetric well the growing coefficient is 2 f / q times a
        // nonvanishing real factor, so g / f keeps one sign
        let well = Potential1D::square_well(2.0, 1.0).unwrap();
        let mut signs = Vec::new();
        for i in 1..200 {
            let eps = 2.0 * i as f64 / 200.0;
            let f = secular_det_square_well(2.0, eps, 2.0, 1.0).unwrap();
            let g = secular_det_general(QuantumLabel::new(2.0, eps), &well).unwrap();
            assert!(g.is_finite());
            if f.abs() > 1e-9 {
                signs.push((g / f).signum());
            }
        }
        assert!(signs.iter().all(|&s| s == signs[0]));
    }

    #[test]
    fn general_is_continuous_across_q_zero() {
        // k = 2, v0 = 3: q = 0 at eps = -1, inside the exterior band
        let well = Potential1D::square_well(3.0, 1.0).unwrap();
        let at = |e: f64| secular_det_general(QuantumLabel::new(2.0, e), &well).unwrap();
        let (a, b, c) = (at(-1.0 - 1e-9), at(-1.0), at(-1.0 + 1e-9));
        assert!((a - b).abs() < 1e-6 && (c - b).abs() < 1e-6);
    }

    #[test]
    fn wide_barriers_do_not_overflow() {
        let pot = Potential1D::piecewise(
            vec![-200.0, -199.0, 199.0, 200.0],
            vec![0.0, -3.0, 0.0, -3.0, 0.0],
        )
        .unwrap();
        for eps in [-1.5, -0.3, 0.9, 1.7] {
            let g = secular_det_general(QuantumLabel::new(2.0, eps), &pot).unwrap();
            assert!(g.is_finite());
        }
    }

    #[test]
    fn general_domain_is_exterior_band() {
        let pot = Potential1D::piecewise(vec![0.0, 1.0], vec![0.5, -1.0, 0.0]).unwrap();
        let f = SecularFunction::general(2.0, pot).unwrap();
        assert_eq!(f.domain(), (-1.5, 2.0));
        assert!(SecularFunction::square_well(2.0, 0.0, 1.0).is_empty());
    }
}
