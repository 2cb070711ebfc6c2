//! Field configurations, case classification and the effective quantities
//! derived from the first-order Dirac-Weyl system `psi' = M psi`.

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::potential::Potential1D;

/// Conserved transverse momentum `k` and reduced energy `epsilon`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantumLabel {
    pub k: f64,
    pub epsilon: f64,
}

impl QuantumLabel {
    pub fn new(k: f64, epsilon: f64) -> Self {
        Self { k, epsilon }
    }
}

/// Regime of the proportional case `V = alpha * A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProportionalRegime {
    /// `|alpha| < 1`: magnetic field dominates.
    Trigonometric,
    /// `|alpha| > 1`: electric field dominates.
    Hyperbolic,
    /// `|alpha| = 1`.
    Parabolic,
}

impl ProportionalRegime {
    pub fn of(alpha: f64) -> Self {
        let a = alpha.abs();
        if a < 1.0 {
            ProportionalRegime::Trigonometric
        } else if a > 1.0 {
            ProportionalRegime::Hyperbolic
        } else {
            ProportionalRegime::Parabolic
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CaseClass {
    PureMagnetic,
    PureElectric,
    Proportional {
        alpha: f64,
        regime: ProportionalRegime,
    },
    Unsupported,
}

/// Number of probe points used to verify `V = alpha * A`.
pub const PROPORTIONALITY_PROBES: usize = 101;
/// Tolerance for `|V - alpha A|` on the probe grid.
pub const PROPORTIONALITY_TOL: f64 = 1e-12;

/// Electric potential `V(x)`, magnetic potential `A(x)` and an optional
/// proportionality constant with `V = alpha A`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FieldConfig {
    pub electric: Option<Potential1D>,
    pub magnetic: Option<Potential1D>,
    pub proportionality: Option<f64>,
}

impl FieldConfig {
    pub fn new(
        electric: Option<Potential1D>,
        magnetic: Option<Potential1D>,
        proportionality: Option<f64>,
    ) -> Result<Self> {
        let config = Self {
            electric,
            magnetic,
            proportionality,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn electric(potential: Potential1D) -> Self {
        Self {
            electric: Some(potential),
            magnetic: None,
            proportionality: None,
        }
    }

    pub fn magnetic(potential: Potential1D) -> Self {
        Self {
            electric: None,
            magnetic: Some(potential),
            proportionality: None,
        }
    }

    /// `V = alpha * A` with `A` given.
    pub fn proportional(alpha: f64, magnetic: Potential1D) -> Result<Self> {
        let electric = scaled(&magnetic, alpha)?;
        Self::new(Some(electric), Some(magnetic), Some(alpha))
    }

    pub fn validate(&self) -> Result<()> {
        if self.electric.is_none() && self.magnetic.is_none() {
            return Err(Error::InvalidField(
                "at least one of electric or magnetic must be given".into(),
            ));
        }
        for pot in self.electric.iter().chain(self.magnetic.iter()) {
            pot.validate()?;
        }
        if let Some(alpha) = self.proportionality {
            if !alpha.is_finite() {
                return Err(Error::InvalidField("alpha must be finite".into()));
            }
            if !self.proportionality_holds(alpha) {
                return Err(Error::InvalidField(format!(
                    "V - {alpha} A does not vanish on the probe grid"
                )));
            }
        }
        Ok(())
    }

    fn proportionality_holds(&self, alpha: f64) -> bool {
        let zero = Potential1D::zero();
        let v = self.electric.as_ref().unwrap_or(&zero);
        let a = self.magnetic.as_ref().unwrap_or(&zero);
        let (lo, hi) = self.probe_window();
        (0..PROPORTIONALITY_PROBES).all(|i| {
            let x = lo + (hi - lo) * i as f64 / (PROPORTIONALITY_PROBES - 1) as f64;
            match (v.evaluate_regularized(x), a.evaluate_regularized(x)) {
                (Ok(vx), Ok(ax)) => (vx - alpha * ax).abs() <= PROPORTIONALITY_TOL * vx.abs().max(1.0),
                // both singular at the same point is consistent
                (Err(_), Err(_)) => true,
                _ => false,
            }
        })
    }

    /// Support of the fields padded by one unit, used for probing.
    fn probe_window(&self) -> (f64, f64) {
        let windows = self
            .electric
            .iter()
            .chain(self.magnetic.iter())
            .map(|p| p.active_window());
        let (lo, hi) = windows.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (a, b)| {
            (lo.min(a), hi.max(b))
        });
        (lo - 1.0, hi + 1.0)
    }

    fn electric_at(&self, x: f64) -> Result<f64> {
        self.electric
            .as_ref()
            .map_or(Ok(0.0), |v| v.evaluate_regularized(x))
    }

    fn magnetic_at(&self, x: f64) -> Result<f64> {
        self.magnetic
            .as_ref()
            .map_or(Ok(0.0), |a| a.evaluate_regularized(x))
    }

    /// `(W, Delta) = (k + A(x), epsilon - V(x))`.
    pub fn w_delta(&self, label: QuantumLabel, x: f64) -> Result<(f64, f64)> {
        Ok((
            label.k + self.magnetic_at(x)?,
            label.epsilon - self.electric_at(x)?,
        ))
    }

    /// All breakpoints of both fields, sorted and deduplicated.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = self
            .electric
            .iter()
            .chain(self.magnetic.iter())
            .flat_map(|p| p.breakpoints().iter().copied())
            .collect();
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }
}

fn scaled(pot: &Potential1D, alpha: f64) -> Result<Potential1D> {
    Ok(match pot {
        Potential1D::PiecewiseConstant {
            breakpoints,
            values,
        } => Potential1D::piecewise(
            breakpoints.clone(),
            values.iter().map(|v| alpha * v).collect(),
        )?,
        Potential1D::Linear { slope } => Potential1D::Linear {
            slope: alpha * slope,
        },
        Potential1D::CoulombLike { strength, cutoff } => Potential1D::CoulombLike {
            strength: alpha * strength,
            cutoff: *cutoff,
        },
        Potential1D::Lorentzian { strength } => Potential1D::Lorentzian {
            strength: alpha * strength,
        },
        Potential1D::Tanh { strength } => Potential1D::Tanh {
            strength: alpha * strength,
        },
    })
}

pub fn classify_case(config: &FieldConfig) -> CaseClass {
    let electric_zero = config
        .electric
        .as_ref()
        .is_none_or(Potential1D::is_identically_zero);
    let magnetic_zero = config
        .magnetic
        .as_ref()
        .is_none_or(Potential1D::is_identically_zero);
    if electric_zero {
        return CaseClass::PureMagnetic;
    }
    if magnetic_zero {
        return CaseClass::PureElectric;
    }
    match config.proportionality {
        Some(alpha) if config.proportionality_holds(alpha) => CaseClass::Proportional {
            alpha,
            regime: ProportionalRegime::of(alpha),
        },
        _ => CaseClass::Unsupported,
    }
}

/// The matrix `M = [[W, -Delta], [Delta, -W]]` of the real first-order system.
pub fn build_m(config: &FieldConfig, label: QuantumLabel, x: f64) -> Result<Matrix2<f64>> {
    let (w, delta) = config.w_delta(label, x)?;
    Ok(m_matrix(w, delta))
}

pub(crate) fn m_matrix(w: f64, delta: f64) -> Matrix2<f64> {
    Matrix2::new(w, -delta, delta, -w)
}

/// `i V'(x) + 2 epsilon V(x) - V(x)^2`, the energy-dependent complex potential
/// of the decoupled second-order equation in the pure electric case.
pub fn effective_potential_electric(v: &Potential1D, epsilon: f64, x: f64) -> Result<Complex64> {
    let vx = v.evaluate(x)?;
    let dv = v.derivative(x)?;
    Ok(Complex64::new(2.0 * epsilon * vx - vx * vx, dv))
}

/// `-(k^2 - epsilon^2)`; negative exactly when `|epsilon| < |k|`.
pub fn effective_energy(label: QuantumLabel) -> f64 {
    -(label.k * label.k - label.epsilon * label.epsilon)
}

/// Superpotential `W(x)` and spectral parameter `mu` of the proportional case
/// `V = alpha A` with `|alpha| < 1`:
///
/// `W = (eps alpha + k) / sqrt(1 - alpha^2) + sqrt(1 - alpha^2) A(x)`,
/// `mu = (eps + alpha k)^2 / (1 - alpha^2)`.
pub fn superpotential_proportional(
    alpha: f64,
    label: QuantumLabel,
    a: &Potential1D,
    x: f64,
) -> Result<(f64, f64)> {
    if ProportionalRegime::of(alpha) != ProportionalRegime::Trigonometric {
        return Err(Error::UnsupportedRegime { alpha });
    }
    let c = (1.0 - alpha * alpha).sqrt();
    let QuantumLabel { k, epsilon } = label;
    let w = (epsilon * alpha + k) / c + c * a.evaluate(x)?;
    let shifted = epsilon + alpha * k;
    Ok((w, shifted * shifted / (c * c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn well() -> Potential1D {
        Potential1D::square_well(2.0, 1.0).unwrap()
    }

    #[test]
    fn classify_the_three_cases() {
        let magnetic = FieldConfig::new(
            Some(Potential1D::zero()),
            Some(Potential1D::Linear { slope: 1.0 }),
            None,
        )
        .unwrap();
        assert_eq!(classify_case(&magnetic), CaseClass::PureMagnetic);
        assert_eq!(
            classify_case(&FieldConfig::magnetic(Potential1D::Linear { slope: 1.0 })),
            CaseClass::PureMagnetic
        );

        assert_eq!(
            classify_case(&FieldConfig::electric(well())),
            CaseClass::PureElectric
        );

        let prop = FieldConfig::proportional(0.5, Potential1D::Linear { slope: 1.0 }).unwrap();
        assert_eq!(
            classify_case(&prop),
            CaseClass::Proportional {
                alpha: 0.5,
                regime: ProportionalRegime::Trigonometric
            }
        );
    }

    #[test]
    fn regimes() {
        assert_eq!(ProportionalRegime::of(-0.99), ProportionalRegime::Trigonometric);
        assert_eq!(ProportionalRegime::of(1.0), ProportionalRegime::Parabolic);
        assert_eq!(ProportionalRegime::of(-1.0), ProportionalRegime::Parabolic);
        assert_eq!(ProportionalRegime::of(1.5), ProportionalRegime::Hyperbolic);
    }

    #[test]
    fn unrelated_mixed_fields_are_unsupported() {
        let config = FieldConfig::new(
            Some(well()),
            Some(Potential1D::Linear { slope: 1.0 }),
            None,
        )
        .unwrap();
        assert_eq!(classify_case(&config), CaseClass::Unsupported);
    }

    #[test]
    fn wrong_alpha_is_rejected() {
        let err = FieldConfig::new(
            Some(Potential1D::Linear { slope: 0.4 }),
            Some(Potential1D::Linear { slope: 1.0 }),
            Some(0.5),
        );
        assert!(matches!(err, Err(Error::InvalidField(_))));
        assert!(FieldConfig::new(None, None, None).is_err());
    }

    #[test]
    fn build_m_examples() {
        let free = FieldConfig::electric(Potential1D::zero());
        let m = build_m(&free, QuantumLabel::new(2.0, 1.0), 0.3).unwrap();
        assert_eq!(m, Matrix2::new(2.0, -1.0, 1.0, -2.0));

        let m = build_m(
            &FieldConfig::electric(well()),
            QuantumLabel::new(2.0, 0.0),
            0.0,
        )
        .unwrap();
        assert_eq!(m, Matrix2::new(2.0, -2.0, 2.0, -2.0));
    }

    #[test]
    fn effective_potential_examples() {
        let v = effective_potential_electric(&well(), 1.0, 0.0).unwrap();
        assert_eq!(v, Complex64::new(-8.0, 0.0));
        assert_eq!(
            effective_potential_electric(&well(), 0.7, 3.0).unwrap(),
            Complex64::new(0.0, 0.0)
        );
        assert_eq!(
            effective_potential_electric(&well(), 0.7, 1.0),
            Err(Error::DiscontinuityPoint { x: 1.0 })
        );
        let t = effective_potential_electric(&Potential1D::Tanh { strength: 1.0 }, 0.0, 0.0)
            .unwrap();
        assert!((t - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn tanh_effective_potential_against_symbolic_derivative() {
        // V = s tanh x, V' = s sech^2 x, written out independently
        let s = 0.8;
        let eps = 0.3;
        for x in [-2.0_f64, -0.5, 0.25, 1.75] {
            let v = s * x.tanh();
            let sech = 1.0 / x.cosh();
            let expected = Complex64::new(2.0 * eps * v - v * v, s * sech * sech);
            let got =
                effective_potential_electric(&Potential1D::Tanh { strength: s }, eps, x).unwrap();
            assert!((got - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn effective_energy_examples() {
        assert_eq!(effective_energy(QuantumLabel::new(2.0, 0.0)), -4.0);
        assert_eq!(effective_energy(QuantumLabel::new(2.0, 2.0)), 0.0);
        // 0.354274^2 - 4
        let e = effective_energy(QuantumLabel::new(2.0, 0.354274));
        assert!((e - (-3.874489932924)).abs() < 1e-12);
    }

    #[test]
    fn superpotential_examples() {
        let zero = Potential1D::zero();
        let (w, mu) = superpotential_proportional(0.6, QuantumLabel::new(0.0, 1.0), &zero, 0.4)
            .unwrap();
        assert!((w - 0.75).abs() < 1e-15);
        assert!((mu - 1.5625).abs() < 1e-14);

        assert_eq!(
            superpotential_proportional(1.0, QuantumLabel::new(1.0, 0.5), &zero, 0.0),
            Err(Error::UnsupportedRegime { alpha: 1.0 })
        );
        assert!(superpotential_proportional(-1.2, QuantumLabel::new(1.0, 0.5), &zero, 0.0).is_err());

        // mu grows without bound as alpha -> 1
        let mus: Vec<f64> = [0.9, 0.99, 0.999, 0.9999]
            .iter()
            .map(|&a| {
                superpotential_proportional(a, QuantumLabel::new(1.0, 0.5), &zero, 0.0)
                    .unwrap()
                    .1
            })
            .collect();
        assert!(mus.windows(2).all(|w| w[1] > 5.0 * w[0]));
    }

    proptest! {
        #[test]
        fn m_is_traceless_and_squares_to_scalar(
            k in -5.0..5.0f64, eps in -5.0..5.0f64, slope in -3.0..3.0f64,
            v0 in -4.0..4.0f64, x in -3.0..3.0f64,
        ) {
            let config = FieldConfig::new(
                Some(Potential1D::square_well(v0, 1.0).unwrap()),
                Some(Potential1D::Linear { slope }),
                None,
            ).unwrap();
            let label = QuantumLabel::new(k, eps);
            let m = build_m(&config, label, x).unwrap();
            prop_assert_eq!(m.trace(), 0.0);
            let (w, d) = config.w_delta(label, x).unwrap();
            let sq = m * m;
            let scalar = w * w - d * d;
            let tol = 1e-12 * (w * w + d * d).max(1.0);
            prop_assert!((sq[(0, 0)] - scalar).abs() < tol);
            prop_assert!((sq[(1, 1)] - scalar).abs() < tol);
            prop_assert!(sq[(0, 1)].abs() < tol && sq[(1, 0)].abs() < tol);
            prop_assert!((m.determinant() - (d * d - w * w)).abs() < tol);
        }

        #[test]
        fn effective_potential_is_real_inside_steps(
            v0 in 0.1..5.0f64, eps in -3.0..3.0f64, x in -0.99..0.99f64,
        ) {
            let v = effective_potential_electric(
                &Potential1D::square_well(v0, 1.0).unwrap(), eps, x).unwrap();
            prop_assert_eq!(v.im, 0.0);
            prop_assert!((v.re - (-2.0 * v0 * eps - v0 * v0)).abs() < 1e-12);
        }

        #[test]
        fn classification_is_shift_invariant(
            shift in -20.0..20.0f64, alpha in -0.95..0.95f64, v0 in 0.1..3.0f64,
        ) {
            let a = Potential1D::piecewise(vec![-1.0, 0.5, 2.0], vec![0.0, -v0, 0.3, 0.0]).unwrap();
            let base = FieldConfig::proportional(alpha, a.clone()).unwrap();
            let shifted_a = Potential1D::piecewise(
                vec![-1.0 + shift, 0.5 + shift, 2.0 + shift], vec![0.0, -v0, 0.3, 0.0]).unwrap();
            let shifted = FieldConfig::proportional(alpha, shifted_a).unwrap();
            prop_assert_eq!(classify_case(&base), classify_case(&shifted));
            let e_only = FieldConfig::electric(a);
            prop_assert_eq!(classify_case(&e_only), CaseClass::PureElectric);
        }

        #[test]
        fn alpha_zero_recovers_magnetic_superpotential(
            k in -4.0..4.0f64, eps in -4.0..4.0f64, slope in -2.0..2.0f64, x in -5.0..5.0f64,
        ) {
            let a = Potential1D::Linear { slope };
            let (w, mu) = superpotential_proportional(0.0, QuantumLabel::new(k, eps), &a, x).unwrap();
            prop_assert!((w - (k + slope * x)).abs() <= 1e-15 * (k.abs() + (slope * x).abs()).max(1.0));
            prop_assert!((mu - eps * eps).abs() <= 1e-15 * (eps * eps).max(1.0));
            prop_assert!(mu >= 0.0);
        }
    }
}
