use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::closed_form::{ExpSum, ExpTerm};
use crate::error::{BandCondition, Error, Result};
use crate::model::QuantumLabel;
use crate::potential::Potential1D;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionKind {
    /// `A e^{p (x - x_1)}` on `(-inf, x_1)`.
    EvanescentLeft,
    /// `C e^{i q (x - c)} + D e^{-i q (x - c)}` around the region midpoint `c`.
    Oscillatory,
    /// Interior region without oscillation: `C e^{p (x - c)} + D e^{-p (x - c)}`.
    Evanescent,
    /// `F e^{-p (x - x_N)}` on `(x_N, +inf)`.
    EvanescentRight,
}

/// Closed-form solution of one constant-potential region.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionSolution {
    pub interval: (f64, f64),
    pub kind: RegionKind,
    /// `p` for evanescent regions, `q` for oscillatory ones.
    pub wavenumber: f64,
    /// Point the exponentials are referred to.
    pub anchor: f64,
    /// Value of the potential in the region.
    pub potential: f64,
    /// `A`, `(C, D)` or `F`.
    pub coefficients: Vec<Complex64>,
}

impl RegionSolution {
    pub(crate) fn rates(&self) -> Vec<Complex64> {
        let w = self.wavenumber;
        match self.kind {
            RegionKind::EvanescentLeft => vec![Complex64::new(w, 0.0)],
            RegionKind::EvanescentRight => vec![Complex64::new(-w, 0.0)],
            RegionKind::Oscillatory => vec![Complex64::new(0.0, w), Complex64::new(0.0, -w)],
            RegionKind::Evanescent => vec![Complex64::new(w, 0.0), Complex64::new(-w, 0.0)],
        }
    }

    pub fn to_exp_sum(&self) -> ExpSum {
        let terms = self
            .rates()
            .into_iter()
            .zip(&self.coefficients)
            .map(|(rate, &coef)| ExpTerm { coef, rate })
            .collect();
        ExpSum::new(self.interval.0, self.interval.1, self.anchor, terms)
    }
}

/// Breakpoints and values of a step profile.
pub(crate) fn step_profile(pot: &Potential1D) -> Result<(&[f64], &[f64])> {
    match pot {
        Potential1D::PiecewiseConstant {
            breakpoints,
            values,
        } => Ok((breakpoints, values)),
        other => Err(Error::InvalidPotential(format!(
            "closed-form matching needs a piecewise-constant potential, got {other:?}"
        ))),
    }
}

/// Region solutions with all coefficients set to zero.
pub(crate) fn region_layout(label: QuantumLabel, pot: &Potential1D) -> Result<Vec<RegionSolution>> {
    let (breakpoints, values) = step_profile(pot)?;
    if breakpoints.is_empty() {
        return Err(Error::InvalidPotential(
            "a constant potential has no matching points".into(),
        ));
    }
    let n = breakpoints.len();
    let k2 = label.k * label.k;
    let mut regions = Vec::with_capacity(n + 1);
    for (i, &v) in values.iter().enumerate() {
        let delta = label.epsilon - v;
        let s = k2 - delta * delta;
        let lo = if i == 0 { f64::NEG_INFINITY } else { breakpoints[i - 1] };
        let hi = if i == n { f64::INFINITY } else { breakpoints[i] };
        let (kind, anchor) = if i == 0 {
            (RegionKind::EvanescentLeft, hi)
        } else if i == n {
            (RegionKind::EvanescentRight, lo)
        } else if s < 0.0 {
            (RegionKind::Oscillatory, 0.5 * (lo + hi))
        } else {
            (RegionKind::Evanescent, 0.5 * (lo + hi))
        };
        let outer = matches!(kind, RegionKind::EvanescentLeft | RegionKind::EvanescentRight);
        if outer && s <= 0.0 {
            return Err(Error::UnboundedStateRequest {
                side: if i == 0 { "left" } else { "right" },
            });
        }
        if s == 0.0 {
            return Err(Error::OutsideAdmissibleBand(BandCondition::InteriorOscillation));
        }
        let count = if outer { 1 } else { 2 };
        regions.push(RegionSolution {
            interval: (lo, hi),
            kind,
            wavenumber: s.abs().sqrt(),
            anchor,
            potential: v,
            coefficients: vec![Complex64::new(0.0, 0.0); count],
        });
    }
    Ok(regions)
}
