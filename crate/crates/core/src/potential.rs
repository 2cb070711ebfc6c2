//! One-dimensional potential profiles in reduced units.
//!
//! A [`Potential1D`] describes either the scalar potential `V(x)` or the
//! vector-potential component `A_y(x)`. Piecewise-constant profiles are the
//! only family handled in closed form; the smooth families are consumed by the
//! shooting oracle.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Profile of a potential along `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PotentialRepr", into = "PotentialRepr")]
pub enum Potential1D {
    /// Step profile: `values[i]` holds on `[breakpoints[i-1], breakpoints[i])`.
    PiecewiseConstant {
        breakpoints: Vec<f64>,
        values: Vec<f64>,
    },
    /// `slope * x`.
    Linear { slope: f64 },
    /// `strength / |x|`, singular at the origin. `cutoff` regularizes it as
    /// `strength / max(|x|, cutoff)` for numerical integration only.
    CoulombLike { strength: f64, cutoff: Option<f64> },
    /// `strength / (1 + x^2)`.
    Lorentzian { strength: f64 },
    /// `strength * tanh(x)`.
    Tanh { strength: f64 },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
enum PotentialRepr {
    PiecewiseConstant {
        breakpoints: Vec<f64>,
        values: Vec<f64>,
    },
    Linear {
        slope: f64,
    },
    CoulombLike {
        strength: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cutoff: Option<f64>,
    },
    Lorentzian {
        strength: f64,
    },
    Tanh {
        strength: f64,
    },
}

impl TryFrom<PotentialRepr> for Potential1D {
    type Error = Error;

    fn try_from(repr: PotentialRepr) -> Result<Self> {
        let pot = match repr {
            PotentialRepr::PiecewiseConstant {
                breakpoints,
                values,
            } => Potential1D::PiecewiseConstant {
                breakpoints,
                values,
            },
            PotentialRepr::Linear { slope } => Potential1D::Linear { slope },
            PotentialRepr::CoulombLike { strength, cutoff } => {
                Potential1D::CoulombLike { strength, cutoff }
            }
            PotentialRepr::Lorentzian { strength } => Potential1D::Lorentzian { strength },
            PotentialRepr::Tanh { strength } => Potential1D::Tanh { strength },
        };
        pot.validate()?;
        Ok(pot)
    }
}

impl From<Potential1D> for PotentialRepr {
    fn from(pot: Potential1D) -> Self {
        match pot {
            Potential1D::PiecewiseConstant {
                breakpoints,
                values,
            } => PotentialRepr::PiecewiseConstant {
                breakpoints,
                values,
            },
            Potential1D::Linear { slope } => PotentialRepr::Linear { slope },
            Potential1D::CoulombLike { strength, cutoff } => {
                PotentialRepr::CoulombLike { strength, cutoff }
            }
            Potential1D::Lorentzian { strength } => PotentialRepr::Lorentzian { strength },
            Potential1D::Tanh { strength } => PotentialRepr::Tanh { strength },
        }
    }
}

impl Potential1D {
    /// Validated piecewise-constant profile.
    pub fn piecewise(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let pot = Potential1D::PiecewiseConstant {
            breakpoints,
            values,
        };
        pot.validate()?;
        Ok(pot)
    }

    /// Square well of depth `v0` on `|x| < half_width`, zero outside.
    pub fn square_well(v0: f64, half_width: f64) -> Result<Self> {
        if !(half_width > 0.0) {
            return Err(Error::InvalidPotential(format!(
                "half width must be positive, got {half_width}"
            )));
        }
        Self::piecewise(vec![-half_width, half_width], vec![0.0, -v0, 0.0])
    }

    /// The zero profile.
    pub fn zero() -> Self {
        Potential1D::PiecewiseConstant {
            breakpoints: Vec::new(),
            values: vec![0.0],
        }
    }

    pub fn validate(&self) -> Result<()> {
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(Error::InvalidPotential(format!("{name} must be finite")))
            }
        };
        match self {
            Potential1D::PiecewiseConstant {
                breakpoints,
                values,
            } => {
                if values.len() != breakpoints.len() + 1 {
                    return Err(Error::InvalidPotential(format!(
                        "{} breakpoints need {} values, got {}",
                        breakpoints.len(),
                        breakpoints.len() + 1,
                        values.len()
                    )));
                }
                for &b in breakpoints {
                    finite("breakpoint", b)?;
                }
                for &v in values {
                    finite("value", v)?;
                }
                if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::InvalidPotential(
                        "breakpoints must be strictly increasing".into(),
                    ));
                }
                Ok(())
            }
            Potential1D::Linear { slope } => finite("slope", *slope),
            Potential1D::CoulombLike { strength, cutoff } => {
                finite("strength", *strength)?;
                match cutoff {
                    Some(c) if !(*c > 0.0 && c.is_finite()) => Err(Error::InvalidPotential(
                        "coulomb cutoff must be positive".into(),
                    )),
                    _ => Ok(()),
                }
            }
            Potential1D::Lorentzian { strength } | Potential1D::Tanh { strength } => {
                finite("strength", *strength)
            }
        }
    }

    /// Value of the profile at `x`.
    ///
    /// Piecewise profiles return the right-hand limit at a breakpoint.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        match self {
            Potential1D::PiecewiseConstant {
                breakpoints,
                values,
            } => Ok(values[region_index(breakpoints, x)]),
            Potential1D::Linear { slope } => Ok(slope * x),
            Potential1D::CoulombLike { strength, .. } => {
                if x == 0.0 {
                    Err(Error::SingularPoint { x })
                } else {
                    Ok(strength / x.abs())
                }
            }
            Potential1D::Lorentzian { strength } => Ok(strength / (1.0 + x * x)),
            Potential1D::Tanh { strength } => Ok(strength * x.tanh()),
        }
    }

    /// Like [`evaluate`](Self::evaluate) but applies the Coulomb cutoff, so it
    /// is finite everywhere when a cutoff is configured.
    pub fn evaluate_regularized(&self, x: f64) -> Result<f64> {
        match self {
            Potential1D::CoulombLike {
                strength,
                cutoff: Some(c),
            } => Ok(strength / x.abs().max(*c)),
            _ => self.evaluate(x),
        }
    }

    /// Derivative of the profile. Steps have no classical derivative at
    /// their breakpoints.
    pub fn derivative(&self, x: f64) -> Result<f64> {
        match self {
            Potential1D::PiecewiseConstant { breakpoints, .. } => {
                if breakpoints.contains(&x) {
                    Err(Error::DiscontinuityPoint { x })
                } else {
                    Ok(0.0)
                }
            }
            Potential1D::Linear { slope } => Ok(*slope),
            Potential1D::CoulombLike { strength, .. } => {
                if x == 0.0 {
                    Err(Error::SingularPoint { x })
                } else {
                    Ok(-strength * x.signum() / (x * x))
                }
            }
            Potential1D::Lorentzian { strength } => {
                let d = 1.0 + x * x;
                Ok(-2.0 * strength * x / (d * d))
            }
            Potential1D::Tanh { strength } => {
                let c = x.cosh();
                Ok(strength / (c * c))
            }
        }
    }

    /// Points where the profile jumps.
    pub fn breakpoints(&self) -> &[f64] {
        match self {
            Potential1D::PiecewiseConstant { breakpoints, .. } => breakpoints,
            _ => &[],
        }
    }

    /// Points where evaluation fails.
    pub fn singular_points(&self) -> &'static [f64] {
        match self {
            Potential1D::CoulombLike { .. } => &[0.0],
            _ => &[],
        }
    }

    pub fn is_piecewise(&self) -> bool {
        matches!(self, Potential1D::PiecewiseConstant { .. })
    }

    pub fn is_identically_zero(&self) -> bool {
        match self {
            Potential1D::PiecewiseConstant { values, .. } => values.iter().all(|&v| v == 0.0),
            Potential1D::Linear { slope } => *slope == 0.0,
            Potential1D::CoulombLike { strength, .. }
            | Potential1D::Lorentzian { strength }
            | Potential1D::Tanh { strength } => *strength == 0.0,
        }
    }

    /// Limits of the profile as `x -> -inf` and `x -> +inf`, when finite.
    pub fn asymptotes(&self) -> Option<(f64, f64)> {
        match self {
            Potential1D::PiecewiseConstant { values, .. } => {
                Some((values[0], values[values.len() - 1]))
            }
            Potential1D::Linear { slope } => (*slope == 0.0).then_some((0.0, 0.0)),
            Potential1D::CoulombLike { .. } | Potential1D::Lorentzian { .. } => Some((0.0, 0.0)),
            Potential1D::Tanh { strength } => Some((-strength, *strength)),
        }
    }

    /// Interval on which the profile differs noticeably from its asymptotes:
    /// the breakpoint span for steps, otherwise the half-width where the
    /// deviation drops below `1e-8` of its peak, capped at 50.
    pub fn active_window(&self) -> (f64, f64) {
        const CAP: f64 = 50.0;
        const REL: f64 = 1e-8;
        match self {
            Potential1D::PiecewiseConstant { breakpoints, .. } => match breakpoints.as_slice() {
                [] => (0.0, 0.0),
                [first, .., last] => (*first, *last),
                [only] => (*only, *only),
            },
            Potential1D::Linear { .. } => (-CAP, CAP),
            // |1/x| < REL  <=>  |x| > 1/REL
            Potential1D::CoulombLike { .. } => (-CAP, CAP),
            // 1/(1+x^2) < REL  <=>  x^2 > 1/REL - 1
            Potential1D::Lorentzian { .. } => {
                let x = (1.0 / REL - 1.0).sqrt().min(CAP);
                (-x, x)
            }
            // 1 - tanh|x| < REL  <=>  |x| > atanh(1 - REL)
            Potential1D::Tanh { .. } => {
                let x = (1.0 - REL).atanh().min(CAP);
                (-x, x)
            }
        }
    }
}

/// Index of the region containing `x`, with breakpoints assigned to the
/// region on their right.
pub(crate) fn region_index(breakpoints: &[f64], x: f64) -> usize {
    breakpoints.partition_point(|&b| b <= x)
}
