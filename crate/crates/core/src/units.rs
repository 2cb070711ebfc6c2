use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical scales used only to convert to and from reduced quantities.
///
/// Reduced energy is `E / (hbar v_F)`, reduced scalar potential
/// `V / (hbar v_F)` and reduced vector potential `e A_y / hbar`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedUnits {
    pub fermi_velocity: f64,
    pub hbar: f64,
}

impl Default for ReducedUnits {
    fn default() -> Self {
        Self {
            fermi_velocity: 1.0,
            hbar: 1.0,
        }
    }
}

impl ReducedUnits {
    pub fn new(fermi_velocity: f64, hbar: f64) -> Result<Self> {
        if !(fermi_velocity > 0.0 && hbar > 0.0) || !fermi_velocity.is_finite() || !hbar.is_finite()
        {
            return Err(Error::InvalidField(format!(
                "fermi velocity and hbar must be positive, got {fermi_velocity} and {hbar}"
            )));
        }
        Ok(Self {
            fermi_velocity,
            hbar,
        })
    }

    fn energy_scale(&self) -> f64 {
        self.hbar * self.fermi_velocity
    }

    pub fn reduce_energy(&self, energy: f64) -> f64 {
        energy / self.energy_scale()
    }

    pub fn restore_energy(&self, reduced: f64) -> f64 {
        reduced * self.energy_scale()
    }

    /// `e A_y / hbar` for a vector potential `a_y` and charge `charge`.
    pub fn reduce_vector_potential(&self, a_y: f64, charge: f64) -> f64 {
        charge * a_y / self.hbar
    }

    pub fn restore_vector_potential(&self, reduced: f64, charge: f64) -> f64 {
        reduced * self.hbar / charge
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_identity() {
        let u = ReducedUnits::default();
        assert_eq!(u.reduce_energy(3.5), 3.5);
        assert_eq!(u.reduce_vector_potential(2.0, 1.0), 2.0);
    }

    #[test]
    fn conversions_invert() {
        let u = ReducedUnits::new(1.0e6, 1.054_571_817e-34).unwrap();
        let e = 1.602e-20;
        assert!((u.restore_energy(u.reduce_energy(e)) - e).abs() < 1e-32);
        let a = 0.25;
        let q = 1.602e-19;
        let r = u.reduce_vector_potential(a, q);
        assert!((u.restore_vector_potential(r, q) - a).abs() < 1e-15);
    }

    #[test]
    fn rejects_nonpositive_scales() {
        assert!(ReducedUnits::new(0.0, 1.0).is_err());
        assert!(ReducedUnits::new(1.0, -1.0).is_err());
    }
}
