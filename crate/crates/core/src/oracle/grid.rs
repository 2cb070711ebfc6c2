use serde::{Deserialize, Serialize};

use super::tridiagonal::SymmetricTridiagonal;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    /// `psi = 0` at both ends of the grid.
    Dirichlet,
}

/// Uniform grid including both boundary nodes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub points: usize,
    pub boundary: Boundary,
}

impl GridSpec {
    pub fn new(x_min: f64, x_max: f64, points: usize) -> Result<Self> {
        let spec = Self {
            x_min,
            x_max,
            points,
            boundary: Boundary::Dirichlet,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Grid on `[x_min, x_max]` whose spacing does not exceed `h`.
    pub fn with_spacing(x_min: f64, x_max: f64, h: f64) -> Result<Self> {
        if !(h > 0.0) {
            return Err(Error::InvalidGrid("spacing must be positive".into()));
        }
        let intervals = ((x_max - x_min) / h).ceil().max(2.0) as usize;
        Self::new(x_min, x_max, intervals + 1)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.x_min.is_finite() && self.x_max.is_finite() && self.x_max > self.x_min) {
            return Err(Error::InvalidGrid(format!(
                "need finite x_min < x_max, got [{}, {}]",
                self.x_min, self.x_max
            )));
        }
        if self.points < 3 {
            return Err(Error::InvalidGrid("need at least three points".into()));
        }
        Ok(())
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.points - 1) as f64
    }

    /// Same interval with half the spacing.
    pub fn refined(&self) -> Self {
        Self {
            points: 2 * (self.points - 1) + 1,
            ..*self
        }
    }

    fn interior(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.spacing();
        (1..self.points - 1).map(move |i| self.x_min + h * i as f64)
    }
}

/// Lowest `count` eigenvalues of `-d^2/dx^2 + U(x)` by the three-point
/// difference on `spec`.
///
/// The same problem is solved at half the spacing; if any eigenvalue moves by
/// more than `tolerance` the grid is rejected with [`Error::GridTooCoarse`].
pub fn grid_eigenvalues<F>(potential: F, spec: &GridSpec, count: usize, tolerance: f64) -> Result<Vec<f64>>
where
    F: Fn(f64) -> f64,
{
    spec.validate()?;
    if count > spec.points - 2 {
        return Err(Error::InvalidGrid(format!(
            "{count} eigenvalues requested from {} interior points",
            spec.points - 2
        )));
    }
    let coarse = lowest(&potential, spec, count)?;
    let fine = lowest(&potential, &spec.refined(), count)?;
    for (index, (a, b)) in coarse.iter().zip(&fine).enumerate() {
        let shift = (a - b).abs();
        if shift > tolerance {
            return Err(Error::GridTooCoarse { index, shift });
        }
    }
    Ok(coarse)
}

fn lowest<F: Fn(f64) -> f64>(potential: &F, spec: &GridSpec, count: usize) -> Result<Vec<f64>> {
    let h = spec.spacing();
    let inv_h2 = 1.0 / (h * h);
    let diagonal: Vec<f64> = spec.interior().map(|x| 2.0 * inv_h2 + potential(x)).collect();
    if let Some(bad) = diagonal.iter().position(|d| !d.is_finite()) {
        return Err(Error::InvalidGrid(format!(
            "potential is not finite at x = {}",
            spec.x_min + h * (bad + 1) as f64
        )));
    }
    let off = vec![-inv_h2; diagonal.len() - 1];
    Ok(SymmetricTridiagonal::new(diagonal, off).lowest_eigenvalues(count))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_oscillator() {
        // -psi'' + x^2 psi: 1, 3, 5, ...
        let spec = GridSpec::with_spacing(-10.0, 10.0, 2e-3).unwrap();
        let ev = grid_eigenvalues(|x| x * x, &spec, 3, 1e-5).unwrap();
        for (n, e) in ev.iter().enumerate() {
            assert!((e - (2 * n + 1) as f64).abs() < 1e-5, "{n}: {e}");
        }
    }

    #[test]
    fn susy_partners_share_excited_levels() {
        // W = x: W^2 - W' has 0, 2, 4; W^2 + W' has 2, 4, 6
        let spec = GridSpec::with_spacing(-10.0, 10.0, 1e-3).unwrap();
        let minus = grid_eigenvalues(|x| x * x - 1.0, &spec, 4, 1e-5).unwrap();
        let plus = grid_eigenvalues(|x| x * x + 1.0, &spec, 3, 1e-5).unwrap();
        assert!(minus[0].abs() < 1e-5);
        for (a, b) in minus[1..].iter().zip(&plus) {
            assert!((a - b).abs() < 1e-6, "{a} vs {b}");
        }
    }

    #[test]
    fn coarse_grid_is_rejected() {
        let spec = GridSpec::new(-10.0, 10.0, 41).unwrap();
        assert!(matches!(
            grid_eigenvalues(|x| x * x, &spec, 3, 1e-6),
            Err(Error::GridTooCoarse { .. })
        ));
    }

    #[test]
    fn invalid_grids() {
        assert!(GridSpec::new(1.0, 0.0, 10).is_err());
        assert!(GridSpec::new(0.0, 1.0, 2).is_err());
        let spec = GridSpec::new(0.0, 1.0, 5).unwrap();
        assert!(grid_eigenvalues(|_| 0.0, &spec, 4, 1.0).is_err());
    }
}
