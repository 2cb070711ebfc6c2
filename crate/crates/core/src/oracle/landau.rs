use serde::Serialize;

use super::grid::{grid_eigenvalues, GridSpec};
use crate::error::{Error, Result};
use crate::model::ProportionalRegime;

/// Grid spacing for the Landau oracle.
pub const LANDAU_GRID_SPACING: f64 = 1e-3;
/// Half-width of the grid in magnetic lengths `1 / sqrt(beta')`, added to
/// the classical turning point of the highest level.
const LANDAU_MARGIN: f64 = 12.0;

/// Level `n` of the uniform-field problem from the finite-difference
/// spectrum of `-d^2/dx^2 + W^2 - W'`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LandauGridLevel {
    pub n: usize,
    /// Eigenvalue of the partner Hamiltonian.
    pub mu: f64,
    pub epsilon_plus: f64,
    pub epsilon_minus: f64,
}

/// Lowest `count` levels for `A = beta x` and `V = alpha A`, `|alpha| < 1`.
///
/// With `c = sqrt(1 - alpha^2)` the superpotential is
/// `W = (alpha eps + k) / c + c beta x = beta' (x - x0)`, `beta' = c beta`,
/// and `mu = (eps + alpha k)^2 / c^2`. The grid is centred on `x0` evaluated
/// at `eps = -alpha k`; the discrete spectrum does not depend on the centre
/// once the grid covers the wavefunctions.
pub fn landau_grid_levels(alpha: f64, beta: f64, k: f64, count: usize) -> Result<Vec<LandauGridLevel>> {
    if ProportionalRegime::of(alpha) != ProportionalRegime::Trigonometric {
        return Err(Error::UnsupportedRegime { alpha });
    }
    if !(beta > 0.0 && beta.is_finite()) {
        return Err(Error::InvalidField(format!("beta must be positive, got {beta}")));
    }
    let c = (1.0 - alpha * alpha).sqrt();
    let beta_p = c * beta;
    let offset = (alpha * (-alpha * k) + k) / c;
    let x0 = -offset / beta_p;
    let length = 1.0 / beta_p.sqrt();
    let turning = (2.0 * count as f64 + 1.0).sqrt() * length;
    let half = turning + LANDAU_MARGIN * length;
    let spec = GridSpec::with_spacing(x0 - half, x0 + half, LANDAU_GRID_SPACING * length)?;
    let w = |x: f64| offset + beta_p * x;
    let mus = grid_eigenvalues(|x| w(x) * w(x) - beta_p, &spec, count, 1e-4 * beta_p)?;
    Ok(mus
        .into_iter()
        .enumerate()
        .map(|(n, mu)| {
            let root = c * mu.max(0.0).sqrt();
            LandauGridLevel {
                n,
                mu,
                epsilon_plus: -alpha * k + root,
                epsilon_minus: -alpha * k - root,
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::landau_levels_proportional;

    #[test]
    fn magnetic_levels_do_not_depend_on_k() {
        for k in [-3.0, 0.0, 0.7, 5.0] {
            let levels = landau_grid_levels(0.0, 1.0, k, 4).unwrap();
            for l in &levels {
                assert!((l.mu - 2.0 * l.n as f64).abs() < 1e-4, "k={k}: {l:?}");
            }
        }
    }

    #[test]
    fn proportional_levels_match_closed_form() {
        let levels = landau_grid_levels(0.5, 1.0, 0.0, 4).unwrap();
        for l in levels {
            let (plus, minus) = landau_levels_proportional(0.5, 1.0, 0.0, l.n as i64).unwrap();
            assert!((l.epsilon_plus - plus).abs() < 1e-5);
            assert!((l.epsilon_minus - minus).abs() < 1e-5);
        }
    }

    #[test]
    fn reference_levels_to_one_part_in_a_million() {
        let magnetic = landau_grid_levels(0.0, 1.0, 0.0, 2).unwrap();
        assert!((magnetic[1].epsilon_plus - 2f64.sqrt()).abs() < 1e-6);
        let strong = landau_grid_levels(0.0, 2.0, 0.0, 3).unwrap();
        assert!((strong[2].epsilon_plus - 8f64.sqrt()).abs() < 1e-6);
        let tilted = landau_grid_levels(0.5, 1.0, 0.0, 2).unwrap();
        let exact = 0.75f64.powf(0.75) * 2f64.sqrt();
        assert!((tilted[1].epsilon_plus - exact).abs() < 1e-6);
        assert!((tilted[1].epsilon_minus + exact).abs() < 1e-6);
    }

    #[test]
    fn rejects_unsupported_regimes() {
        assert!(matches!(landau_grid_levels(1.0, 1.0, 0.0, 2), Err(Error::UnsupportedRegime { .. })));
        assert!(landau_grid_levels(0.2, -1.0, 0.0, 2).is_err());
    }
}
