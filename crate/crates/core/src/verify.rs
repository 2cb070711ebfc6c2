//! Invariant checks reported one line each; used by the command-line
//! `verify` command.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::model::{FieldConfig, QuantumLabel};
use crate::oracle::{landau_grid_levels, shooting_secular, ShootingOptions};
use crate::piecewise::SecularFunction;
use crate::potential::Potential1D;
use crate::spectrum::{find_roots, landau_levels_proportional, DEFAULT_SCAN_POINTS, DEFAULT_TOLERANCE};
use crate::states::{
    assemble_square_well_state, gram_matrix, probability_density, pt_eigenvalue, residuals,
    PiecewiseState,
};

/// Root sets of independent methods must agree this closely.
pub const ROOT_AGREEMENT: f64 = 1e-5;
pub const PT_AGREEMENT: f64 = 1e-8;
pub const GRAM_AGREEMENT: f64 = 1e-8;
pub const RESIDUAL_LIMIT: f64 = 1e-6;
pub const NORMALIZATION_AGREEMENT: f64 = 1e-8;
/// Relative agreement of Landau levels, with the scale of the lowest level
/// set by the level spacing.
pub const LANDAU_AGREEMENT: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    fn from_error(name: impl Into<String>, err: impl std::fmt::Display) -> Self {
        Self::new(name, false, err.to_string())
    }
}

/// Largest elementwise difference of two sorted root lists, or `None` when
/// the counts differ.
pub fn root_set_distance(a: &[f64], b: &[f64]) -> Option<f64> {
    (a.len() == b.len()).then(|| a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
}

/// Roots of the closed-form, transfer-matrix and shooting functions for the
/// square well, in that order.
pub fn three_route_roots(k: f64, v0: f64, half_width: f64) -> Result<[Vec<f64>; 3]> {
    let well = Potential1D::square_well(v0, half_width)?;
    let closed = SecularFunction::square_well(k, v0, half_width);
    let general = SecularFunction::general(k, well.clone())?;
    let shooting = shooting_secular(FieldConfig::electric(well), k, ShootingOptions::default())?;
    let routes = [closed, general, shooting];
    let roots: Vec<Vec<f64>> = routes
        .par_iter()
        .map(|f| find_roots(f, DEFAULT_SCAN_POINTS, DEFAULT_TOLERANCE))
        .collect();
    let mut it = roots.into_iter();
    Ok([it.next().unwrap(), it.next().unwrap(), it.next().unwrap()])
}

/// Spectrum agreement, state contracts, PT symmetry and orthonormality for
/// the well of depth `v0` and half-width `half_width` at momentum `k`.
pub fn verify_square_well(k: f64, v0: f64, half_width: f64) -> Vec<Check> {
    let mut checks = Vec::new();
    let [closed, general, shooting] = match three_route_roots(k, v0, half_width) {
        Ok(r) => r,
        Err(e) => return vec![Check::from_error("root sets", e)],
    };
    for (name, other) in [("transfer matrix", &general), ("shooting", &shooting)] {
        let detail = match root_set_distance(&closed, other) {
            Some(d) => (d <= ROOT_AGREEMENT, format!("{} roots, max deviation {d:.3e}", closed.len())),
            None => (false, format!("{} vs {} roots", closed.len(), other.len())),
        };
        checks.push(Check::new(format!("closed form vs {name}"), detail.0, detail.1));
    }

    let states: Vec<PiecewiseState> = match closed
        .iter()
        .map(|&e| assemble_square_well_state(QuantumLabel::new(k, e), v0, half_width))
        .collect::<Result<_>>()
    {
        Ok(s) => s,
        Err(e) => {
            checks.push(Check::from_error("state assembly", e));
            return checks;
        }
    };

    for (n, state) in states.iter().enumerate() {
        let eps = state.label.epsilon;
        checks.push(match pt_eigenvalue(state) {
            Ok(lambda) => {
                let off = (lambda - Complex64::i()).norm().min((lambda + Complex64::i()).norm());
                Check::new(
                    format!("PT eigenvalue, level {n}"),
                    off <= PT_AGREEMENT,
                    format!("eps = {eps:.9}, lambda = {lambda:.3e}, |lambda -+ i| = {off:.3e}"),
                )
            }
            Err(e) => Check::from_error(format!("PT eigenvalue, level {n}"), e),
        });
        checks.push(match residuals(state) {
            Ok(r) => {
                let worst = r
                    .second_order
                    .max(r.first_order_upper)
                    .max(r.first_order_lower);
                Check::new(
                    format!("equation residuals, level {n}"),
                    worst < RESIDUAL_LIMIT,
                    format!(
                        "second order {:.3e}, first order {:.3e} / {:.3e}, continuity {:.3e}",
                        r.second_order, r.first_order_upper, r.first_order_lower, r.continuity
                    ),
                )
            }
            Err(e) => Check::from_error(format!("equation residuals, level {n}"), e),
        });
        let density = probability_density(state);
        let total = state.total_probability();
        let nonneg = density.rho.iter().all(|&r| r >= 0.0);
        let bounded = density.j_y.iter().zip(&density.rho).all(|(j, r)| j.abs() <= *r);
        let no_jx = density.j_x.iter().all(|&j| j == 0.0);
        checks.push(Check::new(
            format!("density contracts, level {n}"),
            nonneg && bounded && no_jx && (total - 1.0).abs() <= NORMALIZATION_AGREEMENT,
            format!("int rho = {total:.12}, rho >= 0: {nonneg}, |J_y| <= rho: {bounded}, J_x = 0: {no_jx}"),
        ));
    }

    checks.push(match gram_matrix(&states) {
        Ok(g) => {
            let n = g.nrows();
            let mut worst: f64 = 0.0;
            for i in 0..n {
                for j in 0..n {
                    let expected = if i == j { 1.0 } else { 0.0 };
                    worst = worst.max((g[(i, j)] - expected).norm());
                }
            }
            Check::new(
                "Gram matrix is the identity",
                worst <= GRAM_AGREEMENT,
                format!("{n} x {n}, max deviation {worst:.3e}"),
            )
        }
        Err(e) => Check::from_error("Gram matrix is the identity", e),
    });
    checks
}

/// Closed-form Landau levels against the finite-difference oracle for
/// `n < levels`.
pub fn verify_landau(alpha: f64, beta: f64, k: f64, levels: usize) -> Vec<Check> {
    let name = format!("Landau levels, alpha = {alpha}, beta = {beta}, k = {k}");
    let grid = match landau_grid_levels(alpha, beta, k, levels) {
        Ok(g) => g,
        Err(e) => return vec![Check::from_error(name, e)],
    };
    let c = (1.0 - alpha * alpha).sqrt();
    let beta_p = c * beta;
    let mut worst: f64 = 0.0;
    for level in &grid {
        let (plus, _) = match landau_levels_proportional(alpha, beta, k, level.n as i64) {
            Ok(v) => v,
            Err(e) => return vec![Check::from_error(name, e)],
        };
        // compare mu = (eps + alpha k)^2 / c^2
        let mu_exact = ((plus + alpha * k) / c).powi(2);
        let scale = mu_exact.max(2.0 * beta_p);
        worst = worst.max((level.mu - mu_exact).abs() / scale);
    }
    vec![Check::new(
        name,
        worst <= LANDAU_AGREEMENT,
        format!("n < {levels}, max relative deviation {worst:.3e}"),
    )]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_well_passes_everything() {
        let checks = verify_square_well(2.0, 2.0, 1.0);
        assert!(checks.len() > 10);
        for c in &checks {
            assert!(c.passed, "{c:?}");
        }
    }

    #[test]
    fn landau_checks_pass() {
        for alpha in [0.0, 0.6] {
            for c in verify_landau(alpha, 1.0, 0.5, 6) {
                assert!(c.passed, "{c:?}");
            }
        }
        assert!(!verify_landau(1.5, 1.0, 0.0, 3)[0].passed);
    }

    #[test]
    fn distance_of_root_sets() {
        assert_eq!(root_set_distance(&[1.0, 2.0], &[1.0, 2.5]), Some(0.5));
        assert_eq!(root_set_distance(&[1.0], &[]), None);
    }
}
