use nalgebra::DMatrix;
use num_complex::Complex64;

use super::region::{region_layout, step_profile, RegionSolution};
use crate::error::{Error, Result};
use crate::model::QuantumLabel;
use crate::potential::Potential1D;

/// Homogeneous linear system for the region coefficients of a
/// piecewise-constant potential with `N` breakpoints (`2N` unknowns).
///
/// Row `2b` is continuity at breakpoint `b`, row `2b + 1` the derivative jump
/// `psi'(x0-) + i J psi(x0-) - psi'(x0+) = 0` with `J = V(x0+) - V(x0-)`.
/// Columns run over the coefficients left to right.
#[derive(Debug, Clone)]
pub struct MatchSystem {
    pub matrix: DMatrix<Complex64>,
    regions: Vec<RegionSolution>,
}

pub fn assemble_match_system(label: QuantumLabel, pot: &Potential1D) -> Result<MatchSystem> {
    let regions = region_layout(label, pot)?;
    let (breakpoints, _) = step_profile(pot)?;
    let n = 2 * breakpoints.len();
    let mut matrix = DMatrix::<Complex64>::zeros(n, n);
    let i = Complex64::i();

    let mut offset = 0;
    for (b, &x0) in breakpoints.iter().enumerate() {
        let left = &regions[b];
        let right = &regions[b + 1];
        let jump = right.potential - left.potential;
        let left_cols = left.coefficients.len();
        for (j, rate) in left.rates().into_iter().enumerate() {
            let e = (rate * (x0 - left.anchor)).exp();
            matrix[(2 * b, offset + j)] = e;
            matrix[(2 * b + 1, offset + j)] = (rate + i * jump) * e;
        }
        for (j, rate) in right.rates().into_iter().enumerate() {
            let e = (rate * (x0 - right.anchor)).exp();
            matrix[(2 * b, offset + left_cols + j)] = -e;
            matrix[(2 * b + 1, offset + left_cols + j)] = -rate * e;
        }
        offset += left_cols;
    }
    Ok(MatchSystem { matrix, regions })
}

impl MatchSystem {
    pub fn dimension(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn determinant(&self) -> Complex64 {
        self.matrix.clone().determinant()
    }

    /// Singular values in descending order.
    pub fn singular_values(&self) -> Vec<f64> {
        let mut sv: Vec<f64> = self.matrix.clone().singular_values().iter().copied().collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        sv
    }

    /// Smallest over largest singular value.
    pub fn singularity_ratio(&self) -> f64 {
        let sv = self.singular_values();
        sv[sv.len() - 1] / sv[0]
    }

    /// Unit coefficient vector spanning the null space.
    ///
    /// Singular values below `threshold * sigma_max` count as zero; the null
    /// space must be exactly one-dimensional.
    pub fn null_vector(&self, threshold: f64) -> Result<Vec<Complex64>> {
        let svd = self.matrix.clone().svd(false, true);
        let v_t = svd.v_t.expect("right singular vectors requested");
        let sv = &svd.singular_values;
        let max = sv.max();
        let (min_idx, min) = sv
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, &s)| (i, s))
            .expect("non-empty system");
        let dimension = sv.iter().filter(|&&s| s <= threshold * max).count();
        match dimension {
            0 => Err(Error::NotAnEigenvalue { ratio: min / max }),
            1 => Ok(v_t.row(min_idx).iter().map(|z| z.conj()).collect()),
            d => Err(Error::DegenerateRoot { dimension: d }),
        }
    }

    /// Region layout with coefficients taken from `coefficients`.
    pub fn regions_with(&self, coefficients: &[Complex64]) -> Vec<RegionSolution> {
        let mut regions = self.regions.clone();
        let mut it = coefficients.iter().copied();
        for region in &mut regions {
            for c in &mut region.coefficients {
                *c = it.next().expect("coefficient count matches layout");
            }
        }
        regions
    }
}
