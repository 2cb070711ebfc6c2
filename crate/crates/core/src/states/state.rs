use num_complex::Complex64;
use serde::Serialize;

use crate::closed_form::{ExpSum, ExpTerm};
use crate::error::{Error, Result};
use crate::model::QuantumLabel;
use crate::piecewise::{assemble_match_system, RegionSolution};
use crate::potential::{region_index, Potential1D};

/// Singular-value ratio below which the matching system counts as singular.
pub const NULL_SPACE_THRESHOLD: f64 = 1e-6;
/// Allowed deficit in `|<psi2, psi1*>| / (|psi1| |psi2|)` before the
/// components are declared not to be a conjugate pair.
pub const CONJUGATE_TOLERANCE: f64 = 1e-8;
pub const GRID_POINTS: usize = 4001;
/// Sampling extends this many slowest decay lengths past the outer steps.
pub const TAIL_DECAY_LENGTHS: f64 = 12.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StateSample {
    pub x: f64,
    pub psi1: Complex64,
    pub psi2: Complex64,
}

/// A bound state `(psi1~, psi2~)` of a step potential, held in closed form
/// region by region and sampled on a grid symmetric about `x = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseState {
    pub label: QuantumLabel,
    pub potential: Potential1D,
    /// Regions carrying the coefficients of `psi1~`.
    pub regions: Vec<RegionSolution>,
    pub grid: Vec<StateSample>,
    /// Factor that was applied to the raw null vector to reach unit
    /// probability.
    pub norm: f64,
    upper: Vec<ExpSum>,
    lower: Vec<ExpSum>,
}

/// `psi2~ = (psi1~' + i Delta psi1~) / k` for `psi1~` in closed form on an
/// interval where `V` is constant.
pub fn partner_component(psi1: &ExpSum, label: QuantumLabel, potential: &Potential1D) -> Result<ExpSum> {
    if label.k == 0.0 {
        return Err(Error::DegenerateMomentum);
    }
    let probe = match (psi1.lo.is_finite(), psi1.hi.is_finite()) {
        (true, true) => 0.5 * (psi1.lo + psi1.hi),
        (true, false) => psi1.lo + 1.0,
        (false, true) => psi1.hi - 1.0,
        (false, false) => 0.0,
    };
    let delta = label.epsilon - potential.evaluate(probe)?;
    let i = Complex64::i();
    let terms = psi1
        .terms
        .iter()
        .map(|t| ExpTerm {
            coef: t.coef * (t.rate + i * delta) / label.k,
            rate: t.rate,
        })
        .collect();
    Ok(ExpSum { terms, ..psi1.clone() })
}

impl PiecewiseState {
    fn build(label: QuantumLabel, potential: Potential1D, regions: Vec<RegionSolution>, norm: f64) -> Result<Self> {
        let upper: Vec<ExpSum> = regions.iter().map(RegionSolution::to_exp_sum).collect();
        let lower = upper
            .iter()
            .map(|s| partner_component(s, label, &potential))
            .collect::<Result<Vec<_>>>()?;
        let mut state = Self {
            label,
            potential,
            regions,
            grid: Vec::new(),
            norm,
            upper,
            lower,
        };
        state.grid = state.sample_grid();
        Ok(state)
    }

    /// Same state with both components multiplied by `factor`.
    pub fn scaled(&self, factor: Complex64) -> Self {
        let mut regions = self.regions.clone();
        for region in &mut regions {
            for c in &mut region.coefficients {
                *c *= factor;
            }
        }
        let norm = self.norm * factor.norm();
        Self::build(self.label, self.potential.clone(), regions, norm)
            .expect("rescaling keeps a valid state")
    }

    pub fn breakpoints(&self) -> &[f64] {
        self.potential.breakpoints()
    }

    fn region_of(&self, x: f64) -> usize {
        region_index(self.breakpoints(), x)
    }

    /// Closed forms of `psi1~` per region.
    pub fn upper_sums(&self) -> &[ExpSum] {
        &self.upper
    }

    /// Closed forms of `psi2~` per region.
    pub fn lower_sums(&self) -> &[ExpSum] {
        &self.lower
    }

    pub fn psi1(&self, x: f64) -> Complex64 {
        self.upper[self.region_of(x)].value(x)
    }

    pub fn psi2(&self, x: f64) -> Complex64 {
        self.lower[self.region_of(x)].value(x)
    }

    /// `n`-th derivative of `psi1~`, one-sided from the right at breakpoints.
    pub fn psi1_derivative(&self, x: f64, n: u32) -> Complex64 {
        self.upper[self.region_of(x)].derivative_n(x, n)
    }

    pub fn psi2_derivative(&self, x: f64, n: u32) -> Complex64 {
        self.lower[self.region_of(x)].derivative_n(x, n)
    }

    /// `int |psi1~|^2` over the real line, exactly.
    pub fn upper_weight(&self) -> f64 {
        self.upper.iter().map(|s| s.product(&s.conj()).integral().re).sum()
    }

    /// `int rho dx` with `rho = 4 |psi1~|^2`.
    pub fn total_probability(&self) -> f64 {
        4.0 * self.upper_weight()
    }

    /// Half-extent of the sampling grid.
    pub fn grid_half_width(&self) -> f64 {
        let bps = self.breakpoints();
        let outer = bps[0].abs().max(bps[bps.len() - 1].abs());
        let first = &self.regions[0];
        let last = &self.regions[self.regions.len() - 1];
        outer + TAIL_DECAY_LENGTHS / first.wavenumber.min(last.wavenumber)
    }

    /// `GRID_POINTS` abscissae with `x_i = -x_{n-1-i}` exactly.
    pub fn grid_abscissae(&self) -> Vec<f64> {
        let half = self.grid_half_width();
        let m = (GRID_POINTS - 1) as f64;
        (0..GRID_POINTS)
            .map(|i| half * (2.0 * i as f64 - m) / m)
            .collect()
    }

    fn sample_grid(&self) -> Vec<StateSample> {
        self.grid_abscissae()
            .into_iter()
            .map(|x| StateSample {
                x,
                psi1: self.psi1(x),
                psi2: self.psi2(x),
            })
            .collect()
    }

    fn max_upper_amplitude(&self) -> f64 {
        self.grid.iter().map(|s| s.psi1.norm()).fold(0.0, f64::max)
    }
}

/// Normalized, phase-fixed bound state of a step potential at a root
/// `label.epsilon` of its secular function.
pub fn assemble_state(label: QuantumLabel, potential: &Potential1D) -> Result<PiecewiseState> {
    if label.k == 0.0 {
        return Err(Error::DegenerateMomentum);
    }
    let system = assemble_match_system(label, potential)?;
    let coefficients = system.null_vector(NULL_SPACE_THRESHOLD)?;
    let raw = PiecewiseState::build(label, potential.clone(), system.regions_with(&coefficients), 1.0)?;
    let scale = 1.0 / raw.total_probability().sqrt();
    fix_phase(&raw.scaled(Complex64::new(scale, 0.0)))
}

/// Bound state of the well of depth `v0` on `[-half_width, half_width]`.
pub fn assemble_square_well_state(label: QuantumLabel, v0: f64, half_width: f64) -> Result<PiecewiseState> {
    assemble_state(label, &Potential1D::square_well(v0, half_width)?)
}

/// Global phase making `psi2~ = conj(psi1~)`, then the sign making
/// `Re psi1~(0) > 0`, or `Im psi1~(0) > 0` when the real part vanishes.
pub fn fix_phase(state: &PiecewiseState) -> Result<PiecewiseState> {
    let cross: Complex64 = state
        .upper
        .iter()
        .zip(&state.lower)
        .map(|(u, l)| u.product(l).integral())
        .sum();
    let upper = state.upper_weight();
    let lower: f64 = state.lower.iter().map(|s| s.product(&s.conj()).integral().re).sum();
    let mismatch = 1.0 - cross.norm() / (upper * lower).sqrt();
    if !(mismatch.abs() <= CONJUGATE_TOLERANCE) {
        return Err(Error::NotConjugatePair { mismatch });
    }
    // psi2 = c conj(psi1) with |c| = 1; multiplying the spinor by e^{i phi}
    // turns c into c e^{2 i phi}
    let c = cross / upper;
    let rotated = state.scaled(Complex64::from_polar(1.0, -0.5 * c.arg()));

    let at_origin = rotated.psi1(0.0);
    let floor = 1e-8 * rotated.max_upper_amplitude();
    let positive = if at_origin.re.abs() > floor {
        at_origin.re > 0.0
    } else {
        at_origin.im > 0.0
    };
    Ok(if positive {
        rotated
    } else {
        rotated.scaled(Complex64::new(-1.0, 0.0))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::square_well_spectrum;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn states(k: f64, v0: f64) -> Vec<PiecewiseState> {
        square_well_spectrum(k, v0, 1.0)
            .into_iter()
            .map(|e| assemble_square_well_state(QuantumLabel::new(k, e), v0, 1.0).unwrap())
            .collect()
    }

    #[test]
    fn reference_states_are_normalized_conjugate_pairs() {
        for s in states(2.0, 2.0) {
            assert!((s.total_probability() - 1.0).abs() < 1e-12);
            for p in &s.grid {
                assert!((p.psi2 - p.psi1.conj()).norm() < 1e-10);
            }
            assert!(s.psi1(0.0).re > 0.0 || (s.psi1(0.0).re.abs() < 1e-9 && s.psi1(0.0).im > 0.0));
        }
    }

    #[test]
    fn continuity_at_the_walls() {
        for s in states(2.0, 2.0) {
            for (b, &x0) in s.breakpoints().iter().enumerate() {
                let jump = s.upper[b].value(x0) - s.upper[b + 1].value(x0);
                assert!(jump.norm() < 1e-10);
            }
        }
    }

    #[test]
    fn non_root_is_rejected() {
        assert!(matches!(
            assemble_square_well_state(QuantumLabel::new(2.0, 1.0), 2.0, 1.0),
            Err(Error::NotAnEigenvalue { .. })
        ));
    }

    #[test]
    fn zero_momentum_is_degenerate() {
        let well = Potential1D::square_well(2.0, 1.0).unwrap();
        assert_eq!(
            assemble_state(QuantumLabel::new(0.0, -0.5), &well),
            Err(Error::DegenerateMomentum)
        );
        let sum = ExpSum::new(0.0, 1.0, 0.0, vec![]);
        assert_eq!(
            partner_component(&sum, QuantumLabel::new(0.0, 0.1), &well),
            Err(Error::DegenerateMomentum)
        );
    }

    #[test]
    fn partner_satisfies_the_other_row() {
        // psi2' - i Delta psi2 = k psi1 inside every region
        for s in states(3.0, 8.0) {
            for p in s.grid.iter().step_by(37) {
                if s.breakpoints().iter().any(|b| (b - p.x).abs() < 1e-6) {
                    continue;
                }
                let delta = s.label.epsilon - s.potential.evaluate(p.x).unwrap();
                let lhs = s.psi2_derivative(p.x, 1) - Complex64::i() * delta * p.psi2;
                assert!((lhs - s.label.k * p.psi1).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn phase_fix_is_idempotent_and_canonical() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for s in states(2.0, 2.0) {
            let again = fix_phase(&s).unwrap();
            for (a, b) in s.grid.iter().zip(&again.grid) {
                assert!((a.psi1 - b.psi1).norm() < 1e-12);
            }
            for _ in 0..100 {
                let theta = rng.gen_range(0.0..std::f64::consts::TAU);
                let fixed = fix_phase(&s.scaled(Complex64::from_polar(1.0, theta))).unwrap();
                let same = s.grid.iter().zip(&fixed.grid).all(|(a, b)| (a.psi1 - b.psi1).norm() < 1e-10);
                let flipped = s.grid.iter().zip(&fixed.grid).all(|(a, b)| (a.psi1 + b.psi1).norm() < 1e-10);
                assert!(same || flipped, "theta = {theta}");
            }
        }
    }

    #[test]
    fn grid_is_symmetric() {
        let s = &states(2.0, 2.0)[0];
        let n = s.grid.len();
        assert_eq!(n, GRID_POINTS);
        for i in 0..n {
            assert_eq!(s.grid[i].x, -s.grid[n - 1 - i].x);
        }
        assert_eq!(s.grid[n / 2].x, 0.0);
        let p = (4.0f64 - 0.354274f64.powi(2)).sqrt();
        assert!((s.grid_half_width() - (1.0 + 12.0 / p)).abs() < 1e-4);
    }
}
