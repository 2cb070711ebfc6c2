use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::state::PiecewiseState;
use crate::error::{Error, Result};
use crate::model::QuantumLabel;
use crate::quadrature::adaptive_simpson;

/// Largest relative misfit of `conj(psi(-x)) = lambda psi(x)` that still
/// counts as PT symmetric.
pub const PT_TOLERANCE: f64 = 1e-6;

/// `rho = 4 |psi1~|^2`, `J_y = -8 Re psi1~ Im psi1~`, `J_x = 0`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityProfile {
    pub x: Vec<f64>,
    pub rho: Vec<f64>,
    pub j_y: Vec<f64>,
    pub j_x: Vec<f64>,
}

impl DensityProfile {
    fn of(state: &PiecewiseState) -> Self {
        let n = state.grid.len();
        let mut profile = Self {
            x: Vec::with_capacity(n),
            rho: Vec::with_capacity(n),
            j_y: Vec::with_capacity(n),
            j_x: vec![0.0; n],
        };
        for s in &state.grid {
            let (rho, j_y) = densities(s.psi1);
            profile.x.push(s.x);
            profile.rho.push(rho);
            profile.j_y.push(j_y);
        }
        profile
    }
}

/// `(rho, J_y)` at one point, written as `rho = 2 (a + b)` and
/// `J_y = -2 (a - b)` with `a = (Re + Im)^2`, `b = (Re - Im)^2` so that
/// `|J_y| <= rho` survives rounding.
fn densities(psi1: Complex64) -> (f64, f64) {
    let a = (psi1.re + psi1.im) * (psi1.re + psi1.im);
    let b = (psi1.re - psi1.im) * (psi1.re - psi1.im);
    (2.0 * (a + b), -2.0 * (a - b))
}

pub fn probability_density(state: &PiecewiseState) -> DensityProfile {
    DensityProfile::of(state)
}

pub fn current_density(state: &PiecewiseState) -> DensityProfile {
    DensityProfile::of(state)
}

/// Interior strict local minima of `rho`.
pub fn node_count(profile: &DensityProfile) -> usize {
    profile
        .rho
        .windows(3)
        .filter(|w| w[1] < w[0] && w[1] < w[2])
        .count()
}

/// `(psi1, psi2) = (2 Re psi1~, -2 Im psi1~)` on the state grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealSpinor {
    pub x: Vec<f64>,
    pub psi1: Vec<f64>,
    pub psi2: Vec<f64>,
}

pub fn to_real_spinor(state: &PiecewiseState) -> RealSpinor {
    RealSpinor {
        x: state.grid.iter().map(|s| s.x).collect(),
        psi1: state.grid.iter().map(|s| 2.0 * s.psi1.re).collect(),
        psi2: state.grid.iter().map(|s| -2.0 * s.psi1.im).collect(),
    }
}

/// `(psi1~, psi2~) = ((psi1 - i psi2) / 2, (psi1 + i psi2) / 2)`.
pub fn tilde_from_real(psi1: f64, psi2: f64) -> (Complex64, Complex64) {
    (
        Complex64::new(0.5 * psi1, -0.5 * psi2),
        Complex64::new(0.5 * psi1, 0.5 * psi2),
    )
}

/// Least-squares `lambda` in `conj(psi(-x)) = lambda psi(x)` over the
/// abscissae `xs`.
pub fn pt_fit<F: Fn(f64) -> Complex64>(xs: &[f64], psi: F) -> Result<Complex64> {
    let pairs: Vec<(Complex64, Complex64)> = xs.iter().map(|&x| (psi(x), psi(-x))).collect();
    let weight: f64 = pairs.iter().map(|(a, _)| a.norm_sqr()).sum();
    let lambda: Complex64 = pairs.iter().map(|(a, b)| a.conj() * b.conj()).sum::<Complex64>() / weight;
    let scale = pairs.iter().map(|(a, _)| a.norm()).fold(0.0, f64::max);
    let residual = pairs
        .iter()
        .map(|(a, b)| (b.conj() - lambda * a).norm())
        .fold(0.0, f64::max)
        / scale;
    if residual.is_finite() && residual <= PT_TOLERANCE {
        Ok(lambda)
    } else {
        Err(Error::BrokenPTSymmetry { residual })
    }
}

/// PT eigenvalue of `psi1~` on the symmetric state grid.
pub fn pt_eigenvalue(state: &PiecewiseState) -> Result<Complex64> {
    let xs: Vec<f64> = state.grid.iter().map(|s| s.x).collect();
    pt_fit(&xs, |x| state.psi1(x))
}

/// `int (psi2~^a psi1~^b + psi1~^a psi2~^b) dx`. This equals
/// `(1/2) int (psi1^a psi1^b + psi2^a psi2^b) dx`, so a state has
/// self-product one half.
pub fn inner_product(a: &PiecewiseState, b: &PiecewiseState) -> Result<Complex64> {
    if a.label.k != b.label.k {
        return Err(Error::MismatchedMomentum { a: a.label.k, b: b.label.k });
    }
    let same_layout = a.regions.len() == b.regions.len()
        && a.regions
            .iter()
            .zip(&b.regions)
            .all(|(ra, rb)| ra.interval == rb.interval && ra.anchor == rb.anchor);
    if same_layout {
        let (au, al, bu, bl) = (a.upper_sums(), a.lower_sums(), b.upper_sums(), b.lower_sums());
        Ok((0..au.len())
            .map(|r| al[r].product(&bu[r]).integral() + au[r].product(&bl[r]).integral())
            .sum())
    } else {
        Ok(inner_product_quadrature(a, b))
    }
}

/// Adaptive quadrature of the same integrand over the merged breakpoints,
/// with the tails cut where both states have decayed by `e^{-40}`.
fn inner_product_quadrature(a: &PiecewiseState, b: &PiecewiseState) -> Complex64 {
    let mut nodes: Vec<f64> = a.breakpoints().iter().chain(b.breakpoints()).copied().collect();
    nodes.sort_by(f64::total_cmp);
    nodes.dedup();
    let slowest = a
        .regions
        .iter()
        .chain(&b.regions)
        .filter(|r| !(r.interval.0.is_finite() && r.interval.1.is_finite()))
        .map(|r| r.wavenumber)
        .fold(f64::INFINITY, f64::min);
    let tail = 40.0 / slowest;
    nodes.insert(0, nodes[0] - tail);
    nodes.push(nodes[nodes.len() - 1] + tail);
    let integrand = |x: f64| a.psi2(x) * b.psi1(x) + a.psi1(x) * b.psi2(x);
    nodes
        .windows(2)
        .map(|w| adaptive_simpson(integrand, w[0], w[1], 1e-13))
        .sum()
}

/// `int (psi1^a psi1^b + psi2^a psi2^b) dx`, twice [`inner_product`]; one
/// for a normalized state.
pub fn spinor_overlap(a: &PiecewiseState, b: &PiecewiseState) -> Result<Complex64> {
    Ok(2.0 * inner_product(a, b)?)
}

pub fn gram_matrix(states: &[PiecewiseState]) -> Result<DMatrix<Complex64>> {
    let n = states.len();
    let mut gram = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            gram[(i, j)] = spinor_overlap(&states[i], &states[j])?;
        }
    }
    Ok(gram)
}

/// Largest pointwise residuals on the state grid, excluding points within
/// `1e-6` of a breakpoint.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residuals {
    /// `-psi1~'' + V_eff psi1~ - E_eff psi1~`.
    pub second_order: f64,
    /// `psi2~' - i Delta psi2~ - k psi1~`.
    pub first_order_upper: f64,
    /// `psi1~' + i Delta psi1~ - k psi2~`.
    pub first_order_lower: f64,
    /// `psi1~(x0-) - psi1~(x0+)` over all breakpoints.
    pub continuity: f64,
    /// `psi1~'(x0+) - psi1~'(x0-) - i J psi1~(x0)` over all breakpoints.
    pub derivative_jump: f64,
}

pub fn residuals(state: &PiecewiseState) -> Result<Residuals> {
    let i = Complex64::i();
    let QuantumLabel { k, epsilon } = state.label;
    let bps = state.breakpoints();
    let mut out = Residuals {
        second_order: 0.0,
        first_order_upper: 0.0,
        first_order_lower: 0.0,
        continuity: 0.0,
        derivative_jump: 0.0,
    };
    for s in &state.grid {
        if bps.iter().any(|b| (b - s.x).abs() < 1e-6) {
            continue;
        }
        let v = state.potential.evaluate(s.x)?;
        let delta = epsilon - v;
        let veff = crate::model::effective_potential_electric(&state.potential, epsilon, s.x)?;
        let eeff = crate::model::effective_energy(state.label);
        let second = -state.psi1_derivative(s.x, 2) + veff * s.psi1 - eeff * s.psi1;
        let upper = state.psi2_derivative(s.x, 1) - i * delta * s.psi2 - k * s.psi1;
        let lower = state.psi1_derivative(s.x, 1) + i * delta * s.psi1 - k * s.psi2;
        out.second_order = out.second_order.max(second.norm());
        out.first_order_upper = out.first_order_upper.max(upper.norm());
        out.first_order_lower = out.first_order_lower.max(lower.norm());
    }
    let sums = state.upper_sums();
    for (b, &x0) in bps.iter().enumerate() {
        let (left, right) = (&sums[b], &sums[b + 1]);
        let jump = state.regions[b + 1].potential - state.regions[b].potential;
        out.continuity = out.continuity.max((left.value(x0) - right.value(x0)).norm());
        let kink = right.derivative(x0) - left.derivative(x0) - i * jump * left.value(x0);
        out.derivative_jump = out.derivative_jump.max(kink.norm());
    }
    Ok(out)
}



/// One line of the state export.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StateRow {
    pub x: f64,
    pub re_psi1: f64,
    pub im_psi1: f64,
    pub re_psi2: f64,
    pub im_psi2: f64,
    pub rho: f64,
    pub jy: f64,
}

impl StateRow {
    pub const HEADER: [&'static str; 7] = ["x", "re_psi1", "im_psi1", "re_psi2", "im_psi2", "rho", "jy"];

    pub fn rows(state: &PiecewiseState) -> Vec<Self> {
        state
            .grid
            .iter()
            .map(|s| {
                let (rho, jy) = densities(s.psi1);
                Self {
                    x: s.x,
                    re_psi1: s.psi1.re,
                    im_psi1: s.psi1.im,
                    re_psi2: s.psi2.re,
                    im_psi2: s.psi2.im,
                    rho,
                    jy,
                }
            })
            .collect()
    }
}
