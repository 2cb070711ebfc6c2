use nalgebra::Vector2;

use crate::error::{Error, Result};
use crate::model::{m_matrix, FieldConfig, QuantumLabel};
use crate::piecewise::SecularFunction;

/// Integration settings for [`dirac_shooting_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootingOptions {
    /// Upper bound on the RK4 step.
    pub step: f64,
    /// Integration window; outside it the fields are taken as constant.
    /// Defaults to the breakpoint span for steps and to the active window
    /// of the fields otherwise.
    pub window: Option<(f64, f64)>,
    /// Matching point; defaults to the middle of the window.
    pub match_point: Option<f64>,
}

impl Default for ShootingOptions {
    fn default() -> Self {
        Self {
            step: 1e-3,
            window: None,
            match_point: None,
        }
    }
}

impl ShootingOptions {
    fn resolve(&self, config: &FieldConfig) -> Result<(f64, f64, f64)> {
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::InvalidGrid("shooting step must be positive".into()));
        }
        let (lo, hi) = self.window.unwrap_or_else(|| default_window(config));
        if !(lo.is_finite() && hi.is_finite() && hi >= lo) {
            return Err(Error::InvalidGrid(format!("bad shooting window [{lo}, {hi}]")));
        }
        let xm = self.match_point.unwrap_or(0.5 * (lo + hi));
        if !(xm >= lo && xm <= hi) {
            return Err(Error::InvalidGrid(format!(
                "match point {xm} outside window [{lo}, {hi}]"
            )));
        }
        Ok((lo, hi, xm))
    }
}

fn default_window(config: &FieldConfig) -> (f64, f64) {
    let (lo, hi) = config
        .electric
        .iter()
        .chain(config.magnetic.iter())
        .filter(|p| !p.is_identically_zero())
        .map(|p| p.active_window())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), (a, b)| {
            (lo.min(a), hi.max(b))
        });
    if lo <= hi {
        (lo, hi)
    } else {
        (-1.0, 1.0)
    }
}

/// Offset used to sample the fields strictly inside an interval.
fn nudge(width: f64) -> f64 {
    (1e-9 * width).max(1e-12)
}

/// Normalized Wronskian of the solutions decaying to the left and to the
/// right, at the default options.
pub fn dirac_shooting(config: &FieldConfig, label: QuantumLabel) -> Result<f64> {
    dirac_shooting_with(config, label, &ShootingOptions::default())
}

/// `psi_L x psi_R / (|psi_L| |psi_R|)` at the matching point, where `psi_L`
/// starts on the decaying eigenvector at the left window edge and is
/// integrated forward, and `psi_R` likewise from the right. It vanishes
/// exactly at bound-state energies and changes sign across them.
pub fn dirac_shooting_with(
    config: &FieldConfig,
    label: QuantumLabel,
    options: &ShootingOptions,
) -> Result<f64> {
    let (lo, hi, xm) = options.resolve(config)?;

    let (w_left, d_left) = config.w_delta(label, lo - nudge(1.0))?;
    let (w_right, d_right) = config.w_delta(label, hi + nudge(1.0))?;
    let kappa_left = exterior_rate(w_left, d_left, "left")?;
    let kappa_right = exterior_rate(w_right, d_right, "right")?;

    // eigenvector of M for +kappa (growing to the right, decaying leftwards)
    let left = if w_left > 0.0 {
        Vector2::new(w_left + kappa_left, d_left)
    } else {
        Vector2::new(d_left, w_left - kappa_left)
    };
    // eigenvector of M for -kappa
    let right = if w_right > 0.0 {
        Vector2::new(d_right, w_right + kappa_right)
    } else {
        Vector2::new(w_right - kappa_right, d_right)
    };

    let mut nodes: Vec<f64> = config
        .breakpoints()
        .into_iter()
        .filter(|&b| b > lo && b < hi)
        .collect();
    nodes.push(lo);
    nodes.push(hi);
    nodes.push(xm);
    nodes.sort_by(f64::total_cmp);
    nodes.dedup();
    let split = nodes.iter().position(|&x| x == xm).expect("match point is a node");

    let mut psi_l = left.normalize();
    for seg in nodes[..=split].windows(2) {
        psi_l = integrate(config, label, psi_l, seg[0], seg[1], options.step)?;
    }
    let mut psi_r = right.normalize();
    for seg in nodes[split..].windows(2).rev() {
        psi_r = integrate(config, label, psi_r, seg[1], seg[0], options.step)?;
    }
    Ok(psi_l.x * psi_r.y - psi_l.y * psi_r.x)
}

fn exterior_rate(w: f64, delta: f64, side: &'static str) -> Result<f64> {
    let k2 = w * w - delta * delta;
    if k2 > 0.0 {
        Ok(k2.sqrt())
    } else {
        Err(Error::NonDecayingExterior { side })
    }
}

/// RK4 from `from` to `to` (either direction) with the fields sampled
/// strictly inside the segment. Returns a unit vector.
fn integrate(
    config: &FieldConfig,
    label: QuantumLabel,
    start: Vector2<f64>,
    from: f64,
    to: f64,
    max_step: f64,
) -> Result<Vector2<f64>> {
    let length = (to - from).abs();
    if length == 0.0 {
        return Ok(start);
    }
    let (a, b) = (from.min(to), from.max(to));
    let guard = nudge(length);
    let rhs = |x: f64, y: Vector2<f64>| -> Result<Vector2<f64>> {
        let (w, d) = config.w_delta(label, x.clamp(a + guard, b - guard))?;
        Ok(m_matrix(w, d) * y)
    };
    let steps = (length / max_step).ceil() as usize;
    let h = (to - from) / steps as f64;
    let mut y = start;
    for i in 0..steps {
        let x = from + h * i as f64;
        let k1 = rhs(x, y)?;
        let k2 = rhs(x + 0.5 * h, y + k1 * (0.5 * h))?;
        let k3 = rhs(x + 0.5 * h, y + k2 * (0.5 * h))?;
        let k4 = rhs(x + h, y + k3 * h)?;
        y += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
        let norm = y.norm();
        if norm > 1e100 || norm < 1e-100 {
            y /= norm;
        }
    }
    Ok(y.normalize())
}

/// Shooting determinant as a function of energy at fixed `k`, on the
/// interval where both exterior regions decay.
pub fn shooting_secular(config: FieldConfig, k: f64, options: ShootingOptions) -> Result<SecularFunction> {
    let (lo, hi, _) = options.resolve(&config)?;
    // W and V at the window edges do not depend on the energy
    let (w_left, d_left) = config.w_delta(QuantumLabel::new(k, 0.0), lo - nudge(1.0))?;
    let (w_right, d_right) = config.w_delta(QuantumLabel::new(k, 0.0), hi + nudge(1.0))?;
    let (v_left, v_right) = (-d_left, -d_right);
    let band_lo = (v_left - w_left.abs()).max(v_right - w_right.abs());
    let band_hi = (v_left + w_left.abs()).min(v_right + w_right.abs());
    let domain = if band_hi > band_lo { (band_lo, band_hi) } else { (0.0, 0.0) };
    Ok(SecularFunction::new(domain, move |eps| {
        dirac_shooting_with(&config, QuantumLabel::new(k, eps), &options).unwrap_or(f64::NAN)
    }))
}
