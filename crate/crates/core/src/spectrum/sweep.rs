use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::band::{admissible_interval, AdmissibleBand};
use super::roots::{find_roots, scan_interval, DEFAULT_SCAN_POINTS, DEFAULT_TOLERANCE};
use crate::error::{Error, Result};
use crate::piecewise::SecularFunction;

/// A branch endpoint closer than this to a band edge counts as leaving the
/// band through that edge.
pub const COLLAPSE_TOLERANCE: f64 = 1e-6;
/// Margin used while locating where a branch leaves the band; smaller than
/// the reporting margin so the endpoint lands within [`COLLAPSE_TOLERANCE`].
const EDGE_MARGIN: f64 = 1e-9;
const GUARD_FACTOR: f64 = 10.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepParameter {
    K,
    V0,
}

impl SweepParameter {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParameter::K => "k",
            SweepParameter::V0 => "v0",
        }
    }
}

/// Inclusive range `lo, lo + step, ..., hi`, written `lo:hi:step`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRange {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
}

impl SweepRange {
    pub fn new(lo: f64, hi: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) || !lo.is_finite() || !hi.is_finite() || hi < lo {
            return Err(Error::InvalidField(format!(
                "bad sweep range {lo}:{hi}:{step}"
            )));
        }
        Ok(Self { lo, hi, step })
    }

    pub fn values(&self) -> Vec<f64> {
        let n = ((self.hi - self.lo) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|i| self.lo + i as f64 * self.step).collect()
    }
}

impl FromStr for SweepRange {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::InvalidField(format!("range must be lo:hi:step, got {s:?}"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let mut nums = [0.0; 3];
        for (slot, part) in nums.iter_mut().zip(&parts) {
            *slot = part.trim().parse().map_err(|_| bad())?;
        }
        Self::new(nums[0], nums[1], nums[2])
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSettings {
    pub half_width: f64,
    pub scan_points: usize,
    pub tolerance: f64,
}

impl Default for SweepSettings {
    fn default() -> Self {
        Self {
            half_width: 1.0,
            scan_points: DEFAULT_SCAN_POINTS,
            tolerance: DEFAULT_TOLERANCE,
        }
    }
}

/// Edge of the admissible band.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BandBoundary {
    /// `eps = -|k|`, the top of the negative continuum. Leaving here is a collapse.
    Lower,
    /// `eps = |k| - v0`, where the interior stops oscillating.
    WellBottom,
    /// `eps = |k|`.
    Upper,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Termination {
    pub param: f64,
    pub epsilon: f64,
    pub boundary: BandBoundary,
}

/// One bound-state energy followed across a sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumBranch {
    pub parameter: SweepParameter,
    pub branch: usize,
    pub samples: Vec<(f64, f64)>,
    pub termination: Option<Termination>,
}

impl SpectrumBranch {
    pub fn is_collapse(&self) -> bool {
        matches!(
            self.termination,
            Some(Termination {
                boundary: BandBoundary::Lower,
                ..
            })
        )
    }

    fn last(&self) -> (f64, f64) {
        *self.samples.last().expect("branches start with a sample")
    }

    fn slope(&self) -> f64 {
        match self.samples.as_slice() {
            [.., (t0, e0), (t1, e1)] => (e1 - e0) / (t1 - t0),
            _ => 0.0,
        }
    }
}

/// Energies of every branch sampled at parameter `t` (within half a step).
pub fn cut(branches: &[SpectrumBranch], t: f64, tol: f64) -> Vec<f64> {
    let mut eps: Vec<f64> = branches
        .iter()
        .flat_map(|b| b.samples.iter())
        .filter(|(p, _)| (p - t).abs() <= tol)
        .map(|&(_, e)| e)
        .collect();
    eps.sort_by(f64::total_cmp);
    eps
}

/// Square-well spectrum as a function of `k` at fixed depth.
pub fn sweep_k(v0: f64, range: SweepRange, settings: SweepSettings) -> Vec<SpectrumBranch> {
    Sweep {
        parameter: SweepParameter::K,
        fixed: v0,
        settings,
    }
    .run(&range)
}

/// Square-well spectrum as a function of the depth at fixed `k`.
pub fn sweep_v0(k: f64, range: SweepRange, settings: SweepSettings) -> Vec<SpectrumBranch> {
    Sweep {
        parameter: SweepParameter::V0,
        fixed: k,
        settings,
    }
    .run(&range)
}

struct Sweep {
    parameter: SweepParameter,
    fixed: f64,
    settings: SweepSettings,
}

impl Sweep {
    fn k_v0(&self, t: f64) -> (f64, f64) {
        match self.parameter {
            SweepParameter::K => (t, self.fixed),
            SweepParameter::V0 => (self.fixed, t),
        }
    }

    fn band(&self, t: f64) -> AdmissibleBand {
        let (k, v0) = self.k_v0(t);
        admissible_interval(k, v0)
    }

    fn secular(&self, t: f64) -> SecularFunction {
        let (k, v0) = self.k_v0(t);
        SecularFunction::square_well(k, v0, self.settings.half_width)
    }

    fn roots(&self, t: f64) -> Vec<f64> {
        find_roots(
            &self.secular(t),
            self.settings.scan_points,
            self.settings.tolerance,
        )
    }

    fn run(&self, range: &SweepRange) -> Vec<SpectrumBranch> {
        let params = range.values();
        let root_sets: Vec<Vec<f64>> = params.par_iter().map(|&t| self.roots(t)).collect();

        let mut branches: Vec<SpectrumBranch> = Vec::new();
        let mut active: Vec<usize> = Vec::new();
        let start = |branches: &mut Vec<SpectrumBranch>, t: f64, e: f64| {
            branches.push(SpectrumBranch {
                parameter: self.parameter,
                branch: branches.len(),
                samples: vec![(t, e)],
                termination: None,
            });
            branches.len() - 1
        };

        for &e in &root_sets[0] {
            active.push(start(&mut branches, params[0], e));
        }

        for i in 1..params.len() {
            let (t_prev, t) = (params[i - 1], params[i]);
            let new = &root_sets[i];
            let step = t - t_prev;
            let guards: Vec<f64> = active
                .iter()
                .map(|&b| GUARD_FACTOR * branches[b].slope().abs().max(1.0) * step)
                .collect();
            let old: Vec<f64> = active.iter().map(|&b| branches[b].last().1).collect();
            let pairs = align(&old, new, &guards, GUARD_FACTOR * step);

            let mut matched_new = vec![false; new.len()];
            let mut next_active = Vec::with_capacity(new.len());
            for (j, &b) in active.iter().enumerate() {
                match pairs[j] {
                    Some(n) => {
                        branches[b].samples.push((t, new[n]));
                        matched_new[n] = true;
                        next_active.push((new[n], b));
                    }
                    None => {
                        let upper_neighbour = old.get(j + 1).copied();
                        let lower_neighbour = j.checked_sub(1).map(|m| old[m]);
                        branches[b].termination = self.locate_exit(
                            t_prev,
                            t,
                            old[j],
                            lower_neighbour,
                            upper_neighbour,
                        );
                    }
                }
            }
            for (n, &e) in new.iter().enumerate() {
                if !matched_new[n] {
                    next_active.push((e, start(&mut branches, t, e)));
                }
            }
            next_active.sort_by(|a, b| a.0.total_cmp(&b.0));
            active = next_active.into_iter().map(|(_, b)| b).collect();
        }
        branches
    }

    /// Find where a branch last seen at `(t_prev, eps)` left the band before
    /// `t`. Returns a termination only if the endpoint is on a band edge.
    fn locate_exit(
        &self,
        t_prev: f64,
        t: f64,
        eps: f64,
        lower_neighbour: Option<f64>,
        upper_neighbour: Option<f64>,
    ) -> Option<Termination> {
        let band = self.band(t_prev);
        let downward = (eps - band.lo) <= (band.hi - eps);
        // window between this branch and the neighbour on the far side
        let window = |t: f64| -> Option<(f64, f64)> {
            let b = self.band(t);
            let (a, z) = if downward {
                let cap = upper_neighbour.map_or(b.hi, |u| 0.5 * (eps + u));
                (b.lo + EDGE_MARGIN, cap.min(b.hi - EDGE_MARGIN))
            } else {
                let floor = lower_neighbour.map_or(b.lo, |l| 0.5 * (eps + l));
                (floor.max(b.lo + EDGE_MARGIN), b.hi - EDGE_MARGIN)
            };
            (z > a).then_some((a, z))
        };
        let endpoint = |t: f64| -> Option<f64> {
            let (a, z) = window(t)?;
            let roots = scan_interval(
                &self.secular(t),
                a,
                z,
                self.settings.scan_points,
                self.settings.tolerance,
            );
            if downward {
                roots.first().copied()
            } else {
                roots.last().copied()
            }
        };

        let (param, epsilon) = if let Some(e) = endpoint(t) {
            (t, e)
        } else {
            let (mut a, mut b) = (t_prev, t);
            let mut last = endpoint(a).unwrap_or(eps);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if !(mid > a && mid < b) || b - a <= 1e-12 * a.abs().max(1.0) {
                    break;
                }
                match endpoint(mid) {
                    Some(e) => {
                        a = mid;
                        last = e;
                    }
                    None => b = mid,
                }
            }
            (a, last)
        };

        let band = self.band(param);
        let (k, _) = self.k_v0(param);
        let boundary = if downward {
            if band.lo == -k.abs() {
                BandBoundary::Lower
            } else {
                BandBoundary::WellBottom
            }
        } else {
            BandBoundary::Upper
        };
        let edge = if downward { band.lo } else { band.hi };
        ((epsilon - edge).abs() <= COLLAPSE_TOLERANCE).then_some(Termination {
            param,
            epsilon,
            boundary,
        })
    }
}

/// Pair old branch values with new roots. Both lists are sorted and levels
/// never cross, so the pairing is a shift `new = old + s`; choose the shift
/// minimizing total movement, where a pair moving more than its guard and an
/// unpaired entry each cost `unmatched`.
fn align(old: &[f64], new: &[f64], guards: &[f64], unmatched: f64) -> Vec<Option<usize>> {
    let (n_old, n_new) = (old.len() as isize, new.len() as isize);
    let mut best: Option<(f64, isize)> = None;
    for s in -n_old..=n_new {
        let mut cost = 0.0;
        for j in 0..n_old {
            let n = j + s;
            if (0..n_new).contains(&n) {
                let d = (new[n as usize] - old[j as usize]).abs();
                if d <= guards[j as usize] {
                    cost += d;
                } else {
                    cost += 2.0 * unmatched;
                }
            }
        }
        let overlap = (0..n_old).filter(|j| (0..n_new).contains(&(j + s))).count() as isize;
        cost += unmatched * ((n_old - overlap) + (n_new - overlap)) as f64;
        let better = match best {
            None => true,
            Some((c, bs)) => cost < c || (cost == c && s.abs() < bs.abs()),
        };
        if better {
            best = Some((cost, s));
        }
    }
    let s = best.map_or(0, |(_, s)| s);
    (0..n_old)
        .map(|j| {
            let n = j + s;
            ((0..n_new).contains(&n) && (new[n as usize] - old[j as usize]).abs() <= guards[j as usize])
                .then_some(n as usize)
        })
        .collect()
}
