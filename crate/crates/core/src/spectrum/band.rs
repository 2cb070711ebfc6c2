use serde::{Deserialize, Serialize};

/// Open energy interval in which a square well can bind at fixed `(k, v0)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdmissibleBand {
    pub lo: f64,
    pub hi: f64,
}

impl AdmissibleBand {
    pub const EMPTY: Self = Self { lo: 0.0, hi: 0.0 };

    pub fn is_empty(&self) -> bool {
        !(self.hi > self.lo)
    }

    pub fn contains(&self, eps: f64) -> bool {
        self.lo < eps && eps < self.hi
    }

    pub fn width(&self) -> f64 {
        (self.hi - self.lo).max(0.0)
    }
}

/// `(max(-|k|, |k| - v0), |k|)`: exterior decay needs `|eps| < |k|`, interior
/// oscillation needs `eps + v0 > |k|`. Empty for `k = 0` or `v0 <= 0`.
pub fn admissible_interval(k: f64, v0: f64) -> AdmissibleBand {
    let ak = k.abs();
    if ak == 0.0 || !(v0 > 0.0) {
        return AdmissibleBand::EMPTY;
    }
    AdmissibleBand {
        lo: (-ak).max(ak - v0),
        hi: ak,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(admissible_interval(3.0, 8.0), AdmissibleBand { lo: -3.0, hi: 3.0 });
        assert_eq!(admissible_interval(2.0, 2.0), AdmissibleBand { lo: 0.0, hi: 2.0 });
        assert!(admissible_interval(2.0, 0.0).is_empty());
        assert!(admissible_interval(0.0, 5.0).is_empty());
        assert_eq!(admissible_interval(-2.0, 3.0), admissible_interval(2.0, 3.0));
    }

    #[test]
    fn band_matches_direct_inequalities() {
        for &(k, v0) in &[(2.0, 2.0), (3.0, 8.0), (1.0, 0.5), (4.0, 5.0)] {
            let band = admissible_interval(k, v0);
            for i in 0..=400 {
                let eps = -6.0 + 12.0 * i as f64 / 400.0;
                let direct = eps.abs() < k && eps + v0 > k;
                assert_eq!(band.contains(eps), direct, "k={k} v0={v0} eps={eps}");
            }
        }
    }
}
