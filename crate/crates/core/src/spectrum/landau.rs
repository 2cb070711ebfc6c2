use crate::error::{Error, Result};
use crate::model::ProportionalRegime;

fn check(beta: f64, n: i64) -> Result<()> {
    if n < 0 {
        return Err(Error::InvalidLevel(n));
    }
    if !(beta > 0.0) {
        return Err(Error::InvalidField(format!("beta must be positive, got {beta}")));
    }
    Ok(())
}

/// `(+sqrt(2 n beta), -sqrt(2 n beta))` for `A = beta x`; independent of `k`.
pub fn landau_levels_magnetic(beta: f64, n: i64) -> Result<(f64, f64)> {
    check(beta, n)?;
    let e = (2.0 * n as f64 * beta).sqrt();
    Ok((e, -e))
}

/// Levels of the proportional case `V = alpha beta x`, `A = beta x`:
/// `-alpha k +/- (1 - alpha^2)^{3/4} sqrt(2 n beta)`.
pub fn landau_levels_proportional(alpha: f64, beta: f64, k: f64, n: i64) -> Result<(f64, f64)> {
    if ProportionalRegime::of(alpha) != ProportionalRegime::Trigonometric {
        return Err(Error::UnsupportedRegime { alpha });
    }
    check(beta, n)?;
    let spread = (1.0 - alpha * alpha).powf(0.75) * (2.0 * n as f64 * beta).sqrt();
    let centre = -alpha * k;
    Ok((centre + spread, centre - spread))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn magnetic_examples() {
        assert_eq!(landau_levels_magnetic(1.0, 0).unwrap(), (0.0, -0.0));
        let (p, m) = landau_levels_magnetic(1.0, 1).unwrap();
        assert!((p - 1.414_213_562).abs() < 1e-9 && (m + 1.414_213_562).abs() < 1e-9);
        let (p, _) = landau_levels_magnetic(2.0, 2).unwrap();
        assert!((p - 2.828_427_125).abs() < 1e-9);
        assert_eq!(landau_levels_magnetic(1.0, -1), Err(Error::InvalidLevel(-1)));
        assert!(landau_levels_magnetic(-1.0, 1).is_err());
    }

    #[test]
    fn proportional_reduces_to_magnetic() {
        for n in 0..6 {
            for k in [-1.0, 0.0, 2.5] {
                let (a, b) = landau_levels_proportional(0.0, 1.3, k, n).unwrap();
                let (c, d) = landau_levels_magnetic(1.3, n).unwrap();
                assert_eq!(a, c);
                assert_eq!(b, d);
            }
        }
    }

    #[test]
    fn proportional_examples() {
        let (p, m) = landau_levels_proportional(0.5, 1.0, 0.0, 1).unwrap();
        let expected = 0.75f64.powf(0.75) * 2.0f64.sqrt();
        assert!((p - expected).abs() < 1e-14 && (m + expected).abs() < 1e-14);
        let (p, m) = landau_levels_proportional(0.3, 1.0, 2.0, 0).unwrap();
        assert_eq!(p, -0.6);
        assert_eq!(m, -0.6);
        assert_eq!(
            landau_levels_proportional(1.0, 1.0, 0.0, 1),
            Err(Error::UnsupportedRegime { alpha: 1.0 })
        );
    }
}
