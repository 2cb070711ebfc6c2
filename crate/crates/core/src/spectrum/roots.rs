use crate::piecewise::SecularFunction;

pub const DEFAULT_SCAN_POINTS: usize = 2000;
pub const DEFAULT_TOLERANCE: f64 = 1e-10;
/// Roots closer than this to either end of the domain are band-edge
/// degeneracies, not bound states.
pub const BOUNDARY_MARGIN: f64 = 1e-6;

/// All sign changes of `f` on a uniform scan of its domain (shrunk by
/// [`BOUNDARY_MARGIN`]), each refined by bisection until the bracket is
/// narrower than `tol`. Sorted ascending.
pub fn find_roots(f: &SecularFunction, scan_points: usize, tol: f64) -> Vec<f64> {
    find_roots_with_margin(f, scan_points, tol, BOUNDARY_MARGIN)
}

pub(crate) fn find_roots_with_margin(
    f: &SecularFunction,
    scan_points: usize,
    tol: f64,
    margin: f64,
) -> Vec<f64> {
    assert!(scan_points >= 2, "need at least two scan points");
    assert!(tol > 0.0, "tolerance must be positive");
    let (lo, hi) = f.domain();
    let (a, b) = (lo + margin, hi - margin);
    if !(b > a) {
        return Vec::new();
    }
    scan_interval(f, a, b, scan_points, tol)
}

pub(crate) fn scan_interval(
    f: &SecularFunction,
    a: f64,
    b: f64,
    scan_points: usize,
    tol: f64,
) -> Vec<f64> {
    let step = (b - a) / (scan_points - 1) as f64;
    let grid: Vec<f64> = (0..scan_points)
        .map(|i| if i + 1 == scan_points { b } else { a + step * i as f64 })
        .collect();
    let values: Vec<f64> = grid.iter().map(|&x| f.eval(x)).collect();

    let mut roots = Vec::new();
    let mut i = 0;
    while i + 1 < scan_points {
        let (fa, fb) = (values[i], values[i + 1]);
        if fa == 0.0 {
            roots.push(grid[i]);
        } else if fb != 0.0 && fa.is_finite() && fb.is_finite() && (fa < 0.0) != (fb < 0.0) {
            roots.push(bisect(f, grid[i], grid[i + 1], fa, tol));
        }
        i += 1;
    }
    if values[scan_points - 1] == 0.0 {
        roots.push(b);
    }
    roots
}

fn bisect(f: &SecularFunction, mut lo: f64, mut hi: f64, mut flo: f64, tol: f64) -> f64 {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f.eval(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Bound-state energies of the square well with default scan settings.
pub fn square_well_spectrum(k: f64, v0: f64, half_width: f64) -> Vec<f64> {
    find_roots(
        &SecularFunction::square_well(k, v0, half_width),
        DEFAULT_SCAN_POINTS,
        DEFAULT_TOLERANCE,
    )
}

/// Number of bound states of the unit-half-width square well.
pub fn count_bound_states(k: f64, v0: f64) -> usize {
    square_well_spectrum(k, v0, 1.0).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::admissible_interval;

    #[test]
    fn reference_levels() {
        let roots = square_well_spectrum(2.0, 2.0, 1.0);
        let expected = [0.354274, 1.13356, 1.92583];
        assert_eq!(roots.len(), 3);
        for (r, e) in roots.iter().zip(expected) {
            assert!((r - e).abs() < 1e-5, "{r} vs {e}");
        }
    }

    #[test]
    fn counts() {
        assert_eq!(count_bound_states(3.0, 8.0), 5);
        assert_eq!(count_bound_states(2.0, 2.0), 3);
        assert_eq!(count_bound_states(2.0, 0.0), 0);
        assert_eq!(count_bound_states(0.0, 4.0), 0);
    }

    #[test]
    fn roots_lie_strictly_inside_band() {
        for &(k, v0) in &[(1.0, 3.0), (3.0, 8.0), (4.5, 9.5), (0.7, 6.0)] {
            let band = admissible_interval(k, v0);
            for r in square_well_spectrum(k, v0, 1.0) {
                assert!(r > band.lo + BOUNDARY_MARGIN && r < band.hi - BOUNDARY_MARGIN);
            }
        }
    }

    #[test]
    fn q_zero_edge_is_not_reported() {
        // f -> 0 as eps -> k - v0, but that edge is excluded
        let f = SecularFunction::square_well(2.0, 2.0, 1.0);
        assert!(f.eval(1e-14).abs() < 1e-5);
        let roots = find_roots(&f, 2000, 1e-10);
        assert!(roots.iter().all(|&r| r > 1e-3));
    }

    #[test]
    fn simple_polynomial() {
        let f = SecularFunction::new((-2.0, 2.0), |x| (x - 0.5) * (x + 1.25) * (x - 1.5));
        let roots = find_roots(&f, 100, 1e-12);
        assert_eq!(roots.len(), 3);
        for (r, e) in roots.iter().zip([-1.25, 0.5, 1.5]) {
            assert!((r - e).abs() < 1e-11);
        }
    }
}
