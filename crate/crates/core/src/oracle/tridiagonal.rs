/// Real symmetric tridiagonal matrix with eigenvalues by Sturm bisection.
#[derive(Debug, Clone)]
pub struct SymmetricTridiagonal {
    pub diagonal: Vec<f64>,
    /// `off_diagonal[i]` couples rows `i` and `i + 1`.
    pub off_diagonal: Vec<f64>,
}

impl SymmetricTridiagonal {
    pub fn new(diagonal: Vec<f64>, off_diagonal: Vec<f64>) -> Self {
        assert_eq!(off_diagonal.len() + 1, diagonal.len().max(1));
        Self {
            diagonal,
            off_diagonal,
        }
    }

    pub fn len(&self) -> usize {
        self.diagonal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagonal.is_empty()
    }

    /// Number of eigenvalues strictly below `lambda` (Sturm count of the
    /// pivots of `T - lambda I`).
    pub fn count_below(&self, lambda: f64) -> usize {
        let mut count = 0;
        let mut pivot = 1.0;
        for (i, &d) in self.diagonal.iter().enumerate() {
            let coupling = if i == 0 {
                0.0
            } else {
                let e = self.off_diagonal[i - 1];
                e * e / pivot
            };
            pivot = d - lambda - coupling;
            if pivot == 0.0 {
                pivot = -f64::EPSILON * (d.abs() + lambda.abs()).max(f64::MIN_POSITIVE);
            }
            if pivot < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let mut r = 0.0;
            if i > 0 {
                r += self.off_diagonal[i - 1].abs();
            }
            if i + 1 < n {
                r += self.off_diagonal[i].abs();
            }
            lo = lo.min(self.diagonal[i] - r);
            hi = hi.max(self.diagonal[i] + r);
        }
        (lo, hi)
    }

    /// The `count` smallest eigenvalues, ascending.
    pub fn lowest_eigenvalues(&self, count: usize) -> Vec<f64> {
        let count = count.min(self.len());
        let (glo, ghi) = self.gershgorin();
        (0..count)
            .map(|j| {
                let (mut lo, mut hi) = (glo, ghi);
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if mid <= lo || mid >= hi {
                        break;
                    }
                    if self.count_below(mid) > j {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                0.5 * (lo + hi)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    #[test]
    fn matches_dense_symmetric_eigen() {
        let d = vec![2.0, -1.0, 0.5, 3.0, 1.5, -0.25];
        let e = vec![0.7, -1.2, 0.3, 0.9, -0.4];
        let t = SymmetricTridiagonal::new(d.clone(), e.clone());
        let mut dense = DMatrix::<f64>::zeros(6, 6);
        for i in 0..6 {
            dense[(i, i)] = d[i];
            if i < 5 {
                dense[(i, i + 1)] = e[i];
                dense[(i + 1, i)] = e[i];
            }
        }
        let mut reference: Vec<f64> = dense.symmetric_eigenvalues().iter().copied().collect();
        reference.sort_by(f64::total_cmp);
        let ours = t.lowest_eigenvalues(6);
        for (a, b) in ours.iter().zip(&reference) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn discrete_laplacian_spectrum() {
        // tridiag(-1, 2, -1) of size n: 2 - 2 cos(j pi / (n + 1))
        let n = 50;
        let t = SymmetricTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1]);
        let ev = t.lowest_eigenvalues(5);
        for (j, v) in ev.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((j + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((v - exact).abs() < 1e-13);
        }
    }
}
