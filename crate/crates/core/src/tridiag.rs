//! Eigen-solver for small real symmetric tridiagonal matrices.
//!
//! Eigenvalues come from Sturm-sequence bisection, which is deterministic
//! and accurate to a few ulps of the matrix norm. Eigenvectors of the
//! lowest eigenvalue come from inverse iteration on a slightly shifted,
//! positive definite `LDLᵀ` factorization.

/// Borrowed view of a symmetric tridiagonal matrix.
#[derive(Clone, Copy, Debug)]
pub struct SymTridiag<'a> {
    diag: &'a [f64],
    offdiag: &'a [f64],
}

impl<'a> SymTridiag<'a> {
    /// # Panics
    ///
    /// If `diag` is empty or `offdiag.len() + 1 != diag.len()`.
    pub fn new(diag: &'a [f64], offdiag: &'a [f64]) -> Self {
        assert!(!diag.is_empty(), "empty tridiagonal matrix");
        assert_eq!(offdiag.len() + 1, diag.len(), "off-diagonal length mismatch");
        Self { diag, offdiag }
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Infinity norm, which bounds the spectral radius.
    pub fn norm_inf(&self) -> f64 {
        (0..self.dim())
            .map(|i| {
                let left = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 };
                let right = self.offdiag.get(i).map_or(0.0, |e| e.abs());
                self.diag[i].abs() + left + right
            })
            .fold(0.0, f64::max)
    }

    fn gershgorin(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..self.dim() {
            let left = if i > 0 { self.offdiag[i - 1].abs() } else { 0.0 };
            let right = self.offdiag.get(i).map_or(0.0, |e| e.abs());
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        let pad = f64::EPSILON * self.norm_inf().max(1.0) * 4.0;
        (lo - pad, hi + pad)
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let pivmin = f64::MIN_POSITIVE
            * self
                .offdiag
                .iter()
                .map(|e| e * e)
                .fold(1.0, f64::max);
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.dim() {
            let e = self.offdiag[i - 1];
            q = self.diag[i] - x - e * e / q;
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `index`-th smallest eigenvalue (zero based).
    pub fn eigenvalue(&self, index: usize) -> f64 {
        assert!(index < self.dim());
        if self.dim() == 1 {
            return self.diag[0];
        }
        let (mut lo, mut hi) = self.gershgorin();
        for _ in 0..256 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// All eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.eigenvalue(i)).collect()
    }

    pub fn lowest_eigenvalue(&self) -> f64 {
        self.eigenvalue(0)
    }

    /// `y = T x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        assert_eq!(x.len(), n);
        (0..n)
            .map(|i| {
                let mut y = self.diag[i] * x[i];
                if i > 0 {
                    y += self.offdiag[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    y += self.offdiag[i] * x[i + 1];
                }
                y
            })
            .collect()
    }

    /// Euclidean norm of `T x − value · x`.
    pub fn residual(&self, value: f64, x: &[f64]) -> f64 {
        self.apply(x)
            .iter()
            .zip(x)
            .map(|(y, xi)| (y - value * xi).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Lowest eigenvalue and a unit eigenvector.
    ///
    /// The vector is oriented so that its entries sum to a positive number.
    /// When an off-diagonal entry vanishes the matrix splits into blocks; the
    /// eigenvector then lives in the first block attaining the minimum, which
    /// keeps the choice deterministic for degenerate spectra.
    pub fn lowest_eigenpair(&self) -> (f64, Vec<f64>) {
        let n = self.dim();
        let mut best: Option<(f64, usize, usize)> = None;
        let mut start = 0;
        for end in 1..=n {
            if end == n || self.offdiag[end - 1] == 0.0 {
                let block = SymTridiag::new(&self.diag[start..end], &self.offdiag[start..end - 1]);
                let value = block.lowest_eigenvalue();
                if best.is_none_or(|(b, _, _)| value < b) {
                    best = Some((value, start, end));
                }
                start = end;
            }
        }
        let (value, start, end) = best.expect("at least one block");
        let block = SymTridiag::new(&self.diag[start..end], &self.offdiag[start..end - 1]);
        let mut vector = vec![0.0; n];
        vector[start..end].copy_from_slice(&block.connected_lowest_vector(value));
        (value, vector)
    }

    /// Inverse iteration for an irreducible matrix.
    fn connected_lowest_vector(&self, value: f64) -> Vec<f64> {
        let n = self.dim();
        if n == 1 {
            return vec![1.0];
        }
        let scale = self.norm_inf().max(f64::MIN_POSITIVE);
        let shift = value - 64.0 * f64::EPSILON * scale;
        let mut x = vec![1.0 / (n as f64).sqrt(); n];
        for _ in 0..8 {
            x = self.solve_shifted(shift, &x, scale);
            normalize(&mut x);
            if self.residual(value, &x) <= 1e-13 * scale {
                break;
            }
        }
        if x.iter().sum::<f64>() < 0.0 {
            x.iter_mut().for_each(|v| *v = -*v);
        }
        x
    }

    /// Solves `(T − shift) y = b` by `LDLᵀ` without pivoting. `T − shift`
    /// is positive definite up to rounding when `shift` sits below the
    /// spectrum; tiny pivots are floored to keep the solve finite.
    fn solve_shifted(&self, shift: f64, b: &[f64], scale: f64) -> Vec<f64> {
        let n = self.dim();
        let floor = f64::EPSILON * f64::EPSILON * scale;
        let mut pivots = Vec::with_capacity(n);
        let mut lower = Vec::with_capacity(n.saturating_sub(1));
        let mut d = self.diag[0] - shift;
        if d.abs() < floor {
            d = floor;
        }
        pivots.push(d);
        for i in 1..n {
            let l = self.offdiag[i - 1] / pivots[i - 1];
            lower.push(l);
            let mut d = self.diag[i] - shift - l * self.offdiag[i - 1];
            if d.abs() < floor {
                d = floor;
            }
            pivots.push(d);
        }
        let mut y = b.to_vec();
        for i in 1..n {
            y[i] -= lower[i - 1] * y[i - 1];
        }
        for i in 0..n {
            y[i] /= pivots[i];
        }
        for i in (0..n - 1).rev() {
            y[i] -= lower[i] * y[i + 1];
        }
        y
    }
}

fn normalize(x: &mut [f64]) {
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    x.iter_mut().for_each(|v| *v /= norm);
}
