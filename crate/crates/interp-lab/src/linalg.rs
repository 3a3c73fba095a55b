//! Minimal dense linear algebra: symmetric eigendecomposition (cyclic
//! Jacobi), Householder QR, LU solves with partial pivoting, and a
//! condition estimate. Everything here targets the small dense systems
//! the rest of the crate produces (n up to a few dozen), so clarity and
//! certified accuracy win over speed.

use thiserror::Error;

/// Maximum number of Jacobi sweeps before giving up.
const JACOBI_MAX_SWEEPS: usize = 100;
/// Convergence: off-diagonal Frobenius norm below this times ‖A‖F.
const JACOBI_OFF_TOL: f64 = 1e-12;
/// Relative asymmetry tolerated by [`sym_eigen`].
const SYMMETRY_TOL: f64 = 1e-12;
/// LU pivot threshold relative to ‖A‖∞.
const PIVOT_TOL: f64 = 1e-12;
/// Eigenvalue sign classification threshold relative to max(1, ‖A‖∞).
const INERTIA_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix is not symmetric: max asymmetry {asymmetry:.3e} exceeds tolerance")]
    NotSymmetric { asymmetry: f64 },
    #[error("Jacobi eigensolver did not converge within {JACOBI_MAX_SWEEPS} sweeps")]
    NoConvergence,
    #[error("matrix is singular: pivot {pivot:.3e} below threshold {threshold:.3e}")]
    SingularMatrix { pivot: f64, threshold: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Dense row-major matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Builds a matrix from row-major entries; panics on length mismatch.
    pub fn from_rows(rows: usize, cols: usize, entries: Vec<f64>) -> Self {
        assert_eq!(rows * cols, entries.len(), "entry count must be rows*cols");
        Matrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: f64) {
        self.entries[i * self.cols + j] += v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.add_to(i, j, a * other.get(k, j));
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len(), "matvec dimension mismatch");
        (0..self.rows).map(|i| dot(self.row(i), v)).collect()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn norm_frobenius(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Entrywise dot product Tr(AᵀB).
    pub fn frobenius_dot(&self, other: &Matrix) -> f64 {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        dot(&self.entries, &other.entries)
    }

    pub fn scaled(&self, s: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * s).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.cols, other.cols);
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|x| x.is_finite())
    }
}

/// Result of [`sym_eigen`]: `a == vectors · diag(values) · vectorsᵀ`,
/// eigenvalues sorted descending, eigenvectors as orthonormal columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

impl EigenDecomposition {
    /// Counts of (positive, negative, zero) eigenvalues with the sign
    /// threshold `1e-9·max(1, a_norm_inf)`.
    pub fn inertia(&self, a_norm_inf: f64) -> (usize, usize, usize) {
        let tau = INERTIA_TOL * a_norm_inf.max(1.0);
        let mut pos = 0;
        let mut neg = 0;
        let mut zero = 0;
        for &lambda in &self.values {
            if lambda > tau {
                pos += 1;
            } else if lambda < -tau {
                neg += 1;
            } else {
                zero += 1;
            }
        }
        (pos, neg, zero)
    }

    /// Sign threshold used by [`EigenDecomposition::inertia`].
    pub fn sign_threshold(a_norm_inf: f64) -> f64 {
        INERTIA_TOL * a_norm_inf.max(1.0)
    }
}

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
pub fn sym_eigen(a: &Matrix) -> Result<EigenDecomposition, LinalgError> {
    let n = a.rows();
    if a.cols() != n {
        return Err(LinalgError::DimensionMismatch(format!(
            "sym_eigen needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let scale = a.norm_inf().max(1.0);
    let mut asym = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            asym = asym.max((a.get(i, j) - a.get(j, i)).abs());
        }
    }
    if asym > SYMMETRY_TOL * scale {
        return Err(LinalgError::NotSymmetric { asymmetry: asym });
    }

    // Work on the symmetrized copy so rotations preserve symmetry exactly.
    let mut w = Matrix::from_fn(n, n, |i, j| 0.5 * (a.get(i, j) + a.get(j, i)));
    let mut v = Matrix::identity(n);
    let norm_f = w.norm_frobenius();
    let tol = JACOBI_OFF_TOL * norm_f.max(f64::MIN_POSITIVE);

    let mut converged = norm_f == 0.0 || off_diagonal_frobenius(&w) <= tol;
    for _ in 0..JACOBI_MAX_SWEEPS {
        if converged {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = w.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                // Skip rotations that cannot change the diagonal at f64 precision.
                let g = 100.0 * apq.abs();
                if w.get(p, p).abs() + g == w.get(p, p).abs()
                    && w.get(q, q).abs() + g == w.get(q, q).abs()
                {
                    w.set(p, q, 0.0);
                    w.set(q, p, 0.0);
                    continue;
                }
                let theta = (w.get(q, q) - w.get(p, p)) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                let app = w.get(p, p);
                let aqq = w.get(q, q);
                w.set(p, p, app - t * apq);
                w.set(q, q, aqq + t * apq);
                w.set(p, q, 0.0);
                w.set(q, p, 0.0);
                for i in 0..n {
                    if i != p && i != q {
                        let aip = w.get(i, p);
                        let aiq = w.get(i, q);
                        w.set(i, p, c * aip - s * aiq);
                        w.set(p, i, c * aip - s * aiq);
                        w.set(i, q, s * aip + c * aiq);
                        w.set(q, i, s * aip + c * aiq);
                    }
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, c * vip - s * viq);
                    v.set(i, q, s * vip + c * viq);
                }
            }
        }
        converged = off_diagonal_frobenius(&w) <= tol;
    }
    if !converged {
        return Err(LinalgError::NoConvergence);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w.get(j, j).partial_cmp(&w.get(i, i)).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| w.get(i, i)).collect();
    let vectors = Matrix::from_fn(n, n, |i, j| v.get(i, order[j]));
    Ok(EigenDecomposition { values, vectors })
}

fn off_diagonal_frobenius(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a.get(i, j) * a.get(i, j);
            }
        }
    }
    s.sqrt()
}

/// Thin Householder QR of a matrix with `rows >= cols`: returns `(q, r)`
/// with `q` having orthonormal columns and `r` upper triangular such that
/// `q·r == a`. Rank deficiency yields (near-)zero rows in `r`.
pub fn qr(a: &Matrix) -> (Matrix, Matrix) {
    let m = a.rows();
    let n = a.cols();
    assert!(m >= n, "qr requires rows >= cols");

    let mut r = a.clone();
    // Householder vectors, one per eliminated column.
    let mut reflectors: Vec<Vec<f64>> = Vec::with_capacity(n);
    for k in 0..n {
        let mut v: Vec<f64> = (k..m).map(|i| r.get(i, k)).collect();
        let alpha = dot(&v, &v).sqrt();
        if alpha == 0.0 {
            reflectors.push(vec![0.0; m - k]);
            continue;
        }
        let sign = if v[0] >= 0.0 { 1.0 } else { -1.0 };
        v[0] += sign * alpha;
        let vnorm2 = dot(&v, &v);
        if vnorm2 == 0.0 {
            reflectors.push(vec![0.0; m - k]);
            continue;
        }
        // Apply I - 2vvᵀ/(vᵀv) to the trailing block of r.
        for j in k..n {
            let mut proj = 0.0;
            for i in k..m {
                proj += v[i - k] * r.get(i, j);
            }
            let coeff = 2.0 * proj / vnorm2;
            for i in k..m {
                r.add_to(i, j, -coeff * v[i - k]);
            }
        }
        reflectors.push(v);
    }

    // Zero out the strictly-lower part the reflectors annihilated.
    let mut r_out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            r_out.set(i, j, r.get(i, j));
        }
    }

    // q = H_0 H_1 ... H_{n-1} restricted to the first n columns.
    let mut q = Matrix::zeros(m, n);
    for j in 0..n {
        q.set(j, j, 1.0);
    }
    for k in (0..n).rev() {
        let v = &reflectors[k];
        let vnorm2 = dot(v, v);
        if vnorm2 == 0.0 {
            continue;
        }
        for j in 0..n {
            let mut proj = 0.0;
            for i in k..m {
                proj += v[i - k] * q.get(i, j);
            }
            let coeff = 2.0 * proj / vnorm2;
            for i in k..m {
                q.add_to(i, j, -coeff * v[i - k]);
            }
        }
    }

    // Normalize to a nonnegative diagonal of r, making the factorization
    // unique for full-rank input.
    for k in 0..n {
        if r_out.get(k, k) < 0.0 {
            for j in k..n {
                r_out.set(k, j, -r_out.get(k, j));
            }
            for i in 0..m {
                q.set(i, k, -q.get(i, k));
            }
        }
    }
    (q, r_out)
}

/// LU factorization with partial pivoting, reusable for several
/// right-hand sides (and for the condition estimate).
#[derive(Debug, Clone)]
pub struct LuFactors {
    lu: Matrix,
    perm: Vec<usize>,
    norm_inf: f64,
}

pub fn lu_factor(a: &Matrix) -> Result<LuFactors, LinalgError> {
    let n = a.rows();
    if a.cols() != n {
        return Err(LinalgError::DimensionMismatch(format!(
            "lu_factor needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let norm_inf = a.norm_inf();
    let threshold = PIVOT_TOL * norm_inf;
    let mut lu = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        let mut pivot_row = k;
        let mut pivot_val = lu.get(k, k).abs();
        for i in (k + 1)..n {
            let v = lu.get(i, k).abs();
            if v > pivot_val {
                pivot_val = v;
                pivot_row = i;
            }
        }
        if pivot_val <= threshold {
            return Err(LinalgError::SingularMatrix {
                pivot: pivot_val,
                threshold,
            });
        }
        if pivot_row != k {
            for j in 0..n {
                let tmp = lu.get(k, j);
                lu.set(k, j, lu.get(pivot_row, j));
                lu.set(pivot_row, j, tmp);
            }
            perm.swap(k, pivot_row);
        }
        let pivot = lu.get(k, k);
        for i in (k + 1)..n {
            let factor = lu.get(i, k) / pivot;
            lu.set(i, k, factor);
            for j in (k + 1)..n {
                lu.add_to(i, j, -factor * lu.get(k, j));
            }
        }
    }
    Ok(LuFactors {
        lu,
        perm,
        norm_inf,
    })
}

impl LuFactors {
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.lu.rows();
        assert_eq!(b.len(), n, "rhs length mismatch");
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu.get(i, j) * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in (i + 1)..n {
                s -= self.lu.get(i, j) * x[j];
            }
            x[i] = s / self.lu.get(i, i);
        }
        x
    }

    /// ∞-norm condition number via the explicit inverse (fine at these sizes).
    pub fn condition_inf(&self) -> f64 {
        let n = self.lu.rows();
        let mut inv_norm = 0.0f64;
        let mut rows_abs_sum = vec![0.0f64; n];
        for j in 0..n {
            let mut e = vec![0.0; n];
            e[j] = 1.0;
            let col = self.solve(&e);
            for i in 0..n {
                rows_abs_sum[i] += col[i].abs();
            }
        }
        for s in rows_abs_sum {
            inv_norm = inv_norm.max(s);
        }
        self.norm_inf * inv_norm
    }
}

/// Solves `a·x = b` with partial pivoting.
pub fn solve(a: &Matrix, b: &[f64]) -> Result<Vec<f64>, LinalgError> {
    Ok(lu_factor(a)?.solve(b))
}

// Small vector helpers shared across the crate.

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

/// `a + s·b`
pub fn add_scaled(a: &[f64], s: f64, b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + s * y).collect()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    norm(&sub(a, b))
}

pub fn norm_inf_vec(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn reconstruct(eig: &EigenDecomposition) -> Matrix {
        let n = eig.values.len();
        let lambda = Matrix::from_fn(n, n, |i, j| if i == j { eig.values[i] } else { 0.0 });
        eig.vectors.matmul(&lambda).matmul(&eig.vectors.transpose())
    }

    #[test]
    fn eigen_identity() {
        let eig = sym_eigen(&Matrix::identity(3)).unwrap();
        for v in &eig.values {
            assert_abs_diff_eq!(*v, 1.0, epsilon = 1e-12);
        }
        let qtq = eig.vectors.transpose().matmul(&eig.vectors);
        assert!(qtq.sub(&Matrix::identity(3)).max_abs() <= 1e-10);
    }

    #[test]
    fn eigen_diagonal() {
        let a = Matrix::from_rows(2, 2, vec![2.0, 0.0, 0.0, -3.0]);
        let eig = sym_eigen(&a).unwrap();
        assert_abs_diff_eq!(eig.values[0], 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eig.values[1], -3.0, epsilon = 1e-12);
    }

    #[test]
    fn eigen_exchange_matrix() {
        // Characteristic polynomial λ² − 1 = 0 by hand.
        let a = Matrix::from_rows(2, 2, vec![0.0, 1.0, 1.0, 0.0]);
        let eig = sym_eigen(&a).unwrap();
        assert_abs_diff_eq!(eig.values[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eig.values[1], -1.0, epsilon = 1e-12);
    }

    #[test]
    fn eigen_rejects_asymmetric() {
        let a = Matrix::from_rows(2, 2, vec![1.0, 2.0, 0.0, 1.0]);
        assert!(matches!(
            sym_eigen(&a),
            Err(LinalgError::NotSymmetric { .. })
        ));
    }

    #[test]
    fn eigen_zero_matrix() {
        let eig = sym_eigen(&Matrix::zeros(3, 3)).unwrap();
        assert!(eig.values.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn qr_identity() {
        let (q, r) = qr(&Matrix::identity(3));
        assert!(q.sub(&Matrix::identity(3)).max_abs() <= 1e-12);
        assert!(r.sub(&Matrix::identity(3)).max_abs() <= 1e-12);
    }

    #[test]
    fn qr_column_vector() {
        // Euclidean norm of (3,4) by hand.
        let a = Matrix::from_rows(2, 1, vec![3.0, 4.0]);
        let (q, r) = qr(&a);
        assert_abs_diff_eq!(r.get(0, 0).abs(), 5.0, epsilon = 1e-12);
        let qr_prod = q.matmul(&r);
        assert!(qr_prod.sub(&a).max_abs() <= 1e-12);
    }

    #[test]
    fn qr_simplex_matrix_orthonormal() {
        // √(3/2)·I₃ − √(1/6)·𝟙𝟙ᵀ (n = 2, δ = 1 simplex construction input).
        let d = (3.0f64 / 2.0).sqrt();
        let o = (1.0f64 / 6.0).sqrt();
        let a = Matrix::from_fn(3, 3, |i, j| if i == j { d - o } else { -o });
        let (q, r) = qr(&a);
        let qtq = q.transpose().matmul(&q);
        assert!(qtq.sub(&Matrix::identity(3)).max_abs() <= 1e-10);
        assert!(q.matmul(&r).sub(&a).max_abs() <= 1e-10 * a.norm_inf().max(1.0));
    }

    #[test]
    fn solve_identity() {
        let x = solve(&Matrix::identity(2), &[1.0, 2.0]).unwrap();
        assert_abs_diff_eq!(x[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(x[1], 2.0, epsilon = 1e-14);
    }

    #[test]
    fn solve_diagonal() {
        let a = Matrix::from_rows(2, 2, vec![2.0, 0.0, 0.0, 4.0]);
        let x = solve(&a, &[2.0, 8.0]).unwrap();
        assert_abs_diff_eq!(x[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(x[1], 2.0, epsilon = 1e-14);
    }

    #[test]
    fn solve_hand_substitution() {
        let a = Matrix::from_rows(2, 2, vec![1.0, 1.0, 1.0, -1.0]);
        let x = solve(&a, &[3.0, 1.0]).unwrap();
        assert_abs_diff_eq!(x[0], 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(x[1], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn solve_detects_singular() {
        let a = Matrix::from_rows(2, 2, vec![1.0, 2.0, 2.0, 4.0]);
        assert!(matches!(
            solve(&a, &[1.0, 1.0]),
            Err(LinalgError::SingularMatrix { .. })
        ));
    }

    #[test]
    fn condition_of_identity_is_one() {
        let lu = lu_factor(&Matrix::identity(4)).unwrap();
        assert_abs_diff_eq!(lu.condition_inf(), 1.0, epsilon = 1e-12);
    }

    proptest! {
        #[test]
        fn eigen_trace_and_reconstruction(seed in 0u64..200) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(1..=8);
            let mut a = Matrix::zeros(n, n);
            for i in 0..n {
                for j in i..n {
                    let v: f64 = rng.gen_range(-2.0..2.0);
                    a.set(i, j, v);
                    a.set(j, i, v);
                }
            }
            let eig = sym_eigen(&a).unwrap();
            let trace: f64 = (0..n).map(|i| a.get(i, i)).sum();
            let sum: f64 = eig.values.iter().sum();
            prop_assert!((trace - sum).abs() <= 1e-9 * (1.0 + trace.abs()));
            let recon = reconstruct(&eig);
            prop_assert!(recon.sub(&a).max_abs() <= 1e-10 * a.norm_inf().max(1.0));
            let qtq = eig.vectors.transpose().matmul(&eig.vectors);
            prop_assert!(qtq.sub(&Matrix::identity(n)).max_abs() <= 1e-10);
            // Sorted descending.
            for k in 1..n {
                prop_assert!(eig.values[k - 1] >= eig.values[k]);
            }
        }

        #[test]
        fn solve_roundtrip_well_conditioned(seed in 0u64..200) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(1..=8);
            let a = Matrix::from_fn(n, n, |i, j| {
                if i == j { 4.0 + rng.gen_range(0.0..1.0) } else { rng.gen_range(-1.0..1.0) }
            });
            let lu = lu_factor(&a).unwrap();
            prop_assume!(lu.condition_inf() < 1e6);
            let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let b = a.matvec(&v);
            let x = lu.solve(&b);
            let err = norm_inf_vec(&sub(&x, &v));
            prop_assert!(err <= 1e-8 * (1.0 + norm_inf_vec(&v)));
        }

        #[test]
        fn qr_tall_matrices(seed in 0u64..200) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let n = rng.gen_range(1..=6);
            let m = n + rng.gen_range(0..4usize);
            let a = Matrix::from_fn(m, n, |_, _| rng.gen_range(-2.0..2.0));
            let (q, r) = qr(&a);
            prop_assert!(q.matmul(&r).sub(&a).max_abs() <= 1e-10 * a.norm_inf().max(1.0));
            // r strictly upper triangular below the diagonal.
            for i in 0..n {
                for j in 0..i {
                    prop_assert!(r.get(i, j).abs() <= 1e-12);
                }
            }
            let qtq = q.transpose().matmul(&q);
            prop_assert!(qtq.sub(&Matrix::identity(n)).max_abs() <= 1e-10);
        }
    }
}
