//! Barycentric/Lagrange machinery for an affinely independent sample set
//! Θ = {x₁, …, x_{n+1}} and a query point x, plus the curvature matrix
//! G = Σ ℓᵢ xᵢxᵢᵀ, geometric region classification of (Θ, x), and the
//! query/sample swap reduction.
//!
//! Indexing convention: the query point is the extended index 0 with the
//! artificial Lagrange value ℓ₀ = −1; samples carry extended indices
//! 1..=n+1 (so `theta[i - 1]` backs extended index `i`).

use crate::linalg::{
    self, dot, lu_factor, norm, sub, sym_eigen, EigenDecomposition, LinalgError, Matrix,
};
use thiserror::Error;

/// Lagrange values with |ℓᵢ| at or below `1e-9·(1 + max|ℓ|)` are treated
/// as zero; region boundaries are reported, not guessed.
const ZERO_ELL_TOL: f64 = 1e-9;
/// Relative tolerance for the sign of region-deciding inequalities.
const REGION_SIGN_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("sample set is affinely dependent or numerically degenerate: {0}")]
    DegenerateSampleSet(String),
    #[error("swap at sample {k} is degenerate: {reason}")]
    DegenerateSwap { k: usize, reason: String },
    #[error("region classification is ambiguous: {0} is within tolerance of zero")]
    AmbiguousRegion(String),
    #[error("a Lagrange value is within tolerance of zero; the signed partition is undefined")]
    ZeroLagrangeValue,
    #[error("partition matrix Y₋P₋ is singular beyond the conditioning threshold")]
    SingularPartition,
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
}

impl From<LinalgError> for GeometryError {
    fn from(e: LinalgError) -> Self {
        GeometryError::DegenerateSampleSet(e.to_string())
    }
}

/// A sample set Θ, a query point x, and the gradient Lipschitz constant ν.
#[derive(Debug, Clone, PartialEq)]
pub struct InterpolationInstance {
    theta: Vec<Vec<f64>>,
    x: Vec<f64>,
    nu: f64,
}

impl InterpolationInstance {
    pub fn new(theta: Vec<Vec<f64>>, x: Vec<f64>, nu: f64) -> Result<Self, GeometryError> {
        let n = x.len();
        if n == 0 {
            return Err(GeometryError::InvalidInstance("dimension is zero".into()));
        }
        if theta.len() != n + 1 {
            return Err(GeometryError::InvalidInstance(format!(
                "need n+1 = {} sample points, got {}",
                n + 1,
                theta.len()
            )));
        }
        if theta.iter().any(|p| p.len() != n) {
            return Err(GeometryError::InvalidInstance(
                "sample point dimension mismatch".into(),
            ));
        }
        if !(nu > 0.0 && nu.is_finite()) {
            return Err(GeometryError::InvalidInstance(format!(
                "nu must be a positive finite real, got {nu}"
            )));
        }
        if !x.iter().all(|v| v.is_finite())
            || !theta.iter().all(|p| p.iter().all(|v| v.is_finite()))
        {
            return Err(GeometryError::InvalidInstance(
                "coordinates must be finite".into(),
            ));
        }
        let inst = InterpolationInstance { theta, x, nu };
        // Affine independence: Φ = [1 Y] must be nonsingular.
        lu_factor(&inst.phi_transpose())?;
        Ok(inst)
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    /// Number of sample points, n + 1.
    pub fn num_samples(&self) -> usize {
        self.theta.len()
    }

    pub fn theta(&self) -> &[Vec<f64>] {
        &self.theta
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    /// Same instance with a different query point.
    pub fn with_x(&self, x: Vec<f64>) -> Result<Self, GeometryError> {
        InterpolationInstance::new(self.theta.clone(), x, self.nu)
    }

    /// Point by extended index: 0 is the query point, 1..=n+1 the samples.
    pub fn point(&self, ext: usize) -> &[f64] {
        if ext == 0 {
            &self.x
        } else {
            &self.theta[ext - 1]
        }
    }

    /// Φᵀ where Φ = [1 Y] and row i of Y is xᵢ − x.
    fn phi_transpose(&self) -> Matrix {
        let n = self.dim();
        Matrix::from_fn(n + 1, n + 1, |i, j| {
            if i == 0 {
                1.0
            } else {
                self.theta[j][i - 1] - self.x[i - 1]
            }
        })
    }

    /// ∞-norm condition number of Φᵀ; large values flag near-degeneracy.
    pub fn condition(&self) -> Result<f64, GeometryError> {
        Ok(lu_factor(&self.phi_transpose())?.condition_inf())
    }
}

/// Lagrange values at the query point together with the signed partition.
#[derive(Debug, Clone)]
pub struct BarycentricData {
    /// ℓ₀..ℓ_{n+1} with ℓ₀ = −1 exactly.
    ell: Vec<f64>,
    /// Extended sample indices sorted by descending ℓ (ties by index).
    perm: Vec<usize>,
    /// Extended indices with ℓ above the zero tolerance, descending ℓ.
    i_plus: Vec<usize>,
    /// Extended indices with ℓ below −tolerance, descending ℓ, plus 0 first.
    i_minus: Vec<usize>,
    /// Extended indices with |ℓ| at or below the zero tolerance.
    i_zero: Vec<usize>,
    zero_tol: f64,
}

impl BarycentricData {
    pub fn ell(&self, ext: usize) -> f64 {
        self.ell[ext]
    }

    pub fn ells(&self) -> &[f64] {
        &self.ell
    }

    /// ℓ₁..ℓ_{n+1} (sample values only, original order).
    pub fn sample_ells(&self) -> &[f64] {
        &self.ell[1..]
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn i_plus(&self) -> &[usize] {
        &self.i_plus
    }

    pub fn i_minus(&self) -> &[usize] {
        &self.i_minus
    }

    pub fn i_zero(&self) -> &[usize] {
        &self.i_zero
    }

    pub fn zero_tol(&self) -> f64 {
        self.zero_tol
    }

    /// Σ_{i=1..n+1} |ℓᵢ|
    pub fn abs_sum(&self) -> f64 {
        self.ell[1..].iter().map(|l| l.abs()).sum()
    }
}

/// The matrix G = Σ_{i=0..n+1} ℓᵢ xᵢxᵢᵀ with its eigendecomposition and
/// inertia. G is assembled in the recentred form Yᵀdiag(ℓ)Y, which equals
/// the defining sum for every recentring point.
#[derive(Debug, Clone)]
pub struct CurvatureSpectrum {
    pub g: Matrix,
    pub eig: EigenDecomposition,
    pub n_pos: usize,
    pub n_neg: usize,
    pub n_zero: usize,
}

/// Geometric position of the query point relative to the sample set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegionClass {
    /// x ∈ conv(Θ): all ℓᵢ ≥ −tol.
    InsideHull,
    /// Exactly one positive ℓ; `apex` is its extended index.
    SingleCone { apex: usize },
    /// The μ certificate passes; the quadratic eigenvalue bound is sharp.
    QuadSharpZone,
    /// Bivariate obtuse triangle zone; `labeling` maps roles (1,2,3) of the
    /// canonical hypotheses to extended sample indices.
    BivariateTriangleZone { labeling: [usize; 3] },
    /// Bivariate obtuse cone zone; resolved by swapping the query point
    /// with the sample in role 2 of `labeling`.
    BivariateConeZone { labeling: [usize; 3] },
    /// No sharpness certificate applies (n ≥ 3 outside the certified zone).
    Unresolved,
}

impl RegionClass {
    pub fn label(&self) -> &'static str {
        match self {
            RegionClass::InsideHull => "hull",
            RegionClass::SingleCone { .. } => "cone",
            RegionClass::QuadSharpZone => "quadratic",
            RegionClass::BivariateTriangleZone { .. } => "obtuse-triangle",
            RegionClass::BivariateConeZone { .. } => "obtuse-cone",
            RegionClass::Unresolved => "unresolved",
        }
    }
}

/// Lagrange polynomial values at x: solves Φᵀℓ = φ(0).
pub fn barycentric(inst: &InterpolationInstance) -> Result<BarycentricData, GeometryError> {
    let n = inst.dim();
    let lu = lu_factor(&inst.phi_transpose())?;
    let mut rhs = vec![0.0; n + 1];
    rhs[0] = 1.0;
    let sample_ells = lu.solve(&rhs);

    let mut ell = Vec::with_capacity(n + 2);
    ell.push(-1.0);
    ell.extend_from_slice(&sample_ells);

    // Residual checks of the defining identities (2.3)/(2.4).
    let sum: f64 = sample_ells.iter().sum();
    if (sum - 1.0).abs() > 1e-10 {
        return Err(GeometryError::DegenerateSampleSet(format!(
            "barycentric sum residual {:.3e}",
            (sum - 1.0).abs()
        )));
    }
    let coord_scale = (0..=n + 1)
        .map(|i| linalg::norm_inf_vec(inst.point(i)))
        .fold(1.0, f64::max);
    let ell_scale = ell.iter().fold(0.0f64, |m, l| m.max(l.abs()));
    for j in 0..n {
        let r: f64 = (0..=n + 1).map(|i| ell[i] * inst.point(i)[j]).sum();
        if r.abs() > 1e-9 * coord_scale * ell_scale.max(1.0) {
            return Err(GeometryError::DegenerateSampleSet(format!(
                "barycentric recentring residual {:.3e}",
                r.abs()
            )));
        }
    }

    let zero_tol = ZERO_ELL_TOL * (1.0 + ell_scale);
    let mut perm: Vec<usize> = (1..=n + 1).collect();
    perm.sort_by(|&i, &j| ell[j].partial_cmp(&ell[i]).unwrap());

    let mut i_plus = Vec::new();
    let mut i_minus = vec![0];
    let mut i_zero = Vec::new();
    for &i in &perm {
        if ell[i] > zero_tol {
            i_plus.push(i);
        } else if ell[i] < -zero_tol {
            i_minus.push(i);
        } else {
            i_zero.push(i);
        }
    }
    Ok(BarycentricData {
        ell,
        perm,
        i_plus,
        i_minus,
        i_zero,
        zero_tol,
    })
}

/// Gradients Dℓ₁..Dℓ_{n+1} of the affine Lagrange polynomials (constant
/// vectors; they sum to zero).
pub fn lagrange_gradients(inst: &InterpolationInstance) -> Result<Vec<Vec<f64>>, GeometryError> {
    let n = inst.dim();
    let lu = lu_factor(&inst.phi_transpose())?;
    let mut grads = vec![vec![0.0; n]; n + 1];
    for j in 0..n {
        let mut rhs = vec![0.0; n + 1];
        rhs[j + 1] = 1.0;
        let col = lu.solve(&rhs);
        for i in 0..=n {
            grads[i][j] = col[i];
        }
    }
    Ok(grads)
}

/// Assembles G = Yᵀdiag(ℓ)Y and its eigenstructure.
pub fn curvature(
    inst: &InterpolationInstance,
    bary: &BarycentricData,
) -> Result<CurvatureSpectrum, GeometryError> {
    let n = inst.dim();
    let mut g = Matrix::zeros(n, n);
    for i in 1..=n + 1 {
        let li = bary.ell(i);
        let d = sub(inst.point(i), inst.x());
        for r in 0..n {
            for c in 0..n {
                g.add_to(r, c, li * d[r] * d[c]);
            }
        }
    }
    // Symmetrize the accumulated products before the eigensolve.
    let g = Matrix::from_fn(n, n, |i, j| 0.5 * (g.get(i, j) + g.get(j, i)));
    let eig = sym_eigen(&g)?;
    let (n_pos, n_neg, n_zero) = eig.inertia(g.norm_inf());
    Ok(CurvatureSpectrum {
        g,
        eig,
        n_pos,
        n_neg,
        n_zero,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Sign {
    Pos,
    Neg,
    Zero,
}

fn sign_of(value: f64, scale: f64) -> Sign {
    let thr = REGION_SIGN_TOL * (1.0 + scale);
    if value > thr {
        Sign::Pos
    } else if value < -thr {
        Sign::Neg
    } else {
        Sign::Zero
    }
}

/// One bivariate zone test under a fixed role assignment.
struct ZoneSigns {
    obtuse: Sign,
    ell_b: Sign,
    ell_c: Sign,
    expr: Sign,
}

fn zone_signs(inst: &InterpolationInstance, bary: &BarycentricData, a: usize, b: usize, c: usize) -> ZoneSigns {
    let xa = inst.point(a);
    let xb = inst.point(b);
    let xc = inst.point(c);
    let vba = sub(xb, xa);
    let vca = sub(xc, xa);
    let vbc = sub(xb, xc);
    let vac = sub(xa, xc);
    let d1 = dot(&vba, &vca);
    let d2 = dot(&vbc, &vac);
    let la = bary.ell(a);
    let lb = bary.ell(b);
    let lc = bary.ell(c);
    let d1_scale = norm(&vba) * norm(&vca);
    let d2_scale = norm(&vbc) * norm(&vac);
    let expr = la * d1 - lc * d2;
    let expr_scale = la.abs() * d1_scale + lc.abs() * d2_scale;
    let ell_scale = bary.zero_tol() / ZERO_ELL_TOL - 1.0;
    ZoneSigns {
        obtuse: sign_of(d1, d1_scale),
        ell_b: sign_of(lb, ell_scale),
        ell_c: sign_of(lc, ell_scale),
        expr: sign_of(expr, expr_scale),
    }
}

/// Classifies the position of x: inside the hull, in a single-positive-ℓ
/// cone, in one of the bivariate obtuse zones (with the matched role
/// labeling), in the μ-certified zone, or unresolved.
pub fn classify_region(
    inst: &InterpolationInstance,
    bary: &BarycentricData,
    spectrum: &CurvatureSpectrum,
) -> Result<RegionClass, GeometryError> {
    let n = inst.dim();
    let tol = bary.zero_tol();

    if bary.sample_ells().iter().all(|&l| l >= -tol) {
        return Ok(RegionClass::InsideHull);
    }
    if bary.i_plus().len() == 1 {
        return Ok(RegionClass::SingleCone {
            apex: bary.i_plus()[0],
        });
    }

    if n == 2 {
        let perms: [[usize; 3]; 6] = [
            [1, 2, 3],
            [1, 3, 2],
            [2, 1, 3],
            [2, 3, 1],
            [3, 1, 2],
            [3, 2, 1],
        ];
        let mut near_boundary: Option<String> = None;
        for &[a, b, c] in &perms {
            let s = zone_signs(inst, bary, a, b, c);
            if s.obtuse != Sign::Neg {
                if s.obtuse == Sign::Zero {
                    near_boundary
                        .get_or_insert_with(|| format!("obtuse test at roles ({a},{b},{c})"));
                }
                continue;
            }
            // Triangle zone: ℓ_b > 0, ℓ_c < 0, expr < 0.
            match (s.ell_b, s.ell_c, s.expr) {
                (Sign::Pos, Sign::Neg, Sign::Neg) => {
                    return Ok(RegionClass::BivariateTriangleZone { labeling: [a, b, c] });
                }
                (Sign::Pos | Sign::Zero, Sign::Neg | Sign::Zero, Sign::Neg | Sign::Zero) => {
                    near_boundary.get_or_insert_with(|| {
                        format!("triangle-zone inequality at roles ({a},{b},{c})")
                    });
                }
                _ => {}
            }
            // Cone zone: ℓ_c > 0, expr > 0.
            match (s.ell_c, s.expr) {
                (Sign::Pos, Sign::Pos) => {
                    return Ok(RegionClass::BivariateConeZone { labeling: [a, b, c] });
                }
                (Sign::Pos | Sign::Zero, Sign::Pos | Sign::Zero) => {
                    near_boundary.get_or_insert_with(|| {
                        format!("cone-zone inequality at roles ({a},{b},{c})")
                    });
                }
                _ => {}
            }
        }
        if let Some(which) = near_boundary {
            return Err(GeometryError::AmbiguousRegion(which));
        }
    }

    match mu_weights(inst, bary, spectrum) {
        Ok(w) if w.all_nonneg() => Ok(RegionClass::QuadSharpZone),
        Ok(_) => Ok(RegionClass::Unresolved),
        Err(GeometryError::ZeroLagrangeValue) => Err(GeometryError::AmbiguousRegion(
            "a Lagrange value needed by the signed partition".into(),
        )),
        Err(e) => Err(e),
    }
}

/// First role labeling (in fixed enumeration order) under which the
/// instance strictly satisfies the canonical triangle-zone hypotheses.
pub fn match_triangle_zone(
    inst: &InterpolationInstance,
    bary: &BarycentricData,
) -> Option<[usize; 3]> {
    if inst.dim() != 2 {
        return None;
    }
    let perms: [[usize; 3]; 6] = [
        [1, 2, 3],
        [1, 3, 2],
        [2, 1, 3],
        [2, 3, 1],
        [3, 1, 2],
        [3, 2, 1],
    ];
    for &[a, b, c] in &perms {
        let s = zone_signs(inst, bary, a, b, c);
        if s.obtuse == Sign::Neg
            && s.ell_b == Sign::Pos
            && s.ell_c == Sign::Neg
            && s.expr == Sign::Neg
        {
            return Some([a, b, c]);
        }
    }
    None
}

/// Raw μ weights of the sharpness certificate: the matrix
/// M = diag(ℓ₊) Y₊ P₋ (Y₋P₋)⁻¹ completed with the query-point column
/// μᵢ₀ = ℓᵢ − Σ_{j≠0} μᵢⱼ.
#[derive(Debug, Clone)]
pub struct MuWeights {
    /// Extended indices in I₊, descending ℓ.
    pub rows: Vec<usize>,
    /// Extended indices in I₋; the query point 0 comes first.
    pub cols: Vec<usize>,
    /// |I₊| × |I₋| weights, column k pairing with `cols[k]`.
    pub entries: Matrix,
    pub min_entry: f64,
    pub max_abs: f64,
}

impl MuWeights {
    /// Pass test with the eigensolver-noise allowance.
    pub fn all_nonneg(&self) -> bool {
        self.min_entry >= -1e-9 * (1.0 + self.max_abs)
    }
}

pub fn mu_weights(
    inst: &InterpolationInstance,
    bary: &BarycentricData,
    spectrum: &CurvatureSpectrum,
) -> Result<MuWeights, GeometryError> {
    if !bary.i_zero().is_empty() {
        return Err(GeometryError::ZeroLagrangeValue);
    }
    let n = inst.dim();
    let plus = bary.i_plus().to_vec();
    let minus_samples: Vec<usize> = bary.i_minus().iter().copied().filter(|&i| i != 0).collect();
    let p = plus.len();
    let q = minus_samples.len();
    // Sylvester inertia must match the signed partition for the
    // eigenvector split to be well-defined.
    if spectrum.n_pos != p.saturating_sub(1) || spectrum.n_neg != q || spectrum.n_zero != 0 {
        return Err(GeometryError::SingularPartition);
    }

    let mut entries = Matrix::zeros(p, q + 1);
    if q > 0 {
        // P₋: eigenvector columns of the negative eigenvalues (the
        // spectrum is sorted descending, so they come last).
        let p_minus = Matrix::from_fn(n, q, |i, j| spectrum.eig.vectors.get(i, n - q + j));
        let y_rows = |idx: &[usize]| {
            Matrix::from_fn(idx.len(), n, |r, c| inst.point(idx[r])[c] - inst.x()[c])
        };
        let y_plus = y_rows(&plus);
        let y_minus = y_rows(&minus_samples);
        let a = y_minus.matmul(&p_minus); // q×q
        let b = y_plus.matmul(&p_minus); // p×q
        let lu = lu_factor(&a.transpose()).map_err(|_| GeometryError::SingularPartition)?;
        for r in 0..p {
            let mut rhs = vec![0.0; q];
            for j in 0..q {
                rhs[j] = bary.ell(plus[r]) * b.get(r, j);
            }
            let row = lu.solve(&rhs);
            for j in 0..q {
                entries.set(r, j + 1, row[j]);
            }
        }
    }
    // Query-point column closes the row sums to ℓᵢ.
    for r in 0..p {
        let s: f64 = (1..=q).map(|j| entries.get(r, j)).sum();
        entries.set(r, 0, bary.ell(plus[r]) - s);
    }

    let mut cols = vec![0usize];
    cols.extend_from_slice(&minus_samples);
    let min_entry = entries_iter(&entries).fold(f64::INFINITY, f64::min);
    let max_abs = entries_iter(&entries).fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(MuWeights {
        rows: plus,
        cols,
        entries,
        min_entry,
        max_abs,
    })
}

fn entries_iter(m: &Matrix) -> impl Iterator<Item = f64> + '_ {
    (0..m.rows()).flat_map(move |i| (0..m.cols()).map(move |j| m.get(i, j)))
}

/// Swaps the query point with sample `k` (extended index). Returns the
/// swapped instance and the scale −ℓ_k such that
/// sharp-bound(original) = scale · sharp-bound(swapped).
pub fn swap_instance(
    inst: &InterpolationInstance,
    k: usize,
) -> Result<(InterpolationInstance, f64), GeometryError> {
    if k == 0 || k > inst.num_samples() {
        return Err(GeometryError::DegenerateSwap {
            k,
            reason: "index out of range".into(),
        });
    }
    let bary = barycentric(inst)?;
    let ell_k = bary.ell(k);
    if ell_k.abs() <= bary.zero_tol() {
        return Err(GeometryError::DegenerateSwap {
            k,
            reason: format!("ℓ_k = {ell_k:.3e} is within tolerance of zero"),
        });
    }
    let mut theta = inst.theta().to_vec();
    let new_x = std::mem::replace(&mut theta[k - 1], inst.x().to_vec());
    let swapped = InterpolationInstance::new(theta, new_x, inst.nu()).map_err(|e| {
        GeometryError::DegenerateSwap {
            k,
            reason: e.to_string(),
        }
    })?;
    Ok((swapped, -ell_k))
}

/// Affine interpolant of `values` on `theta`: returns (constant, gradient).
pub fn affine_interpolant(
    theta: &[Vec<f64>],
    values: &[f64],
) -> Result<(f64, Vec<f64>), GeometryError> {
    let n = theta.len() - 1;
    assert_eq!(values.len(), n + 1, "one value per sample point");
    let a = Matrix::from_fn(n + 1, n + 1, |i, j| if j == 0 { 1.0 } else { theta[i][j - 1] });
    let sol = linalg::solve(&a, values)?;
    Ok((sol[0], sol[1..].to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn unit_triangle(x: [f64; 2]) -> InterpolationInstance {
        InterpolationInstance::new(
            vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![0.0, 0.0]],
            x.to_vec(),
            1.0,
        )
        .unwrap()
    }

    /// Θ = {(−0.3,1), (−1.1,−0.5), (1,0)} — the worked bivariate example
    /// used throughout the tests.
    pub(crate) fn acute_triangle(x: [f64; 2]) -> InterpolationInstance {
        InterpolationInstance::new(
            vec![vec![-0.3, 1.0], vec![-1.1, -0.5], vec![1.0, 0.0]],
            x.to_vec(),
            1.0,
        )
        .unwrap()
    }

    #[test]
    fn barycentric_at_sample_point() {
        let bary = barycentric(&unit_triangle([0.0, 0.0])).unwrap();
        assert_eq!(bary.ell(0), -1.0);
        assert_abs_diff_eq!(bary.ell(1), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(bary.ell(2), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(bary.ell(3), 1.0, epsilon = 1e-14);
    }

    #[test]
    fn barycentric_midpoint() {
        let bary = barycentric(&unit_triangle([0.5, 0.5])).unwrap();
        assert_abs_diff_eq!(bary.ell(1), 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(bary.ell(2), 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(bary.ell(3), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn barycentric_outside() {
        // Hand solve of the 3×3 system for x = (1,1).
        let bary = barycentric(&unit_triangle([1.0, 1.0])).unwrap();
        assert_abs_diff_eq!(bary.ell(1), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(bary.ell(2), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(bary.ell(3), -1.0, epsilon = 1e-14);
    }

    #[test]
    fn lagrange_gradients_unit_triangle() {
        let grads = lagrange_gradients(&unit_triangle([0.3, 0.2])).unwrap();
        assert_abs_diff_eq!(grads[0][0], 1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(grads[0][1], 0.0, epsilon = 1e-13);
        assert_abs_diff_eq!(grads[1][0], 0.0, epsilon = 1e-13);
        assert_abs_diff_eq!(grads[1][1], 1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(grads[2][0], -1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(grads[2][1], -1.0, epsilon = 1e-13);
    }

    #[test]
    fn gradients_sum_to_zero_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..=6);
            let inst = random_instance(&mut rng, n);
            let grads = lagrange_gradients(&inst).unwrap();
            for j in 0..n {
                let s: f64 = grads.iter().map(|g| g[j]).sum();
                assert!(s.abs() <= 1e-9, "gradient sum {s:.3e}");
            }
        }
    }

    #[test]
    fn curvature_positive_semidefinite_inside_hull() {
        let inst = acute_triangle([0.0, 0.2]);
        let bary = barycentric(&inst).unwrap();
        let spec = curvature(&inst, &bary).unwrap();
        assert_eq!(spec.n_neg, 0);
    }

    #[test]
    fn curvature_regular_simplex_reflection_point() {
        // Equilateral triangle with circumradius 1; reflecting the top
        // vertex lands at (0,−2) with ℓ = (1, 1, −1).
        let s3 = 3.0f64.sqrt();
        let inst = InterpolationInstance::new(
            vec![
                vec![-s3 / 2.0, -0.5],
                vec![s3 / 2.0, -0.5],
                vec![0.0, 1.0],
            ],
            vec![0.0, -2.0],
            1.0,
        )
        .unwrap();
        let bary = barycentric(&inst).unwrap();
        assert_abs_diff_eq!(bary.ell(1), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(bary.ell(2), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(bary.ell(3), -1.0, epsilon = 1e-12);
        let spec = curvature(&inst, &bary).unwrap();
        // Eigenvalue multiset (2(n+1)/n²)·{−(n+1), 1} = {−4.5, 1.5}.
        assert_abs_diff_eq!(spec.eig.values[0], 1.5, epsilon = 1e-10);
        assert_abs_diff_eq!(spec.eig.values[1], -4.5, epsilon = 1e-10);
    }

    #[test]
    fn curvature_inertia_worked_example() {
        // ℓ = (74/55, −72/55, 53/55) at x = (2,2): partition sizes give
        // inertia (1,1).
        let inst = acute_triangle([2.0, 2.0]);
        let bary = barycentric(&inst).unwrap();
        assert_abs_diff_eq!(bary.ell(1), 74.0 / 55.0, epsilon = 1e-12);
        assert_abs_diff_eq!(bary.ell(2), -72.0 / 55.0, epsilon = 1e-12);
        assert_abs_diff_eq!(bary.ell(3), 53.0 / 55.0, epsilon = 1e-12);
        let spec = curvature(&inst, &bary).unwrap();
        assert_eq!((spec.n_pos, spec.n_neg), (1, 1));
    }

    #[test]
    fn classify_centroid_inside_hull() {
        let inst = acute_triangle([-0.4 / 3.0, 0.5 / 3.0]);
        let bary = barycentric(&inst).unwrap();
        let spec = curvature(&inst, &bary).unwrap();
        assert_eq!(
            classify_region(&inst, &bary, &spec).unwrap(),
            RegionClass::InsideHull
        );
    }

    #[test]
    fn classify_single_cone() {
        let inst = unit_triangle([2.0, -0.5]);
        let bary = barycentric(&inst).unwrap();
        assert_abs_diff_eq!(bary.ell(1), 2.0, epsilon = 1e-13);
        assert_abs_diff_eq!(bary.ell(2), -0.5, epsilon = 1e-13);
        assert_abs_diff_eq!(bary.ell(3), -0.5, epsilon = 1e-13);
        let spec = curvature(&inst, &bary).unwrap();
        assert_eq!(
            classify_region(&inst, &bary, &spec).unwrap(),
            RegionClass::SingleCone { apex: 1 }
        );
    }

    /// Obtuse triangle used for the zone tests; the obtuse angle sits at
    /// the first vertex.
    pub(crate) fn obtuse_triangle(x: [f64; 2]) -> InterpolationInstance {
        InterpolationInstance::new(
            vec![vec![0.0, 0.0], vec![2.0, 1.8], vec![-2.0, 0.0]],
            x.to_vec(),
            1.0,
        )
        .unwrap()
    }

    #[test]
    fn classify_obtuse_zones() {
        // One interior point of each of the four shaded areas, left to
        // right; Lagrange signs checked by hand.
        let cases = [
            ([-3.0, 0.5], "obtuse-cone"),
            ([-0.8, -0.3], "obtuse-triangle"),
            ([1.5, 0.5], "obtuse-triangle"),
            ([2.5, 2.8], "obtuse-cone"),
        ];
        for (x, expected) in cases {
            let inst = obtuse_triangle(x);
            let bary = barycentric(&inst).unwrap();
            let spec = curvature(&inst, &bary).unwrap();
            let region = classify_region(&inst, &bary, &spec).unwrap();
            assert_eq!(region.label(), expected, "at x = {x:?}");
        }
        // The canonical case matches the identity labeling.
        let inst = obtuse_triangle([1.5, 0.5]);
        let bary = barycentric(&inst).unwrap();
        let spec = curvature(&inst, &bary).unwrap();
        assert_eq!(
            classify_region(&inst, &bary, &spec).unwrap(),
            RegionClass::BivariateTriangleZone { labeling: [1, 2, 3] }
        );
    }

    #[test]
    fn classify_interior_points_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let inst0 = acute_triangle([0.0, 0.0]);
        for _ in 0..1000 {
            // Random convex combination of the vertices.
            let mut w = [0.0f64; 3];
            let mut s = 0.0;
            for v in w.iter_mut() {
                *v = rng.gen_range(0.01..1.0);
                s += *v;
            }
            let x: Vec<f64> = (0..2)
                .map(|j| {
                    (0..3)
                        .map(|i| w[i] / s * inst0.theta()[i][j])
                        .sum::<f64>()
                })
                .collect();
            let inst = inst0.with_x(x).unwrap();
            let bary = barycentric(&inst).unwrap();
            let spec = curvature(&inst, &bary).unwrap();
            assert_eq!(
                classify_region(&inst, &bary, &spec).unwrap(),
                RegionClass::InsideHull
            );
        }
    }

    #[test]
    fn swap_scale_and_roundtrip() {
        let inst = unit_triangle([1.0, 1.0]);
        let (swapped, scale) = swap_instance(&inst, 3).unwrap();
        assert_abs_diff_eq!(scale, 1.0, epsilon = 1e-13);
        assert_eq!(swapped.x(), &[0.0, 0.0]);
        let (back, scale2) = swap_instance(&swapped, 3).unwrap();
        assert_eq!(back, inst);
        assert_abs_diff_eq!(scale * scale2, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn swap_rejects_zero_ell() {
        // ℓ₃ = 0 at the midpoint of the opposite edge.
        let inst = unit_triangle([0.5, 0.5]);
        assert!(matches!(
            swap_instance(&inst, 3),
            Err(GeometryError::DegenerateSwap { .. })
        ));
    }

    #[test]
    fn degenerate_sample_set_rejected() {
        let r = InterpolationInstance::new(
            vec![vec![0.0, 0.0], vec![1.0, 1.0], vec![2.0, 2.0]],
            vec![0.5, 0.5],
            1.0,
        );
        assert!(matches!(r, Err(GeometryError::DegenerateSampleSet(_))));
    }

    pub(crate) fn random_instance(rng: &mut ChaCha8Rng, n: usize) -> InterpolationInstance {
        loop {
            let theta: Vec<Vec<f64>> = (0..n + 1)
                .map(|_| (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect())
                .collect();
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
            if let Ok(inst) = InterpolationInstance::new(theta, x, 1.0) {
                if inst.condition().unwrap() < 1e6 {
                    return inst;
                }
            }
        }
    }

    #[test]
    fn lagrange_identities_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(1..=10);
            let inst = random_instance(&mut rng, n);
            let bary = barycentric(&inst).unwrap();
            let sum: f64 = bary.sample_ells().iter().sum();
            assert!((sum - 1.0).abs() <= 1e-9);
            for j in 0..n {
                let r: f64 = (0..=n + 1)
                    .map(|i| bary.ell(i) * inst.point(i)[j])
                    .sum();
                assert!(r.abs() <= 1e-9 * (1.0 + bary.abs_sum()));
            }
        }
    }

    #[test]
    fn inertia_matches_partition_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut checked = 0;
        while checked < 200 {
            let n = rng.gen_range(2..=6);
            let inst = random_instance(&mut rng, n);
            let bary = barycentric(&inst).unwrap();
            let min_ell = bary
                .sample_ells()
                .iter()
                .fold(f64::INFINITY, |m, l| m.min(l.abs()));
            if min_ell <= 1e-6 {
                continue;
            }
            let spec = curvature(&inst, &bary).unwrap();
            assert_eq!(spec.n_pos, bary.i_plus().len() - 1);
            assert_eq!(spec.n_neg, bary.i_minus().len() - 1);
            checked += 1;
        }
    }

    #[test]
    fn swap_roundtrip_randomized() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let mut checked = 0;
        while checked < 100 {
            let inst = random_instance(&mut rng, 2);
            let bary = barycentric(&inst).unwrap();
            let k = rng.gen_range(1..=3);
            if bary.ell(k).abs() <= 1e-3 {
                continue;
            }
            let Ok((swapped, _)) = swap_instance(&inst, k) else {
                continue;
            };
            let (back, _) = swap_instance(&swapped, k).unwrap();
            for i in 0..=3 {
                for (u, v) in back.point(i).iter().zip(inst.point(i)) {
                    assert!((u - v).abs() <= 1e-12);
                }
            }
            checked += 1;
        }
    }

    #[test]
    fn eq_8_2_variance_identity_equilateral() {
        // Regular simplex (equilateral triangle, δ = 1): for any values aᵢ,
        // ‖Σ aᵢ Dℓᵢ‖² = (n/δ²)·(1/(n+1))·Σ(aᵢ − ā)².
        let s3 = 3.0f64.sqrt();
        let theta = vec![
            vec![0.0, 1.0],
            vec![-s3 / 2.0, -0.5],
            vec![s3 / 2.0, -0.5],
        ];
        let inst = InterpolationInstance::new(theta, vec![0.0, 0.0], 1.0).unwrap();
        let grads = lagrange_gradients(&inst).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let a: Vec<f64> = (0..3).map(|_| rng.gen_range(-2.0..2.0)).collect();
            let mut combo = vec![0.0; 2];
            for i in 0..3 {
                combo = linalg::add_scaled(&combo, a[i], &grads[i]);
            }
            let mean = a.iter().sum::<f64>() / 3.0;
            let var = a.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / 3.0;
            let lhs = dot(&combo, &combo);
            let rhs = 2.0 * var;
            assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
        }
    }
}
