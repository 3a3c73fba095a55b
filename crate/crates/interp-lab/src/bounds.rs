//! Analytical upper bounds on the interpolation error |f̂(x) − f(x)| for
//! functions with ν-Lipschitz gradient, the μ sharpness certificate for
//! the quadratic eigenvalue bound, the bivariate sharp-bound dispatcher,
//! and the gradient-error bound.

use crate::geometry::{
    self, barycentric, curvature, BarycentricData, CurvatureSpectrum, GeometryError,
    InterpolationInstance, RegionClass,
};
use crate::linalg::{dot, norm, norm_inf_vec, sub, Matrix};
use crate::witness::WitnessFunction;
use thiserror::Error;

/// Residual allowance for the structural identities re-verified inside
/// the obtuse bound and the μ certificate.
const IDENTITY_TOL: f64 = 1e-9;
const CERTIFICATE_IDENTITY_TOL: f64 = 1e-7;

#[derive(Debug, Error)]
pub enum BoundsError {
    #[error("query point is outside the convex hull (min ℓ = {min_ell:.3e})")]
    OutsideHull { min_ell: f64 },
    #[error("a Lagrange value is within tolerance of zero; the signed partition is undefined")]
    ZeroLagrangeValue,
    #[error("partition matrix Y₋P₋ is singular beyond the conditioning threshold")]
    SingularPartition,
    #[error("hypothesis violated: {which}")]
    HypothesisViolated { which: String },
    #[error("region classification is ambiguous: {0}")]
    AmbiguousRegion(String),
    #[error("certificate identity residual {residual:.3e} exceeds tolerance")]
    CertificateIdentity { residual: f64 },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Which bound produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    AnchoredTaylor,
    WaldronHull,
    ConeSharp,
    QuadraticEigen,
    BivariateObtuse,
    Dispatcher,
}

impl Method {
    pub fn label(&self) -> &'static str {
        match self {
            Method::AnchoredTaylor => "anchored-taylor",
            Method::WaldronHull => "waldron-hull",
            Method::ConeSharp => "cone-sharp",
            Method::QuadraticEigen => "quadratic-eigen",
            Method::BivariateObtuse => "bivariate-obtuse",
            Method::Dispatcher => "dispatcher",
        }
    }
}

/// Sharpness status of a reported bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sharpness {
    /// Equals the worst achievable error; a witness is attached.
    ProvenSharp,
    /// Valid upper bound, not necessarily attained.
    UpperOnly,
    /// Achievable error (lower bound on the sharp value), possibly not
    /// an upper bound for all functions in the class.
    LowerOnly,
}

impl Sharpness {
    pub fn label(&self) -> &'static str {
        match self {
            Sharpness::ProvenSharp => "proven-sharp",
            Sharpness::UpperOnly => "upper-only",
            Sharpness::LowerOnly => "lower-only",
        }
    }
}

/// A bound value with its provenance and, when sharp, a witness.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub value: f64,
    pub method: Method,
    pub sharp: Sharpness,
    pub witness: Option<WitnessFunction>,
    /// Anchor point of the Taylor-style bounds or the intersection point
    /// of the bivariate obtuse construction.
    pub anchor_w: Option<Vec<f64>>,
}

/// Taylor-anchored bound (ν/2)(‖x−u‖² + Σ|ℓᵢ|‖xᵢ−u‖²) for any anchor u.
pub fn bound_anchored(
    inst: &InterpolationInstance,
    bary: &BarycentricData,
    u: &[f64],
) -> BoundReport {
    let nu = inst.nu();
    let mut s = dot(&sub(inst.x(), u), &sub(inst.x(), u));
    for i in 1..=inst.num_samples() {
        let d = sub(inst.point(i), u);
        s += bary.ell(i).abs() * dot(&d, &d);
    }
    BoundReport {
        value: 0.5 * nu * s,
        method: Method::AnchoredTaylor,
        sharp: Sharpness::UpperOnly,
        witness: None,
        anchor_w: Some(u.to_vec()),
    }
}

/// Anchored bound at its minimizing anchor w = (x + Σ|ℓᵢ|xᵢ)/(1 + Σ|ℓᵢ|).
/// Sharp inside the hull and in the single-positive-ℓ cones.
pub fn bound_improved(inst: &InterpolationInstance, bary: &BarycentricData) -> BoundReport {
    let n = inst.dim();
    let denom = 1.0 + bary.abs_sum();
    let mut w = inst.x().to_vec();
    for i in 1..=inst.num_samples() {
        let li = bary.ell(i).abs();
        for j in 0..n {
            w[j] += li * inst.point(i)[j];
        }
    }
    for wj in w.iter_mut() {
        *wj /= denom;
    }
    let mut report = bound_anchored(inst, bary, &w);
    let tol = bary.zero_tol();
    if bary.sample_ells().iter().all(|&l| l >= -tol) {
        report.sharp = Sharpness::ProvenSharp;
        report.witness = Some(WitnessFunction::QuadraticHalfNormPos { nu: inst.nu() });
    } else if bary.i_plus().len() == 1 {
        report.sharp = Sharpness::ProvenSharp;
        report.witness = Some(WitnessFunction::QuadraticHalfNormNeg { nu: inst.nu() });
    }
    report
}

/// Interpolation bound (ν/2)(Σℓᵢ‖xᵢ‖² − ‖x‖²) for x ∈ conv(Θ), assembled
/// in the recentred form (ν/2)Σℓᵢ‖xᵢ−x‖².
pub fn bound_waldron(
    inst: &InterpolationInstance,
    bary: &BarycentricData,
) -> Result<BoundReport, BoundsError> {
    let tol = bary.zero_tol();
    let min_ell = bary
        .sample_ells()
        .iter()
        .fold(f64::INFINITY, |m, &l| m.min(l));
    if min_ell < -tol {
        return Err(BoundsError::OutsideHull { min_ell });
    }
    let mut s = 0.0;
    for i in 1..=inst.num_samples() {
        let d = sub(inst.point(i), inst.x());
        s += bary.ell(i) * dot(&d, &d);
    }
    Ok(BoundReport {
        value: 0.5 * inst.nu() * s,
        method: Method::WaldronHull,
        sharp: Sharpness::ProvenSharp,
        witness: Some(WitnessFunction::QuadraticHalfNormPos { nu: inst.nu() }),
        anchor_w: Some(inst.x().to_vec()),
    })
}

/// Worst-case Hessian H* = ν·P·sign(Λ)·Pᵀ of the quadratic subproblem;
/// zero-classified eigenvalues map to zero.
pub fn hstar_symmetric(spectrum: &CurvatureSpectrum, nu: f64) -> Matrix {
    let n = spectrum.g.rows();
    let tau = crate::linalg::EigenDecomposition::sign_threshold(spectrum.g.norm_inf());
    let p = &spectrum.eig.vectors;
    let mut h = Matrix::zeros(n, n);
    for k in 0..n {
        let lambda = spectrum.eig.values[k];
        let s = if lambda > tau {
            nu
        } else if lambda < -tau {
            -nu
        } else {
            0.0
        };
        if s == 0.0 {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                h.add_to(i, j, s * p.get(i, k) * p.get(j, k));
            }
        }
    }
    h
}

/// Largest error achievable by a quadratic in the class:
/// (ν/2)Σ|λᵢ(G)| = G·H*/2. Returned as a lower bound until the μ
/// certificate upgrades it.
pub fn bound_quadratic(
    inst: &InterpolationInstance,
    spectrum: &CurvatureSpectrum,
) -> (BoundReport, Matrix) {
    let nu = inst.nu();
    let value = 0.5 * nu * spectrum.eig.values.iter().map(|l| l.abs()).sum::<f64>();
    let hstar = hstar_symmetric(spectrum, nu);
    let witness = WitnessFunction::QuadraticH {
        c: 0.0,
        g: vec![0.0; inst.dim()],
        h: hstar.clone(),
    };
    (
        BoundReport {
            value,
            method: Method::QuadraticEigen,
            sharp: Sharpness::LowerOnly,
            witness: Some(witness),
            anchor_w: None,
        },
        hstar,
    )
}

/// Nonnegative weights pairing positive- and negative-ℓ points; their
/// existence certifies sharpness of the quadratic eigenvalue bound.
#[derive(Debug, Clone)]
pub struct MuCertificate {
    /// Extended indices in I₊, row order of `mu`.
    pub rows: Vec<usize>,
    /// Extended indices in I₋ (query point first), column order of `mu`.
    pub cols: Vec<usize>,
    pub mu: Matrix,
    pub all_nonneg: bool,
    pub min_entry: f64,
}

/// Computes the μ weights and re-verifies the row/column sums and the
/// first-order pairing identities with H*.
pub fn certify_mu(
    inst: &InterpolationInstance,
    bary: &BarycentricData,
    spectrum: &CurvatureSpectrum,
) -> Result<MuCertificate, BoundsError> {
    let weights = geometry::mu_weights(inst, bary, spectrum).map_err(|e| match e {
        GeometryError::ZeroLagrangeValue => BoundsError::ZeroLagrangeValue,
        GeometryError::SingularPartition => BoundsError::SingularPartition,
        other => BoundsError::Geometry(other),
    })?;
    let mu = &weights.entries;
    let n = inst.dim();
    let nu = inst.nu();
    let coord_scale = (0..=inst.num_samples())
        .map(|i| norm_inf_vec(inst.point(i)))
        .fold(1.0, f64::max);
    let scale = (1.0 + weights.max_abs) * coord_scale.max(1.0);

    // Row sums Σ_j μᵢⱼ = ℓᵢ and column sums Σ_i μᵢⱼ = −ℓⱼ.
    let mut residual = 0.0f64;
    for (r, &i) in weights.rows.iter().enumerate() {
        let s: f64 = (0..mu.cols()).map(|c| mu.get(r, c)).sum();
        residual = residual.max((s - bary.ell(i)).abs());
    }
    for (c, &j) in weights.cols.iter().enumerate() {
        let s: f64 = (0..mu.rows()).map(|r| mu.get(r, c)).sum();
        residual = residual.max((s + bary.ell(j)).abs());
    }
    if residual > 1e-8 * scale {
        return Err(BoundsError::CertificateIdentity { residual });
    }

    // First-order identities: (νI−H*) pairs each i ∈ I₊ with its μ-mix of
    // I₋ points, and (νI+H*) the transpose pairing.
    let hstar = hstar_symmetric(spectrum, nu);
    let mut first_order = 0.0f64;
    for (r, &i) in weights.rows.iter().enumerate() {
        let mut v = vec![0.0; n];
        for (c, &j) in weights.cols.iter().enumerate() {
            for d in 0..n {
                v[d] += mu.get(r, c) * inst.point(j)[d];
            }
        }
        for d in 0..n {
            v[d] -= bary.ell(i) * inst.point(i)[d];
        }
        let hv = hstar.matvec(&v);
        for d in 0..n {
            first_order = first_order.max((nu * v[d] - hv[d]).abs());
        }
    }
    for (c, &j) in weights.cols.iter().enumerate() {
        let mut v = vec![0.0; n];
        for (r, &i) in weights.rows.iter().enumerate() {
            for d in 0..n {
                v[d] += mu.get(r, c) * inst.point(i)[d];
            }
        }
        for d in 0..n {
            v[d] += bary.ell(j) * inst.point(j)[d];
        }
        let hv = hstar.matvec(&v);
        for d in 0..n {
            first_order = first_order.max((nu * v[d] + hv[d]).abs());
        }
    }
    if first_order > CERTIFICATE_IDENTITY_TOL * nu.max(1.0) * scale {
        return Err(BoundsError::CertificateIdentity {
            residual: first_order,
        });
    }

    let all_nonneg = weights.all_nonneg();
    Ok(MuCertificate {
        rows: weights.rows,
        cols: weights.cols,
        mu: weights.entries,
        all_nonneg,
        min_entry: weights.min_entry,
    })
}

/// Data of the bivariate obtuse construction under a role labeling.
struct ObtusePieces {
    w: Vec<f64>,
    hstar: Matrix,
    value: f64,
}

/// Core of the obtuse bound: w of the intersection construction, the
/// asymmetric H* with eigenvectors x₂−x and x₁−x₃ (role indices), and
/// the value G·H*/2. Hypotheses are not checked here.
fn obtuse_pieces(
    inst: &InterpolationInstance,
    bary: &BarycentricData,
    labeling: [usize; 3],
) -> Result<ObtusePieces, BoundsError> {
    let [a, b, c] = labeling;
    let nu = inst.nu();
    let (la, lb, lc) = (bary.ell(a), bary.ell(b), bary.ell(c));
    let denom = 1.0 + la - lb + lc;
    if denom.abs() <= 1e-12 * (1.0 + la.abs() + lb.abs() + lc.abs()) {
        return Err(BoundsError::HypothesisViolated {
            which: "ℓ₁ + ℓ₃ vanishes; the intersection point w is undefined".into(),
        });
    }
    let w: Vec<f64> = (0..2)
        .map(|d| {
            (inst.x()[d] + la * inst.point(a)[d] - lb * inst.point(b)[d]
                + lc * inst.point(c)[d])
                / denom
        })
        .collect();

    // H* = P diag(ν, −ν) P⁻¹ with P = [x_b − x | x_a − x_c].
    let col1 = sub(inst.point(b), inst.x());
    let col2 = sub(inst.point(a), inst.point(c));
    let det = col1[0] * col2[1] - col2[0] * col1[1];
    if det.abs() <= 1e-12 * (norm(&col1) * norm(&col2)).max(1e-300) {
        return Err(BoundsError::HypothesisViolated {
            which: "eigenvector matrix P is singular".into(),
        });
    }
    // P diag(ν,−ν) P⁻¹ in closed form for the 2×2 case.
    let p = Matrix::from_rows(2, 2, vec![col1[0], col2[0], col1[1], col2[1]]);
    let p_inv = Matrix::from_rows(
        2,
        2,
        vec![
            col2[1] / det,
            -col2[0] / det,
            -col1[1] / det,
            col1[0] / det,
        ],
    );
    let d = Matrix::from_rows(2, 2, vec![nu, 0.0, 0.0, -nu]);
    let hstar = p.matmul(&d).matmul(&p_inv);

    // G·H*/2 with G in the recentred form.
    let mut g = Matrix::zeros(2, 2);
    for i in 1..=3 {
        let li = bary.ell(i);
        let dvec = sub(inst.point(i), inst.x());
        for r in 0..2 {
            for s in 0..2 {
                g.add_to(r, s, li * dvec[r] * dvec[s]);
            }
        }
    }
    let value = 0.5 * g.frobenius_dot(&hstar);

    // Internal identities of the construction: w splits both chords, and
    // H* acts as ±ν on the recentred points.
    let coord_scale = (0..=3).map(|i| norm_inf_vec(inst.point(i))).fold(1.0, f64::max);
    let idtol = IDENTITY_TOL * nu.max(1.0) * coord_scale * (1.0 + la.abs() + lb.abs() + lc.abs());
    for dim in 0..2 {
        let r1 = -(inst.x()[dim] - w[dim]) + lb * (inst.point(b)[dim] - w[dim]);
        let r2 = la * (inst.point(a)[dim] - w[dim]) + lc * (inst.point(c)[dim] - w[dim]);
        if r1.abs() > idtol || r2.abs() > idtol {
            return Err(BoundsError::CertificateIdentity {
                residual: r1.abs().max(r2.abs()),
            });
        }
    }
    for (i, sign) in [(0usize, 1.0), (b, 1.0), (a, -1.0), (c, -1.0)] {
        let r = sub(inst.point(i), &w);
        let hr = hstar.matvec(&r);
        for dim in 0..2 {
            if (hr[dim] - sign * nu * r[dim]).abs() > idtol {
                return Err(BoundsError::CertificateIdentity {
                    residual: (hr[dim] - sign * nu * r[dim]).abs(),
                });
            }
        }
    }
    Ok(ObtusePieces { w, hstar, value })
}

fn check_obtuse_hypotheses(
    inst: &InterpolationInstance,
    bary: &BarycentricData,
    labeling: [usize; 3],
) -> Result<(), BoundsError> {
    let [a, b, c] = labeling;
    let xa = inst.point(a);
    let xb = inst.point(b);
    let xc = inst.point(c);
    let d1 = dot(&sub(xb, xa), &sub(xc, xa));
    if d1 >= 0.0 {
        return Err(BoundsError::HypothesisViolated {
            which: format!("(x₂−x₁)·(x₃−x₁) = {d1:.6} must be negative"),
        });
    }
    if bary.ell(b) <= 0.0 {
        return Err(BoundsError::HypothesisViolated {
            which: format!("ℓ₂ = {:.6} must be positive", bary.ell(b)),
        });
    }
    if bary.ell(c) >= 0.0 {
        return Err(BoundsError::HypothesisViolated {
            which: format!("ℓ₃ = {:.6} must be negative", bary.ell(c)),
        });
    }
    let d2 = dot(&sub(xb, xc), &sub(xa, xc));
    let expr = bary.ell(a) * d1 - bary.ell(c) * d2;
    if expr >= 0.0 {
        return Err(BoundsError::HypothesisViolated {
            which: format!("ℓ₁[x₂−x₁]·[x₃−x₁] − ℓ₃[x₂−x₃]·[x₁−x₃] = {expr:.6} must be negative"),
        });
    }
    Ok(())
}

/// Sharp bound G·H*/2 for the bivariate obtuse triangle zone under the
/// given role labeling (extended sample indices for roles 1, 2, 3).
/// Returns the report together with the asymmetric H*.
pub fn bound_bivariate_obtuse(
    inst: &InterpolationInstance,
    bary: &BarycentricData,
    labeling: [usize; 3],
) -> Result<(BoundReport, Matrix), BoundsError> {
    assert_eq!(inst.dim(), 2, "the obtuse construction is bivariate");
    check_obtuse_hypotheses(inst, bary, labeling)?;
    let pieces = obtuse_pieces(inst, bary, labeling)?;
    let [a, _, c] = labeling;
    let witness = WitnessFunction::PiecewiseQuadratic {
        w: pieces.w.clone(),
        d: sub(inst.point(a), inst.point(c)),
        nu: inst.nu(),
    };
    Ok((
        BoundReport {
            value: pieces.value,
            method: Method::BivariateObtuse,
            sharp: Sharpness::ProvenSharp,
            witness: Some(witness),
            anchor_w: Some(pieces.w),
        },
        pieces.hstar,
    ))
}

/// Result of the bivariate dispatcher: the classified region and the
/// bound chosen for it.
#[derive(Debug, Clone)]
pub struct DispatchOutcome {
    pub region: RegionClass,
    pub report: BoundReport,
    /// True when the point sat on a region boundary and the max of the
    /// adjacent candidates was returned.
    pub boundary: bool,
}

impl DispatchOutcome {
    /// Region label for tabular output, with boundaries called out.
    pub fn label(&self) -> &'static str {
        if self.boundary {
            "boundary"
        } else {
            self.region.label()
        }
    }
}

/// Sharp-bound dispatcher for n = 2: picks the bound matching the
/// region of (Θ, x) and attaches its witness. On region boundaries both
/// candidates are computed and the larger is returned as upper-only.
pub fn dispatch(inst: &InterpolationInstance) -> Result<DispatchOutcome, BoundsError> {
    let bary = barycentric(inst)?;
    let spectrum = curvature(inst, &bary)?;
    match geometry::classify_region(inst, &bary, &spectrum) {
        Ok(region @ RegionClass::InsideHull) => {
            let report = bound_waldron(inst, &bary)?;
            Ok(DispatchOutcome { region, report, boundary: false })
        }
        Ok(region @ RegionClass::SingleCone { .. }) => {
            let mut report = bound_improved(inst, &bary);
            report.method = Method::ConeSharp;
            Ok(DispatchOutcome { region, report, boundary: false })
        }
        Ok(region @ RegionClass::QuadSharpZone) => {
            let (mut report, _) = bound_quadratic(inst, &spectrum);
            report.sharp = Sharpness::ProvenSharp;
            Ok(DispatchOutcome { region, report, boundary: false })
        }
        Ok(region @ RegionClass::BivariateTriangleZone { .. }) => {
            let RegionClass::BivariateTriangleZone { labeling } = region else {
                unreachable!()
            };
            let (report, _) = bound_bivariate_obtuse(inst, &bary, labeling)?;
            Ok(DispatchOutcome { region, report, boundary: false })
        }
        Ok(region @ RegionClass::BivariateConeZone { .. }) => {
            let RegionClass::BivariateConeZone { labeling } = region else {
                unreachable!()
            };
            let report = cone_zone_bound(inst, &bary, labeling)?;
            Ok(DispatchOutcome { region, report, boundary: false })
        }
        Ok(region @ RegionClass::Unresolved) => {
            // No sharpness certificate: fall back to the universal upper
            // bound tagged as such.
            let mut report = bound_improved(inst, &bary);
            report.method = Method::Dispatcher;
            report.sharp = Sharpness::UpperOnly;
            report.witness = None;
            Ok(DispatchOutcome { region, report, boundary: false })
        }
        Err(GeometryError::AmbiguousRegion(_)) => {
            let report = boundary_max(inst, &bary, &spectrum)?;
            Ok(DispatchOutcome {
                region: RegionClass::Unresolved,
                report,
                boundary: true,
            })
        }
        Err(e) => Err(e.into()),
    }
}

/// Sharp bound on |f̂(x) − f(x)| for a bivariate instance.
pub fn sharp_bound_bivariate(inst: &InterpolationInstance) -> Result<BoundReport, BoundsError> {
    assert_eq!(inst.dim(), 2, "the dispatcher covers the bivariate case");
    Ok(dispatch(inst)?.report)
}

/// Cone-zone reduction: swap the query point with a sample so the image
/// lies in the triangle zone, solve there, and rescale by |ℓ_k|.
fn cone_zone_bound(
    inst: &InterpolationInstance,
    bary: &BarycentricData,
    labeling: [usize; 3],
) -> Result<BoundReport, BoundsError> {
    // Several swaps can land in a triangle zone; all of them must agree
    // on the value. The role-2 sample (the cone vertex) is preferred.
    let mut matches: Vec<(usize, BoundReport)> = Vec::new();
    for k in 1..=3usize {
        let (swapped, scale) = match geometry::swap_instance(inst, k) {
            Ok(v) => v,
            Err(_) => continue,
        };
        let sbary = barycentric(&swapped)?;
        let Some(lab) = geometry::match_triangle_zone(&swapped, &sbary) else {
            continue;
        };
        let (srep, _) = bound_bivariate_obtuse(&swapped, &sbary, lab)?;
        let report = BoundReport {
            value: scale.abs() * srep.value,
            method: Method::BivariateObtuse,
            sharp: Sharpness::ProvenSharp,
            witness: srep.witness,
            anchor_w: srep.anchor_w,
        };
        matches.push((k, report));
    }
    if matches.is_empty() {
        return Err(BoundsError::AmbiguousRegion(
            "no swap image satisfies the triangle-zone hypotheses".into(),
        ));
    }
    let reference = matches[0].1.value;
    if matches
        .iter()
        .any(|(_, r)| (r.value - reference).abs() > 1e-6 * (1.0 + reference.abs()))
    {
        return Err(BoundsError::AmbiguousRegion(
            "swap images disagree on the cone-zone value".into(),
        ));
    }
    let preferred = labeling[1];
    let chosen = matches
        .iter()
        .position(|&(k, _)| k == preferred)
        .unwrap_or(0);
    Ok(matches.swap_remove(chosen).1)
}

/// Boundary policy: on a region boundary every weakly-applicable bound
/// is computed and the maximum is returned without a sharpness claim.
fn boundary_max(
    inst: &InterpolationInstance,
    bary: &BarycentricData,
    spectrum: &CurvatureSpectrum,
) -> Result<BoundReport, BoundsError> {
    let mut candidates: Vec<f64> = Vec::new();
    let (quad, _) = bound_quadratic(inst, spectrum);
    candidates.push(quad.value);
    if let Ok(w) = bound_waldron(inst, bary) {
        candidates.push(w.value);
    }
    if bary.i_plus().len() == 1 {
        candidates.push(bound_improved(inst, bary).value);
    }
    let perms: [[usize; 3]; 6] = [
        [1, 2, 3],
        [1, 3, 2],
        [2, 1, 3],
        [2, 3, 1],
        [3, 1, 2],
        [3, 2, 1],
    ];
    let tol = bary.zero_tol();
    for &[a, b, c] in &perms {
        let d1 = dot(
            &sub(inst.point(b), inst.point(a)),
            &sub(inst.point(c), inst.point(a)),
        );
        let d2 = dot(
            &sub(inst.point(b), inst.point(c)),
            &sub(inst.point(a), inst.point(c)),
        );
        let expr = bary.ell(a) * d1 - bary.ell(c) * d2;
        let weak_triangle = d1 < 0.0
            && bary.ell(b) >= -tol
            && bary.ell(c) <= tol
            && expr <= 1e-9 * (1.0 + expr.abs());
        if weak_triangle {
            if let Ok(p) = obtuse_pieces(inst, bary, [a, b, c]) {
                candidates.push(p.value);
            }
        }
        let weak_cone = d1 < 0.0 && bary.ell(c) >= -tol && expr >= -1e-9 * (1.0 + expr.abs());
        if weak_cone {
            if let Ok((swapped, scale)) = geometry::swap_instance(inst, b) {
                if let Ok(sbary) = barycentric(&swapped) {
                    if let Some(lab) = geometry::match_triangle_zone(&swapped, &sbary) {
                        if let Ok((srep, _)) = bound_bivariate_obtuse(&swapped, &sbary, lab) {
                            candidates.push(scale.abs() * srep.value);
                        }
                    }
                }
            }
        }
    }
    let value = candidates.iter().fold(0.0f64, |m, &v| m.max(v));
    Ok(BoundReport {
        value,
        method: Method::Dispatcher,
        sharp: Sharpness::UpperOnly,
        witness: None,
        anchor_w: None,
    })
}

/// Gradient-error bound (ν/2)Σᵢ‖Dℓᵢ(x)‖·‖xᵢ−x‖² — an upper bound that is
/// not tight in general.
pub fn bound_gradient(
    inst: &InterpolationInstance,
    _bary: &BarycentricData,
) -> Result<f64, BoundsError> {
    let grads = geometry::lagrange_gradients(inst)?;
    let mut s = 0.0;
    for i in 1..=inst.num_samples() {
        let d = sub(inst.point(i), inst.x());
        s += norm(&grads[i - 1]) * dot(&d, &d);
    }
    Ok(0.5 * inst.nu() * s)
}
