//! Numerical sharp-bound oracle: the error estimation problem as a
//! finite-dimensional convex QCQP over function values yᵢ and gradients
//! gᵢ at Θ ∪ {x}, solved by a primal log-barrier interior-point method.
//!
//! The feasible set is cut out by one pairwise inequality per ordered
//! pair of points; the objective Σ ℓᵢ yᵢ is the signed interpolation
//! error. Redundant degrees of freedom are removed by gauge fixing.

use crate::geometry::{barycentric, BarycentricData, GeometryError, InterpolationInstance};
use crate::linalg::{self, dot, lu_factor, norm_inf_vec, sub, Matrix};
use thiserror::Error;

/// Barrier parameter schedule: start value and per-stage decrease.
const MU_START: f64 = 1.0;
const MU_SHRINK: f64 = 0.1;
/// Total Newton iteration cap across all centering stages.
const NEWTON_CAP: usize = 500;
/// Newton decrement threshold declaring a centering stage done.
const CENTER_TOL: f64 = 1e-10;
/// Armijo slope fraction and maximum halvings of the line search.
const ARMIJO: f64 = 1e-4;
const MAX_HALVINGS: usize = 60;

#[derive(Debug, Error)]
pub enum EepError {
    #[error("sample set degenerate: {0}")]
    DegenerateSampleSet(String),
    #[error("barrier solver exceeded {NEWTON_CAP} Newton steps (gap {gap:.3e})")]
    NoConvergence { gap: f64 },
    #[error("Newton system singular beyond regularization")]
    NumericalBreakdown,
    #[error("tolerance {0} outside (0, 1e-2]")]
    InvalidTolerance(f64),
}

impl From<GeometryError> for EepError {
    fn from(e: GeometryError) -> Self {
        EepError::DegenerateSampleSet(e.to_string())
    }
}

/// Gauge fixing of the redundant degrees of freedom.
#[derive(Debug, Clone)]
pub enum Gauge {
    /// y₀ = 0 and g₀ = 0 (the query point pinned).
    FixPointZero,
    /// y₁..y_{n+1} pinned to the given observed values.
    FixSampleValues(Vec<f64>),
}

/// Variable layout after gauge fixing.
#[derive(Debug, Clone)]
struct VarMap {
    dim: usize,
    /// Per extended point: index of its y in the flat vector, or None if fixed.
    y_idx: Vec<Option<usize>>,
    /// Per extended point: start of its gradient block, or None if fixed.
    g_idx: Vec<Option<usize>>,
    fixed_y: Vec<f64>,
    num_vars: usize,
}

impl VarMap {
    fn new(num_points: usize, dim: usize, gauge: &Gauge) -> VarMap {
        let mut y_idx = vec![None; num_points];
        let mut g_idx = vec![None; num_points];
        let mut fixed_y = vec![0.0; num_points];
        let mut next = 0;
        match gauge {
            Gauge::FixPointZero => {
                for (i, slot) in y_idx.iter_mut().enumerate() {
                    if i != 0 {
                        *slot = Some(next);
                        next += 1;
                    }
                }
                for (i, slot) in g_idx.iter_mut().enumerate() {
                    if i != 0 {
                        *slot = Some(next);
                        next += dim;
                    }
                }
            }
            Gauge::FixSampleValues(values) => {
                assert_eq!(values.len(), num_points - 1, "one value per sample");
                y_idx[0] = Some(next);
                next += 1;
                for i in 1..num_points {
                    fixed_y[i] = values[i - 1];
                }
                for slot in g_idx.iter_mut() {
                    *slot = Some(next);
                    next += dim;
                }
            }
        }
        VarMap {
            dim,
            y_idx,
            g_idx,
            fixed_y,
            num_vars: next,
        }
    }

    fn y(&self, i: usize, z: &[f64]) -> f64 {
        match self.y_idx[i] {
            Some(k) => z[k],
            None => self.fixed_y[i],
        }
    }

    fn g<'a>(&self, i: usize, z: &'a [f64], zero: &'a [f64]) -> &'a [f64] {
        match self.g_idx[i] {
            Some(k) => &z[k..k + self.dim],
            None => zero,
        }
    }
}

/// One pairwise constraint with its precomputed geometry.
#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    /// xⱼ − xᵢ
    d: Vec<f64>,
    /// ‖xⱼ − xᵢ‖²
    e: f64,
}

/// The gauged finite-dimensional problem.
#[derive(Debug, Clone)]
pub struct EepProblem {
    inst: InterpolationInstance,
    bary: BarycentricData,
    gauge: Gauge,
    vars: VarMap,
    pairs: Vec<Pair>,
    /// Linear objective over the flat variables plus a constant from
    /// gauge-fixed values.
    objective: Vec<f64>,
    objective_const: f64,
}

/// Primal solution with solver diagnostics.
#[derive(Debug, Clone)]
pub struct EepSolution {
    pub objective: f64,
    /// Function values at all n+2 points (query point first).
    pub y: Vec<f64>,
    /// Gradients at all n+2 points.
    pub g: Vec<Vec<f64>>,
    pub iterations: usize,
    pub barrier_mu_final: f64,
    pub max_constraint_violation: f64,
    pub kkt_residual: f64,
}

/// Materializes the gauged QCQP for an instance.
pub fn build(inst: &InterpolationInstance) -> Result<EepProblem, EepError> {
    build_with_gauge(inst, Gauge::FixPointZero)
}

pub fn build_with_gauge(
    inst: &InterpolationInstance,
    gauge: Gauge,
) -> Result<EepProblem, EepError> {
    let bary = barycentric(inst)?;
    let num_points = inst.num_samples() + 1;
    let vars = VarMap::new(num_points, inst.dim(), &gauge);

    let mut pairs = Vec::with_capacity(num_points * (num_points - 1));
    for i in 0..num_points {
        for j in 0..num_points {
            if i == j {
                continue;
            }
            let d = sub(inst.point(j), inst.point(i));
            let e = dot(&d, &d);
            pairs.push(Pair { i, j, d, e });
        }
    }

    let mut objective = vec![0.0; vars.num_vars];
    let mut objective_const = 0.0;
    for i in 0..num_points {
        match vars.y_idx[i] {
            Some(k) => objective[k] = bary.ell(i),
            None => objective_const += bary.ell(i) * vars.fixed_y[i],
        }
    }
    Ok(EepProblem {
        inst: inst.clone(),
        bary,
        gauge,
        vars,
        pairs,
        objective,
        objective_const,
    })
}

impl EepProblem {
    pub fn instance(&self) -> &InterpolationInstance {
        &self.inst
    }

    pub fn barycentric(&self) -> &BarycentricData {
        &self.bary
    }

    pub fn gauge(&self) -> &Gauge {
        &self.gauge
    }

    pub fn num_vars(&self) -> usize {
        self.vars.num_vars
    }

    pub fn num_constraints(&self) -> usize {
        self.pairs.len()
    }

    /// Raw scalar variable count before gauge fixing.
    pub fn num_raw_vars(&self) -> usize {
        (self.inst.num_samples() + 1) * (self.inst.dim() + 1)
    }

    /// Constraint values c_k(z); feasibility means all ≤ 0.
    pub fn constraint_values(&self, z: &[f64]) -> Vec<f64> {
        let nu = self.inst.nu();
        let zero = vec![0.0; self.vars.dim];
        self.pairs
            .iter()
            .map(|p| {
                let yi = self.vars.y(p.i, z);
                let yj = self.vars.y(p.j, z);
                let gi = self.vars.g(p.i, z, &zero);
                let gj = self.vars.g(p.j, z, &zero);
                let dg = sub(gj, gi);
                yj - yi - 0.5 * (dot(gi, &p.d) + dot(gj, &p.d)) - 0.25 * nu * p.e
                    + dot(&dg, &dg) / (4.0 * nu)
            })
            .collect()
    }

    /// Strictly feasible starting point for the gauge.
    fn start_point(&self) -> Result<Vec<f64>, EepError> {
        let mut z = vec![0.0; self.vars.num_vars];
        if let Gauge::FixSampleValues(values) = &self.gauge {
            // The affine interpolant of the fixed values is in the class
            // with every constraint slack at exactly ν/4·‖xⱼ−xᵢ‖².
            let (c, g) = crate::geometry::affine_interpolant(self.inst.theta(), values)?;
            let y0 = c + dot(&g, self.inst.x());
            if let Some(k) = self.vars.y_idx[0] {
                z[k] = y0;
            }
            for i in 0..=self.inst.num_samples() {
                if let Some(k) = self.vars.g_idx[i] {
                    z[k..k + self.vars.dim].copy_from_slice(&g);
                }
            }
        }
        Ok(z)
    }

    fn objective_value(&self, z: &[f64]) -> f64 {
        dot(&self.objective, z) + self.objective_const
    }

    /// Gradient and Hessian of φ_t(z) = −t·obj(z) − Σ ln(−c_k(z)),
    /// together with φ's value. Returns None on infeasible z.
    fn barrier_parts(&self, z: &[f64], t: f64) -> Option<(f64, Vec<f64>, Matrix)> {
        let nu = self.inst.nu();
        let d = self.vars.num_vars;
        let zero = vec![0.0; self.vars.dim];
        let mut value = -t * self.objective_value(z);
        let mut grad: Vec<f64> = self.objective.iter().map(|o| -t * o).collect();
        let mut hess = Matrix::zeros(d, d);
        let mut gc = vec![0.0; d];

        for p in &self.pairs {
            let yi = self.vars.y(p.i, z);
            let yj = self.vars.y(p.j, z);
            let gi = self.vars.g(p.i, z, &zero);
            let gj = self.vars.g(p.j, z, &zero);
            let dg = sub(gj, gi);
            let c = yj - yi - 0.5 * (dot(gi, &p.d) + dot(gj, &p.d)) - 0.25 * nu * p.e
                + dot(&dg, &dg) / (4.0 * nu);
            if c >= 0.0 {
                return None;
            }
            value -= (-c).ln();

            // ∇c in the flat coordinates (sparse over four blocks).
            for v in gc.iter_mut() {
                *v = 0.0;
            }
            if let Some(k) = self.vars.y_idx[p.j] {
                gc[k] = 1.0;
            }
            if let Some(k) = self.vars.y_idx[p.i] {
                gc[k] = -1.0;
            }
            if let Some(k) = self.vars.g_idx[p.i] {
                for a in 0..self.vars.dim {
                    gc[k + a] = -0.5 * p.d[a] - dg[a] / (2.0 * nu);
                }
            }
            if let Some(k) = self.vars.g_idx[p.j] {
                for a in 0..self.vars.dim {
                    gc[k + a] = -0.5 * p.d[a] + dg[a] / (2.0 * nu);
                }
            }

            let inv_c = 1.0 / c;
            // ∇φ += −∇c/c
            for (gv, gcv) in grad.iter_mut().zip(&gc) {
                *gv -= inv_c * gcv;
            }
            // ∇²φ += ∇c∇cᵀ/c² − ∇²c/c
            for r in 0..d {
                if gc[r] == 0.0 {
                    continue;
                }
                let s = gc[r] * inv_c * inv_c;
                for col in 0..d {
                    if gc[col] != 0.0 {
                        hess.add_to(r, col, s * gc[col]);
                    }
                }
            }
            let curv = -inv_c / (2.0 * nu); // −1/c · 1/(2ν), positive since c < 0
            match (self.vars.g_idx[p.i], self.vars.g_idx[p.j]) {
                (Some(ki), Some(kj)) => {
                    for a in 0..self.vars.dim {
                        hess.add_to(ki + a, ki + a, curv);
                        hess.add_to(kj + a, kj + a, curv);
                        hess.add_to(ki + a, kj + a, -curv);
                        hess.add_to(kj + a, ki + a, -curv);
                    }
                }
                (Some(ki), None) => {
                    for a in 0..self.vars.dim {
                        hess.add_to(ki + a, ki + a, curv);
                    }
                }
                (None, Some(kj)) => {
                    for a in 0..self.vars.dim {
                        hess.add_to(kj + a, kj + a, curv);
                    }
                }
                (None, None) => {}
            }
        }
        Some((value, grad, hess))
    }

    /// Largest step along `dz` keeping every constraint strictly
    /// negative; each constraint is quadratic in the step length with
    /// nonnegative curvature, so the boundary crossing is a root of a
    /// convex parabola with negative value at zero.
    fn max_step_to_boundary(&self, z: &[f64], dz: &[f64]) -> f64 {
        let nu = self.inst.nu();
        let zero = vec![0.0; self.vars.dim];
        let dzero = vec![0.0; self.vars.dim];
        let mut alpha_max = f64::INFINITY;
        for p in &self.pairs {
            let yi = self.vars.y(p.i, z);
            let yj = self.vars.y(p.j, z);
            let gi = self.vars.g(p.i, z, &zero);
            let gj = self.vars.g(p.j, z, &zero);
            let dyi = match self.vars.y_idx[p.i] {
                Some(k) => dz[k],
                None => 0.0,
            };
            let dyj = match self.vars.y_idx[p.j] {
                Some(k) => dz[k],
                None => 0.0,
            };
            let dgi = self.vars.g(p.i, dz, &dzero);
            let dgj = self.vars.g(p.j, dz, &dzero);
            let dg = sub(gj, gi);
            let ddg = sub(dgj, dgi);
            let c0 = yj - yi - 0.5 * (dot(gi, &p.d) + dot(gj, &p.d)) - 0.25 * nu * p.e
                + dot(&dg, &dg) / (4.0 * nu);
            let b = dyj - dyi - 0.5 * (dot(dgi, &p.d) + dot(dgj, &p.d))
                + dot(&dg, &ddg) / (2.0 * nu);
            let a = dot(&ddg, &ddg) / (4.0 * nu);
            let crossing = if a > 0.0 {
                let disc = (b * b - 4.0 * a * c0).max(0.0);
                (-b + disc.sqrt()) / (2.0 * a)
            } else if b > 0.0 {
                -c0 / b
            } else {
                f64::INFINITY
            };
            if crossing > 0.0 {
                alpha_max = alpha_max.min(crossing);
            }
        }
        alpha_max
    }

    fn extract_solution(&self, z: &[f64]) -> (Vec<f64>, Vec<Vec<f64>>) {
        let zero = vec![0.0; self.vars.dim];
        let num_points = self.inst.num_samples() + 1;
        let ys = (0..num_points).map(|i| self.vars.y(i, z)).collect();
        let gs = (0..num_points)
            .map(|i| self.vars.g(i, z, &zero).to_vec())
            .collect();
        (ys, gs)
    }
}

/// Solves the gauged QCQP to a duality-gap surrogate of
/// `tol·(1 + |objective|)`.
pub fn solve(problem: &EepProblem, tol: f64) -> Result<EepSolution, EepError> {
    if !(tol > 0.0 && tol <= 1e-2) {
        return Err(EepError::InvalidTolerance(tol));
    }
    let m = problem.num_constraints() as f64;

    // A query point coinciding with a sample empties the feasible
    // interior; the error at an interpolation node is exactly zero.
    let min_e = problem
        .pairs
        .iter()
        .map(|p| p.e)
        .fold(f64::INFINITY, f64::min);
    let max_e = problem.pairs.iter().map(|p| p.e).fold(0.0, f64::max);
    if min_e <= 1e-12 * (1.0 + max_e) {
        let z = problem.start_point()?;
        let (y, g) = problem.extract_solution(&z);
        let violation = problem
            .constraint_values(&z)
            .into_iter()
            .fold(0.0f64, |mx, c| mx.max(c));
        return Ok(EepSolution {
            objective: problem.objective_value(&z),
            y,
            g,
            iterations: 0,
            barrier_mu_final: 0.0,
            max_constraint_violation: violation.max(0.0),
            kkt_residual: 0.0,
        });
    }

    let mut z = problem.start_point()?;
    let mut mu = MU_START;
    let mut iterations = 0usize;

    loop {
        let t = 1.0 / mu;
        // Centering stage: damped Newton on φ_t.
        loop {
            let (phi, grad, hess) = problem
                .barrier_parts(&z, t)
                .ok_or(EepError::NumericalBreakdown)?;
            let step = newton_step(&hess, &grad)?;
            let decrement = -dot(&grad, &step);
            // The threshold scales with |φ| because φ-differences below
            // f64 resolution cannot be line-searched.
            if decrement * 0.5 <= CENTER_TOL * (1.0 + phi.abs()) {
                break;
            }
            if iterations >= NEWTON_CAP {
                return Err(EepError::NoConvergence {
                    gap: m * mu / (1.0 + problem.objective_value(&z).abs()),
                });
            }
            iterations += 1;

            // Backtracking from a fraction of the distance to the
            // constraint boundary, halving on the Armijo test.
            let slope = dot(&grad, &step);
            let mut alpha = (0.995 * problem.max_step_to_boundary(&z, &step)).min(1.0);
            let mut moved = false;
            for _ in 0..MAX_HALVINGS {
                let trial = linalg::add_scaled(&z, alpha, &step);
                if let Some((phi_trial, _, _)) = problem.barrier_parts(&trial, t) {
                    if phi_trial <= phi + ARMIJO * alpha * slope {
                        z = trial;
                        moved = true;
                        break;
                    }
                }
                alpha *= 0.5;
            }
            if !moved {
                break; // step stalled at this stage's accuracy
            }
        }

        let obj = problem.objective_value(&z);
        if m * mu <= tol * (1.0 + obj.abs()) {
            let (y, g) = problem.extract_solution(&z);
            let violation = problem
                .constraint_values(&z)
                .into_iter()
                .fold(0.0f64, |mx, c| mx.max(c));
            // Centered residual of the scaled optimality condition.
            let kkt = problem
                .barrier_parts(&z, 1.0 / mu)
                .map(|(_, grad, _)| norm_inf_vec(&grad) * mu)
                .unwrap_or(f64::INFINITY);
            return Ok(EepSolution {
                objective: obj,
                y,
                g,
                iterations,
                barrier_mu_final: mu,
                max_constraint_violation: violation.max(0.0),
                kkt_residual: kkt,
            });
        }
        mu *= MU_SHRINK;
    }
}

/// Newton direction with a ramped diagonal regularization fallback.
fn newton_step(hess: &Matrix, grad: &[f64]) -> Result<Vec<f64>, EepError> {
    let d = grad.len();
    let rhs: Vec<f64> = grad.iter().map(|g| -g).collect();
    let mut reg = 0.0;
    loop {
        let h = if reg == 0.0 {
            hess.clone()
        } else {
            let mut h = hess.clone();
            for i in 0..d {
                h.add_to(i, i, reg);
            }
            h
        };
        match lu_factor(&h) {
            Ok(lu) => return Ok(lu.solve(&rhs)),
            Err(_) => {
                reg = if reg == 0.0 { 1e-12 } else { reg * 100.0 };
                if reg > 1e-2 {
                    return Err(EepError::NumericalBreakdown);
                }
            }
        }
    }
}

/// The sharp bound on |f̂(x) − f(x)|: the gauged QCQP optimum.
pub fn sharp_bound(inst: &InterpolationInstance, tol: f64) -> Result<f64, EepError> {
    Ok(solve(&build(inst)?, tol)?.objective)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds;
    use crate::geometry;
    use crate::witness::{self, WitnessFunction};
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

    #[test]
    fn variable_and_constraint_counts() {
        let inst = unit_triangle([0.4, 0.3]);
        let p = build(&inst).unwrap();
        assert_eq!(p.num_raw_vars(), 12);
        assert_eq!(p.num_vars(), 9);
        assert_eq!(p.num_constraints(), 12);
    }

    #[test]
    fn zero_start_is_strictly_feasible() {
        let inst = unit_triangle([0.4, 0.3]);
        let p = build(&inst).unwrap();
        let z = vec![0.0; p.num_vars()];
        for (c, pair) in p.constraint_values(&z).iter().zip(&p.pairs) {
            assert_abs_diff_eq!(*c, -0.25 * pair.e, epsilon = 1e-15);
            assert!(*c < 0.0);
        }
    }

    #[test]
    fn objective_zero_at_sample_point() {
        let inst = unit_triangle([0.0, 1.0]);
        let sol = solve(&build(&inst).unwrap(), 1e-6).unwrap();
        assert!(sol.objective.abs() <= 1e-6);
        assert!(sol.max_constraint_violation <= 1e-8);
    }

    #[test]
    fn cone_instance_frozen_optimum() {
        // Matches the hand-evaluated sharp value 1.375.
        let inst = unit_triangle([2.0, -0.5]);
        let sol = solve(&build(&inst).unwrap(), 1e-6).unwrap();
        assert_abs_diff_eq!(sol.objective, 1.375, epsilon = 1e-5);
        assert!(sol.max_constraint_violation <= 1e-8);
    }

    #[test]
    fn simplex_reflection_frozen_optimum() {
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
        let sol = solve(&build(&inst).unwrap(), 1e-6).unwrap();
        assert_abs_diff_eq!(sol.objective, 3.0, epsilon = 1e-5);
    }

    #[test]
    fn gauges_agree() {
        let inst = unit_triangle([1.3, -0.4]);
        let tol = 1e-6;
        let a = solve(&build_with_gauge(&inst, Gauge::FixPointZero).unwrap(), tol)
            .unwrap()
            .objective;
        let b = solve(
            &build_with_gauge(&inst, Gauge::FixSampleValues(vec![0.0; 3])).unwrap(),
            tol,
        )
        .unwrap()
        .objective;
        assert!((a - b).abs() <= 2.0 * tol * (1.0 + a.abs()));
        // Arbitrary observed values leave the optimum unchanged as well.
        let c = solve(
            &build_with_gauge(&inst, Gauge::FixSampleValues(vec![1.0, -2.5, 0.7])).unwrap(),
            tol,
        )
        .unwrap()
        .objective;
        assert!((a - c).abs() <= 2.0 * tol * (1.0 + a.abs()));
    }

    #[test]
    fn nu_scales_optimum_linearly() {
        let base = unit_triangle([1.6, 0.9]);
        let tol = 1e-8;
        let v1 = sharp_bound(&base, tol).unwrap();
        for nu in [0.5, 2.0] {
            let inst = InterpolationInstance::new(
                base.theta().to_vec(),
                base.x().to_vec(),
                nu,
            )
            .unwrap();
            let v = sharp_bound(&inst, tol).unwrap();
            assert!(
                (v - nu * v1).abs() <= 1e-6 * (1.0 + v.abs()),
                "nu {nu}: {v} vs {}",
                nu * v1
            );
        }
    }

    #[test]
    fn witness_data_is_feasible() {
        // Sampled (yᵢ, gᵢ) from class members satisfy every pairwise
        // constraint up to 1e-9.
        let inst = unit_triangle([2.0, -0.5]);
        let p = build_with_gauge(&inst, Gauge::FixPointZero).unwrap();
        let nu = 1.0;
        for w in [
            WitnessFunction::QuadraticHalfNormPos { nu },
            WitnessFunction::QuadraticHalfNormNeg { nu },
            WitnessFunction::PiecewiseQuadratic {
                w: vec![0.3, 0.2],
                d: vec![1.0, -1.0],
                nu,
            },
        ] {
            for pair in &p.pairs {
                let (yi, gi) = witness::eval(&w, inst.point(pair.i));
                let (yj, gj) = witness::eval(&w, inst.point(pair.j));
                let dg = sub(&gj, &gi);
                let c = yj - yi - 0.5 * (dot(&gi, &pair.d) + dot(&gj, &pair.d))
                    - 0.25 * nu * pair.e
                    + dot(&dg, &dg) / (4.0 * nu);
                assert!(c <= 1e-9, "constraint {c:.3e} for {}", w.describe());
            }
        }
    }

    #[test]
    fn bracketed_by_witness_and_improved() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..20 {
            let inst = random_instance(&mut rng, 2);
            let tol = 1e-6;
            let opt = sharp_bound(&inst, tol).unwrap();
            let bary = geometry::barycentric(&inst).unwrap();
            let spec = geometry::curvature(&inst, &bary).unwrap();
            let improved = bounds::bound_improved(&inst, &bary);
            let (quad, _) = bounds::bound_quadratic(&inst, &spec);
            assert!(opt <= improved.value + tol * (1.0 + opt.abs()) + 1e-6);
            assert!(opt >= quad.value - tol * (1.0 + opt.abs()) - 1e-6);
        }
    }

    #[test]
    fn swap_identity_on_negative_ell() {
        let mut rng = ChaCha8Rng::seed_from_u64(57);
        let mut checked = 0;
        while checked < 10 {
            let inst = random_instance(&mut rng, 2);
            let bary = geometry::barycentric(&inst).unwrap();
            // Pick the most negative ℓ so the stated identity applies
            // with a positive scale.
            let (k, ell) = (1..=3)
                .map(|i| (i, bary.ell(i)))
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .unwrap();
            if ell > -0.1 {
                continue;
            }
            let (swapped, scale) = geometry::swap_instance(&inst, k).unwrap();
            let v = sharp_bound(&inst, 1e-7).unwrap();
            let vs = sharp_bound(&swapped, 1e-7).unwrap();
            assert!(
                (v - scale * vs).abs() <= 1e-4 * (1.0 + v.abs()),
                "v {v}, scale {scale}, vs {vs}"
            );
            checked += 1;
        }
    }

    fn random_instance(rng: &mut ChaCha8Rng, n: usize) -> InterpolationInstance {
        loop {
            let theta: Vec<Vec<f64>> = (0..n + 1)
                .map(|_| (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect())
                .collect();
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
            if let Ok(inst) = InterpolationInstance::new(theta, x, 1.0) {
                if inst.condition().unwrap() < 1e4 {
                    return inst;
                }
            }
        }
    }
}
