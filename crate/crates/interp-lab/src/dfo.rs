//! Reflection-only simplex derivative-free optimizer: a regular simplex
//! is constructed around the starting point and the worst vertex is
//! repeatedly reflected through the centroid of the opposite face. The
//! simplex stays regular with constant size, which yields a provable
//! complexity bound and a gradient-accuracy stopping rule when the
//! objective has a ν-Lipschitz gradient.

use crate::geometry::{self, GeometryError};
use crate::linalg::{dist, dot, norm, qr, sym_eigen, Matrix};
use thiserror::Error;

/// Reflections between re-projections of the simplex onto exact
/// regularity (floating-point drift control).
const REPROJECT_EVERY: usize = 100;

#[derive(Debug, Error)]
pub enum DfoError {
    #[error("budget exhausted after {iterations} iterations (cap {cap}, theoretical bound: {theoretical})")]
    BudgetExhausted {
        iterations: usize,
        cap: usize,
        /// True when the cap was the complexity-theorem bound, which a
        /// conforming objective cannot exceed.
        theoretical: bool,
    },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Vertices of a regular simplex with circumradius `delta` centered at
/// `center`: QR-factor the shifted identity and read the vertex
/// coordinates off the triangular factor.
pub fn regular_simplex(center: &[f64], delta: f64, n: usize) -> Vec<Vec<f64>> {
    assert!(delta > 0.0 && n >= 1);
    assert_eq!(center.len(), n);
    let a = ((n as f64 + 1.0) / n as f64).sqrt() * delta;
    let b = (1.0 / (n as f64 * (n as f64 + 1.0))).sqrt() * delta;
    let m = Matrix::from_fn(n + 1, n + 1, |i, j| if i == j { a - b } else { -b });
    let (_, r) = qr(&m);
    (0..n + 1)
        .map(|i| (0..n).map(|j| center[j] + r.get(j, i)).collect())
        .collect()
}

/// Current simplex with values, vertex ages (for deterministic tie
/// breaking), size and iteration count.
#[derive(Debug, Clone)]
pub struct SimplexState {
    points: Vec<Vec<f64>>,
    values: Vec<f64>,
    ages: Vec<usize>,
    delta: f64,
    iteration: usize,
    next_age: usize,
}

impl SimplexState {
    pub fn new(points: Vec<Vec<f64>>, values: Vec<f64>, delta: f64) -> SimplexState {
        let m = points.len();
        assert_eq!(values.len(), m);
        SimplexState {
            points,
            values,
            ages: (0..m).collect(),
            delta,
            iteration: 0,
            next_age: m,
        }
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn centroid(&self) -> Vec<f64> {
        let n = self.dim();
        let mut c = vec![0.0; n];
        for p in &self.points {
            for j in 0..n {
                c[j] += p[j];
            }
        }
        for v in c.iter_mut() {
            *v /= self.points.len() as f64;
        }
        c
    }

    /// Vertex order sorted by ascending value, ties by insertion age
    /// (oldest first).
    fn sorted_indices(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.points.len()).collect();
        idx.sort_by(|&a, &b| {
            self.values[a]
                .partial_cmp(&self.values[b])
                .unwrap()
                .then(self.ages[a].cmp(&self.ages[b]))
        });
        idx
    }

    pub fn values_sorted(&self) -> Vec<f64> {
        self.sorted_indices()
            .into_iter()
            .map(|i| self.values[i])
            .collect()
    }

    pub fn best_point(&self) -> &[f64] {
        &self.points[self.sorted_indices()[0]]
    }

    /// Stopping quantity f(x_{n+1}) − mean f of the gradient rule.
    pub fn stop_quantity(&self) -> f64 {
        let worst = *self.sorted_indices().last().unwrap();
        let mean: f64 = self.values.iter().sum::<f64>() / self.values.len() as f64;
        self.values[worst] - mean
    }

    /// Reflection of the worst vertex: −x_{n+1} + (2/n)·Σ_{i≤n} xᵢ.
    pub fn reflection_point(&self) -> Vec<f64> {
        let n = self.dim();
        let order = self.sorted_indices();
        let worst = *order.last().unwrap();
        let mut x = vec![0.0; n];
        for (i, p) in self.points.iter().enumerate() {
            if i == worst {
                continue;
            }
            for j in 0..n {
                x[j] += 2.0 / n as f64 * p[j];
            }
        }
        for j in 0..n {
            x[j] -= self.points[worst][j];
        }
        x
    }

    /// Value of the interpolation model at the reflection point:
    /// −f(x_{n+1}) + (2/n)·Σ_{i≤n} f(xᵢ).
    pub fn model_value_at_reflection(&self) -> f64 {
        let n = self.dim() as f64;
        let order = self.sorted_indices();
        let worst = *order.last().unwrap();
        let rest: f64 = (0..self.points.len())
            .filter(|&i| i != worst)
            .map(|i| self.values[i])
            .sum();
        -self.values[worst] + 2.0 / n * rest
    }

    /// Replaces the worst vertex with the already-evaluated reflection.
    pub fn reflect(&self, reflection: Vec<f64>, f_reflection: f64) -> (Vec<f64>, SimplexState) {
        let order = self.sorted_indices();
        let worst = *order.last().unwrap();
        let mut next = self.clone();
        next.points[worst] = reflection.clone();
        next.values[worst] = f_reflection;
        next.ages[worst] = self.next_age;
        next.next_age += 1;
        next.iteration += 1;
        (reflection, next)
    }

    /// Relative spread of the pairwise distances; zero for an exactly
    /// regular simplex.
    pub fn regularity_spread(&self) -> f64 {
        let m = self.points.len();
        let mut min_d = f64::INFINITY;
        let mut max_d = 0.0f64;
        for i in 0..m {
            for j in (i + 1)..m {
                let d = dist(&self.points[i], &self.points[j]);
                min_d = min_d.min(d);
                max_d = max_d.max(d);
            }
        }
        (max_d - min_d) / max_d.max(f64::MIN_POSITIVE)
    }

    /// Rebuilds the simplex at exact regularity around the current
    /// centroid, rotated to match the drifted one, and re-evaluates the
    /// objective at the adjusted vertices.
    fn reproject(&self, objective: &mut impl FnMut(&[f64]) -> f64) -> SimplexState {
        let n = self.dim();
        let c = self.centroid();
        let fresh = regular_simplex(&vec![0.0; n], self.delta, n);
        let f_mat = Matrix::from_fn(n + 1, n, |i, j| fresh[i][j]);
        let d_mat = Matrix::from_fn(n + 1, n, |i, j| self.points[i][j] - c[j]);
        let m = f_mat.transpose().matmul(&d_mat);
        // Polar factor of M aligns the fresh simplex with the drifted one.
        let mtm = m.transpose().matmul(&m);
        let q = match sym_eigen(&mtm) {
            Ok(eig) if eig.values.iter().all(|&l| l > 0.0) => {
                let inv_sqrt = Matrix::from_fn(n, n, |i, j| {
                    if i == j {
                        1.0 / eig.values[i].sqrt()
                    } else {
                        0.0
                    }
                });
                let s_inv = eig
                    .vectors
                    .matmul(&inv_sqrt)
                    .matmul(&eig.vectors.transpose());
                m.matmul(&s_inv)
            }
            _ => Matrix::identity(n),
        };
        let aligned = f_mat.matmul(&q);
        let mut next = self.clone();
        for i in 0..=n {
            for j in 0..n {
                next.points[i][j] = c[j] + aligned.get(i, j);
            }
            next.values[i] = objective(&next.points[i]);
        }
        next
    }
}

/// Gradient of the affine interpolant over the current simplex.
pub fn simplex_gradient(state: &SimplexState) -> Result<Vec<f64>, DfoError> {
    let (_, g) = geometry::affine_interpolant(&state.points, &state.values)?;
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaChoice {
    /// 2ε/(5nν), the size prescribed by the complexity theorem.
    Auto,
    Fixed(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    /// Run exactly `max_iter` reflections.
    FixedBudget,
    /// Stop when f(x_{n+1}) − mean f ≤ 2νδ², which certifies
    /// ‖Df(c_k)‖ ≤ ε for conforming objectives.
    GradientStop,
}

#[derive(Debug, Clone)]
pub struct DfoConfig {
    /// Gradient Lipschitz constant; required for GradientStop and Auto δ.
    pub nu: Option<f64>,
    /// Target gradient norm of the stopping rule.
    pub epsilon: f64,
    pub delta: DeltaChoice,
    /// Hard iteration cap (and the exact budget in FixedBudget mode).
    pub max_iter: usize,
    pub mode: Mode,
    /// Known lower bound on the objective; enables the theoretical
    /// budget check in GradientStop mode.
    pub fstar: Option<f64>,
}

/// Per-iteration telemetry.
#[derive(Debug, Clone)]
pub struct TraceRecord {
    pub iteration: usize,
    pub values_sorted: Vec<f64>,
    pub reflection_point: Vec<f64>,
    pub f_reflection: f64,
    /// Interpolation-model prediction at the reflection point.
    pub model_value: f64,
    pub centroid: Vec<f64>,
    pub simplex_gradient_norm: f64,
    pub stop_quantity: f64,
}

#[derive(Debug, Clone)]
pub struct DfoTrace {
    pub records: Vec<TraceRecord>,
    pub delta: f64,
    /// Mean objective value over the initial simplex.
    pub initial_mean_value: f64,
}

/// Theoretical iteration budget ⌈25n³ν/(8ε²)·(mean f(Θ₀) − f*)⌉.
pub fn complexity_budget(n: usize, nu: f64, epsilon: f64, initial_mean: f64, fstar: f64) -> usize {
    let n = n as f64;
    (25.0 * n * n * n * nu / (8.0 * epsilon * epsilon) * (initial_mean - fstar)).ceil() as usize
}

/// Runs the reflection-only simplex method from `start`.
pub fn run(
    config: &DfoConfig,
    mut objective: impl FnMut(&[f64]) -> f64,
    start: &[f64],
) -> Result<(SimplexState, DfoTrace), DfoError> {
    let n = start.len();
    if n == 0 {
        return Err(DfoError::InvalidConfig("dimension is zero".into()));
    }
    let delta = match config.delta {
        DeltaChoice::Fixed(d) if d > 0.0 => d,
        DeltaChoice::Fixed(d) => {
            return Err(DfoError::InvalidConfig(format!("delta must be positive, got {d}")))
        }
        DeltaChoice::Auto => {
            let nu = config.nu.ok_or_else(|| {
                DfoError::InvalidConfig("automatic delta needs the Lipschitz constant".into())
            })?;
            if config.epsilon <= 0.0 {
                return Err(DfoError::InvalidConfig("epsilon must be positive".into()));
            }
            2.0 * config.epsilon / (5.0 * n as f64 * nu)
        }
    };
    if config.mode == Mode::GradientStop && config.nu.is_none() {
        return Err(DfoError::InvalidConfig(
            "the gradient stopping rule needs the Lipschitz constant".into(),
        ));
    }
    if config.mode == Mode::GradientStop && config.epsilon <= 0.0 {
        return Err(DfoError::InvalidConfig("epsilon must be positive".into()));
    }

    let points = regular_simplex(start, delta, n);
    let values: Vec<f64> = points.iter().map(|p| objective(p)).collect();
    let initial_mean = values.iter().sum::<f64>() / values.len() as f64;
    let mut state = SimplexState::new(points, values, delta);

    let theoretical_budget = match (config.mode, config.nu, config.fstar) {
        (Mode::GradientStop, Some(nu), Some(fstar)) => Some(complexity_budget(
            n,
            nu,
            config.epsilon,
            initial_mean,
            fstar,
        )),
        _ => None,
    };

    let mut trace = DfoTrace {
        records: Vec::new(),
        delta,
        initial_mean_value: initial_mean,
    };

    loop {
        if config.mode == Mode::GradientStop {
            let threshold = 2.0 * config.nu.unwrap() * delta * delta;
            if state.stop_quantity() <= threshold {
                return Ok((state, trace));
            }
            if let Some(budget) = theoretical_budget {
                if state.iteration() >= budget {
                    return Err(DfoError::BudgetExhausted {
                        iterations: state.iteration(),
                        cap: budget,
                        theoretical: true,
                    });
                }
            }
            if state.iteration() >= config.max_iter {
                return Err(DfoError::BudgetExhausted {
                    iterations: state.iteration(),
                    cap: config.max_iter,
                    theoretical: false,
                });
            }
        } else if state.iteration() >= config.max_iter {
            return Ok((state, trace));
        }

        let reflection = state.reflection_point();
        let f_reflection = objective(&reflection);
        let gradient_norm = norm(&simplex_gradient(&state)?);
        trace.records.push(TraceRecord {
            iteration: state.iteration(),
            values_sorted: state.values_sorted(),
            reflection_point: reflection.clone(),
            f_reflection,
            model_value: state.model_value_at_reflection(),
            centroid: state.centroid(),
            simplex_gradient_norm: gradient_norm,
            stop_quantity: state.stop_quantity(),
        });
        let (_, next) = state.reflect(reflection, f_reflection);
        state = next;
        if state.iteration() % REPROJECT_EVERY == 0 {
            state = state.reproject(&mut objective);
        }
    }
}

/// Built-in objectives with known ν and minimum, used by the command
/// line and the convergence tests.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteFunction {
    /// ½‖u‖²
    Sphere,
    /// ½Σ aᵢuᵢ² with spectrum in [¼, 1]
    QuadAniso,
    /// Σ (√(uᵢ²+1) − 1), a smoothed absolute value
    SmoothAbs,
}

impl SuiteFunction {
    pub fn from_name(name: &str) -> Option<SuiteFunction> {
        match name {
            "sphere" => Some(SuiteFunction::Sphere),
            "quad-aniso" => Some(SuiteFunction::QuadAniso),
            "smooth-abs" => Some(SuiteFunction::SmoothAbs),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SuiteFunction::Sphere => "sphere",
            SuiteFunction::QuadAniso => "quad-aniso",
            SuiteFunction::SmoothAbs => "smooth-abs",
        }
    }

    pub fn names() -> &'static [&'static str] {
        &["sphere", "quad-aniso", "smooth-abs"]
    }

    /// Exact gradient Lipschitz constant.
    pub fn nu(&self) -> f64 {
        1.0
    }

    /// Global minimum value (attained at the origin).
    pub fn fstar(&self) -> f64 {
        0.0
    }

    fn coeff(i: usize, n: usize) -> f64 {
        if n == 1 {
            1.0
        } else {
            0.25 + 0.75 * i as f64 / (n - 1) as f64
        }
    }

    pub fn eval(&self, u: &[f64]) -> f64 {
        match self {
            SuiteFunction::Sphere => 0.5 * dot(u, u),
            SuiteFunction::QuadAniso => {
                let n = u.len();
                0.5 * u
                    .iter()
                    .enumerate()
                    .map(|(i, v)| Self::coeff(i, n) * v * v)
                    .sum::<f64>()
            }
            SuiteFunction::SmoothAbs => u.iter().map(|v| (v * v + 1.0).sqrt() - 1.0).sum(),
        }
    }

    pub fn gradient(&self, u: &[f64]) -> Vec<f64> {
        match self {
            SuiteFunction::Sphere => u.to_vec(),
            SuiteFunction::QuadAniso => {
                let n = u.len();
                u.iter()
                    .enumerate()
                    .map(|(i, v)| Self::coeff(i, n) * v)
                    .collect()
            }
            SuiteFunction::SmoothAbs => u.iter().map(|v| v / (v * v + 1.0).sqrt()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn edge_length(delta: f64, n: usize) -> f64 {
        delta * (2.0 * (n as f64 + 1.0) / n as f64).sqrt()
    }

    #[test]
    fn simplex_one_dimensional() {
        let pts = regular_simplex(&[0.0], 1.0, 1);
        let mut xs: Vec<f64> = pts.iter().map(|p| p[0]).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_abs_diff_eq!(xs[0], -1.0, epsilon = 1e-10);
        assert_abs_diff_eq!(xs[1], 1.0, epsilon = 1e-10);
    }

    #[test]
    fn simplex_equilateral_triangle() {
        // Circumradius 1 gives side √3.
        let pts = regular_simplex(&[0.0, 0.0], 1.0, 2);
        for i in 0..3 {
            for j in (i + 1)..3 {
                assert_abs_diff_eq!(dist(&pts[i], &pts[j]), 3.0f64.sqrt(), epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn simplex_regularity_all_dims() {
        for n in 1..=10 {
            let center: Vec<f64> = (0..n).map(|i| i as f64 * 0.3 - 1.0).collect();
            let delta = 0.7;
            let pts = regular_simplex(&center, delta, n);
            assert_eq!(pts.len(), n + 1);
            // Centroid back at the requested center.
            for j in 0..n {
                let c: f64 = pts.iter().map(|p| p[j]).sum::<f64>() / (n as f64 + 1.0);
                assert_abs_diff_eq!(c, center[j], epsilon = 1e-10);
            }
            // Every vertex at distance delta from the center.
            for p in &pts {
                assert_abs_diff_eq!(dist(p, &center), delta, epsilon = 1e-10);
            }
            // Pairwise distances equal.
            let target = edge_length(delta, n);
            for i in 0..=n {
                for j in (i + 1)..=n {
                    let d = dist(&pts[i], &pts[j]);
                    assert!(
                        (d - target).abs() <= 1e-10 * target,
                        "n = {n}: edge {d} vs {target}"
                    );
                }
            }
        }
    }

    #[test]
    fn reflection_formula_direct() {
        // n = 2, worst (0,1): x = −(0,1) + (2/2)((0,0)+(1,0)) = (1,−1).
        let points = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]];
        let values = vec![0.0, 0.5, 2.0];
        let state = SimplexState::new(points, values, 1.0);
        let r = state.reflection_point();
        assert_abs_diff_eq!(r[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(r[1], -1.0, epsilon = 1e-14);
    }

    #[test]
    fn reflection_barycentric_weights() {
        // The reflection point has ℓᵢ = 2/n on the kept vertices and
        // ℓ = −1 on the reflected one.
        let pts = regular_simplex(&[0.3, -0.2, 0.9], 1.0, 3);
        let values = vec![0.0, 1.0, 2.0, 3.0];
        let state = SimplexState::new(pts.clone(), values, 1.0);
        let r = state.reflection_point();
        let inst =
            geometry::InterpolationInstance::new(pts, r, 1.0).unwrap();
        let bary = geometry::barycentric(&inst).unwrap();
        for i in 1..=3 {
            assert_abs_diff_eq!(bary.ell(i), 2.0 / 3.0, epsilon = 1e-10);
        }
        assert_abs_diff_eq!(bary.ell(4), -1.0, epsilon = 1e-10);
    }

    #[test]
    fn double_reflection_is_involution() {
        let pts = regular_simplex(&[0.0, 0.0], 1.0, 2);
        let values = vec![0.0, 1.0, 2.0];
        let state = SimplexState::new(pts.clone(), values, 1.0);
        let r1 = state.reflection_point();
        // Give the reflected point the (new) worst value so it reflects back.
        let (_, state2) = state.reflect(r1, 5.0);
        let r2 = state2.reflection_point();
        let original_worst = &pts[2];
        for j in 0..2 {
            assert_abs_diff_eq!(r2[j], original_worst[j], epsilon = 1e-12);
        }
    }

    #[test]
    fn reflection_preserves_regularity() {
        let pts = regular_simplex(&[1.0, -2.0, 0.5, 0.0], 0.8, 4);
        let f = SuiteFunction::Sphere;
        let values: Vec<f64> = pts.iter().map(|p| f.eval(p)).collect();
        let mut state = SimplexState::new(pts, values, 0.8);
        for _ in 0..50 {
            let r = state.reflection_point();
            let fr = f.eval(&r);
            state = state.reflect(r, fr).1;
        }
        assert!(state.regularity_spread() <= 1e-10);
    }

    #[test]
    fn simplex_gradient_exact_on_affine() {
        let pts = regular_simplex(&[0.2, 0.4, -0.1], 0.5, 3);
        let g_true = [1.5, -2.0, 0.25];
        let values: Vec<f64> = pts.iter().map(|p| 3.0 + dot(p, &g_true)).collect();
        let state = SimplexState::new(pts, values, 0.5);
        let g = simplex_gradient(&state).unwrap();
        for j in 0..3 {
            assert_abs_diff_eq!(g[j], g_true[j], epsilon = 1e-10);
        }
        // Constant objective: zero gradient.
        let pts = regular_simplex(&[0.0, 0.0], 1.0, 2);
        let state = SimplexState::new(pts, vec![4.0; 3], 1.0);
        assert!(norm(&simplex_gradient(&state).unwrap()) <= 1e-10);
    }

    #[test]
    fn variance_identity_on_random_values() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in [2usize, 3, 5] {
            let delta = 0.6;
            let pts = regular_simplex(&vec![0.0; n], delta, n);
            for _ in 0..20 {
                let values: Vec<f64> = (0..n + 1).map(|_| rng.gen_range(-2.0..2.0)).collect();
                let state = SimplexState::new(pts.clone(), values.clone(), delta);
                let g = simplex_gradient(&state).unwrap();
                let mean = values.iter().sum::<f64>() / (n as f64 + 1.0);
                let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>()
                    / (n as f64 + 1.0);
                let rhs = n as f64 / (delta * delta) * var;
                let lhs = dot(&g, &g);
                assert!(
                    (lhs - rhs).abs() <= 1e-8 * (1.0 + rhs),
                    "variance identity: {lhs} vs {rhs}"
                );
            }
        }
    }

    #[test]
    fn gradient_stop_on_sphere() {
        let config = DfoConfig {
            nu: Some(1.0),
            epsilon: 0.1,
            delta: DeltaChoice::Auto,
            max_iter: 100_000,
            mode: Mode::GradientStop,
            fstar: Some(0.0),
        };
        let f = SuiteFunction::Sphere;
        let (state, trace) = run(&config, |u| f.eval(u), &[1.0, 1.0]).unwrap();
        let grad_norm = norm(&f.gradient(&state.centroid()));
        assert!(grad_norm <= 0.1, "final gradient norm {grad_norm}");
        let budget = complexity_budget(2, 1.0, 0.1, trace.initial_mean_value, 0.0);
        assert!(state.iteration() <= budget);
    }

    #[test]
    fn affine_objective_never_triggers_stop() {
        // For affine f the spread f(x_{n+1}) − mean is constant and
        // positive, so only the budget ends the run.
        let config = DfoConfig {
            nu: Some(1.0),
            epsilon: 0.05,
            delta: DeltaChoice::Fixed(0.05),
            max_iter: 40,
            mode: Mode::GradientStop,
            fstar: None,
        };
        let result = run(&config, |u| 3.0 * u[0] - u[1], &[0.0, 0.0]);
        match result {
            Err(DfoError::BudgetExhausted {
                iterations,
                theoretical,
                ..
            }) => {
                assert_eq!(iterations, 40);
                assert!(!theoretical);
            }
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn fixed_budget_trace_length() {
        let config = DfoConfig {
            nu: Some(1.0),
            epsilon: 0.1,
            delta: DeltaChoice::Fixed(0.2),
            max_iter: 50,
            mode: Mode::FixedBudget,
            fstar: None,
        };
        let f = SuiteFunction::QuadAniso;
        let (state, trace) = run(&config, |u| f.eval(u), &[2.0, -1.0, 0.5]).unwrap();
        assert_eq!(trace.records.len(), 50);
        assert_eq!(state.iteration(), 50);
    }

    #[test]
    fn huge_epsilon_stops_immediately() {
        let config = DfoConfig {
            nu: Some(1.0),
            epsilon: 100.0,
            delta: DeltaChoice::Auto,
            max_iter: 1000,
            mode: Mode::GradientStop,
            fstar: Some(0.0),
        };
        let f = SuiteFunction::Sphere;
        let (state, _) = run(&config, |u| f.eval(u), &[1.0, 1.0]).unwrap();
        assert!(state.iteration() <= 1);
    }

    #[test]
    fn long_run_keeps_regularity() {
        // Drift guard over 10³ reflections on a smooth objective.
        let config = DfoConfig {
            nu: Some(1.0),
            epsilon: 1e-9,
            delta: DeltaChoice::Fixed(0.05),
            max_iter: 1000,
            mode: Mode::FixedBudget,
            fstar: None,
        };
        let f = SuiteFunction::SmoothAbs;
        let (state, _) = run(&config, |u| f.eval(u), &[3.0, -2.0]).unwrap();
        assert!(state.regularity_spread() <= 1e-6);
        assert_abs_diff_eq!(state.delta(), 0.05, epsilon = 1e-12);
    }

    #[test]
    fn lemma_sandwich_and_variance_hold_along_run() {
        let config = DfoConfig {
            nu: Some(1.0),
            epsilon: 0.05,
            delta: DeltaChoice::Auto,
            max_iter: 100_000,
            mode: Mode::GradientStop,
            fstar: Some(0.0),
        };
        let f = SuiteFunction::QuadAniso;
        let (_, trace) = run(&config, |u| f.eval(u), &[1.5, -1.0, 0.5]).unwrap();
        let n = 3.0;
        let nu = 1.0;
        let delta = trace.delta;
        let slack = 1e-9;
        for rec in &trace.records {
            let width = 2.0 * (n + 1.0) / n * nu * delta * delta;
            assert!(rec.f_reflection >= rec.model_value - width - slack);
            assert!(rec.f_reflection <= rec.model_value + width + slack);
            // Gradient bound of the stopping rule.
            assert!(
                rec.simplex_gradient_norm
                    <= n / delta * rec.stop_quantity + slack
            );
        }
    }
}
