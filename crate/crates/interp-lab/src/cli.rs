//! Command implementations behind the `interp-lab` binary: problem-file
//! parsing, bound reports, μ certification, the EEP solve, grid sweeps
//! emitting heatmap CSV data, the simplex optimizer driver, and the
//! acute-simplex conjecture probe.
//!
//! Everything here writes to a caller-supplied writer so the commands
//! are directly testable.

use crate::bounds::{self, Sharpness};
use crate::dfo::{self, DeltaChoice, DfoConfig, Mode, SuiteFunction};
use crate::eep;
use crate::geometry::{self, InterpolationInstance};
use crate::sample;
use crate::witness::SampleBox;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::io::{self, Write};
use thiserror::Error;

/// Worker-count override for the sweep pool.
pub const THREADS_ENV: &str = "INTERP_LAB_THREADS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("degenerate geometry: {0}")]
    Geometry(String),
    #[error("solver failure: {0}")]
    Solver(String),
    #[error("io error: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    /// Exit-code contract: 2 parse, 3 degenerate geometry, 4 solver.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => 2,
            CliError::Geometry(_) => 3,
            CliError::Solver(_) => 4,
        }
    }
}

impl From<geometry::GeometryError> for CliError {
    fn from(e: geometry::GeometryError) -> Self {
        CliError::Geometry(e.to_string())
    }
}

impl From<bounds::BoundsError> for CliError {
    fn from(e: bounds::BoundsError) -> Self {
        CliError::Geometry(e.to_string())
    }
}

impl From<eep::EepError> for CliError {
    fn from(e: eep::EepError) -> Self {
        match e {
            eep::EepError::DegenerateSampleSet(m) => CliError::Geometry(m),
            eep::EepError::InvalidTolerance(t) => CliError::Parse(format!("tolerance {t}")),
            other => CliError::Solver(other.to_string()),
        }
    }
}

impl From<dfo::DfoError> for CliError {
    fn from(e: dfo::DfoError) -> Self {
        match e {
            dfo::DfoError::InvalidConfig(m) => CliError::Parse(m),
            other => CliError::Solver(other.to_string()),
        }
    }
}

/// On-disk problem description: a JSON document with the Lipschitz
/// constant, the sample set, and (optionally) the query point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemFile {
    pub nu: f64,
    pub theta: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<f64>>,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<ProblemFile, CliError> {
        let p: ProblemFile =
            serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        let finite = p.nu.is_finite()
            && p.theta.iter().all(|r| r.iter().all(|v| v.is_finite()))
            && p.x.iter().all(|r| r.iter().all(|v| v.is_finite()));
        if !finite {
            return Err(CliError::Parse("problem file contains NaN or Inf".into()));
        }
        Ok(p)
    }

    /// Serializes with 17 significant digits so doubles round-trip
    /// losslessly and byte-identically.
    pub fn to_json(&self) -> String {
        let mut buf = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17);
        self.serialize(&mut ser).expect("in-memory serialization");
        String::from_utf8(buf).expect("json is utf-8")
    }

    /// Builds the instance, applying command-line overrides.
    pub fn instance(
        &self,
        x_override: Option<&[f64]>,
        nu_override: Option<f64>,
    ) -> Result<InterpolationInstance, CliError> {
        let x = match (x_override, &self.x) {
            (Some(x), _) => x.to_vec(),
            (None, Some(x)) => x.clone(),
            (None, None) => {
                return Err(CliError::Parse(
                    "no query point: the problem file has no \"x\" and --x was not given".into(),
                ))
            }
        };
        let nu = nu_override.unwrap_or(self.nu);
        InterpolationInstance::new(self.theta.clone(), x, nu).map_err(CliError::from)
    }
}

struct Sig17;

impl serde_json::ser::Formatter for Sig17 {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + io::Write,
    {
        write!(writer, "{value:.16e}")
    }
}

/// Comma-separated floats ("0.5,-1.25").
pub fn parse_coords(text: &str) -> Result<Vec<f64>, CliError> {
    text.split(',')
        .map(|t| {
            let v: f64 = t
                .trim()
                .parse()
                .map_err(|_| CliError::Parse(format!("bad coordinate {t:?}")))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(CliError::Parse(format!("non-finite coordinate {t:?}")))
            }
        })
        .collect()
}

/// Grid specification over a bivariate box with per-axis resolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub x1_min: f64,
    pub x1_max: f64,
    pub x2_min: f64,
    pub x2_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl SweepSpec {
    /// "a,b,c,d,nx,ny" → box [a,b]×[c,d] at resolution nx×ny.
    pub fn parse(text: &str) -> Result<SweepSpec, CliError> {
        let parts: Vec<&str> = text.split(',').map(str::trim).collect();
        if parts.len() != 6 {
            return Err(CliError::Parse(format!(
                "--grid needs 6 fields a,b,c,d,nx,ny, got {}",
                parts.len()
            )));
        }
        let f = |i: usize| -> Result<f64, CliError> {
            parts[i]
                .parse()
                .map_err(|_| CliError::Parse(format!("bad grid bound {:?}", parts[i])))
        };
        let u = |i: usize| -> Result<usize, CliError> {
            parts[i]
                .parse()
                .map_err(|_| CliError::Parse(format!("bad grid resolution {:?}", parts[i])))
        };
        let spec = SweepSpec {
            x1_min: f(0)?,
            x1_max: f(1)?,
            x2_min: f(2)?,
            x2_max: f(3)?,
            nx: u(4)?,
            ny: u(5)?,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.nx < 2 || self.ny < 2 {
            return Err(CliError::Parse("grid resolution must be at least 2".into()));
        }
        if !(self.x1_min < self.x1_max && self.x2_min < self.x2_max) {
            return Err(CliError::Parse("grid box is empty".into()));
        }
        Ok(())
    }

    /// Grid points in row-major order (x2 outer, x1 inner).
    pub fn points(&self) -> Vec<(f64, f64)> {
        let mut pts = Vec::with_capacity(self.nx * self.ny);
        for iy in 0..self.ny {
            let x2 =
                self.x2_min + (self.x2_max - self.x2_min) * iy as f64 / (self.ny - 1) as f64;
            for ix in 0..self.nx {
                let x1 =
                    self.x1_min + (self.x1_max - self.x1_min) * ix as f64 / (self.nx - 1) as f64;
                pts.push((x1, x2));
            }
        }
        pts
    }
}

/// One evaluated grid point; failed computations leave fields empty.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub x1: f64,
    pub x2: f64,
    pub dispatcher: Option<f64>,
    pub method: Option<&'static str>,
    pub eep: Option<f64>,
    pub improved: Option<f64>,
    pub quadratic: Option<f64>,
    pub failure: Option<String>,
}

#[derive(Debug)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    pub with_eep: bool,
    pub failures: usize,
}

impl SweepOutcome {
    pub fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        if self.with_eep {
            out.write_all(b"x1,x2,dispatcher,method,eep,improved,quadratic\n")?;
        } else {
            out.write_all(b"x1,x2,dispatcher,method,improved,quadratic\n")?;
        }
        let fmt = |v: &Option<f64>| v.map(|v| v.to_string()).unwrap_or_default();
        for r in &self.rows {
            if self.with_eep {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.x1,
                    r.x2,
                    fmt(&r.dispatcher),
                    r.method.unwrap_or(""),
                    fmt(&r.eep),
                    fmt(&r.improved),
                    fmt(&r.quadratic)
                )?;
            } else {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    r.x1,
                    r.x2,
                    fmt(&r.dispatcher),
                    r.method.unwrap_or(""),
                    fmt(&r.improved),
                    fmt(&r.quadratic)
                )?;
            }
        }
        Ok(())
    }
}

fn sweep_point(
    problem: &ProblemFile,
    nu: f64,
    base_x: &[f64],
    x1: f64,
    x2: f64,
    with_eep: bool,
    tol: f64,
) -> SweepRow {
    let mut row = SweepRow {
        x1,
        x2,
        dispatcher: None,
        method: None,
        eep: None,
        improved: None,
        quadratic: None,
        failure: None,
    };
    let mut x = base_x.to_vec();
    x[0] = x1;
    x[1] = x2;
    let inst = match InterpolationInstance::new(problem.theta.clone(), x, nu) {
        Ok(i) => i,
        Err(e) => {
            row.failure = Some(e.to_string());
            return row;
        }
    };
    let n = inst.dim();
    match geometry::barycentric(&inst) {
        Ok(bary) => {
            row.improved = Some(bounds::bound_improved(&inst, &bary).value);
            if let Ok(spec) = geometry::curvature(&inst, &bary) {
                row.quadratic = Some(bounds::bound_quadratic(&inst, &spec).0.value);
            }
        }
        Err(e) => {
            row.failure = Some(e.to_string());
            return row;
        }
    }
    match bounds::dispatch(&inst) {
        Ok(out) => {
            // Outside the bivariate case the dispatcher value is only
            // reported where a sharpness certificate applies.
            if n == 2 || out.report.sharp == Sharpness::ProvenSharp {
                row.dispatcher = Some(out.report.value);
            }
            row.method = Some(out.label());
        }
        Err(e) => row.failure = Some(e.to_string()),
    }
    if with_eep {
        match eep::sharp_bound(&inst, tol) {
            Ok(v) => row.eep = Some(v),
            Err(e) => row.failure = Some(e.to_string()),
        }
    }
    row
}

/// Evaluates the grid in a worker pool (size overridable through
/// `INTERP_LAB_THREADS`), assembling rows in deterministic grid order.
pub fn run_sweep(
    problem: &ProblemFile,
    spec: &SweepSpec,
    nu_override: Option<f64>,
    with_eep: bool,
    tol: f64,
) -> Result<SweepOutcome, CliError> {
    spec.validate()?;
    let nu = nu_override.unwrap_or(problem.nu);
    if !(nu > 0.0 && nu.is_finite()) {
        return Err(CliError::Parse(format!("nu must be positive, got {nu}")));
    }
    let n = problem
        .theta
        .first()
        .map(|p| p.len())
        .ok_or_else(|| CliError::Parse("empty sample set".into()))?;
    if n < 2 {
        return Err(CliError::Parse("sweeps need dimension at least 2".into()));
    }
    if n > 2 && !with_eep {
        return Err(CliError::Parse(
            "dispatcher sweeps are bivariate; pass --eep for higher dimensions".into(),
        ));
    }
    let base_x = match &problem.x {
        Some(x) if x.len() == n => x.clone(),
        _ => vec![0.0; n],
    };
    let points = spec.points();
    let rows: Vec<SweepRow> = in_worker_pool(|| {
        points
            .par_iter()
            .map(|&(x1, x2)| sweep_point(problem, nu, &base_x, x1, x2, with_eep, tol))
            .collect()
    });
    let failures = rows.iter().filter(|r| r.failure.is_some()).count();
    Ok(SweepOutcome {
        rows,
        with_eep,
        failures,
    })
}

fn in_worker_pool<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    let threads = std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&k| k >= 1);
    match threads {
        Some(k) => match rayon::ThreadPoolBuilder::new().num_threads(k).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        },
        None => f(),
    }
}

/// Full bound report for one instance. Returns the JSON document when
/// requested so the caller can write it with lossless float formatting.
pub fn cmd_bound(
    problem: &ProblemFile,
    x_override: Option<&[f64]>,
    nu_override: Option<f64>,
    with_eep: bool,
    tol: f64,
    out: &mut dyn Write,
) -> Result<serde_json::Value, CliError> {
    let inst = problem.instance(x_override, nu_override)?;
    let n = inst.dim();
    let bary = geometry::barycentric(&inst)?;
    let spectrum = geometry::curvature(&inst, &bary)?;

    writeln!(out, "instance: n = {}, nu = {}", n, inst.nu())?;
    let ells: Vec<String> = (0..=n + 1).map(|i| format!("{:.6}", bary.ell(i))).collect();
    writeln!(out, "lagrange values (query first): [{}]", ells.join(", "))?;
    writeln!(
        out,
        "index sets: I+ = {:?}, I- = {:?}, zero = {:?}",
        bary.i_plus(),
        bary.i_minus(),
        bary.i_zero()
    )?;
    writeln!(
        out,
        "curvature inertia: {} positive, {} negative, {} zero",
        spectrum.n_pos, spectrum.n_neg, spectrum.n_zero
    )?;

    let improved = bounds::bound_improved(&inst, &bary);
    let anchored = bounds::bound_anchored(&inst, &bary, inst.x());
    let (quadratic, _) = bounds::bound_quadratic(&inst, &spectrum);
    let gradient = bounds::bound_gradient(&inst, &bary)?;
    let waldron = bounds::bound_waldron(&inst, &bary).ok();

    writeln!(out, "bounds:")?;
    let mut print_bound = |name: &str, rep: &bounds::BoundReport| -> io::Result<()> {
        let witness = rep
            .witness
            .as_ref()
            .map(|w| format!(", witness {}", w.describe()))
            .unwrap_or_default();
        writeln!(
            out,
            "  {name:<18} {:<14.8} {}{witness}",
            rep.value,
            rep.sharp.label()
        )
    };
    print_bound("anchored-at-x", &anchored)?;
    print_bound("improved", &improved)?;
    if let Some(w) = &waldron {
        print_bound("waldron-hull", w)?;
    }
    print_bound("quadratic-eigen", &quadratic)?;
    writeln!(out, "  {:<18} {gradient:<14.8} upper-only", "gradient")?;

    let mu = bounds::certify_mu(&inst, &bary, &spectrum);
    let mu_summary = match &mu {
        Ok(cert) => {
            let verdict = if cert.all_nonneg { "pass" } else { "fail" };
            format!("{verdict} (min entry {:.6})", cert.min_entry)
        }
        Err(e) => format!("unavailable ({e})"),
    };
    writeln!(out, "mu certificate: {mu_summary}")?;

    let mut dispatcher_json = serde_json::Value::Null;
    if n == 2 {
        let outcome = bounds::dispatch(&inst)?;
        let witness = outcome
            .report
            .witness
            .as_ref()
            .map(|w| w.describe())
            .unwrap_or_else(|| "none".into());
        writeln!(
            out,
            "dispatcher: {:.8} ({}, {}, {}, witness {witness})",
            outcome.report.value,
            outcome.label(),
            outcome.report.method.label(),
            outcome.report.sharp.label()
        )?;
        dispatcher_json = serde_json::json!({
            "value": outcome.report.value,
            "region": outcome.label(),
            "method": outcome.report.method.label(),
            "sharp": outcome.report.sharp.label(),
        });
    }

    let mut eep_json = serde_json::Value::Null;
    if with_eep {
        let sol = eep::solve(&eep::build(&inst)?, tol)?;
        writeln!(
            out,
            "eep sharp bound: {:.8} (iterations {}, barrier mu {:.1e}, max violation {:.1e}, kkt {:.1e})",
            sol.objective,
            sol.iterations,
            sol.barrier_mu_final,
            sol.max_constraint_violation,
            sol.kkt_residual
        )?;
        eep_json = serde_json::json!({
            "objective": sol.objective,
            "iterations": sol.iterations,
            "barrier_mu_final": sol.barrier_mu_final,
            "max_constraint_violation": sol.max_constraint_violation,
            "kkt_residual": sol.kkt_residual,
        });
    }

    Ok(serde_json::json!({
        "n": n,
        "nu": inst.nu(),
        "x": inst.x(),
        "lagrange": bary.ells(),
        "bounds": {
            "anchored_at_x": anchored.value,
            "improved": improved.value,
            "waldron": waldron.as_ref().map(|w| w.value),
            "quadratic": quadratic.value,
            "gradient": gradient,
        },
        "mu_pass": mu.as_ref().map(|c| c.all_nonneg).ok(),
        "dispatcher": dispatcher_json,
        "eep": eep_json,
    }))
}

/// Writes a JSON value with the same 17-significant-digit float format
/// as problem files.
pub fn write_json(value: &serde_json::Value, out: &mut dyn Write) -> Result<(), CliError> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Sig17);
    value
        .serialize(&mut ser)
        .map_err(|e| CliError::Parse(e.to_string()))?;
    out.write_all(&buf)?;
    out.write_all(b"\n")?;
    Ok(())
}

/// μ table with partition labels and the sharpness verdict.
pub fn cmd_certify(
    problem: &ProblemFile,
    x_override: Option<&[f64]>,
    nu_override: Option<f64>,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let inst = problem.instance(x_override, nu_override)?;
    let bary = geometry::barycentric(&inst)?;
    let spectrum = geometry::curvature(&inst, &bary)?;
    let cert = bounds::certify_mu(&inst, &bary, &spectrum).map_err(|e| match e {
        bounds::BoundsError::ZeroLagrangeValue => CliError::Geometry(e.to_string()),
        bounds::BoundsError::SingularPartition => CliError::Solver(e.to_string()),
        other => CliError::Geometry(other.to_string()),
    })?;

    let col_names: Vec<String> = cert
        .cols
        .iter()
        .map(|&j| {
            if j == 0 {
                "x (query)".to_string()
            } else {
                format!("x{j}")
            }
        })
        .collect();
    writeln!(out, "mu certificate (rows I+, columns I-):")?;
    write!(out, "{:>10}", "")?;
    for name in &col_names {
        write!(out, " {name:>12}")?;
    }
    writeln!(out)?;
    for (r, &i) in cert.rows.iter().enumerate() {
        write!(out, "{:>10}", format!("x{i}"))?;
        for c in 0..cert.mu.cols() {
            write!(out, " {:>12.6}", cert.mu.get(r, c))?;
        }
        writeln!(out)?;
    }
    writeln!(out, "min entry: {:.6e}", cert.min_entry)?;
    writeln!(
        out,
        "verdict: {}",
        if cert.all_nonneg {
            "pass — the quadratic eigenvalue bound is sharp here"
        } else {
            "fail — a negative weight; the quadratic bound is not certified"
        }
    )?;
    Ok(())
}

/// Solves the error estimation problem and prints diagnostics.
pub fn cmd_eep(
    problem: &ProblemFile,
    x_override: Option<&[f64]>,
    nu_override: Option<f64>,
    tol: f64,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let inst = problem.instance(x_override, nu_override)?;
    let p = eep::build(&inst)?;
    writeln!(
        out,
        "f-EEP: {} variables ({} raw), {} constraints",
        p.num_vars(),
        p.num_raw_vars(),
        p.num_constraints()
    )?;
    let sol = eep::solve(&p, tol)?;
    writeln!(out, "sharp bound: {:.10}", sol.objective)?;
    writeln!(out, "newton iterations: {}", sol.iterations)?;
    writeln!(out, "final barrier mu: {:.3e}", sol.barrier_mu_final)?;
    writeln!(
        out,
        "max constraint violation: {:.3e}",
        sol.max_constraint_violation
    )?;
    writeln!(out, "kkt residual: {:.3e}", sol.kkt_residual)?;
    Ok(())
}

/// Configuration of the `dfo` subcommand.
#[derive(Debug, Clone)]
pub struct DfoArgs {
    pub function: String,
    pub n: usize,
    pub start: Option<Vec<f64>>,
    pub epsilon: f64,
    pub nu: Option<f64>,
    pub mode: String,
    pub max_iter: usize,
    pub delta: Option<f64>,
    pub fstar: Option<f64>,
}

/// Runs the simplex optimizer on a suite function; returns the trace as
/// CSV text together with the summary printed to `out`.
pub fn cmd_dfo(args: &DfoArgs, out: &mut dyn Write) -> Result<String, CliError> {
    let f = SuiteFunction::from_name(&args.function).ok_or_else(|| {
        CliError::Parse(format!(
            "unknown function {:?}; available: {}",
            args.function,
            SuiteFunction::names().join(", ")
        ))
    })?;
    if args.n == 0 {
        return Err(CliError::Parse("dimension must be at least 1".into()));
    }
    let mode = match args.mode.as_str() {
        "gradient-stop" => Mode::GradientStop,
        "fixed-budget" => Mode::FixedBudget,
        other => {
            return Err(CliError::Parse(format!(
                "unknown mode {other:?}; use gradient-stop or fixed-budget"
            )))
        }
    };
    let start = match &args.start {
        Some(s) => {
            if s.len() != args.n {
                return Err(CliError::Parse(format!(
                    "start point has {} coordinates, expected {}",
                    s.len(),
                    args.n
                )));
            }
            s.clone()
        }
        // Distance 2 from the origin along the diagonal.
        None => vec![2.0 / (args.n as f64).sqrt(); args.n],
    };
    let nu = args.nu.unwrap_or_else(|| f.nu());
    let fstar = args.fstar.or(Some(f.fstar()));
    let config = DfoConfig {
        nu: Some(nu),
        epsilon: args.epsilon,
        delta: match args.delta {
            Some(d) => DeltaChoice::Fixed(d),
            None => DeltaChoice::Auto,
        },
        max_iter: args.max_iter,
        mode,
        fstar,
    };
    let (state, trace) = dfo::run(&config, |u| f.eval(u), &start)?;

    let mut csv = String::new();
    csv.push_str("iteration,stop_quantity,model_value,f_reflection,simplex_gradient_norm,analytic_gradient_norm");
    for j in 0..args.n {
        csv.push_str(&format!(",centroid_{j}"));
    }
    csv.push('\n');
    for rec in &trace.records {
        let analytic = crate::linalg::norm(&f.gradient(&rec.centroid));
        csv.push_str(&format!(
            "{},{},{},{},{},{}",
            rec.iteration,
            rec.stop_quantity,
            rec.model_value,
            rec.f_reflection,
            rec.simplex_gradient_norm,
            analytic
        ));
        for v in &rec.centroid {
            csv.push_str(&format!(",{v}"));
        }
        csv.push('\n');
    }

    let centroid = state.centroid();
    let final_grad = crate::linalg::norm(&f.gradient(&centroid));
    writeln!(out, "function: {} (n = {})", f.name(), args.n)?;
    writeln!(
        out,
        "mode: {}, delta = {:.6}, epsilon = {}, nu = {nu}",
        args.mode,
        trace.delta,
        args.epsilon
    )?;
    writeln!(out, "iterations: {}", state.iteration())?;
    writeln!(out, "final stop quantity: {:.6e}", state.stop_quantity())?;
    writeln!(out, "final analytic gradient norm: {final_grad:.6}")?;
    if let Some(fs) = fstar {
        let budget =
            dfo::complexity_budget(args.n, nu, args.epsilon, trace.initial_mean_value, fs);
        writeln!(
            out,
            "complexity budget: {budget} iterations — respected: {}",
            state.iteration() <= budget
        )?;
    }
    writeln!(
        out,
        "best value: {:.8} at {:?}",
        state
            .values()
            .iter()
            .fold(f64::INFINITY, |m, &v| m.min(v)),
        state.best_point()
    )?;
    Ok(csv)
}

/// Counts from the acute-simplex sweep: how often a negative μ weight
/// appears with and without obtuse vertex angles. Observational only.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ProbeReport {
    pub trials: usize,
    pub acute_instances: usize,
    pub acute_with_negative_mu: usize,
    pub nonacute_instances: usize,
    pub nonacute_with_negative_mu: usize,
    pub skipped: usize,
}

/// Samples random instances and records the sign pattern of the μ
/// weights against the vertex-angle geometry of the simplex.
pub fn cmd_probe_conjecture(
    seed: u64,
    trials: usize,
    n_min: usize,
    n_max: usize,
    out: &mut dyn Write,
) -> Result<ProbeReport, CliError> {
    if trials == 0 {
        return Err(CliError::Parse("trials must be at least 1".into()));
    }
    if n_min < 2 || n_max < n_min {
        return Err(CliError::Parse(
            "need 2 <= n_min <= n_max for the probe".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ProbeReport {
        trials,
        ..Default::default()
    };
    for trial in 0..trials {
        let n = rng.gen_range(n_min..=n_max);
        // Alternate between acute-biased draws and free draws so both
        // branches of the observation accumulate counts.
        let theta = if trial % 2 == 0 {
            sample::random_acute_simplex(&mut rng, n)
                .unwrap_or_else(|| sample::random_simplex(&mut rng, n))
        } else {
            sample::random_simplex(&mut rng, n)
        };
        let point_refs: Vec<&[f64]> = theta.iter().map(|p| p.as_slice()).collect();
        let sbox = SampleBox::covering(point_refs, 2.5);
        let x = sbox.sample_point(&mut rng);
        let Ok(inst) = InterpolationInstance::new(theta, x, 1.0) else {
            report.skipped += 1;
            continue;
        };
        let Ok(bary) = geometry::barycentric(&inst) else {
            report.skipped += 1;
            continue;
        };
        let Ok(spectrum) = geometry::curvature(&inst, &bary) else {
            report.skipped += 1;
            continue;
        };
        let Ok(weights) = geometry::mu_weights(&inst, &bary, &spectrum) else {
            report.skipped += 1;
            continue;
        };
        let negative = !weights.all_nonneg();
        if sample::is_acute(inst.theta()) {
            report.acute_instances += 1;
            if negative {
                report.acute_with_negative_mu += 1;
            }
        } else {
            report.nonacute_instances += 1;
            if negative {
                report.nonacute_with_negative_mu += 1;
            }
        }
    }
    writeln!(out, "trials: {} (skipped {})", report.trials, report.skipped)?;
    writeln!(
        out,
        "acute simplices: {} — with a negative mu weight: {}",
        report.acute_instances, report.acute_with_negative_mu
    )?;
    writeln!(
        out,
        "non-acute simplices: {} — with a negative mu weight: {}",
        report.nonacute_instances, report.nonacute_with_negative_mu
    )?;
    writeln!(
        out,
        "observation only; no claim is asserted by this command"
    )?;
    Ok(report)
}
