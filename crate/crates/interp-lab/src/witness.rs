//! Worst-case witness functions: explicit members of the ν-Lipschitz-
//! gradient class that achieve the analytical bounds, plus numerical
//! membership checks (the ψ inequality and sampled gradient-Lipschitz
//! tests) that re-verify the constructions against implementation bugs.

use crate::geometry::{BarycentricData, InterpolationInstance};
use crate::linalg::{self, dot, sub, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Slack allowed on the sampled membership inequalities.
const MEMBERSHIP_SLACK: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum WitnessError {
    #[error("membership violation ({which}): excess {excess:.3e} at u = {u:?}, v = {v:?}")]
    MembershipViolation {
        which: &'static str,
        excess: f64,
        u: Vec<f64>,
        v: Vec<f64>,
    },
}

/// An explicit function with known value and gradient everywhere.
#[derive(Debug, Clone)]
pub enum WitnessFunction {
    /// f(u) = ν‖u‖²/2
    QuadraticHalfNormPos { nu: f64 },
    /// f(u) = −ν‖u‖²/2
    QuadraticHalfNormNeg { nu: f64 },
    /// f(u) = c + g·u + ½ Hu·u with symmetric H
    QuadraticH { c: f64, g: Vec<f64>, h: Matrix },
    /// The piecewise quadratic achieving the bivariate obtuse bound:
    /// ν‖u−w‖²/2, minus ν[(d·(u−w))²]/‖d‖² on the side d·(u−w) ≤ 0.
    PiecewiseQuadratic { w: Vec<f64>, d: Vec<f64>, nu: f64 },
}

impl WitnessFunction {
    pub fn describe(&self) -> String {
        match self {
            WitnessFunction::QuadraticHalfNormPos { nu } => format!("+{nu}/2·‖u‖²"),
            WitnessFunction::QuadraticHalfNormNeg { nu } => format!("-{nu}/2·‖u‖²"),
            WitnessFunction::QuadraticH { .. } => "quadratic with worst-case Hessian".into(),
            WitnessFunction::PiecewiseQuadratic { w, .. } => {
                format!("piecewise quadratic centered at {w:?}")
            }
        }
    }
}

/// Evaluates a witness: returns (value, gradient).
pub fn eval(w: &WitnessFunction, u: &[f64]) -> (f64, Vec<f64>) {
    match w {
        WitnessFunction::QuadraticHalfNormPos { nu } => {
            (0.5 * nu * dot(u, u), linalg::scale(u, *nu))
        }
        WitnessFunction::QuadraticHalfNormNeg { nu } => {
            (-0.5 * nu * dot(u, u), linalg::scale(u, -*nu))
        }
        WitnessFunction::QuadraticH { c, g, h } => {
            let hu = h.matvec(u);
            (c + dot(g, u) + 0.5 * dot(&hu, u), linalg::add(g, &hu))
        }
        WitnessFunction::PiecewiseQuadratic { w, d, nu } => {
            let r = sub(u, w);
            let base = 0.5 * nu * dot(&r, &r);
            let grad_base = linalg::scale(&r, *nu);
            let s = dot(d, &r);
            if s <= 0.0 {
                let dd = dot(d, d);
                let value = base - nu * s * s / dd;
                let grad = linalg::add_scaled(&grad_base, -2.0 * nu * s / dd, d);
                (value, grad)
            } else {
                (base, grad_base)
            }
        }
    }
}

/// Interpolation error Σ_{i=0..n+1} ℓᵢ f(xᵢ) = f̂(x) − f(x) of a witness
/// on an instance. Signed; sharp reports match its absolute value.
pub fn achieved_error(
    w: &WitnessFunction,
    inst: &InterpolationInstance,
    bary: &BarycentricData,
) -> f64 {
    (0..=inst.num_samples())
        .map(|i| bary.ell(i) * eval(w, inst.point(i)).0)
        .sum()
}

/// ψ(u, v, H) of the interpolation-condition family: nonpositive for any
/// data sampled from a function with ν-Lipschitz gradient and any H.
#[allow(clippy::too_many_arguments)]
pub fn psi(
    u: &[f64],
    v: &[f64],
    fu: f64,
    fv: f64,
    gu: &[f64],
    gv: &[f64],
    h: &Matrix,
    nu: f64,
) -> f64 {
    let duv = sub(u, v);
    let h_duv = h.matvec(&duv);
    // (νI−H)(u−v) and (νI+H)(u−v)
    let minus = sub(&linalg::scale(&duv, nu), &h_duv);
    let plus = linalg::add(&linalg::scale(&duv, nu), &h_duv);
    fu - fv
        - dot(&minus, gu) / (2.0 * nu)
        - dot(&plus, gv) / (2.0 * nu)
        - dot(&h_duv, &h_duv) / (4.0 * nu)
        - nu / 4.0 * dot(&duv, &duv)
}

/// Axis-aligned sampling region.
#[derive(Debug, Clone)]
pub struct SampleBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl SampleBox {
    /// Smallest box containing `points`, inflated about its center by
    /// `inflate` (2.0 doubles each half-width).
    pub fn covering<'a>(points: impl IntoIterator<Item = &'a [f64]>, inflate: f64) -> SampleBox {
        let mut lo: Vec<f64> = Vec::new();
        let mut hi: Vec<f64> = Vec::new();
        for p in points {
            if lo.is_empty() {
                lo = p.to_vec();
                hi = p.to_vec();
            } else {
                for j in 0..p.len() {
                    lo[j] = lo[j].min(p[j]);
                    hi[j] = hi[j].max(p[j]);
                }
            }
        }
        for j in 0..lo.len() {
            let c = 0.5 * (lo[j] + hi[j]);
            let half = 0.5 * (hi[j] - lo[j]).max(1e-3);
            lo[j] = c - inflate * half;
            hi[j] = c + inflate * half;
        }
        SampleBox { lo, hi }
    }

    pub fn covering_instance(inst: &InterpolationInstance, inflate: f64) -> SampleBox {
        let pts: Vec<&[f64]> = (0..=inst.num_samples()).map(|i| inst.point(i)).collect();
        SampleBox::covering(pts, inflate)
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn sample_point(&self, rng: &mut impl Rng) -> Vec<f64> {
        (0..self.dim())
            .map(|j| {
                if self.hi[j] > self.lo[j] {
                    rng.gen_range(self.lo[j]..self.hi[j])
                } else {
                    self.lo[j]
                }
            })
            .collect()
    }
}

/// Outcome of a sampled membership check.
#[derive(Debug, Clone)]
pub struct MembershipReport {
    pub pairs: usize,
    /// max ‖Df(u)−Df(v)‖ / ‖u−v‖ over the sampled pairs
    pub max_lipschitz_ratio: f64,
    /// max ‖Df(u)−Df(v)‖ − ν‖u−v‖ (≤ slack for members)
    pub max_lipschitz_excess: f64,
    /// max violation of the pairwise interpolation inequality
    pub max_interp_excess: f64,
}

/// Draws `samples` seeded point pairs in `region` and checks both the
/// gradient-Lipschitz inequality and the pairwise interpolation
/// inequality with slack 1e-9, reporting the maximal violations.
pub fn check_c11(
    w: &WitnessFunction,
    nu: f64,
    samples: usize,
    region: &SampleBox,
    seed: u64,
) -> Result<MembershipReport, WitnessError> {
    assert!(samples >= 2, "need at least two sample pairs");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = MembershipReport {
        pairs: samples,
        max_lipschitz_ratio: 0.0,
        max_lipschitz_excess: f64::NEG_INFINITY,
        max_interp_excess: f64::NEG_INFINITY,
    };
    for _ in 0..samples {
        let u = region.sample_point(&mut rng);
        let v = region.sample_point(&mut rng);
        let (fu, gu) = eval(w, &u);
        let (fv, gv) = eval(w, &v);
        let duv = linalg::dist(&u, &v);
        let dg = linalg::dist(&gu, &gv);

        let lip_excess = dg - nu * duv;
        report.max_lipschitz_excess = report.max_lipschitz_excess.max(lip_excess);
        if duv > 1e-12 {
            report.max_lipschitz_ratio = report.max_lipschitz_ratio.max(dg / duv);
        }
        if lip_excess > MEMBERSHIP_SLACK * (1.0 + nu * duv) {
            return Err(WitnessError::MembershipViolation {
                which: "gradient Lipschitz",
                excess: lip_excess,
                u,
                v,
            });
        }

        // f(v) ≤ f(u) + ½(Df(u)+Df(v))·(v−u) + ν/4‖v−u‖² − 1/(4ν)‖Df(v)−Df(u)‖²
        let vu = sub(&v, &u);
        let rhs = fu + 0.5 * dot(&linalg::add(&gu, &gv), &vu) + nu / 4.0 * dot(&vu, &vu)
            - dg * dg / (4.0 * nu);
        let interp_excess = fv - rhs;
        report.max_interp_excess = report.max_interp_excess.max(interp_excess);
        if interp_excess > MEMBERSHIP_SLACK * (1.0 + fu.abs() + fv.abs()) {
            return Err(WitnessError::MembershipViolation {
                which: "interpolation inequality",
                excess: interp_excess,
                u,
                v,
            });
        }
    }
    Ok(report)
}
