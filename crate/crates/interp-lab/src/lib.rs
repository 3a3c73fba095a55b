//! Sharp error bounds for multivariate linear interpolation and
//! extrapolation of functions with a ν-Lipschitz gradient.
//!
//! Given an affinely independent sample set Θ ⊂ Rⁿ and a query point x,
//! the unique affine interpolant f̂ approximates f with an error
//! |f̂(x) − f(x)| that this crate bounds, certifies, and demonstrates:
//!
//! - [`bounds`] — analytical bounds: the anchored Taylor bound and its
//!   minimized form, the hull interpolation bound, the quadratic
//!   eigenvalue bound (ν/2)Σ|λᵢ(G)| with the μ sharpness certificate,
//!   the bivariate obtuse-zone bound with asymmetric worst-case
//!   curvature, and a sharp-bound dispatcher for the plane.
//! - [`eep`] — a numerical sharp-bound oracle: the convex QCQP over
//!   function values and gradients at Θ ∪ {x}, solved by a
//!   self-contained log-barrier interior-point method.
//! - [`witness`] — explicit worst-case functions achieving the bounds,
//!   with sampled membership checks.
//! - [`geometry`] — barycentric coordinates, Lagrange gradients, the
//!   curvature matrix G, region classification, and the query/sample
//!   swap reduction.
//! - [`dfo`] — a reflection-only simplex optimizer with a provable
//!   iteration complexity and a gradient-accuracy stopping rule.
//! - [`cli`] — the command implementations behind the `interp-lab`
//!   binary (bound reports, grid sweeps, certification, probes).
//!
//! Start with the runnable examples:
//!
//! ```bash
//! cargo run --example bounds_tour
//! cargo run --example eep_oracle
//! cargo run --example obtuse_zones
//! cargo run --example dfo_minimize
//! ```

pub mod bounds;
pub mod cli;
pub mod dfo;
pub mod eep;
pub mod geometry;
pub mod linalg;
pub mod sample;
pub mod witness;

pub use bounds::{BoundReport, Method, Sharpness};
pub use geometry::{BarycentricData, CurvatureSpectrum, InterpolationInstance, RegionClass};
pub use witness::WitnessFunction;
