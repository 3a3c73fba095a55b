//! Seeded random generation of interpolation instances for experiments
//! and test suites. Draws are rejection-filtered on the conditioning of
//! the sample set so that downstream tolerances are meaningful.

use crate::dfo::regular_simplex;
use crate::geometry::InterpolationInstance;
use crate::linalg::{dot, sub};
use rand::Rng;

/// Conditioning cap for accepted sample sets.
const CONDITION_CAP: f64 = 1e6;

/// Sample set with coordinates drawn uniformly from [−2, 2].
pub fn random_simplex(rng: &mut impl Rng, n: usize) -> Vec<Vec<f64>> {
    (0..n + 1)
        .map(|_| (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect())
        .collect()
}

/// Well-conditioned instance with the query point drawn from [−3, 3]ⁿ.
pub fn random_instance(rng: &mut impl Rng, n: usize, nu: f64) -> InterpolationInstance {
    loop {
        let theta = random_simplex(rng, n);
        let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
        if let Ok(inst) = InterpolationInstance::new(theta, x, nu) {
            if inst.condition().map(|c| c < CONDITION_CAP).unwrap_or(false) {
                return inst;
            }
        }
    }
}

/// Instance with x a strictly interior convex combination of the samples.
pub fn random_interior_instance(rng: &mut impl Rng, n: usize, nu: f64) -> InterpolationInstance {
    loop {
        let theta = random_simplex(rng, n);
        let mut weights: Vec<f64> = (0..n + 1).map(|_| rng.gen_range(0.05..1.0)).collect();
        let s: f64 = weights.iter().sum();
        for w in weights.iter_mut() {
            *w /= s;
        }
        let x: Vec<f64> = (0..n)
            .map(|j| (0..n + 1).map(|i| weights[i] * theta[i][j]).sum())
            .collect();
        if let Ok(inst) = InterpolationInstance::new(theta, x, nu) {
            if inst.condition().map(|c| c < CONDITION_CAP).unwrap_or(false) {
                return inst;
            }
        }
    }
}

/// Instance with x strictly inside the cone behind one sample point, so
/// exactly one Lagrange value is positive.
pub fn random_cone_instance(rng: &mut impl Rng, n: usize, nu: f64) -> InterpolationInstance {
    loop {
        let theta = random_simplex(rng, n);
        let apex = rng.gen_range(0..n + 1);
        // x = x_apex + Σ αⱼ (x_apex − xⱼ) with αⱼ > 0.
        let mut x = theta[apex].clone();
        for (j, t) in theta.iter().enumerate() {
            if j == apex {
                continue;
            }
            let alpha = rng.gen_range(0.1..1.0);
            for d in 0..n {
                x[d] += alpha * (theta[apex][d] - t[d]);
            }
        }
        if let Ok(inst) = InterpolationInstance::new(theta, x, nu) {
            if inst.condition().map(|c| c < CONDITION_CAP).unwrap_or(false) {
                return inst;
            }
        }
    }
}

/// Whether no vertex of the simplex carries an obtuse angle:
/// (xⱼ−xᵢ)·(x_k−xᵢ) ≥ 0 for all distinct i, j, k.
pub fn is_acute(theta: &[Vec<f64>]) -> bool {
    let m = theta.len();
    for i in 0..m {
        for j in 0..m {
            if j == i {
                continue;
            }
            for k in (j + 1)..m {
                if k == i {
                    continue;
                }
                if dot(&sub(&theta[j], &theta[i]), &sub(&theta[k], &theta[i])) < 0.0 {
                    return false;
                }
            }
        }
    }
    true
}

/// Jittered regular simplex that stays acute; `None` if the draw fails
/// the acuteness check.
pub fn random_acute_simplex(rng: &mut impl Rng, n: usize) -> Option<Vec<Vec<f64>>> {
    let center: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mut theta = regular_simplex(&center, 1.0, n);
    let jitter = 0.25 / n as f64;
    for p in theta.iter_mut() {
        for v in p.iter_mut() {
            *v += rng.gen_range(-jitter..jitter);
        }
    }
    if is_acute(&theta) {
        Some(theta)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::barycentric;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn interior_instances_have_positive_ells() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let inst = random_interior_instance(&mut rng, 3, 1.0);
            let bary = barycentric(&inst).unwrap();
            assert!(bary.sample_ells().iter().all(|&l| l > 0.0));
        }
    }

    #[test]
    fn cone_instances_have_one_positive_ell() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let inst = random_cone_instance(&mut rng, 2, 1.0);
            let bary = barycentric(&inst).unwrap();
            assert_eq!(bary.i_plus().len(), 1);
        }
    }

    #[test]
    fn regular_simplex_is_acute() {
        for n in 2..=5 {
            let theta = regular_simplex(&vec![0.0; n], 1.0, n);
            assert!(is_acute(&theta));
        }
    }

    #[test]
    fn obtuse_triangle_detected() {
        let theta = vec![vec![0.0, 0.0], vec![2.0, 1.8], vec![-2.0, 0.0]];
        assert!(!is_acute(&theta));
    }
}
