use interp_lab::eep::{self};
use interp_lab::geometry::{self, InterpolationInstance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

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

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(57);
    let inst = random_instance(&mut rng, 2);
    println!("theta = {:?}", inst.theta());
    println!("x = {:?}", inst.x());
    let bary = geometry::barycentric(&inst).unwrap();
    println!("ell = {:?}", bary.ells());
    for tol in [1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7] {
        match eep::solve(&eep::build(&inst).unwrap(), tol) {
            Ok(sol) => println!("tol {tol:.0e}: obj {:+.8} iters {}", sol.objective, sol.iterations),
            Err(e) => println!("tol {tol:.0e}: FAILED {e}"),
        }
    }
}
