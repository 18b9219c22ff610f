//! Seeded random instances for the randomized test suites.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::fan::{stacky_fan_of_polytope, StackyFan};
use crate::polytope::{LatticePolytope, Point};

/// A random lattice polytope with its complete stacky fan from the origin.
#[derive(Clone, Debug)]
pub struct Instance {
    pub polytope: LatticePolytope,
    pub fan: StackyFan,
    /// Multipliers drawn at random rather than read off the polytope.
    pub random_multipliers: bool,
}

fn random_points(rng: &mut ChaCha8Rng, d: usize, bound: i64) -> Vec<Point> {
    let n = rng.gen_range(d + 1..=8);
    (0..n)
        .map(|_| (0..d).map(|_| rng.gen_range(-bound..=bound)).collect())
        .collect()
}

/// Convex hull of `d + 1..=8` random points of `[-bound, bound]^d`,
/// resampled until it is full-dimensional (and, if asked, has the origin in
/// its interior).
pub fn random_polytope(
    rng: &mut ChaCha8Rng,
    d: usize,
    bound: i64,
    origin_interior: bool,
) -> LatticePolytope {
    loop {
        let Ok(p) = LatticePolytope::new(d, &random_points(rng, d, bound)) else {
            continue;
        };
        if !origin_interior || p.contains_in_interior(&vec![0; d]) {
            return p;
        }
    }
}

/// Complete stacky fan over the boundary of a random polytope in
/// `[-4, 4]^d`, simplicialized by pulling, optionally with multipliers
/// drawn from `{1, 2, 3}`.
pub fn random_complete_instance(rng: &mut ChaCha8Rng, d: usize, random_multipliers: bool) -> Instance {
    let polytope = random_polytope(rng, d, 4, true);
    let mut fan = stacky_fan_of_polytope(&polytope, &vec![0; d]).expect("origin is interior");
    if random_multipliers {
        let a: Vec<i64> = (0..fan.rays().len()).map(|_| rng.gen_range(1..=3)).collect();
        fan = fan.with_multipliers(&a).expect("positive multipliers");
    }
    Instance {
        polytope,
        fan,
        random_multipliers,
    }
}
