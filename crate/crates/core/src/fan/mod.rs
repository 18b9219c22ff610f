//! Stacky fans: simplicial fans with a lattice point `b_i` on each ray, the
//! piecewise linear function `psi` with `psi(b_i) = 1`, box elements and
//! h-vectors.

pub mod boxes;
pub mod raw;
pub mod stacky;

pub use boxes::{BoxElement, Decomposition};
pub use raw::{fan_over_boundary, simplicialize, stacky_fan_of_polytope, RawFan};
pub use stacky::{Location, Ray, SimplicialCone, StackyFan};

/// Rays listed counterclockwise as `(v, a)` around a complete 2D fan; the
/// maximal cones are consecutive pairs.
pub fn planar_fan(rays: &[([i64; 2], i64)]) -> crate::Result<StackyFan> {
    let n = rays.len();
    let rays = rays
        .iter()
        .map(|(v, a)| Ray::new(v.to_vec(), *a))
        .collect::<crate::Result<Vec<_>>>()?;
    let cones = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
    StackyFan::new(2, rays, cones)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::polytope::fixtures::{hexagon, unit_square};

    pub fn hexagon_fan() -> StackyFan {
        stacky_fan_of_polytope(&hexagon(), &[0, 0]).unwrap()
    }

    pub fn second_example_fan() -> StackyFan {
        planar_fan(&[
            ([1, 0], 1),
            ([1, 3], 1),
            ([0, 1], 2),
            ([-2, 3], 1),
            ([-2, 1], 1),
            ([-1, 0], 2),
            ([0, -1], 1),
        ])
        .unwrap()
    }

    /// Same support with the ray through (-2,1) removed.
    pub fn second_example_coarse() -> StackyFan {
        planar_fan(&[
            ([1, 0], 1),
            ([1, 3], 1),
            ([0, 1], 2),
            ([-2, 3], 1),
            ([-1, 0], 2),
            ([0, -1], 1),
        ])
        .unwrap()
    }

    pub fn quadrant_fan() -> StackyFan {
        stacky_fan_of_polytope(&unit_square(), &[0, 0]).unwrap()
    }

    /// Fan of the reflexive square `[-1,1]^2`; its cones have index 2.
    pub fn reflexive_square_fan() -> StackyFan {
        let p = crate::polytope::LatticePolytope::new(
            2,
            &[vec![-1, -1], vec![-1, 1], vec![1, -1], vec![1, 1]],
        )
        .unwrap();
        stacky_fan_of_polytope(&p, &[0, 0]).unwrap()
    }

    /// Fan of the diamond `conv(+-e_1, +-e_2)`: every cone unimodular.
    pub fn unimodular_fan() -> StackyFan {
        planar_fan(&[([1, 0], 1), ([0, 1], 1), ([-1, 0], 1), ([0, -1], 1)]).unwrap()
    }
}
