use crate::algebra::linalg::{int_rank, primitive};
use crate::error::{Error, Result};
use crate::polytope::hull::{cone_hull, face_lattice};
use crate::polytope::{sub, LatticePolytope, Point};

use super::stacky::{Ray, StackyFan};

/// A fan whose maximal cones may be non-simplicial, given by primitive ray
/// generators, multipliers and maximal cones as ray-index lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawFan {
    pub rank: usize,
    pub rays: Vec<Point>,
    pub multipliers: Vec<i64>,
    pub max_cones: Vec<Vec<usize>>,
}

/// Fan over the faces of `P - alpha` that miss the origin. Rays run through
/// the vertices other than `alpha`; each multiplier puts `b_i` on the vertex.
pub fn fan_over_boundary(p: &LatticePolytope, alpha: &[i64]) -> Result<RawFan> {
    if alpha.len() != p.dim() || !p.contains(alpha) {
        return Err(Error::BasePointOutside(format!("{alpha:?}")));
    }
    let shifted: Vec<Point> = p.vertices().iter().map(|v| sub(v, alpha)).collect();
    let mut rays = Vec::new();
    let mut multipliers = Vec::new();
    let mut ray_of = vec![None; shifted.len()];
    for (i, v) in shifted.iter().enumerate() {
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let (prim, a) = primitive(v);
        ray_of[i] = Some(rays.len());
        rays.push(prim);
        multipliers.push(a);
    }
    let max_cones = p
        .facets()
        .iter()
        .filter(|f| f.slack(alpha, 1) > 0)
        .map(|f| f.vertices.iter().map(|&i| ray_of[i].expect("vertex is not alpha")).collect())
        .collect();
    Ok(RawFan {
        rank: p.dim(),
        rays,
        multipliers,
        max_cones,
    })
}

/// Pulling refinement: every non-simplicial cone is coned from its lowest
/// ray over the refined faces missing that ray. Rays are preserved.
pub fn simplicialize(raw: &RawFan) -> Result<StackyFan> {
    let mut maxes = Vec::new();
    let mut pulled = false;
    for cone in &raw.max_cones {
        let mut cone = cone.clone();
        cone.sort_unstable();
        cone.dedup();
        if cone.len() == raw.rank {
            maxes.push(cone);
            continue;
        }
        pulled = true;
        let gens: Vec<Point> = cone.iter().map(|&i| raw.rays[i].clone()).collect();
        let hull = cone_hull(&gens)
            .map_err(|e| Error::InvalidFan(format!("cone {cone:?}: {e}")))?;
        if hull.extreme.len() != gens.len() {
            return Err(Error::InvalidFan(format!(
                "cone {cone:?} lists a ray that is not extreme"
            )));
        }
        let sets: Vec<Vec<usize>> = hull.facets.iter().map(|f| f.incident.clone()).collect();
        let lattice = face_lattice(gens.len(), &sets, |g| {
            int_rank(&g.iter().map(|&i| gens[i].clone()).collect::<Vec<_>>())
        });
        let top = lattice.faces().len() - 1;
        for s in lattice.pulling_triangulation(top) {
            maxes.push(s.iter().map(|&j| cone[j]).collect());
        }
    }
    let rays = raw
        .rays
        .iter()
        .zip(&raw.multipliers)
        .map(|(v, &a)| Ray::new(v.clone(), a))
        .collect::<Result<Vec<_>>>()?;
    let fan = StackyFan::new(raw.rank, rays, maxes)?;
    Ok(fan.with_refinement(if pulled { "pulling" } else { "none" }))
}

/// `simplicialize(fan_over_boundary(p, alpha))`.
pub fn stacky_fan_of_polytope(p: &LatticePolytope, alpha: &[i64]) -> Result<StackyFan> {
    simplicialize(&fan_over_boundary(p, alpha)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::fixtures::*;
    use crate::fan::stacky::SimplicialCone;
    use crate::polytope::BoxPoints;

    #[test]
    fn hexagon_fan_shape() {
        let raw = fan_over_boundary(&crate::polytope::fixtures::hexagon(), &[0, 0]).unwrap();
        assert_eq!(raw.rays.len(), 6);
        assert_eq!(raw.max_cones.len(), 6);
        assert_eq!(raw.multipliers, vec![1, 2, 1, 1, 2, 1]);
        let f = simplicialize(&raw).unwrap();
        assert_eq!(f.maximal_cones().count(), 6);
        assert_eq!(f.refinement(), "none");
        assert!(f.is_complete());
    }

    #[test]
    fn vertex_base_point_gives_quadrant() {
        let f = quadrant_fan();
        assert_eq!(f.maximal_cones().count(), 2);
        assert!(!f.is_complete());
    }

    #[test]
    fn base_point_must_be_in_polytope() {
        let sq = crate::polytope::fixtures::unit_square();
        assert!(matches!(
            fan_over_boundary(&sq, &[2, 0]),
            Err(Error::BasePointOutside(_))
        ));
    }

    #[test]
    fn second_example_matches_given_fan() {
        let f = second_example_fan();
        let b: Vec<Point> = f.rays().iter().map(|r| r.b.clone()).collect();
        assert_eq!(
            b,
            vec![vec![1, 0], vec![1, 3], vec![0, 2], vec![-2, 3], vec![-2, 1], vec![-2, 0], vec![0, -1]]
        );
        assert_eq!(f.maximal_cones().count(), 7);
        assert!(f.is_complete());
    }

    #[test]
    fn square_pyramid_cone_is_split() {
        // pyramid over the square [-1,1]^2 x {1} with apex (0,0,-1);
        // origin is interior, the square facet gives a non-simplicial cone
        let mut pts: Vec<Point> = BoxPoints::new(&[-1, -1], &[1, 1])
            .filter(|v| v[0] != 0 && v[1] != 0)
            .map(|v| vec![v[0], v[1], 1])
            .collect();
        pts.push(vec![0, 0, -1]);
        let p = LatticePolytope::new(3, &pts).unwrap();
        let raw = fan_over_boundary(&p, &[0, 0, 0]).unwrap();
        assert_eq!(raw.max_cones.iter().filter(|c| c.len() == 4).count(), 1);
        let f = simplicialize(&raw).unwrap();
        assert_eq!(f.refinement(), "pulling");
        assert_eq!(f.rays().len(), 5);
        assert_eq!(f.maximal_cones().count(), 6);
        assert!(f.is_complete());
        f.validate().unwrap();
        // the square is split along a diagonal through its lowest ray
        let square: Vec<SimplicialCone> = f
            .maximal_cones()
            .filter(|c| !c.rays.contains(&4))
            .collect();
        assert_eq!(square.len(), 2);
        assert!(square.iter().all(|c| c.rays.contains(&0)));
    }
}
