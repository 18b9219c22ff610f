//! Lattice polytopes given by vertices: facets, faces, lattice points in
//! dilates, volume and the classical Ehrhart data.

pub mod ehrhart;
pub mod hull;

use crate::algebra::linalg::{dot, int_det, int_rank, sublattice_index};
use crate::error::{Error, Result};

pub use ehrhart::{ehrhart, ehrhart_from_counts, EhrhartData};
pub use hull::{Face, FaceLattice};

pub type Point = Vec<i64>;

/// Inequality `<normal, x> <= offset` with a primitive normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub offset: i64,
    /// Indices into the polytope's vertex list.
    pub vertices: Vec<usize>,
}

impl Facet {
    pub fn slack(&self, x: &[i64], m: i64) -> i64 {
        m * self.offset - dot(&self.normal, x)
    }
}

#[derive(Clone, Debug)]
pub struct LatticePolytope {
    dim: usize,
    vertices: Vec<Point>,
    facets: Vec<Facet>,
    faces: FaceLattice,
}

impl LatticePolytope {
    /// Convex hull of `points` in `Z^dim`. Non-vertices are dropped; the
    /// remaining vertices keep their input order.
    pub fn new(dim: usize, points: &[Point]) -> Result<Self> {
        if points.iter().any(|p| p.len() != dim) {
            return Err(Error::Parse(format!("every point needs {dim} coordinates")));
        }
        let mut pts: Vec<Point> = Vec::new();
        for p in points {
            if !pts.contains(p) {
                pts.push(p.clone());
            }
        }
        let gens: Vec<Point> = pts.iter().map(|p| homogenize(p)).collect();
        let hull = hull::cone_hull(&gens).map_err(|e| match e {
            Error::NotFullDimensional { rank, dim } => Error::NotFullDimensional {
                rank: rank.saturating_sub(1),
                dim: dim - 1,
            },
            e => e,
        })?;
        let renumber = |old: usize| hull.extreme.binary_search(&old).ok();
        let vertices: Vec<Point> = hull.extreme.iter().map(|&i| pts[i].clone()).collect();
        let mut facets: Vec<Facet> = hull
            .facets
            .iter()
            .map(|f| {
                // cone normal (w, c) with <w,x> + c >= 0  <=>  <-w,x> <= c
                let normal: Vec<i64> = f.normal[..dim].iter().map(|x| -x).collect();
                Facet {
                    normal,
                    offset: f.normal[dim],
                    vertices: f.incident.iter().filter_map(|&i| renumber(i)).collect(),
                }
            })
            .collect();
        facets.sort();
        let sets: Vec<Vec<usize>> = facets.iter().map(|f| f.vertices.clone()).collect();
        let vgens: Vec<Point> = vertices.iter().map(|p| homogenize(p)).collect();
        let faces = hull::face_lattice(vertices.len(), &sets, |g| {
            int_rank(&g.iter().map(|&i| vgens[i].clone()).collect::<Vec<_>>())
        });
        Ok(Self {
            dim,
            vertices,
            facets,
            faces,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Nonempty faces; a face of affine dimension `k` has `rank == k + 1`.
    pub fn faces(&self) -> &FaceLattice {
        &self.faces
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|f| f.slack(x, 1) >= 0)
    }

    pub fn contains_in_interior(&self, x: &[i64]) -> bool {
        self.facets.iter().all(|f| f.slack(x, 1) > 0)
    }

    /// Integer bounding box of `m P`.
    pub fn bounding_box(&self, m: i64) -> (Point, Point) {
        let lo = (0..self.dim)
            .map(|i| self.vertices.iter().map(|v| v[i] * m).min().unwrap_or(0))
            .collect();
        let hi = (0..self.dim)
            .map(|i| self.vertices.iter().map(|v| v[i] * m).max().unwrap_or(0))
            .collect();
        (lo, hi)
    }

    pub fn lattice_points(&self, m: i64) -> Vec<Point> {
        self.scan(m, 0)
    }

    pub fn interior_lattice_points(&self, m: i64) -> Vec<Point> {
        self.scan(m, 1)
    }

    pub fn count_lattice_points(&self, m: i64) -> u64 {
        let (lo, hi) = self.bounding_box(m);
        BoxPoints::new(&lo, &hi)
            .filter(|x| self.facets.iter().all(|f| f.slack(x, m) >= 0))
            .count() as u64
    }

    fn scan(&self, m: i64, min_slack: i64) -> Vec<Point> {
        let (lo, hi) = self.bounding_box(m);
        BoxPoints::new(&lo, &hi)
            .filter(|x| self.facets.iter().all(|f| f.slack(x, m) >= min_slack))
            .collect()
    }

    /// Pulling triangulation on the vertices, as vertex-index simplices.
    pub fn triangulation(&self) -> Vec<Vec<usize>> {
        let top = self.faces.faces().len() - 1;
        self.faces.pulling_triangulation(top)
    }

    /// `d! vol(P)` summed over the simplices of [`Self::triangulation`].
    pub fn normalized_volume(&self) -> i64 {
        self.triangulation()
            .iter()
            .map(|s| simplex_volume(&s.iter().map(|&i| self.vertices[i].clone()).collect::<Vec<_>>()))
            .sum()
    }

    /// Sum over facets of their normalized volume in the facet's own lattice.
    pub fn normalized_surface_area(&self) -> i64 {
        let mut total = 0;
        for f in &self.facets {
            let id = self.faces.find(&f.vertices).expect("facet is a face");
            for s in self.faces.pulling_triangulation(id) {
                let base = &self.vertices[s[0]];
                let edges: Vec<Point> = s[1..]
                    .iter()
                    .map(|&i| sub(&self.vertices[i], base))
                    .collect();
                total += sublattice_index(&edges);
            }
        }
        total
    }
}

pub fn homogenize(p: &[i64]) -> Point {
    let mut g = p.to_vec();
    g.push(1);
    g
}

pub fn sub(a: &[i64], b: &[i64]) -> Point {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `|det(v_1 - v_0, ..., v_d - v_0)|`.
pub fn simplex_volume(vertices: &[Point]) -> i64 {
    let rows: Vec<Point> = vertices[1..].iter().map(|v| sub(v, &vertices[0])).collect();
    int_det(&rows).unsigned_abs() as i64
}

/// Lexicographic iterator over the integer points of a box `[lo, hi]`.
#[derive(Clone, Debug)]
pub struct BoxPoints {
    lo: Point,
    hi: Point,
    cur: Option<Point>,
}

impl BoxPoints {
    pub fn new(lo: &[i64], hi: &[i64]) -> Self {
        let empty = lo.iter().zip(hi).any(|(a, b)| a > b);
        Self {
            lo: lo.to_vec(),
            hi: hi.to_vec(),
            cur: (!empty).then(|| lo.to_vec()),
        }
    }
}

impl Iterator for BoxPoints {
    type Item = Point;

    fn next(&mut self) -> Option<Point> {
        let out = self.cur.clone()?;
        let cur = self.cur.as_mut().unwrap();
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if cur[i] < self.hi[i] {
                cur[i] += 1;
                break;
            }
            cur[i] = self.lo[i];
        }
        Some(out)
    }
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn square_facets() {
        let sq = unit_square();
        let normals: Vec<(Vec<i64>, i64)> =
            sq.facets().iter().map(|f| (f.normal.clone(), f.offset)).collect();
        assert_eq!(
            normals,
            vec![(vec![-1, 0], 0), (vec![0, -1], 0), (vec![0, 1], 1), (vec![1, 0], 1)]
        );
    }

    #[test]
    fn hexagon_facets_one_per_edge() {
        let h = hexagon();
        assert_eq!(h.facets().len(), 6);
        assert!(h.facets().iter().all(|f| f.vertices.len() == 2));
        assert_eq!(h.vertices().len(), 6);
    }

    #[test]
    fn simplex_has_three_facets() {
        assert_eq!(unit_simplex(2).facets().len(), 3);
        assert_eq!(unit_simplex(3).facets().len(), 4);
    }

    #[test]
    fn lower_dimensional_input() {
        let err = LatticePolytope::new(2, &[vec![0, 0], vec![1, 1], vec![2, 2]]).unwrap_err();
        assert_eq!(err, Error::NotFullDimensional { rank: 1, dim: 2 });
    }

    #[test]
    fn lattice_point_counts() {
        assert_eq!(unit_square().lattice_points(2).len(), 9);
        assert_eq!(hexagon().lattice_points(1).len(), 10);
        assert_eq!(hexagon().lattice_points(0), vec![vec![0, 0]]);
        assert_eq!(unit_square().interior_lattice_points(1).len(), 0);
        assert_eq!(hexagon().interior_lattice_points(1).len(), 4);
    }

    #[test]
    fn hexagon_interior_at_two() {
        // oracle: count strict points directly from edge equations
        let edges = [((1, 0), (0, 2)), ((0, 2), (-1, 2)), ((-1, 2), (-2, 1)),
            ((-2, 1), (-2, 0)), ((-2, 0), (0, -1)), ((0, -1), (1, 0))];
        let mut count = 0;
        for x in -4..=2 {
            for y in -2..=4 {
                let inside = edges.iter().all(|&((x0, y0), (x1, y1))| {
                    // counterclockwise order: point strictly left of each edge
                    (2 * x1 - 2 * x0) * (y - 2 * y0) - (2 * y1 - 2 * y0) * (x - 2 * x0) > 0
                });
                count += inside as usize;
            }
        }
        assert_eq!(count, 19);
        assert_eq!(hexagon().interior_lattice_points(2).len(), count);
    }

    #[test]
    fn volumes_and_surface() {
        assert_eq!(hexagon().normalized_volume(), 12);
        assert_eq!(unit_square().normalized_volume(), 2);
        assert_eq!(unit_simplex(3).normalized_volume(), 1);
        // hexagon edges all have lattice length 1; square has 4 unit edges
        assert_eq!(hexagon().normalized_surface_area(), 6);
        assert_eq!(unit_square().normalized_surface_area(), 4);
        let cube = LatticePolytope::new(
            3,
            &BoxPoints::new(&[0, 0, 0], &[1, 1, 1]).collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(cube.normalized_volume(), 6);
        assert_eq!(cube.normalized_surface_area(), 12);
    }

    #[test]
    fn box_iteration_order() {
        let pts: Vec<Point> = BoxPoints::new(&[0, 0], &[1, 1]).collect();
        assert_eq!(pts, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(BoxPoints::new(&[1], &[0]).count(), 0);
    }

    proptest! {
        #[test]
        fn dilates_are_nested(pts in prop::collection::vec((-3i64..=3, -3i64..=3), 3..7), m in 0i64..4) {
            let mut pts: Vec<Point> = pts.into_iter().map(|(x, y)| vec![x, y]).collect();
            pts.push(vec![0, 0]);
            if let Ok(p) = LatticePolytope::new(2, &pts) {
                let small = p.lattice_points(m);
                let big = p.lattice_points(m + 1);
                prop_assert!(small.iter().all(|x| big.binary_search(x).is_ok()));
                // every vertex saturates at least d facets
                for (i, _) in p.vertices().iter().enumerate() {
                    prop_assert!(p.facets().iter().filter(|f| f.vertices.contains(&i)).count() >= 2);
                }
            }
        }
    }
}
