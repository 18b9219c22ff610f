//! The cone over `P x {1}`, refined by a lattice triangulation of `P`, with
//! every multiplier equal to 1. Its `delta0` is the delta-vector of `P`.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::linalg::int_det;
use crate::algebra::rational::int;
use crate::algebra::FracPoly;
use crate::algebra::ratfunc::one_minus_t_pow;
use crate::error::{Error, Result};
use crate::fan::{Ray, StackyFan};
use crate::polytope::{ehrhart, homogenize, simplex_volume, LatticePolytope, Point};
use crate::report::ensure;
use crate::weighted::delta0_local;

/// Simplices given by indices into `points`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    pub points: Vec<Point>,
    pub simplices: Vec<Vec<usize>>,
}

/// `det` of the homogenized simplex with column `skip` replaced by `x`, or
/// the simplex itself when `skip` is `None`.
fn hdet(vertices: &[Point], x: &[i64], skip: Option<usize>) -> i128 {
    let rows: Vec<Point> = vertices
        .iter()
        .enumerate()
        .map(|(i, v)| if Some(i) == skip { x.to_vec() } else { homogenize(v) })
        .collect();
    int_det(&rows)
}

/// Signs of the barycentric coordinates of the homogeneous point `x`.
fn barycentric_signs(vertices: &[Point], x: &[i64]) -> Vec<i32> {
    let base = hdet(vertices, x, None).signum() as i32;
    (0..vertices.len())
        .map(|i| hdet(vertices, x, Some(i)).signum() as i32 * base)
        .collect()
}

impl Triangulation {
    /// Pulling triangulation on the vertices of `p`.
    pub fn pulling(p: &LatticePolytope) -> Self {
        Self {
            points: p.vertices().to_vec(),
            simplices: p.triangulation(),
        }
    }

    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Vec::len)
    }

    fn vertices(&self, s: &[usize]) -> Vec<Point> {
        s.iter().map(|&i| self.points[i].clone()).collect()
    }

    /// Stellar subdivision at the lattice point `x`; no-op when `x` is
    /// already a vertex.
    pub fn subdivide_at(&mut self, x: &[i64]) {
        if self.points.iter().any(|p| p == x) {
            return;
        }
        let hx = homogenize(x);
        let new = self.points.len();
        let mut out = Vec::new();
        let mut used = false;
        for s in &self.simplices {
            let signs = barycentric_signs(&self.vertices(s), &hx);
            if signs.iter().any(|&c| c < 0) {
                out.push(s.clone());
                continue;
            }
            used = true;
            for (i, _) in signs.iter().enumerate().filter(|(_, &c)| c > 0) {
                let mut t = s.clone();
                t[i] = new;
                t.sort_unstable();
                out.push(t);
            }
        }
        if used {
            self.points.push(x.to_vec());
            self.simplices = out;
        }
    }

    /// Refines at every lattice point of `p`; unimodular in dimension 2.
    pub fn refine_at_lattice_points(mut self, p: &LatticePolytope) -> Self {
        for x in p.lattice_points(1) {
            self.subdivide_at(&x);
        }
        self
    }

    pub fn is_unimodular(&self) -> bool {
        self.simplices
            .iter()
            .all(|s| simplex_volume(&self.vertices(s)) == 1)
    }

    /// `sum f_(i-1) t^i (1-t)^(d+1-i)` over the faces of the triangulation.
    pub fn h_vector(&self) -> FracPoly {
        let d = self.dim();
        let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
        for s in &self.simplices {
            for mask in 1u32..(1 << s.len()) {
                faces.insert(
                    s.iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) != 0)
                        .map(|(_, &v)| v)
                        .collect(),
                );
            }
        }
        let mut f = vec![0i64; d + 2];
        f[0] = 1;
        for face in &faces {
            f[face.len()] += 1;
        }
        f.iter().enumerate().fold(FracPoly::zero(), |acc, (i, &n)| {
            let term = &FracPoly::t_pow(int(i as i64)) * &one_minus_t_pow((d + 1 - i) as u32);
            &acc + &term.scale(&int(n))
        })
    }

    /// Lattice points of `p` as vertices, full-dimensional simplices whose
    /// normalized volumes add up to that of `p`, and no sampled point in the
    /// interior of two simplices.
    pub fn validate(&self, p: &LatticePolytope) -> Result<()> {
        let d = p.dim();
        let bad = |msg: String| Error::InvalidTriangulation(msg);
        for x in &self.points {
            ensure(x.len() == d && p.contains(x), || bad(format!("{x:?} is not a point of P")))?;
        }
        let mut total = 0;
        for s in &self.simplices {
            ensure(s.len() == d + 1 && s.iter().all(|&i| i < self.points.len()), || {
                bad(format!("{s:?} is not a simplex on the given points"))
            })?;
            let vol = simplex_volume(&self.vertices(s));
            ensure(vol > 0, || bad(format!("{s:?} is degenerate")))?;
            total += vol;
        }
        ensure(total == p.normalized_volume(), || {
            bad(format!("volumes add up to {total}, not {}", p.normalized_volume()))
        })?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x7a11);
        for (i, s) in self.simplices.iter().enumerate() {
            let verts = self.vertices(s);
            for sample in 0..9 {
                let weights: Vec<i64> = (0..=d)
                    .map(|_| if sample == 0 { 1 } else { rng.gen_range(1..=5) })
                    .collect();
                let mut x = vec![0i64; d + 1];
                for (v, w) in verts.iter().zip(&weights) {
                    for (c, hv) in x.iter_mut().zip(homogenize(v)) {
                        *c += w * hv;
                    }
                }
                for (j, t) in self.simplices.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let signs = barycentric_signs(&self.vertices(t), &x);
                    ensure(signs.iter().any(|&c| c <= 0), || {
                        bad(format!("simplices {s:?} and {t:?} overlap"))
                    })?;
                }
            }
        }
        Ok(())
    }
}

/// The stacky fan of the cone over `P x {1}` refined by `t`.
pub fn pyramid_fan(p: &LatticePolytope, t: &Triangulation) -> Result<StackyFan> {
    t.validate(p)?;
    let rays = t
        .points
        .iter()
        .map(|x| Ray::new(homogenize(x), 1))
        .collect::<Result<Vec<_>>>()?;
    let used: BTreeSet<usize> = t.simplices.iter().flatten().copied().collect();
    let index: Vec<Option<usize>> = (0..rays.len())
        .scan(0, |next, i| {
            Some(used.contains(&i).then(|| {
                *next += 1;
                *next - 1
            }))
        })
        .collect();
    let rays: Vec<Ray> = rays
        .into_iter()
        .enumerate()
        .filter(|(i, _)| used.contains(i))
        .map(|(_, r)| r)
        .collect();
    let cones = t
        .simplices
        .iter()
        .map(|s| s.iter().map(|&i| index[i].expect("used")).collect())
        .collect();
    Ok(StackyFan::new(p.dim() + 1, rays, cones)?.with_refinement("triangulation"))
}

/// `delta0` of the pyramid fan, checked to have zero weight everywhere and
/// to equal `delta_P`.
pub fn pyramid_delta(p: &LatticePolytope, t: &Triangulation) -> Result<FracPoly> {
    let fan = pyramid_fan(p, t)?;
    ensure(fan.all_box_elements().iter().all(|e| e.psi.is_integer()), || {
        Error::CheckFailed("the weight function is not identically zero".into())
    })?;
    let delta0 = delta0_local(&fan);
    let d = p.dim();
    let expected = FracPoly::from_coeffs(ehrhart(p, 2 * d + 2)?.delta);
    ensure(delta0 == expected, || {
        Error::CheckFailed(format!("pyramid gives {delta0} but delta_P = {expected}"))
    })?;
    Ok(delta0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::fixtures::*;

    #[test]
    fn unit_square_two_triangles() {
        let sq = unit_square();
        let t = Triangulation::pulling(&sq);
        assert_eq!(t.simplices.len(), 2);
        assert!(t.is_unimodular());
        assert_eq!(t.h_vector(), FracPoly::from_coeffs([1, 1]));
        assert_eq!(pyramid_delta(&sq, &t).unwrap(), FracPoly::from_coeffs([1, 1]));
    }

    #[test]
    fn hexagon_two_triangulations() {
        let p = hexagon();
        let t1 = Triangulation::pulling(&p);
        let t2 = t1.clone().refine_at_lattice_points(&p);
        assert!(!t1.is_unimodular() && t2.is_unimodular());
        assert_eq!(t2.points.len(), p.lattice_points(1).len());
        let want = FracPoly::from_coeffs([1, 7, 4]);
        assert_eq!(pyramid_delta(&p, &t1).unwrap(), want);
        assert_eq!(pyramid_delta(&p, &t2).unwrap(), want);
        assert_eq!(t2.h_vector(), want);
    }

    #[test]
    fn segment() {
        let p = LatticePolytope::new(1, &[vec![0], vec![2]]).unwrap();
        let t = Triangulation {
            points: vec![vec![0], vec![1], vec![2]],
            simplices: vec![vec![0, 1], vec![1, 2]],
        };
        assert_eq!(pyramid_delta(&p, &t).unwrap(), FracPoly::from_coeffs([1, 1]));
    }

    #[test]
    fn invalid_triangulations() {
        let sq = unit_square();
        let pts = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]];
        let overlapping = Triangulation {
            points: pts.clone(),
            simplices: vec![vec![0, 1, 2], vec![0, 1, 3]],
        };
        assert!(matches!(pyramid_delta(&sq, &overlapping), Err(Error::InvalidTriangulation(_))));
        let short = Triangulation {
            points: pts.clone(),
            simplices: vec![vec![0, 1, 2]],
        };
        assert!(matches!(short.validate(&sq), Err(Error::InvalidTriangulation(_))));
        let outside = Triangulation {
            points: vec![vec![0, 0], vec![2, 0], vec![0, 1]],
            simplices: vec![vec![0, 1, 2]],
        };
        assert!(matches!(outside.validate(&sq), Err(Error::InvalidTriangulation(_))));
    }
}
