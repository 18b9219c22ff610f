use std::collections::{BTreeMap, BTreeSet, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::linalg::{adjugate_of_columns, cofactor_normal, combinations, dot, gcd_all};
use crate::algebra::rational::{int, Rat};
use crate::algebra::ratfunc::one_minus_t_pow;
use crate::algebra::FracPoly;
use crate::error::{Error, Result};
use crate::polytope::Point;

/// Ray data: primitive generator `v`, multiplier `a` and `b = a v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    pub v: Point,
    pub a: i64,
    pub b: Point,
}

impl Ray {
    pub fn new(v: Point, a: i64) -> Result<Self> {
        if a < 1 {
            return Err(Error::InvalidFan(format!("multiplier {a} must be positive")));
        }
        let g = gcd_all(&v);
        if g != 1 {
            return Err(Error::InvalidFan(format!("ray {v:?} is not primitive")));
        }
        let b = v.iter().map(|x| x * a).collect();
        Ok(Self { v, a, b })
    }
}

/// Sorted ray indices; the empty set is the zero cone.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplicialCone {
    pub rays: Vec<usize>,
}

impl SimplicialCone {
    pub fn new(mut rays: Vec<usize>) -> Self {
        rays.sort_unstable();
        rays.dedup();
        Self { rays }
    }

    pub fn dim(&self) -> usize {
        self.rays.len()
    }

    pub fn contains(&self, other: &SimplicialCone) -> bool {
        other.rays.iter().all(|r| self.rays.binary_search(r).is_ok())
    }
}

impl std::fmt::Display for SimplicialCone {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.rays.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Coordinates with respect to the `b_i` of one maximal cone:
/// `det * coords(v) = adj * v`, and `det * psi(v) = psi_row . v` inside it.
#[derive(Clone, Debug)]
pub struct Frame {
    pub rays: Vec<usize>,
    pub adj: Vec<Vec<i64>>,
    pub det: i64,
    pub psi_row: Vec<i64>,
}

impl Frame {
    fn new(rays: &[usize], all: &[Ray]) -> Result<Self> {
        let cols: Vec<Point> = rays.iter().map(|&i| all[i].b.clone()).collect();
        let (adj, det) = adjugate_of_columns(&cols);
        if det == 0 {
            return Err(Error::InvalidFan(format!(
                "cone {} is not simplicial and full-dimensional",
                SimplicialCone::new(rays.to_vec())
            )));
        }
        let d = cols.len();
        let psi_row = (0..d).map(|j| adj.iter().map(|r| r[j]).sum()).collect();
        Ok(Self {
            rays: rays.to_vec(),
            adj,
            det,
            psi_row,
        })
    }

    /// Coordinate numerators, or `None` when `v` is outside this cone.
    pub fn coords_num(&self, v: &[i64]) -> Option<Vec<i64>> {
        let c: Vec<i64> = self.adj.iter().map(|r| dot(r, v)).collect();
        c.iter().all(|&x| x >= 0).then_some(c)
    }
}

/// Where a point sits: its carrier cone and the positive coefficients on the
/// carrier's `b_i` (in carrier order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Location {
    pub cone: SimplicialCone,
    pub coords: Vec<Rat>,
}

/// A simplicial fan with a chosen lattice point `b_i` on every ray.
#[derive(Clone, Debug)]
pub struct StackyFan {
    rank: usize,
    rays: Vec<Ray>,
    cones: Vec<SimplicialCone>,
    cone_index: HashMap<SimplicialCone, usize>,
    frames: Vec<Frame>,
    complete: bool,
    refinement: String,
}

impl StackyFan {
    /// Builds the fan from its maximal cones, which must all be simplicial of
    /// full dimension. Faces are added, completeness and convexity of the
    /// support are determined.
    pub fn new(rank: usize, rays: Vec<Ray>, max_cones: Vec<Vec<usize>>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidFan("rank must be positive".into()));
        }
        if let Some(r) = rays.iter().find(|r| r.v.len() != rank) {
            return Err(Error::InvalidFan(format!("ray {:?} has wrong length", r.v)));
        }
        let mut maxes: BTreeSet<Vec<usize>> = BTreeSet::new();
        for c in max_cones {
            let c = SimplicialCone::new(c).rays;
            if c.len() != rank {
                return Err(Error::InvalidFan(format!(
                    "maximal cone {} must have {rank} rays",
                    SimplicialCone::new(c)
                )));
            }
            if let Some(&i) = c.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::InvalidFan(format!("ray index {i} out of range")));
            }
            maxes.insert(c);
        }
        if maxes.is_empty() {
            return Err(Error::InvalidFan("no maximal cones".into()));
        }
        let used: BTreeSet<usize> = maxes.iter().flatten().copied().collect();
        if used.len() != rays.len() {
            return Err(Error::InvalidFan("every ray must lie in a maximal cone".into()));
        }
        let frames = maxes
            .iter()
            .map(|c| Frame::new(c, &rays))
            .collect::<Result<Vec<_>>>()?;
        let mut cones: BTreeSet<SimplicialCone> = BTreeSet::new();
        for c in &maxes {
            for k in 0..=rank {
                for sub in combinations(rank, k) {
                    cones.insert(SimplicialCone::new(sub.iter().map(|&j| c[j]).collect()));
                }
            }
        }
        let mut cones: Vec<SimplicialCone> = cones.into_iter().collect();
        cones.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
        let cone_index = cones.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let mut fan = Self {
            rank,
            rays,
            cones,
            cone_index,
            frames,
            complete: false,
            refinement: "given".into(),
        };
        fan.check_connected()?;
        fan.check_convex_support()?;
        fan.complete = fan.walls().values().all(|c| *c == 2);
        fan.cross_check_completeness()?;
        Ok(fan)
    }

    pub fn with_refinement(mut self, name: &str) -> Self {
        self.refinement = name.into();
        self
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    /// All cones, zero cone first, ordered by dimension then ray indices.
    pub fn cones(&self) -> &[SimplicialCone] {
        &self.cones
    }

    pub fn maximal_cones(&self) -> impl Iterator<Item = SimplicialCone> + '_ {
        self.frames.iter().map(|f| SimplicialCone::new(f.rays.clone()))
    }

    pub fn frames(&self) -> &[Frame] {
        &self.frames
    }

    pub fn contains_cone(&self, c: &SimplicialCone) -> bool {
        self.cone_index.contains_key(c)
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Name of the simplicial refinement this fan came from.
    pub fn refinement(&self) -> &str {
        &self.refinement
    }

    /// `(d-1)`-cones with the number of maximal cones containing each.
    fn walls(&self) -> BTreeMap<Vec<usize>, usize> {
        let mut walls = BTreeMap::new();
        for f in &self.frames {
            for skip in 0..self.rank {
                let mut w = f.rays.clone();
                w.remove(skip);
                *walls.entry(w).or_insert(0) += 1;
            }
        }
        walls
    }

    fn check_connected(&self) -> Result<()> {
        let walls = self.walls();
        if let Some((w, _)) = walls.iter().find(|(_, &n)| n > 2) {
            return Err(Error::InvalidFan(format!(
                "wall {} lies in more than two maximal cones",
                SimplicialCone::new(w.clone())
            )));
        }
        let n = self.frames.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if !seen[j] {
                    let shared = self.frames[i]
                        .rays
                        .iter()
                        .filter(|r| self.frames[j].rays.contains(r))
                        .count();
                    if shared + 1 == self.rank {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        if seen.iter().all(|&s| s) {
            Ok(())
        } else {
            Err(Error::NonConvexSupport("maximal cones are not connected through walls".into()))
        }
    }

    /// Each boundary wall must span a hyperplane supporting every ray.
    fn check_convex_support(&self) -> Result<()> {
        let walls = self.walls();
        for f in &self.frames {
            for skip in 0..self.rank {
                let mut w = f.rays.clone();
                let opposite = w.remove(skip);
                if walls[&w] != 1 {
                    continue;
                }
                let vecs: Vec<Point> = w.iter().map(|&i| self.rays[i].v.clone()).collect();
                let mut u = cofactor_normal(&vecs);
                if dot(&u, &self.rays[opposite].v) < 0 {
                    u.iter_mut().for_each(|x| *x = -*x);
                }
                if let Some(r) = self.rays.iter().find(|r| dot(&u, &r.v) < 0) {
                    return Err(Error::NonConvexSupport(format!(
                        "ray {:?} lies beyond boundary wall {}",
                        r.v,
                        SimplicialCone::new(w)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Sampled directions must all be located exactly when the wall count
    /// says the fan is complete.
    fn cross_check_completeness(&self) -> Result<()> {
        if !self.complete {
            return Ok(());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..64 {
            let v: Point = (0..self.rank).map(|_| rng.gen_range(-97..=97)).collect();
            if self.locate_num(&v).is_none() {
                return Err(Error::InvalidFan(format!(
                    "walls pair up but direction {v:?} is not covered"
                )));
            }
        }
        Ok(())
    }

    /// First maximal cone containing `v`, with coordinate numerators.
    pub fn locate_num(&self, v: &[i64]) -> Option<(usize, Vec<i64>)> {
        self.frames
            .iter()
            .enumerate()
            .find_map(|(i, f)| f.coords_num(v).map(|c| (i, c)))
    }

    /// `det * psi(v)` and `det` in the first maximal cone containing `v`.
    pub fn psi_num(&self, v: &[i64]) -> Option<(i64, i64)> {
        self.frames.iter().find_map(|f| {
            f.coords_num(v).map(|_| (dot(&f.psi_row, v), f.det))
        })
    }

    pub fn locate(&self, v: &[i64]) -> Result<Location> {
        let (i, num) = self
            .locate_num(v)
            .ok_or_else(|| Error::OutsideSupport(format!("{v:?}")))?;
        let f = &self.frames[i];
        let mut rays = Vec::new();
        let mut coords = Vec::new();
        for (j, &x) in num.iter().enumerate() {
            if x > 0 {
                rays.push(f.rays[j]);
                coords.push(Rat::new(x.into(), f.det.into()));
            }
        }
        Ok(Location {
            cone: SimplicialCone { rays },
            coords,
        })
    }

    pub fn psi(&self, v: &[i64]) -> Result<Rat> {
        let (n, d) = self
            .psi_num(v)
            .ok_or_else(|| Error::OutsideSupport(format!("{v:?}")))?;
        Ok(Rat::new(n.into(), d.into()))
    }

    /// Cones containing `tau`.
    pub fn star(&self, tau: &SimplicialCone) -> impl Iterator<Item = &SimplicialCone> + '_ {
        let tau = tau.clone();
        self.cones.iter().filter(move |s| s.contains(&tau))
    }

    /// `h_tau(t) = sum over sigma containing tau of
    /// t^(dim sigma - dim tau) (1-t)^(d - dim sigma)`.
    pub fn h_vector(&self, tau: &SimplicialCone) -> Result<FracPoly> {
        if !self.contains_cone(tau) {
            return Err(Error::ConeNotInFan(tau.to_string()));
        }
        let mut h = FracPoly::zero();
        for s in self.star(tau) {
            let term = &FracPoly::t_pow(int((s.dim() - tau.dim()) as i64))
                * &one_minus_t_pow((self.rank - s.dim()) as u32);
            h = &h + &term;
        }
        Ok(h)
    }

    /// Whether `tau` meets the interior of the support: in a complete fan
    /// every cone does; otherwise a cone is on the boundary when it lies in a
    /// wall with a single maximal cone.
    pub fn is_interior(&self, tau: &SimplicialCone) -> bool {
        if self.complete {
            return true;
        }
        !self
            .walls()
            .iter()
            .any(|(w, &n)| n == 1 && SimplicialCone::new(w.clone()).contains(tau))
    }

    /// Pairwise check that maximal cones meet along common faces: lattice
    /// points of each cone found in another cone must have the same carrier.
    pub fn validate(&self) -> Result<()> {
        for (i, f) in self.frames.iter().enumerate() {
            for mult in grid(self.rank, 3) {
                let v: Point = (0..self.rank)
                    .map(|c| {
                        f.rays
                            .iter()
                            .zip(&mult)
                            .map(|(&r, &k)| k * self.rays[r].b[c])
                            .sum()
                    })
                    .collect();
                let carrier: Vec<usize> = f
                    .rays
                    .iter()
                    .zip(&mult)
                    .filter(|(_, &k)| k > 0)
                    .map(|(&r, _)| r)
                    .collect();
                for (j, g) in self.frames.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    if let Some(c) = g.coords_num(&v) {
                        let other: Vec<usize> = g
                            .rays
                            .iter()
                            .zip(&c)
                            .filter(|(_, &x)| x > 0)
                            .map(|(&r, _)| r)
                            .collect();
                        let mut other = other;
                        other.sort_unstable();
                        let mut carrier = carrier.clone();
                        carrier.sort_unstable();
                        if other != carrier {
                            return Err(Error::InvalidFan(format!(
                                "cones {} and {} overlap at {v:?}",
                                SimplicialCone::new(f.rays.clone()),
                                SimplicialCone::new(g.rays.clone())
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Stellar subdivision at the ray through `v` with multiplier `a`.
    pub fn stellar_subdivision(&self, v: &[i64], a: i64) -> Result<StackyFan> {
        let loc = self.locate(v)?;
        if loc.cone.dim() < 2 {
            return Err(Error::PreconditionUnmet(format!("{v:?} already spans a ray")));
        }
        let mut rays = self.rays.clone();
        rays.push(Ray::new(v.to_vec(), a)?);
        let new = rays.len() - 1;
        let mut maxes = Vec::new();
        for s in self.maximal_cones() {
            if s.contains(&loc.cone) {
                for r in &loc.cone.rays {
                    let mut c: Vec<usize> = s.rays.iter().copied().filter(|x| x != r).collect();
                    c.push(new);
                    maxes.push(c);
                }
            } else {
                maxes.push(s.rays);
            }
        }
        Ok(StackyFan::new(self.rank, rays, maxes)?.with_refinement("stellar"))
    }

    /// Same fan with multipliers replaced.
    pub fn with_multipliers(&self, a: &[i64]) -> Result<StackyFan> {
        let rays = self
            .rays
            .iter()
            .zip(a)
            .map(|(r, &k)| Ray::new(r.v.clone(), k))
            .collect::<Result<Vec<_>>>()?;
        Ok(StackyFan::new(self.rank, rays, self.maximal_cones().map(|c| c.rays).collect())?
            .with_refinement(&self.refinement))
    }
}

/// Nonzero vectors in `{0..=k}^n`.
fn grid(n: usize, k: i64) -> impl Iterator<Item = Vec<i64>> {
    crate::polytope::BoxPoints::new(&vec![0; n], &vec![k; n]).filter(|v| v.iter().any(|&x| x > 0))
}
