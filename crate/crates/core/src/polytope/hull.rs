//! Facets and face lattices of full-dimensional pointed cones by exhaustive
//! search over generator subsets. A polytope is handled through the cone over
//! `P x {1}`.

use std::collections::{BTreeSet, HashMap};

use crate::algebra::linalg::{cofactor_normal, combinations, dot, gcd_all, int_rank};
use crate::error::{Error, Result};

/// A facet of a cone: primitive inward normal `u` (`<u, g> >= 0` for every
/// generator) and the generators it contains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeFacet {
    pub normal: Vec<i64>,
    pub incident: Vec<usize>,
}

/// One face of a cone, recorded by the extreme generators it contains.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    /// Linear dimension of the face.
    pub rank: usize,
    /// Sorted generator indices.
    pub gens: Vec<usize>,
}

impl Face {
    pub fn is_simplex(&self) -> bool {
        self.gens.len() == self.rank
    }
}

/// All nonzero faces of a pointed cone, ordered by rank then generators.
#[derive(Clone, Debug, Default)]
pub struct FaceLattice {
    faces: Vec<Face>,
    index: HashMap<Vec<usize>, usize>,
}

impl FaceLattice {
    pub fn from_faces(mut faces: Vec<Face>) -> Self {
        faces.sort();
        faces.dedup();
        let index = faces
            .iter()
            .enumerate()
            .map(|(i, f)| (f.gens.clone(), i))
            .collect();
        Self { faces, index }
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn find(&self, gens: &[usize]) -> Option<usize> {
        self.index.get(gens).copied()
    }

    /// Faces of codimension one inside `faces()[i]`.
    pub fn facets_of(&self, i: usize) -> Vec<usize> {
        let f = &self.faces[i];
        self.faces
            .iter()
            .enumerate()
            .filter(|(_, g)| g.rank + 1 == f.rank && is_subset(&g.gens, &f.gens))
            .map(|(j, _)| j)
            .collect()
    }

    /// Pulling triangulation of face `i`: cone from its lowest generator over
    /// the triangulated facets not containing it. Consistent across faces
    /// because every face uses the same global order.
    pub fn pulling_triangulation(&self, i: usize) -> Vec<Vec<usize>> {
        let mut memo = HashMap::new();
        self.pull(i, &mut memo)
    }

    fn pull(&self, i: usize, memo: &mut HashMap<usize, Vec<Vec<usize>>>) -> Vec<Vec<usize>> {
        if let Some(t) = memo.get(&i) {
            return t.clone();
        }
        let f = &self.faces[i];
        let out = if f.is_simplex() {
            vec![f.gens.clone()]
        } else {
            let apex = f.gens[0];
            let mut out = Vec::new();
            for g in self.facets_of(i) {
                if self.faces[g].gens.contains(&apex) {
                    continue;
                }
                for mut s in self.pull(g, memo) {
                    s.push(apex);
                    s.sort_unstable();
                    out.push(s);
                }
            }
            out.sort();
            out
        };
        memo.insert(i, out.clone());
        out
    }
}

pub fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Result of a hull computation on a generator list.
#[derive(Clone, Debug)]
pub struct ConeHull {
    pub facets: Vec<ConeFacet>,
    /// Indices of generators spanning extreme rays.
    pub extreme: Vec<usize>,
}

/// Facets of the cone spanned by `gens`, which must be full-dimensional and
/// pointed.
pub fn cone_hull(gens: &[Vec<i64>]) -> Result<ConeHull> {
    let n = gens.first().map_or(0, Vec::len);
    let rank = int_rank(gens);
    if rank != n {
        return Err(Error::NotFullDimensional { rank, dim: n });
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut facets = Vec::new();
    for subset in combinations(gens.len(), n - 1) {
        let vecs: Vec<Vec<i64>> = subset.iter().map(|&i| gens[i].clone()).collect();
        let mut u = cofactor_normal(&vecs);
        let g = gcd_all(&u);
        if g == 0 {
            continue;
        }
        u.iter_mut().for_each(|x| *x /= g);
        let dots: Vec<i64> = gens.iter().map(|x| dot(&u, x)).collect();
        let (pos, neg) = dots.iter().fold((false, false), |(p, q), &x| (p || x > 0, q || x < 0));
        if pos && neg {
            continue;
        }
        if neg {
            u.iter_mut().for_each(|x| *x = -*x);
        }
        let incident: Vec<usize> = (0..gens.len()).filter(|&i| dots[i] == 0).collect();
        if seen.insert(incident.clone()) {
            facets.push(ConeFacet { normal: u, incident });
        }
    }
    let all: Vec<usize> = (0..gens.len()).collect();
    let extreme = all
        .iter()
        .copied()
        .filter(|&i| {
            let meet = facets
                .iter()
                .filter(|f| f.incident.binary_search(&i).is_ok())
                .fold(all.clone(), |acc, f| intersect(&acc, &f.incident));
            meet == [i]
        })
        .collect();
    Ok(ConeHull { facets, extreme })
}

pub fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
}

/// Face lattice of a cone from facet incidences already restricted to the
/// extreme generators and renumbered. `rank_of` gives the linear dimension of
/// a generator set.
pub fn face_lattice(
    n_gens: usize,
    facet_sets: &[Vec<usize>],
    rank_of: impl Fn(&[usize]) -> usize,
) -> FaceLattice {
    let mut sets: BTreeSet<Vec<usize>> = facet_sets.iter().cloned().collect();
    sets.insert((0..n_gens).collect());
    loop {
        let current: Vec<Vec<usize>> = sets.iter().cloned().collect();
        let mut grew = false;
        for (i, a) in current.iter().enumerate() {
            for b in &current[i + 1..] {
                let m = intersect(a, b);
                if !m.is_empty() && sets.insert(m) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    FaceLattice::from_faces(
        sets.into_iter()
            .map(|gens| Face {
                rank: rank_of(&gens),
                gens,
            })
            .collect(),
    )
}
