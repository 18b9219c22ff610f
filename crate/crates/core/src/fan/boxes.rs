use num_traits::{One, Zero};

use crate::algebra::rational::{int, Rat};
use crate::error::{Error, Result};
use crate::polytope::{BoxPoints, Point};

use super::stacky::{SimplicialCone, StackyFan};

/// A lattice point `v = sum q_i b_i` with every `q_i` in `(0, 1)`; `tau` is
/// the cone of the `b_i` involved.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BoxElement {
    pub v: Point,
    pub tau: SimplicialCone,
    pub q: Vec<Rat>,
    pub psi: Rat,
}

impl BoxElement {
    pub fn zero(rank: usize) -> Self {
        Self {
            v: vec![0; rank],
            tau: SimplicialCone::new(vec![]),
            q: vec![],
            psi: Rat::zero(),
        }
    }
}

/// `v = box_part + integral_part + sum of b_i over shifted_rays`, with the
/// box part in `BOX(tau)` for a face `tau` of the carrier, the integral part
/// a nonnegative integer combination of carrier `b_i`, and the shifted rays
/// exactly the carrier rays outside `tau`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub box_part: BoxElement,
    pub integral_part: Point,
    pub shifted_rays: Vec<usize>,
    pub carrier: SimplicialCone,
}

impl StackyFan {
    /// Lattice points of the open parallelepiped on the `b_i` of `tau`,
    /// sorted. `BOX({0}) = {0}`.
    pub fn box_elements(&self, tau: &SimplicialCone) -> Result<Vec<BoxElement>> {
        let d = self.rank();
        if tau.dim() == 0 {
            return Ok(vec![BoxElement::zero(d)]);
        }
        if !self.contains_cone(tau) {
            return Err(Error::ConeNotInFan(tau.to_string()));
        }
        let frame = self
            .frames()
            .iter()
            .find(|f| tau.rays.iter().all(|r| f.rays.contains(r)))
            .expect("every cone lies in a maximal cone");
        let mut lo = vec![0i64; d];
        let mut hi = vec![0i64; d];
        for &r in &tau.rays {
            for (c, &x) in self.rays()[r].b.iter().enumerate() {
                if x < 0 {
                    lo[c] += x;
                } else {
                    hi[c] += x;
                }
            }
        }
        let mut out = Vec::new();
        for v in BoxPoints::new(&lo, &hi) {
            let c: Vec<i64> = frame.adj.iter().map(|row| crate::algebra::linalg::dot(row, &v)).collect();
            let ok = frame.rays.iter().zip(&c).all(|(r, &x)| {
                if tau.rays.contains(r) {
                    0 < x && x < frame.det
                } else {
                    x == 0
                }
            });
            if !ok {
                continue;
            }
            let q: Vec<Rat> = tau
                .rays
                .iter()
                .map(|r| {
                    let j = frame.rays.iter().position(|x| x == r).unwrap();
                    Rat::new(c[j].into(), frame.det.into())
                })
                .collect();
            let psi = q.iter().sum();
            out.push(BoxElement {
                v,
                tau: tau.clone(),
                q,
                psi,
            });
        }
        Ok(out)
    }

    /// `iota(v) = sum (1 - q_i) b_i`.
    pub fn involution(&self, e: &BoxElement) -> Result<BoxElement> {
        if e.tau.dim() == 0 {
            return Err(Error::ZeroConeBox);
        }
        let mut v = vec![0; self.rank()];
        for &r in &e.tau.rays {
            for (x, b) in v.iter_mut().zip(&self.rays()[r].b) {
                *x += b;
            }
        }
        let v: Point = v.iter().zip(&e.v).map(|(s, x)| s - x).collect();
        let q: Vec<Rat> = e.q.iter().map(|x| Rat::one() - x).collect();
        let psi = q.iter().sum();
        Ok(BoxElement {
            v,
            tau: e.tau.clone(),
            q,
            psi,
        })
    }

    pub fn decompose(&self, v: &[i64]) -> Result<Decomposition> {
        let loc = self.locate(v)?;
        let d = self.rank();
        let mut box_rays = Vec::new();
        let mut q = Vec::new();
        let mut shifted = Vec::new();
        let mut integral = vec![0i64; d];
        for (&r, c) in loc.cone.rays.iter().zip(&loc.coords) {
            let fl = c.floor();
            let fr = c - &fl;
            let mut n = fl.to_integer();
            if fr.is_zero() {
                shifted.push(r);
                n -= 1;
            } else {
                box_rays.push(r);
                q.push(fr);
            }
            let n: i64 = n.try_into().expect("coordinate fits in i64");
            for (x, b) in integral.iter_mut().zip(&self.rays()[r].b) {
                *x += n * b;
            }
        }
        let mut bv: Point = v.to_vec();
        for (x, y) in bv.iter_mut().zip(&integral) {
            *x -= y;
        }
        for &r in &shifted {
            for (x, b) in bv.iter_mut().zip(&self.rays()[r].b) {
                *x -= b;
            }
        }
        let psi = q.iter().sum();
        Ok(Decomposition {
            box_part: BoxElement {
                v: bv,
                tau: SimplicialCone { rays: box_rays },
                q,
                psi,
            },
            integral_part: integral,
            shifted_rays: shifted,
            carrier: loc.cone,
        })
    }

    /// All box elements of all cones, cone by cone in fan order.
    pub fn all_box_elements(&self) -> Vec<BoxElement> {
        self.cones()
            .iter()
            .flat_map(|c| self.box_elements(c).expect("cone of this fan"))
            .collect()
    }
}

/// `psi` of a box element lies in `(0, dim tau)`, or is 0 for the zero cone.
pub fn psi_in_range(e: &BoxElement) -> bool {
    if e.tau.dim() == 0 {
        e.psi.is_zero()
    } else {
        e.psi > Rat::zero() && e.psi < int(e.tau.dim() as i64)
    }
}
