//! Closed-form sums over cones and box elements: the second, independent
//! route to the weighted delta-vector.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use crate::algebra::ratfunc::one_minus_t_pow;
use crate::algebra::rational::{int, rational_pow, Rat};
use crate::algebra::{BiFracPoly, FracPoly, RationalFunction};
use crate::error::{Error, Result};
use crate::fan::{BoxElement, SimplicialCone, StackyFan};

use super::lambda::LambdaFunction;

/// `sum over tau, v in BOX(tau) of t^psi(v) h_tau(t)`.
pub fn delta0_local(fan: &StackyFan) -> FracPoly {
    delta0_bivariate_local(fan).specialize_s_to_t()
}

/// `sum over tau, v in BOX(tau) of s^(psi - ceil psi) t^(ceil psi) h_tau(t)`.
pub fn delta0_bivariate_local(fan: &StackyFan) -> BiFracPoly {
    let mut out = BiFracPoly::zero();
    for tau in fan.cones() {
        let boxes = fan.box_elements(tau).expect("cone of this fan");
        if boxes.is_empty() {
            continue;
        }
        let h = fan.h_vector(tau).expect("cone of this fan");
        for e in boxes {
            let c = e.psi.ceil();
            out.add_s_times(&(&e.psi - &c), &h.shift(&c));
        }
    }
    out
}

/// One twisted sector: a box element with the h-vector of its cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sector {
    pub element: BoxElement,
    pub h: FracPoly,
}

impl Sector {
    /// `t^psi h_tau(t)`.
    pub fn contribution(&self) -> FracPoly {
        self.h.shift(&self.element.psi)
    }
}

pub fn sectors(fan: &StackyFan) -> Vec<Sector> {
    let mut out = Vec::new();
    for tau in fan.cones() {
        let boxes = fan.box_elements(tau).expect("cone of this fan");
        if boxes.is_empty() {
            continue;
        }
        let h = fan.h_vector(tau).expect("cone of this fan");
        for element in boxes {
            out.push(Sector {
                element,
                h: h.clone(),
            });
        }
    }
    out
}

/// `lambda` at a box element, by linearity on its cone.
pub fn lambda_at(lambda: &LambdaFunction, e: &BoxElement) -> Rat {
    e.tau
        .rays
        .iter()
        .zip(&e.q)
        .map(|(&r, q)| q * &lambda.values()[r])
        .sum()
}

/// Exact value of the weighted h-vector
/// `sum over sigma containing tau of s^(sum lambda_i) t^(dim sigma - dim tau)
/// (1-t)^codim(sigma) prod (1-t)/(1 - s^lambda_i t)`, products over the rays
/// of sigma outside tau.
pub fn weighted_h(
    fan: &StackyFan,
    tau: &SimplicialCone,
    lambda: &LambdaFunction,
    s: &Rat,
    t: &Rat,
) -> Result<Rat> {
    if !fan.contains_cone(tau) {
        return Err(Error::ConeNotInFan(tau.to_string()));
    }
    let d = fan.rank();
    let one = Rat::one();
    let one_minus_t = &one - t;
    let mut total = Rat::zero();
    for sigma in fan.star(tau) {
        let mut term = num_traits::pow(t.clone(), sigma.dim() - tau.dim())
            * num_traits::pow(one_minus_t.clone(), d - sigma.dim());
        for r in sigma.rays.iter().filter(|r| !tau.rays.contains(r)) {
            let sl = rational_pow(s, &lambda.values()[*r])?;
            let den = &one - &sl * t;
            if den.is_zero() {
                return Err(Error::PoleAtEvaluationPoint(format!(
                    "1 - s^lambda t vanishes on ray {r}"
                )));
            }
            term = term * sl * &one_minus_t / den;
        }
        total += term;
    }
    Ok(total)
}

/// Right-hand side of the reciprocity identity for weighted h-vectors:
/// `sum over sigma containing tau of (t-1)^codim(sigma)
/// prod (t-1)/(s^lambda_i t - 1)`.
pub fn weighted_h_dual(
    fan: &StackyFan,
    tau: &SimplicialCone,
    lambda: &LambdaFunction,
    s: &Rat,
    t: &Rat,
) -> Result<Rat> {
    let d = fan.rank();
    let t_minus_one = t - Rat::one();
    let mut total = Rat::zero();
    for sigma in fan.star(tau) {
        let mut term = num_traits::pow(t_minus_one.clone(), d - sigma.dim());
        for r in sigma.rays.iter().filter(|r| !tau.rays.contains(r)) {
            let den = rational_pow(s, &lambda.values()[*r])? * t - Rat::one();
            if den.is_zero() {
                return Err(Error::PoleAtEvaluationPoint(format!(
                    "s^lambda t - 1 vanishes on ray {r}"
                )));
            }
            term = term * &t_minus_one / den;
        }
        total += term;
    }
    Ok(total)
}

/// Powers `(1 - t^e)^n`, cached by `(e, n)`.
#[derive(Default)]
struct BinomialCache {
    cache: HashMap<(Rat, u32), FracPoly>,
}

impl BinomialCache {
    fn get(&mut self, e: &Rat, n: u32) -> FracPoly {
        self.cache
            .entry((e.clone(), n))
            .or_insert_with(|| FracPoly::one_minus_t_pow(e.clone()).pow(n))
            .clone()
    }

    /// `prod over rays of (1 - t^(lambda_i + 1))`, grouped by value.
    fn product(&mut self, lambda: &LambdaFunction, rays: impl Iterator<Item = usize>) -> FracPoly {
        let mut by_value: BTreeMap<Rat, u32> = BTreeMap::new();
        for r in rays {
            *by_value.entry(&lambda.values()[r] + int(1)).or_insert(0) += 1;
        }
        by_value
            .iter()
            .fold(FracPoly::one(), |acc, (e, &n)| &acc * &self.get(e, n))
    }
}

/// Weighted h-vector at `s := t` as a rational function.
pub fn weighted_h_rf(
    fan: &StackyFan,
    tau: &SimplicialCone,
    lambda: &LambdaFunction,
) -> Result<RationalFunction> {
    if !fan.contains_cone(tau) {
        return Err(Error::ConeNotInFan(tau.to_string()));
    }
    let d = fan.rank();
    let star: Vec<&SimplicialCone> = fan.star(tau).collect();
    let mut link: Vec<usize> = star.iter().flat_map(|s| s.rays.iter().copied()).collect();
    link.sort_unstable();
    link.dedup();
    link.retain(|r| !tau.rays.contains(r));
    let mut cache = BinomialCache::default();
    let den = cache.product(lambda, link.iter().copied());
    let base = one_minus_t_pow((d - tau.dim()) as u32);
    let mut num = FracPoly::zero();
    for sigma in star {
        let extra: Vec<usize> = sigma.rays.iter().copied().filter(|r| !tau.rays.contains(r)).collect();
        let shift: Rat = extra.iter().map(|&r| &lambda.values()[r] + int(1)).sum();
        let rest = cache.product(lambda, link.iter().copied().filter(|r| !sigma.rays.contains(r)));
        num = &num + &(&base * &rest).shift(&shift);
    }
    RationalFunction::new(num, den)
}

/// `delta^lambda(t)` at `s := t` as one fraction over
/// `prod over all rays of (1 - t^(lambda_i + 1))`.
pub fn delta_lambda_local(fan: &StackyFan, lambda: &LambdaFunction) -> Result<RationalFunction> {
    lambda.check_len(fan)?;
    lambda.require_above_minus_one()?;
    let d = fan.rank();
    // sum over BOX(tau) of t^(psi + lambda)
    let mut box_sums: HashMap<&SimplicialCone, FracPoly> = HashMap::new();
    for tau in fan.cones() {
        let mut p = FracPoly::zero();
        for e in fan.box_elements(tau)? {
            p.add_term(&e.psi + lambda_at(lambda, &e), int(1));
        }
        if !p.is_zero() {
            box_sums.insert(tau, p);
        }
    }
    let mut cache = BinomialCache::default();
    let all = fan.rays().len();
    let den = cache.product(lambda, 0..all);
    let mut num = FracPoly::zero();
    for sigma in fan.cones() {
        let mut inner = FracPoly::zero();
        for (tau, p) in &box_sums {
            if !sigma.contains(tau) {
                continue;
            }
            let shift: Rat = sigma
                .rays
                .iter()
                .filter(|r| !tau.rays.contains(r))
                .map(|&r| &lambda.values()[r] + int(1))
                .sum();
            inner = &inner + &p.shift(&shift);
        }
        if inner.is_zero() {
            continue;
        }
        let rest = cache.product(lambda, (0..all).filter(|r| !sigma.rays.contains(r)));
        num = &num + &(&inner * &rest);
    }
    num = &num * &one_minus_t_pow(d as u32);
    RationalFunction::new(num, den)
}
