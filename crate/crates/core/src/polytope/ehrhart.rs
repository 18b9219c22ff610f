use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::LatticePolytope;
use crate::algebra::interp::{eval_poly, interpolate};
use crate::algebra::ratfunc::finite_difference_transform;
use crate::algebra::rational::{fmt_rat, int, Rat};
use crate::error::{Error, Result};

/// Counts `f(0..=M)`, the interpolated polynomial and the delta vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartData {
    pub values: Vec<BigInt>,
    /// `c_0, ..., c_d`.
    pub polynomial: Vec<Rat>,
    /// `delta_0, ..., delta_d`.
    pub delta: Vec<BigInt>,
}

impl EhrhartData {
    pub fn eval(&self, m: i64) -> Rat {
        eval_poly(&self.polynomial, &int(m))
    }
}

/// Ehrhart data of `P` from direct counts in `mP`, `m = 0..=horizon`.
pub fn ehrhart(p: &LatticePolytope, horizon: usize) -> Result<EhrhartData> {
    let d = p.dim();
    if horizon < 2 * d + 2 {
        return Err(Error::PreconditionUnmet(format!(
            "horizon {horizon} is below 2d+2 = {}",
            2 * d + 2
        )));
    }
    let values: Vec<BigInt> = (0..=horizon as i64)
        .map(|m| BigInt::from(p.count_lattice_points(m)))
        .collect();
    ehrhart_from_counts(d, values)
}

/// Interpolates on `m = 0..=d`, checks the remaining counts against the
/// polynomial and takes finite differences. Any disagreement means the counts
/// were not those of a degree-`d` polynomial.
pub fn ehrhart_from_counts(d: usize, values: Vec<BigInt>) -> Result<EhrhartData> {
    if values.len() < d + 2 {
        return Err(Error::PreconditionUnmet(format!(
            "need at least {} counts, got {}",
            d + 2,
            values.len()
        )));
    }
    let as_rat: Vec<Rat> = values.iter().map(|v| Rat::from_integer(v.clone())).collect();
    let mut polynomial = interpolate(0, &as_rat[..=d]);
    polynomial.resize(d + 1, Rat::zero());
    for (m, counted) in as_rat.iter().enumerate().skip(d + 1) {
        let predicted = eval_poly(&polynomial, &int(m as i64));
        if &predicted != counted {
            return Err(Error::InterpolationMismatch {
                m: m as i64,
                counted: fmt_rat(counted),
                predicted: fmt_rat(&predicted),
            });
        }
    }
    let mut delta = finite_difference_transform(&values, d);
    if let Some(i) = (d + 1..delta.len()).find(|&i| !delta[i].is_zero()) {
        return Err(Error::InterpolationMismatch {
            m: i as i64,
            counted: delta[i].to_string(),
            predicted: "0".into(),
        });
    }
    delta.truncate(d + 1);
    if delta.iter().any(Signed::is_negative) {
        return Err(Error::CheckFailed(format!(
            "negative delta coefficient in {:?}",
            delta.iter().map(ToString::to_string).collect::<Vec<_>>()
        )));
    }
    Ok(EhrhartData {
        values,
        polynomial,
        delta,
    })
}
