use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use crate::algebra::ratfunc::finite_difference_transform;
use crate::algebra::rational::{fmt_rat, int, Rat};
use crate::algebra::{BiFracPoly, FracPoly};
use crate::error::{Error, Result};
use crate::fan::StackyFan;

use super::counting::{count_weights, ScanFlags, WeightTable};
use super::lambda::LambdaFunction;

/// Refined delta-vectors of a stacky fan for one `lambda`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedDelta {
    pub horizon: usize,
    /// `delta_k(t)`, exact unless `k` is in `truncated`.
    pub by_class: BTreeMap<Rat, FracPoly>,
    /// Classes only known up to `t^horizon`.
    pub truncated: BTreeSet<Rat>,
    pub bivariate: BiFracPoly,
    /// `delta(t, t)`; exact when `exact_to` is `None`, otherwise only terms of
    /// exponent `<= exact_to` are reliable.
    pub specialized: FracPoly,
    pub exact_to: Option<Rat>,
    pub table: WeightTable,
}

impl WeightedDelta {
    pub fn flags(&self) -> ScanFlags {
        self.table.flags
    }

    pub fn class(&self, k: &Rat) -> FracPoly {
        self.by_class.get(k).cloned().unwrap_or_default()
    }

    /// `delta_Q(t) = sum_k delta_k(t)`, from the same counts.
    pub fn delta_q(&self) -> FracPoly {
        self.by_class.values().fold(FracPoly::zero(), |acc, p| &acc + p)
    }
}

/// Horizon used when none is given: `2d + 2 + ceil(sum lambda(b_i))`.
pub fn default_horizon(fan: &StackyFan, lambda: &LambdaFunction) -> usize {
    let sum: Rat = lambda.values().iter().filter(|x| x.is_positive()).sum();
    2 * fan.rank() + 2 + sum.ceil().to_integer().try_into().unwrap_or(0usize)
}

/// Degree bound for `delta_k` when `lambda >= 0`: `d` plus, when some ray
/// value is positive, `min(d, #positive rays) + floor((k + 1) / min positive)`.
fn degree_bound(d: usize, lambda: &LambdaFunction, k: &Rat) -> usize {
    match lambda.min_positive() {
        None => d,
        Some(p) => {
            let positive = lambda.values().iter().filter(|x| x.is_positive()).count();
            let steps: usize = ((k + int(1)) / p).floor().to_integer().try_into().unwrap_or(0);
            d + d.min(positive) + steps
        }
    }
}

/// `(1 - t)^(d+1) sum_m f_k(m) t^m` per class. With `lambda >= 0` every
/// class whose degree bound fits in the horizon is checked to terminate.
pub fn delta_by_class(
    fan: &StackyFan,
    table: &WeightTable,
    lambda: &LambdaFunction,
) -> Result<(BTreeMap<Rat, FracPoly>, BTreeSet<Rat>)> {
    let d = fan.rank();
    let mut out = BTreeMap::new();
    let mut truncated = BTreeSet::new();
    for (k, counts) in &table.counts {
        let diffs = finite_difference_transform(counts, d);
        let mut poly = FracPoly::zero();
        let bound = if lambda.is_nonnegative() {
            Some(degree_bound(d, lambda, k))
        } else {
            None
        };
        for (i, c) in diffs.iter().enumerate() {
            if let Some(b) = bound {
                if i > b && b < table.horizon && !c.is_zero() {
                    return Err(Error::NotPolynomialAtHorizon {
                        k: fmt_rat(k),
                        horizon: table.horizon,
                        detail: format!("coefficient of t^{i} is {c}, degree bound {b}"),
                    });
                }
            }
            poly.add_term(int(i as i64), Rat::from_integer(c.clone()));
        }
        if bound.is_none_or(|b| b >= table.horizon) {
            truncated.insert(k.clone());
        }
        out.insert(k.clone(), poly);
    }
    Ok((out, truncated))
}

/// Counts to `horizon`, splits into classes and assembles the bivariate and
/// specialized forms.
pub fn weighted_delta(
    fan: &StackyFan,
    lambda: &LambdaFunction,
    horizon: usize,
) -> Result<WeightedDelta> {
    lambda.check_len(fan)?;
    lambda.require_above_minus_one()?;
    let d = fan.rank();
    if lambda.is_nonnegative() && horizon < 2 * d + 2 {
        return Err(Error::PreconditionUnmet(format!(
            "horizon {horizon} is below 2d+2 = {}",
            2 * d + 2
        )));
    }
    let table = count_weights(fan, lambda, horizon);
    if !table.flags.psi_plus_lambda_nonnegative {
        return Err(Error::LambdaOutOfRange(
            "psi + lambda is negative at an enumerated point".into(),
        ));
    }
    let (by_class, truncated) = delta_by_class(fan, &table, lambda)?;
    let mut bivariate = BiFracPoly::zero();
    for (k, p) in &by_class {
        bivariate.add_s_times(k, p);
    }
    let mut specialized = bivariate.specialize_s_to_t();
    let exact_to = if lambda.is_zero() {
        None
    } else {
        // a point beyond the horizon has psi > M, hence psi + lambda > M (1 + min(0, lambda_min))
        let floor = lambda.min_value().min(Rat::zero());
        let e = int(horizon as i64) * (int(1) + floor);
        specialized = specialized.truncate(&e);
        Some(e)
    };
    Ok(WeightedDelta {
        horizon,
        by_class,
        truncated,
        bivariate,
        specialized,
        exact_to,
        table,
    })
}
