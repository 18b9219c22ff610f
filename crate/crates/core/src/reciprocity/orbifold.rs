//! Orbifold Betti numbers as coefficients of `delta0`, grouped back into the
//! ordinary delta-vector.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::rational::{fmt_rat, Rat};
use crate::algebra::FracPoly;
use crate::error::{Error, Result};
use crate::fan::StackyFan;
use crate::report::ensure;
use crate::weighted::{delta0_local, sectors, Sector};

use super::classes::ClassData;

/// `dims[j]` is the dimension in degree `2j`. Purely combinatorial: the
/// coefficients of `delta0`, with the sector-by-sector breakdown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbifoldBetti {
    pub rank: usize,
    pub dims: BTreeMap<Rat, BigInt>,
    pub sectors: Vec<Sector>,
}

pub fn orbifold_betti(fan: &StackyFan) -> OrbifoldBetti {
    let delta0 = delta0_local(fan);
    let sectors = sectors(fan);
    let dims = delta0
        .terms()
        .map(|(e, c)| (e.clone(), c.to_integer()))
        .collect();
    OrbifoldBetti {
        rank: fan.rank(),
        dims,
        sectors,
    }
}

impl OrbifoldBetti {
    /// Sum of the sector contributions `t^psi(v) h_tau(t)`.
    pub fn from_sectors(&self) -> FracPoly {
        self.sectors
            .iter()
            .fold(FracPoly::zero(), |acc, s| &acc + &s.contribution())
    }

    pub fn total(&self) -> BigInt {
        self.dims.values().sum()
    }
}

/// `delta_i = sum over i - 1 < j <= i of dims[j]`.
pub fn group_betti_to_delta(b: &OrbifoldBetti) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); b.rank + 1];
    for (j, dim) in &b.dims {
        let i: usize = j.ceil().to_integer().try_into().expect("nonnegative degree");
        if i >= out.len() {
            out.resize(i + 1, BigInt::zero());
        }
        out[i] += dim;
    }
    out
}

/// The grouped Betti numbers against `delta_Q` from the point counts.
pub fn verify_grouping(fan: &StackyFan, data: &ClassData) -> Result<String> {
    let b = orbifold_betti(fan);
    let grouped = group_betti_to_delta(&b);
    let counted = data.delta_q();
    let mut expected = vec![BigInt::zero(); grouped.len()];
    for (e, c) in counted.terms() {
        let i: usize = e.to_integer().try_into().map_err(|_| {
            Error::GroupingMismatch(format!("delta_Q has exponent {}", fmt_rat(e)))
        })?;
        if i >= expected.len() {
            expected.resize(i + 1, BigInt::zero());
        }
        expected[i] = c.to_integer();
    }
    ensure(grouped == expected, || {
        Error::GroupingMismatch(format!("grouped {grouped:?} but delta_Q = {counted}"))
    })?;
    ensure(b.from_sectors() == delta0_local(fan), || {
        Error::GroupingMismatch("sector sum differs from delta0".into())
    })?;
    let total = b.total();
    let rendered: Vec<String> = grouped.iter().map(ToString::to_string).collect();
    Ok(format!("delta = ({}), total {total}", rendered.join(", ")))
}
