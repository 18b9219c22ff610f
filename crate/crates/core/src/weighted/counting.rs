//! Direct enumeration of `mQ` by weight class. Integer arithmetic in the
//! scan; rationals only when the table is assembled.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use rayon::prelude::*;

use crate::algebra::linalg::dot;
use crate::algebra::rational::Rat;
use crate::fan::StackyFan;
use crate::polytope::BoxPoints;

use super::lambda::LambdaFunction;

/// Observations made on every scanned point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanFlags {
    /// `psi(v) + lambda(v) >= 0` on every point seen.
    pub psi_plus_lambda_nonnegative: bool,
    /// `lambda(v) > -1` on every point with `psi(v) = 1`.
    pub boundary_lambda_above_minus_one: bool,
}

/// `counts[k][m]` is the number of lattice points of weight `k` in `mQ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTable {
    pub horizon: usize,
    pub counts: BTreeMap<Rat, Vec<BigInt>>,
    pub flags: ScanFlags,
}

impl WeightTable {
    /// `f_Q(m)` for `m = 0..=horizon`.
    pub fn totals(&self) -> Vec<BigInt> {
        (0..=self.horizon)
            .map(|m| self.counts.values().map(|c| &c[m]).sum())
            .collect()
    }

    pub fn class(&self, k: &Rat) -> Vec<BigInt> {
        self.counts
            .get(k)
            .cloned()
            .unwrap_or_else(|| vec![BigInt::from(0); self.horizon + 1])
    }
}

struct Rows {
    adj: Vec<Vec<i64>>,
    det: i64,
    psi: Vec<i64>,
    lam: Vec<i64>,
}

type Hist = HashMap<(i64, i64), Vec<u64>>;

pub fn count_weights(fan: &StackyFan, lambda: &LambdaFunction, horizon: usize) -> WeightTable {
    let d = fan.rank();
    let l = lambda.denominator();
    let scaled: Vec<i64> = lambda
        .values()
        .iter()
        .map(|x| (x * Rat::from_integer(l.into())).to_integer().try_into().expect("fits"))
        .collect();
    let rows: Vec<Rows> = fan
        .frames()
        .iter()
        .map(|f| Rows {
            adj: f.adj.clone(),
            det: f.det,
            psi: f.psi_row.clone(),
            lam: (0..d)
                .map(|j| f.rays.iter().zip(&f.adj).map(|(&r, row)| scaled[r] * row[j]).sum())
                .collect(),
        })
        .collect();
    let m = horizon as i64;
    let mut lo = vec![0i64; d];
    let mut hi = vec![0i64; d];
    for r in fan.rays() {
        for c in 0..d {
            lo[c] = lo[c].min(r.b[c] * m);
            hi[c] = hi[c].max(r.b[c] * m);
        }
    }
    let scan_slice = |x0: i64| -> (Hist, ScanFlags) {
        let mut hist: Hist = HashMap::new();
        let mut flags = ScanFlags {
            psi_plus_lambda_nonnegative: true,
            boundary_lambda_above_minus_one: true,
        };
        let mut slo = lo.clone();
        let mut shi = hi.clone();
        slo[0] = x0;
        shi[0] = x0;
        for v in BoxPoints::new(&slo, &shi) {
            let Some(f) = rows
                .iter()
                .find(|f| f.adj.iter().all(|row| dot(row, &v) >= 0))
            else {
                continue;
            };
            let psi = dot(&f.psi, &v) as i128;
            let det = f.det as i128;
            if psi > m as i128 * det {
                continue;
            }
            let lam = dot(&f.lam, &v) as i128;
            let l = l as i128;
            let ceil = (psi + det - 1).div_euclid(det);
            if psi * l + lam < 0 {
                flags.psi_plus_lambda_nonnegative = false;
            }
            if psi == det && lam <= -det * l {
                flags.boundary_lambda_above_minus_one = false;
            }
            let num = (psi - ceil * det) * l + lam;
            let den = det * l;
            let g = num.gcd(&den);
            let key = ((num / g) as i64, (den / g) as i64);
            hist.entry(key).or_insert_with(|| vec![0; horizon + 1])[ceil as usize] += 1;
        }
        (hist, flags)
    };
    let (hist, flags) = (lo[0]..=hi[0])
        .into_par_iter()
        .map(scan_slice)
        .reduce(
            || {
                (
                    HashMap::new(),
                    ScanFlags {
                        psi_plus_lambda_nonnegative: true,
                        boundary_lambda_above_minus_one: true,
                    },
                )
            },
            |(mut a, fa), (b, fb)| {
                for (k, v) in b {
                    let slot = a.entry(k).or_insert_with(|| vec![0; horizon + 1]);
                    for (x, y) in slot.iter_mut().zip(v) {
                        *x += y;
                    }
                }
                (
                    a,
                    ScanFlags {
                        psi_plus_lambda_nonnegative: fa.psi_plus_lambda_nonnegative
                            && fb.psi_plus_lambda_nonnegative,
                        boundary_lambda_above_minus_one: fa.boundary_lambda_above_minus_one
                            && fb.boundary_lambda_above_minus_one,
                    },
                )
            },
        );
    let counts = hist
        .into_iter()
        .map(|((n, dd), h)| {
            let mut acc = 0u64;
            let cumulative = h
                .iter()
                .map(|x| {
                    acc += x;
                    BigInt::from(acc)
                })
                .collect();
            (Rat::new(n.into(), dd.into()), cumulative)
        })
        .collect();
    WeightTable {
        horizon,
        counts,
        flags,
    }
}
