//! Class polynomials `f_k(m)` and the identities relating their values at
//! negative arguments, the boundary and the interior of `mQ`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::algebra::interp::{eval_poly, fmt_poly, interpolate};
use crate::algebra::rational::{fmt_rat, int, Rat};
use crate::error::{Error, Result};
use crate::fan::StackyFan;
use crate::algebra::FracPoly;
use crate::polytope::{ehrhart, ehrhart_from_counts, BoxPoints, EhrhartData, LatticePolytope, Point};
use crate::report::ensure;
use crate::weighted::checks::require_complete;
use crate::weighted::{count_weights, LambdaFunction, WeightTable};

/// `f_k(m)` as a polynomial in `m` with coefficients `c_0, ..., c_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPolynomial {
    pub k: Rat,
    pub coefficients: Vec<Rat>,
    pub verified_horizon: usize,
}

impl ClassPolynomial {
    pub fn zero(k: Rat, d: usize, verified_horizon: usize) -> Self {
        Self {
            k,
            coefficients: vec![Rat::zero(); d + 1],
            verified_horizon,
        }
    }

    pub fn eval(&self, m: i64) -> Rat {
        eval_poly(&self.coefficients, &int(m))
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    pub fn to_poly_string(&self) -> String {
        fmt_poly(&self.coefficients, "m")
    }
}

fn require_horizon(d: usize, horizon: usize) -> Result<()> {
    ensure(horizon >= 2 * d + 2, || {
        Error::PreconditionUnmet(format!("horizon {horizon} is below 2d+2 = {}", 2 * d + 2))
    })
}

/// Interpolates through `m = 0..=d` and checks the remaining counts.
pub fn interpolate_class(table: &WeightTable, d: usize, k: &Rat) -> Result<ClassPolynomial> {
    require_horizon(d, table.horizon)?;
    let values: Vec<Rat> = table.class(k).into_iter().map(Rat::from_integer).collect();
    let mut coefficients = interpolate(0, &values[..=d]);
    coefficients.resize(d + 1, Rat::zero());
    for (m, counted) in values.iter().enumerate().skip(d + 1) {
        let predicted = eval_poly(&coefficients, &int(m as i64));
        if predicted != *counted {
            return Err(Error::InterpolationMismatch {
                m: m as i64,
                counted: fmt_rat(counted),
                predicted: fmt_rat(&predicted),
            });
        }
    }
    let poly = ClassPolynomial {
        k: k.clone(),
        coefficients,
        verified_horizon: table.horizon,
    };
    ensure(poly.is_zero() || poly.coefficients[d].is_positive(), || {
        Error::CheckFailed(format!(
            "f_{} = {} is nonzero without degree {d}",
            fmt_rat(k),
            poly.to_poly_string()
        ))
    })?;
    Ok(poly)
}

/// Counts for `lambda = 0` to `horizon`, with every class polynomial and
/// `f_Q`. Shared by the checks below so a fan is scanned once.
#[derive(Clone, Debug)]
pub struct ClassData {
    pub rank: usize,
    pub horizon: usize,
    pub table: WeightTable,
    pub classes: BTreeMap<Rat, ClassPolynomial>,
    pub ehrhart: EhrhartData,
}

impl ClassData {
    pub fn new(fan: &StackyFan, horizon: usize) -> Result<Self> {
        let d = fan.rank();
        require_horizon(d, horizon)?;
        let table = count_weights(fan, &LambdaFunction::zero(fan.rays().len()), horizon);
        let classes = table
            .counts
            .keys()
            .map(|k| Ok((k.clone(), interpolate_class(&table, d, k)?)))
            .collect::<Result<_>>()?;
        let ehrhart = ehrhart_from_counts(d, table.totals())?;
        Ok(Self {
            rank: d,
            horizon,
            table,
            classes,
            ehrhart,
        })
    }

    /// `f_k`, or zero for an empty class.
    pub fn class(&self, k: &Rat) -> ClassPolynomial {
        self.classes
            .get(k)
            .cloned()
            .unwrap_or_else(|| ClassPolynomial::zero(k.clone(), self.rank, self.horizon))
    }

    pub fn delta_q(&self) -> FracPoly {
        FracPoly::from_coeffs(self.ehrhart.delta.clone())
    }
}

/// Class polynomials for `lambda = 0`, counted to `horizon`.
pub fn class_polynomials(fan: &StackyFan, horizon: usize) -> Result<BTreeMap<Rat, ClassPolynomial>> {
    Ok(ClassData::new(fan, horizon)?.classes)
}

fn sign(d: usize) -> Rat {
    if d % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// `f_k(-m) = (-1)^d f_(-1-k)(m)` for `-1 < k < 0` and
/// `f_0(-m) = (-1)^d f_0(m - 1)`, for `m = 1..=m_max`. An absent class is the
/// zero polynomial.
pub fn verify_weighted_reciprocity(fan: &StackyFan, data: &ClassData, m_max: i64) -> Result<String> {
    require_complete(fan)?;
    let e = sign(data.rank);
    let classes = &data.classes;
    for (k, f) in classes {
        let partner = if k.is_zero() {
            f.clone()
        } else {
            data.class(&(int(-1) - k))
        };
        for m in 1..=m_max {
            let lhs = f.eval(-m);
            let rhs = if k.is_zero() {
                &e * partner.eval(m - 1)
            } else {
                &e * partner.eval(m)
            };
            ensure(lhs == rhs, || {
                Error::ReciprocityViolated(format!(
                    "class {} at m = {m}: f(-m) = {} but the partner side is {}",
                    fmt_rat(k),
                    fmt_rat(&lhs),
                    fmt_rat(&rhs)
                ))
            })?;
        }
    }
    Ok(format!("{} classes, m = 1..{m_max}", classes.len()))
}

/// Lattice points of `mQ` as `(v, det * psi(v), det)`.
pub fn points_of_dilate(fan: &StackyFan, m: i64) -> Vec<(Point, i64, i64)> {
    let d = fan.rank();
    let mut lo = vec![0i64; d];
    let mut hi = vec![0i64; d];
    for r in fan.rays() {
        for c in 0..d {
            lo[c] = lo[c].min(m * r.b[c]);
            hi[c] = hi[c].max(m * r.b[c]);
        }
    }
    BoxPoints::new(&lo, &hi)
        .filter_map(|v| {
            let (num, den) = fan.psi_num(&v)?;
            (num <= m * den).then_some((v, num, den))
        })
        .collect()
}

/// `(-1)^d f_Q(-m)` against a direct count of `{psi < m}` on a complete fan.
pub fn verify_ehrhart_reciprocity(fan: &StackyFan, data: &ClassData, m_max: i64) -> Result<String> {
    require_complete(fan)?;
    let d = data.rank;
    let poly = &data.ehrhart.polynomial;
    for m in 1..=m_max {
        let interior = points_of_dilate(fan, m)
            .into_iter()
            .filter(|(_, num, den)| *num < m * den)
            .count();
        let value = sign(d) * eval_poly(poly, &int(-m));
        ensure(value == int(interior as i64), || {
            Error::ReciprocityViolated(format!(
                "m = {m}: (-1)^d f_Q(-m) = {} but mQ has {interior} interior points",
                fmt_rat(&value)
            ))
        })?;
    }
    Ok(format!("f_Q = {}, m = 1..{m_max}", fmt_poly(poly, "m")))
}

/// The same statement for a lattice polytope, counted from its facets.
pub fn verify_polytope_reciprocity(p: &LatticePolytope, m_max: i64) -> Result<String> {
    let d = p.dim();
    let data = ehrhart(p, 2 * d + 2)?;
    for m in 1..=m_max {
        let interior = p.interior_lattice_points(m).len();
        let value = sign(d) * data.eval(-m);
        ensure(value == int(interior as i64), || {
            Error::ReciprocityViolated(format!(
                "m = {m}: (-1)^d f_P(-m) = {} but mP has {interior} interior points",
                fmt_rat(&value)
            ))
        })?;
    }
    Ok(format!("f_P = {}, m = 1..{m_max}", fmt_poly(&data.polynomial, "m")))
}

/// `f_Q(m) - (-1)^d f_Q(-m) = f_0(m) - f_0(m - 1)`, both sides counting the
/// boundary of `mQ`.
pub fn verify_boundary_identity(fan: &StackyFan, data: &ClassData, m_max: i64) -> Result<String> {
    require_complete(fan)?;
    let f0 = data.class(&int(0));
    let f_q = &data.ehrhart.polynomial;
    for m in 1..=m_max {
        let lhs = eval_poly(f_q, &int(m)) - sign(data.rank) * eval_poly(f_q, &int(-m));
        let rhs = f0.eval(m) - f0.eval(m - 1);
        ensure(lhs == rhs, || {
            Error::ReciprocityViolated(format!(
                "m = {m}: {} on the left, {} on the right",
                fmt_rat(&lhs),
                fmt_rat(&rhs)
            ))
        })?;
    }
    Ok(format!("m = 1..{m_max}"))
}

/// The two sides of the palindromy criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HibiReport {
    pub palindromic: bool,
    pub psi_piecewise_linear: bool,
}

/// `delta_Q` palindromic against `psi` integral on every box element.
pub fn hibi_check(fan: &StackyFan, data: &ClassData) -> Result<HibiReport> {
    require_complete(fan)?;
    let delta_q = data.delta_q();
    let report = HibiReport {
        palindromic: delta_q.is_palindromic(&int(fan.rank() as i64)),
        psi_piecewise_linear: fan.all_box_elements().iter().all(|e| e.psi.is_integer()),
    };
    ensure(report.palindromic == report.psi_piecewise_linear, || {
        Error::EquivalenceViolated(format!(
            "delta_Q = {} palindromic: {}, psi piecewise linear: {}",
            delta_q,
            report.palindromic,
            report.psi_piecewise_linear
        ))
    })?;
    Ok(report)
}

/// Properties of `delta0` read off `Q` directly: value at 1, constant term,
/// coefficient of `t` and the fractional coefficients below 1.
pub fn verify_low_coefficients(fan: &StackyFan) -> Result<String> {
    let d = fan.rank();
    let delta0 = crate::weighted::delta0_local(fan);
    let volume: i64 = fan
        .frames()
        .iter()
        .map(|f| {
            let cols: Vec<Point> = f.rays.iter().map(|&r| fan.rays()[r].b.clone()).collect();
            crate::algebra::linalg::int_det(&cols).unsigned_abs() as i64
        })
        .sum();
    ensure(delta0.sum_coeffs() == int(volume), || {
        Error::CheckFailed(format!(
            "delta0(1) = {} but d! vol(Q) = {volume}",
            fmt_rat(&delta0.sum_coeffs())
        ))
    })?;
    ensure(delta0.coeff(&int(0)) == int(1), || {
        Error::CheckFailed(format!("constant term is {}", fmt_rat(&delta0.coeff(&int(0)))))
    })?;
    let points = points_of_dilate(fan, 1);
    let on_boundary = points.iter().filter(|(_, n, den)| n == den).count() as i64;
    let linear = delta0.coeff(&int(1));
    ensure(linear == int(on_boundary - d as i64), || {
        Error::CheckFailed(format!(
            "coefficient of t is {} but |dQ0 n N| - d = {}",
            fmt_rat(&linear),
            on_boundary - d as i64
        ))
    })?;
    let mut levels: BTreeMap<Rat, i64> = BTreeMap::new();
    for (_, n, den) in &points {
        if *n > 0 && n < den {
            *levels.entry(Rat::new((*n).into(), (*den).into())).or_default() += 1;
        }
    }
    let fractional: BTreeMap<Rat, i64> = delta0
        .terms()
        .filter(|(e, _)| e.is_positive() && **e < int(1))
        .map(|(e, c)| (e.clone(), c.to_integer().try_into().expect("small")))
        .collect();
    ensure(fractional == levels, || {
        Error::CheckFailed(format!(
            "fractional coefficients {fractional:?} differ from psi levels {levels:?}"
        ))
    })?;
    Ok(format!("delta0(1) = {volume}, |dQ0 n N| = {on_boundary}"))
}

/// Closed forms in dimension 2: `f_0(m) = B m(m+1)/2 + 1` with `B` the
/// boundary count, and `f_k` determined by `f_k(1)` and `f_(-1-k)(1)`.
pub fn verify_planar_closed_forms(fan: &StackyFan, data: &ClassData) -> Result<String> {
    if fan.rank() != 2 {
        return Err(Error::PreconditionUnmet(format!("dimension is {}, not 2", fan.rank())));
    }
    require_complete(fan)?;
    let classes = &data.classes;
    let boundary = points_of_dilate(fan, 1).iter().filter(|(_, n, den)| n == den).count() as i64;
    let at_one = |k: &Rat| classes.get(k).map_or(int(0), |f| f.eval(1));
    ensure(classes.contains_key(&int(0)), || Error::CheckFailed("class 0 is empty".into()))?;
    for (k, f) in classes {
        let expected = if k.is_zero() {
            vec![int(1), rat_half(boundary), rat_half(boundary)]
        } else {
            let (a, b) = (at_one(k), at_one(&(int(-1) - k)));
            let half = int(1) / int(2);
            vec![int(0), (&a - &b) * &half, (a + b) * half]
        };
        ensure(f.coefficients == expected, || {
            Error::CheckFailed(format!(
                "f_{} = {} but the closed form is {}",
                fmt_rat(k),
                f.to_poly_string(),
                fmt_poly(&expected, "m")
            ))
        })?;
    }
    Ok(format!("|dQ n N| = {boundary}, {} classes", classes.len()))
}

fn rat_half(n: i64) -> Rat {
    Rat::new(n.into(), 2.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use crate::fan::fixtures::*;
    use crate::polytope::fixtures::unit_square;

    fn coeffs(c: &[(i64, i64)]) -> Vec<Rat> {
        c.iter().map(|&(p, q)| rat(p, q)).collect()
    }

    #[test]
    fn hexagon_class_polynomials() {
        let c = class_polynomials(&hexagon_fan(), 6).unwrap();
        assert_eq!(c[&int(0)].coefficients, coeffs(&[(1, 1), (3, 1), (3, 1)]));
        assert_eq!(c[&rat(-1, 2)].coefficients, coeffs(&[(0, 1), (0, 1), (2, 1)]));
        assert_eq!(c[&rat(-1, 3)].coefficients, coeffs(&[(0, 1), (1, 2), (1, 2)]));
        assert_eq!(c[&rat(-2, 3)].coefficients, coeffs(&[(0, 1), (-1, 2), (1, 2)]));
        assert_eq!(c[&rat(-2, 3)].to_poly_string(), "1/2*m^2 - 1/2*m");
        let table = count_weights(&hexagon_fan(), &LambdaFunction::zero(6), 6);
        assert!(interpolate_class(&table, 2, &rat(-1, 7)).unwrap().is_zero());
        assert!(interpolate_class(&count_weights(&hexagon_fan(), &LambdaFunction::zero(6), 5), 2, &int(0))
            .unwrap_err()
            .is_precondition());
    }

    #[test]
    fn second_example_class_polynomials() {
        let c = class_polynomials(&second_example_fan(), 6).unwrap();
        assert_eq!(c[&int(0)].to_poly_string(), "5*m^2 + 5*m + 1");
        assert_eq!(c[&rat(-1, 2)].to_poly_string(), "3*m^2");
        assert_eq!(c[&rat(-1, 4)].to_poly_string(), "1/2*m^2 + 1/2*m");
        assert_eq!(c[&rat(-3, 4)].to_poly_string(), "1/2*m^2 - 1/2*m");
    }

    #[test]
    fn reciprocity_on_examples() {
        for f in [hexagon_fan(), second_example_fan(), reflexive_square_fan(), unimodular_fan()] {
            let data = ClassData::new(&f, 6).unwrap();
            verify_weighted_reciprocity(&f, &data, 5).unwrap();
            verify_ehrhart_reciprocity(&f, &data, 3).unwrap();
            verify_boundary_identity(&f, &data, 5).unwrap();
            verify_low_coefficients(&f).unwrap();
            verify_planar_closed_forms(&f, &data).unwrap();
        }
        let q = quadrant_fan();
        let data = ClassData::new(&q, 6).unwrap();
        assert!(verify_weighted_reciprocity(&q, &data, 5).unwrap_err().is_precondition());
        assert!(verify_ehrhart_reciprocity(&q, &data, 5).unwrap_err().is_precondition());
        verify_low_coefficients(&q).unwrap();
    }

    #[test]
    fn hexagon_reciprocity_values() {
        let c = class_polynomials(&hexagon_fan(), 6).unwrap();
        for m in 1..6 {
            assert_eq!(c[&int(0)].eval(-m), int(3 * m * m - 3 * m + 1));
            assert_eq!(c[&rat(-1, 3)].eval(-m), c[&rat(-2, 3)].eval(m));
        }
    }

    #[test]
    fn polytope_reciprocity() {
        verify_polytope_reciprocity(&unit_square(), 3).unwrap();
        let sq = unit_square();
        let data = ehrhart(&sq, 6).unwrap();
        assert_eq!(data.eval(-1), int(0));
        assert_eq!(data.eval(-2), int(1));
    }

    #[test]
    fn hibi_witnesses() {
        let hibi = |f: &StackyFan| hibi_check(f, &ClassData::new(f, 6).unwrap());
        let r = hibi(&reflexive_square_fan()).unwrap();
        assert!(r.palindromic && r.psi_piecewise_linear);
        for f in [hexagon_fan(), second_example_fan()] {
            let r = hibi(&f).unwrap();
            assert!(!r.palindromic && !r.psi_piecewise_linear);
        }
        assert!(hibi(&quadrant_fan()).unwrap_err().is_precondition());
    }
}
