//! Symmetry of the weighted delta-vector, the Betke-McMullen split, the
//! duality of weighted h-vectors and the change of variables.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::rational::{fmt_rat, int, Rat};
use crate::algebra::FracPoly;
use crate::error::{Error, Result};
use crate::fan::StackyFan;
use crate::polytope::BoxPoints;
use crate::report::ensure;

use super::delta::{weighted_delta, WeightedDelta};
use super::lambda::LambdaFunction;
use super::local::{delta0_local, delta_lambda_local, weighted_h, weighted_h_dual};

pub fn require_complete(fan: &StackyFan) -> Result<()> {
    ensure(fan.is_complete(), || {
        Error::PreconditionUnmet("fan is not complete".into())
    })
}

fn sym_err(what: &str, lhs: &FracPoly, rhs: &FracPoly) -> Error {
    Error::SymmetryViolated(format!("{what}: {lhs} vs {rhs}"))
}

/// Per-class form of the symmetry for `lambda = 0`: `delta_0` is palindromic
/// of degree `d`, and writing `delta_k = t g_k`,
/// `g_k(t) = t^(d-1) g_(-1-k)(1/t)` for `-1 < k < 0`.
pub fn verify_class_symmetry(fan: &StackyFan, w: &WeightedDelta) -> Result<()> {
    let d = int(fan.rank() as i64);
    let a = w.class(&int(0));
    ensure(a.is_palindromic(&d), || sym_err("delta_0", &a, &a.reverse(&d)))?;
    for k in w.by_class.keys().filter(|k| **k != int(0)) {
        let g = w.class(k).shift(&int(-1));
        let partner = w.class(&(int(-1) - k)).shift(&int(-1));
        let mirrored = partner.reverse(&(&d - int(1)));
        ensure(g == mirrored, || {
            sym_err(&format!("class {}", fmt_rat(k)), &g, &mirrored)
        })?;
    }
    Ok(())
}

/// `delta^lambda(t) = t^d delta^lambda(1/t)` on a complete fan. For
/// `lambda = 0` both the counted and the local polynomial are checked, along
/// with the per-class statements; otherwise the local rational function is
/// checked by cross-multiplication.
pub fn verify_symmetry(fan: &StackyFan, lambda: &LambdaFunction, horizon: usize) -> Result<String> {
    require_complete(fan)?;
    lambda.check_len(fan)?;
    lambda.require_above_minus_one()?;
    let d = int(fan.rank() as i64);
    if lambda.is_zero() {
        let w = weighted_delta(fan, lambda, horizon)?;
        let counted = &w.specialized;
        ensure(counted.is_palindromic(&d), || {
            sym_err("counted delta0", counted, &counted.reverse(&d))
        })?;
        let local = delta0_local(fan);
        ensure(local.is_palindromic(&d), || {
            sym_err("local delta0", &local, &local.reverse(&d))
        })?;
        verify_class_symmetry(fan, &w)?;
        return Ok(format!("delta0 = {counted} is palindromic of degree {}", fmt_rat(&d)));
    }
    let rf = delta_lambda_local(fan, lambda)?;
    let mirrored = rf.reverse(&d);
    ensure(rf == mirrored, || {
        Error::SymmetryViolated(format!(
            "{} / {} is not invariant under t^d f(1/t)",
            rf.numerator(),
            rf.denominator()
        ))
    })?;
    Ok("delta^lambda(t) = t^d delta^lambda(1/t) as rational functions".into())
}

/// `delta_Q = a + t b` with `a = delta_0` and `b = sum over k != 0 of
/// delta_k / t`; both palindromic, of degree `d` and `d - 1`.
pub fn betke_mcmullen_decomposition(fan: &StackyFan, horizon: usize) -> Result<(FracPoly, FracPoly)> {
    require_complete(fan)?;
    let n = fan.rays().len();
    let w = weighted_delta(fan, &LambdaFunction::zero(n), horizon)?;
    let d = int(fan.rank() as i64);
    let a = w.class(&int(0));
    let b = w
        .by_class
        .iter()
        .filter(|(k, _)| **k != int(0))
        .fold(FracPoly::zero(), |acc, (_, p)| &acc + &p.shift(&int(-1)));
    ensure(a.is_palindromic(&d), || sym_err("a", &a, &a.reverse(&d)))?;
    let dm1 = &d - int(1);
    ensure(b.is_zero() || b.is_palindromic(&dm1), || {
        sym_err("b", &b, &b.reverse(&dm1))
    })?;
    let total = &a + &b.shift(&int(1));
    let delta_q = w.delta_q();
    ensure(total == delta_q, || {
        Error::CheckFailed(format!("a + t b = {total} but delta_Q = {delta_q}"))
    })?;
    Ok((a, b))
}

/// Random rational `(s, t)` with `s^lambda_i` rational: `s = r^N` for the
/// common denominator `N` of the ray values.
pub fn random_point(rng: &mut ChaCha8Rng, lambda: &LambdaFunction) -> (Rat, Rat) {
    let n = lambda.denominator() as usize;
    let pick = |rng: &mut ChaCha8Rng| loop {
        let p: i64 = rng.gen_range(1..=9);
        let q: i64 = rng.gen_range(1..=9);
        let r = Rat::new(p.into(), q.into());
        if r != int(1) {
            return r;
        }
    };
    let r = pick(rng);
    let t = pick(rng);
    (num_traits::pow(r, n), t)
}

/// For every interior cone and `samples` random points:
/// `h(s,t) = t^codim h(1/s, 1/t)` and
/// `t^codim h(1/s,1/t) = sum (t-1)^codim(sigma) prod (t-1)/(s^lambda_i t - 1)`.
pub fn verify_weighted_h_duality(
    fan: &StackyFan,
    lambda: &LambdaFunction,
    samples: usize,
    seed: u64,
) -> Result<String> {
    lambda.check_len(fan)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    for tau in fan.cones().iter().filter(|c| fan.is_interior(c)) {
        let codim = fan.rank() - tau.dim();
        let mut done = 0;
        let mut attempts = 0;
        while done < samples {
            attempts += 1;
            if attempts > 50 * samples {
                return Err(Error::CheckFailed(format!("no pole-free sample for cone {tau}")));
            }
            let (s, t) = random_point(&mut rng, lambda);
            let lhs = weighted_h(fan, tau, lambda, &s, &t);
            let inv = weighted_h(fan, tau, lambda, &s.recip(), &t.recip());
            let dual = weighted_h_dual(fan, tau, lambda, &s, &t);
            let (lhs, inv, dual) = match (lhs, inv, dual) {
                (Ok(a), Ok(b), Ok(c)) => (a, b, c),
                (Err(Error::PoleAtEvaluationPoint(_)), _, _)
                | (_, Err(Error::PoleAtEvaluationPoint(_)), _)
                | (_, _, Err(Error::PoleAtEvaluationPoint(_))) => continue,
                (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => return Err(e),
            };
            let rhs = num_traits::pow(t.clone(), codim) * &inv;
            ensure(lhs == rhs && rhs == dual, || {
                Error::SymmetryViolated(format!(
                    "cone {tau} at s = {}, t = {}: {} vs {} vs {}",
                    fmt_rat(&s),
                    fmt_rat(&t),
                    fmt_rat(&lhs),
                    fmt_rat(&rhs),
                    fmt_rat(&dual)
                ))
            })?;
            done += 1;
            checked += 1;
        }
    }
    Ok(format!("{checked} evaluations agree"))
}

/// The closed-form sum over box elements against the point counts. For
/// `lambda = 0` the polynomials agree exactly; otherwise the series of the
/// local rational function agrees with the counted one up to the exact order.
pub fn verify_local_vs_count(fan: &StackyFan, lambda: &LambdaFunction, horizon: usize) -> Result<String> {
    let w = weighted_delta(fan, lambda, horizon)?;
    if lambda.is_zero() {
        let local = delta0_local(fan);
        ensure(local == w.specialized, || {
            Error::CheckFailed(format!("local {local} vs counted {}", w.specialized))
        })?;
        ensure(super::local::delta0_bivariate_local(fan) == w.bivariate, || {
            Error::CheckFailed("bivariate forms differ".into())
        })?;
        return Ok(format!("delta0 = {local}"));
    }
    let order = w.exact_to.clone().expect("set for nonzero lambda");
    let local = delta_lambda_local(fan, lambda)?.expand(&order)?;
    ensure(local == w.specialized, || {
        Error::CheckFailed(format!("local series {local} vs counted {}", w.specialized))
    })?;
    Ok(format!("series agree up to t^{}", fmt_rat(&order)))
}

/// Outcome of comparing a fan with a coarser one of the same support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChangeOfVariables {
    pub lambda_prime: LambdaFunction,
    /// Exponent up to which the counted series were compared.
    pub compared_to: Rat,
}

fn cone_samples(fan: &StackyFan, k: i64) -> Vec<Vec<i64>> {
    let d = fan.rank();
    let mut out = Vec::new();
    for f in fan.frames() {
        for mult in BoxPoints::new(&vec![0; d], &vec![k; d]) {
            let v: Vec<i64> = (0..d)
                .map(|c| {
                    f.rays
                        .iter()
                        .zip(&mult)
                        .map(|(&r, &m)| m * fan.rays()[r].b[c])
                        .sum()
                })
                .collect();
            out.push(v);
        }
    }
    out
}

pub fn same_support(a: &StackyFan, b: &StackyFan) -> Result<()> {
    if a.rank() != b.rank() || a.is_complete() != b.is_complete() {
        return Err(Error::SupportMismatch("rank or completeness differs".into()));
    }
    for (x, y) in [(a, b), (b, a)] {
        if let Some(v) = cone_samples(x, 2).into_iter().find(|v| y.locate_num(v).is_none()) {
            return Err(Error::SupportMismatch(format!("{v:?} lies in one support only")));
        }
    }
    Ok(())
}

/// Compares `delta^lambda` on `sigma` with `delta^lambda'` on the coarser
/// `delta`, where `lambda' = lambda + psi_sigma - psi_delta`.
pub fn change_of_variables_check(
    sigma: &StackyFan,
    delta: &StackyFan,
    lambda: &LambdaFunction,
    horizon: usize,
) -> Result<ChangeOfVariables> {
    lambda.check_len(sigma)?;
    lambda.require_above_minus_one()?;
    same_support(sigma, delta)?;
    let values = delta
        .rays()
        .iter()
        .map(|r| Ok(lambda.value(sigma, &r.b)? + sigma.psi(&r.b)? - int(1)))
        .collect::<Result<Vec<_>>>()?;
    let lambda_prime = LambdaFunction::new(values);
    // lambda' must be linear on every cone of delta
    let d = delta.rank();
    let mut lo = vec![0i64; d];
    let mut hi = vec![0i64; d];
    for r in delta.rays() {
        for c in 0..d {
            lo[c] = lo[c].min(3 * r.b[c]);
            hi[c] = hi[c].max(3 * r.b[c]);
        }
    }
    let mut probes: Vec<Vec<i64>> = BoxPoints::new(&lo, &hi)
        .filter(|v| delta.psi(v).is_ok_and(|p| p <= int(3)))
        .collect();
    probes.extend(sigma.rays().iter().map(|r| r.b.clone()));
    for v in &probes {
        let actual = lambda.value(sigma, v)? + sigma.psi(v)? - delta.psi(v)?;
        let linear = lambda_prime.value(delta, v)?;
        if actual != linear {
            return Err(Error::LambdaPrimeNotPiecewiseLinear(format!(
                "at {v:?}: {} but the linear extension gives {}",
                fmt_rat(&actual),
                fmt_rat(&linear)
            )));
        }
    }
    if let Some(i) = lambda_prime.values().iter().position(|x| *x <= int(-1)) {
        return Err(Error::LambdaPrimeOutOfRange(format!(
            "lambda'(b'_{i}) = {}",
            fmt_rat(&lambda_prime.values()[i])
        )));
    }
    let lhs = delta_lambda_local(sigma, lambda)?;
    let rhs = delta_lambda_local(delta, &lambda_prime)?;
    ensure(lhs == rhs, || {
        Error::CheckFailed("local rational functions differ".into())
    })?;
    let ws = weighted_delta(sigma, lambda, horizon)?;
    let wd = weighted_delta(delta, &lambda_prime, horizon)?;
    let order = match (&ws.exact_to, &wd.exact_to) {
        (None, None) => int(horizon as i64),
        (Some(a), None) | (None, Some(a)) => a.clone(),
        (Some(a), Some(b)) => a.min(b).clone(),
    };
    let (x, y) = (ws.specialized.truncate(&order), wd.specialized.truncate(&order));
    ensure(x == y, || {
        Error::CheckFailed(format!("counted series differ: {x} vs {y}"))
    })?;
    Ok(ChangeOfVariables {
        lambda_prime,
        compared_to: order,
    })
}
