use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::fracpoly::FracPoly;
use super::rational::{int, Rat};
use crate::error::{Error, Result};

/// Quotient of two [`FracPoly`]s, kept unreduced. Two rational functions are
/// equal when their cross products agree.
#[derive(Clone, Debug)]
pub struct RationalFunction {
    num: FracPoly,
    den: FracPoly,
}

impl RationalFunction {
    pub fn new(num: FracPoly, den: FracPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(Self { num, den })
    }

    pub fn from_poly(p: FracPoly) -> Self {
        Self {
            num: p,
            den: FracPoly::one(),
        }
    }

    pub fn numerator(&self) -> &FracPoly {
        &self.num
    }

    pub fn denominator(&self) -> &FracPoly {
        &self.den
    }

    /// `r(1/t)`.
    pub fn invert_variable(&self) -> Self {
        Self {
            num: self.num.invert_variable(),
            den: self.den.invert_variable(),
        }
    }

    /// Multiplies by `t^e`.
    pub fn shift(&self, e: &Rat) -> Self {
        Self {
            num: self.num.shift(e),
            den: self.den.clone(),
        }
    }

    /// `t^d r(1/t)`.
    pub fn reverse(&self, d: &Rat) -> Self {
        self.invert_variable().shift(d)
    }

    /// Ascending fractional power series of `num/den`, truncated to exponents
    /// `<= order`.
    ///
    /// Both polynomials are rewritten in `u = t^(1/N)` with `N` the common
    /// exponent denominator, after which this is ordinary power-series
    /// division by the lowest term of the denominator.
    pub fn expand(&self, order: &Rat) -> Result<FracPoly> {
        if self.num.is_zero() {
            return Ok(FracPoly::zero());
        }
        let n = self
            .num
            .exponent_denominator()
            .lcm(&self.den.exponent_denominator());
        let scale = Rat::from_integer(n.clone());
        let to_u = |p: &FracPoly| -> Result<Vec<(i64, Rat)>> {
            p.terms()
                .map(|(e, c)| {
                    let x = (e * &scale).to_integer().to_i64().ok_or_else(|| {
                        Error::PreconditionUnmet("exponent too large to expand".into())
                    })?;
                    Ok((x, c.clone()))
                })
                .collect()
        };
        let num = to_u(&self.num)?;
        let den = to_u(&self.den)?;
        let (d0, c0) = den[0].clone();
        let max_u = (order * &scale)
            .floor()
            .to_integer()
            .to_i64()
            .ok_or_else(|| Error::PreconditionUnmet("order too large to expand".into()))?;
        let j_min = num[0].0;
        // Result exponents are j - d0 + k with k >= 0.
        let k_max = max_u - (j_min - d0);
        if k_max < 0 {
            return Ok(FracPoly::zero());
        }
        let k_max = k_max as usize;
        // Inverse series g of den / u^d0.
        let mut g = vec![Rat::zero(); k_max + 1];
        let inv_c0 = Rat::from_integer(BigInt::from(1)) / &c0;
        for k in 0..=k_max {
            let mut acc = if k == 0 { Rat::from_integer(1.into()) } else { Rat::zero() };
            for (x, c) in den.iter().skip(1) {
                let off = (x - d0) as usize;
                if off > k {
                    break;
                }
                acc -= c * &g[k - off];
            }
            g[k] = acc * &inv_c0;
        }
        let mut out = FracPoly::zero();
        for (j, c) in &num {
            for (k, gk) in g.iter().enumerate() {
                let x = j - d0 + k as i64;
                if x > max_u {
                    break;
                }
                if !gk.is_zero() {
                    out.add_term(Rat::new(BigInt::from(x), n.clone()), c * gk);
                }
            }
        }
        Ok(out)
    }
}

/// `(c, e)` with `a = c t^e b`, when such a monomial exists.
fn monomial_ratio(a: &FracPoly, b: &FracPoly) -> Option<(Rat, Rat)> {
    if a.len() != b.len() || a.is_zero() {
        return None;
    }
    let e = a.min_exp()? - b.min_exp()?;
    let c = a.coeff(a.min_exp()?) / b.coeff(b.min_exp()?);
    (*a == b.scale(&c).shift(&e)).then_some((c, e))
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        // denominators equal up to c t^e, as for a function and its reverse
        if let Some((c, e)) = monomial_ratio(&other.den, &self.den) {
            return other.num == self.num.scale(&c).shift(&e);
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            };
        }
        RationalFunction {
            num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            den: &self.den * &rhs.den,
        }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction {
            num: &self.num * &rhs.num,
            den: &self.den * &rhs.den,
        }
    }
}

/// `(1 - t)^(d+1) * series`, truncated to the length of `values`; used to
/// pass from counting sequences to numerator coefficients.
pub fn finite_difference_transform(values: &[BigInt], d: usize) -> Vec<BigInt> {
    let binom = binomials(d as u64 + 1);
    (0..values.len())
        .map(|i| {
            let mut acc = BigInt::zero();
            for (j, b) in binom.iter().enumerate().take(i + 1) {
                let term = b * &values[i - j];
                if j % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        })
        .collect()
}

pub fn binomials(n: u64) -> Vec<BigInt> {
    let mut row = vec![BigInt::from(1)];
    for k in 1..=n {
        let prev = row[k as usize - 1].clone();
        row.push(prev * BigInt::from(n - k + 1) / BigInt::from(k));
    }
    row
}

/// `(1 - t)^n` as a polynomial.
pub fn one_minus_t_pow(n: u32) -> FracPoly {
    FracPoly::one_minus_t_pow(int(1)).pow(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    #[test]
    fn geometric_series() {
        let r = RationalFunction::new(FracPoly::one(), FracPoly::from_coeffs([1, -1])).unwrap();
        assert_eq!(r.expand(&int(3)).unwrap(), FracPoly::from_coeffs([1, 1, 1, 1]));
    }

    #[test]
    fn fractional_denominator_long_division() {
        // (t - 1) / (t^(3/2) - 1) == (1 - t) * sum_m t^(3m/2)
        let num = FracPoly::from_coeffs([-1, 1]);
        let den = &FracPoly::t_pow(rat(3, 2)) - &FracPoly::one();
        let r = RationalFunction::new(num, den).unwrap();
        let got = r.expand(&int(3)).unwrap();
        let mut geo = FracPoly::zero();
        for m in 0..=2 {
            geo.add_term(rat(3 * m, 2), int(1));
        }
        let oracle = (&FracPoly::from_coeffs([1, -1]) * &geo).truncate(&int(3));
        assert_eq!(got, oracle);
        assert_eq!(got.to_string(), "1 - t + t^(3/2) - t^(5/2) + t^3");
    }

    #[test]
    fn unit_square_ehrhart_series() {
        // (1 + t) / (1 - t)^3 has coefficients (m + 1)^2
        let r = RationalFunction::new(FracPoly::from_coeffs([1, 1]), one_minus_t_pow(3)).unwrap();
        let got = r.expand(&int(8)).unwrap();
        for m in 0..=8i64 {
            // direct count of lattice points in m * [0,1]^2
            let count = (0..=m).flat_map(|x| (0..=m).map(move |y| (x, y))).count();
            assert_eq!(got.coeff(&int(m)), int(count as i64));
        }
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFunction::new(FracPoly::one(), FracPoly::zero()).unwrap_err(),
            Error::ZeroDenominator
        );
    }

    #[test]
    fn cross_multiplication_equality() {
        let a = RationalFunction::new(FracPoly::from_coeffs([1, 1]), FracPoly::from_coeffs([1, -1]))
            .unwrap();
        let b = RationalFunction::new(
            FracPoly::from_coeffs([1, 2, 1]),
            FracPoly::from_coeffs([1, 0, -1]),
        )
        .unwrap();
        assert_eq!(a, b);
        assert_eq!(a.reverse(&int(0)).reverse(&int(0)), a);
    }

    #[test]
    fn monomial_denominator_shortcut_agrees() {
        // (1 + t^(1/2)) / ((1 - t^(1/2))(1 - t^(4/3))) is fixed by reversal
        // of degree -4/3 only
        let den = &(&FracPoly::one() - &FracPoly::t_pow(rat(1, 2)))
            * &(&FracPoly::one() - &FracPoly::t_pow(rat(4, 3)));
        let num = &FracPoly::one() + &FracPoly::t_pow(rat(1, 2));
        let r = RationalFunction::new(num, den).unwrap();
        for d in [rat(-4, 3), rat(0, 1), rat(1, 2), rat(4, 3), rat(7, 3)] {
            let m = r.reverse(&d);
            assert!(monomial_ratio(&m.den, &r.den).is_some());
            let cross = &r.num * &m.den == &m.num * &r.den;
            assert_eq!(r == m, cross, "d = {d}");
            assert_eq!(r == m, d == rat(-4, 3), "d = {d}");
        }
    }

    #[test]
    fn finite_differences_terminate() {
        // (1 - t)^3 * sum (m+1)^2 t^m = 1 + t
        let values: Vec<BigInt> = (0..10).map(|m: i64| BigInt::from((m + 1) * (m + 1))).collect();
        let delta = finite_difference_transform(&values, 2);
        assert_eq!(delta[0], BigInt::from(1));
        assert_eq!(delta[1], BigInt::from(1));
        assert!(delta[2..].iter().all(|x| x.is_zero()));
        assert_eq!(binomials(4), [1, 4, 6, 4, 1].map(BigInt::from).to_vec());
    }
}
