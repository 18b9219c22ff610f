//! Finitely supported polynomials in one variable `t` with rational exponents.
//!
//! Coefficients are exact rationals so the same type can carry truncated
//! power-series expansions of rational functions; the weighted delta-vectors
//! themselves are integral and [`FracPoly::is_integral`] asserts it where
//! that is guaranteed.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{common_denominator, fmt_rat, int, rational_pow, Rat};
use crate::error::Result;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FracPoly {
    terms: BTreeMap<Rat, Rat>,
}

impl FracPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rat::one(), Rat::zero())
    }

    /// `coeff * t^exp`.
    pub fn monomial(coeff: Rat, exp: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// `t^exp`.
    pub fn t_pow(exp: Rat) -> Self {
        Self::monomial(Rat::one(), exp)
    }

    /// Integer-exponent polynomial from ascending coefficients.
    pub fn from_coeffs<I: Into<BigInt>>(coeffs: impl IntoIterator<Item = I>) -> Self {
        let mut p = Self::zero();
        for (i, c) in coeffs.into_iter().enumerate() {
            p.add_term(int(i as i64), Rat::from_integer(c.into()));
        }
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Rat, Rat)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// `(1 - t^exp)`, the building block of every local formula.
    pub fn one_minus_t_pow(exp: Rat) -> Self {
        Self::one() - Self::t_pow(exp)
    }

    pub fn add_term(&mut self, exp: Rat, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rat, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &Rat) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn min_exp(&self) -> Option<&Rat> {
        self.terms.keys().next()
    }

    pub fn max_exp(&self) -> Option<&Rat> {
        self.terms.keys().next_back()
    }

    /// Smallest `N` such that every exponent lies in `(1/N) Z`.
    pub fn exponent_denominator(&self) -> BigInt {
        common_denominator(self.terms.keys())
    }

    pub fn has_integer_exponents(&self) -> bool {
        self.terms.keys().all(|e| e.is_integer())
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Ascending coefficient vector of an integer-exponent polynomial with
    /// nonnegative exponents, or `None` otherwise.
    pub fn to_coeff_vec(&self) -> Option<Vec<Rat>> {
        if !self.has_integer_exponents() || self.min_exp().is_some_and(|e| e.is_negative()) {
            return None;
        }
        let deg: usize = match self.max_exp() {
            Some(e) => e.to_integer().try_into().ok()?,
            None => return Some(Vec::new()),
        };
        let mut out = vec![Rat::zero(); deg + 1];
        for (e, c) in &self.terms {
            let i: usize = e.to_integer().try_into().ok()?;
            out[i] = c.clone();
        }
        Some(out)
    }

    /// As [`FracPoly::to_coeff_vec`] with integer coefficients.
    pub fn to_int_vec(&self) -> Option<Vec<BigInt>> {
        if !self.is_integral() {
            return None;
        }
        Some(self.to_coeff_vec()?.into_iter().map(|c| c.to_integer()).collect())
    }

    /// `t^d * p(1/t)`: exponent `e` becomes `d - e`.
    pub fn reverse(&self, d: &Rat) -> Self {
        FracPoly {
            terms: self.terms.iter().map(|(e, c)| (d - e, c.clone())).collect(),
        }
    }

    /// `p(1/t)` as a Laurent polynomial.
    pub fn invert_variable(&self) -> Self {
        self.reverse(&Rat::zero())
    }

    /// Multiplies by `t^e`.
    pub fn shift(&self, e: &Rat) -> Self {
        FracPoly {
            terms: self.terms.iter().map(|(x, c)| (x + e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, k: &Rat) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        FracPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Keeps the terms with exponent `<= order`.
    pub fn truncate(&self, order: &Rat) -> Self {
        FracPoly {
            terms: self
                .terms
                .range(..=order.clone())
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn sum_coeffs(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |a, c| a + c)
    }

    /// Exact value at a rational point; fails when some `t^e` is irrational.
    pub fn eval(&self, t: &Rat) -> Result<Rat> {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            acc += c * rational_pow(t, e)?;
        }
        Ok(acc)
    }

    /// Whether `t^d p(1/t) = p`.
    pub fn is_palindromic(&self, d: &Rat) -> bool {
        self.reverse(d) == *self
    }
}

impl Add for &FracPoly {
    type Output = FracPoly;
    fn add(self, rhs: &FracPoly) -> FracPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &FracPoly {
    type Output = FracPoly;
    fn sub(self, rhs: &FracPoly) -> FracPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &FracPoly {
    type Output = FracPoly;
    fn mul(self, rhs: &FracPoly) -> FracPoly {
        dense_integral_product(self, rhs).unwrap_or_else(|| sparse_product(self, rhs))
    }
}

fn sparse_product(a: &FracPoly, b: &FracPoly) -> FracPoly {
    let mut acc: BTreeMap<Rat, Rat> = BTreeMap::new();
    for (e1, c1) in &a.terms {
        for (e2, c2) in &b.terms {
            *acc.entry(e1 + e2).or_insert_with(Rat::zero) += c1 * c2;
        }
    }
    acc.retain(|_, c| !c.is_zero());
    FracPoly { terms: acc }
}

/// Product of integral polynomials by convolution in `u = t^(1/N)`.
/// The sparse product hashes a rational key per pair of terms, which
/// dominates the cost of cross-multiplied rational-function comparisons.
fn dense_integral_product(a: &FracPoly, b: &FracPoly) -> Option<FracPoly> {
    const MAX_LEN: i64 = 1 << 16;
    if a.is_zero() || b.is_zero() || !a.is_integral() || !b.is_integral() {
        return None;
    }
    let n = a.exponent_denominator().lcm(&b.exponent_denominator());
    let index = |e: &Rat| -> Option<i64> { i64::try_from(e.numer() * (&n / e.denom())).ok() };
    let lo_a = index(a.min_exp()?)?;
    let lo_b = index(b.min_exp()?)?;
    let len = index(a.max_exp()?)? - lo_a + index(b.max_exp()?)? - lo_b + 1;
    if len > MAX_LEN {
        return None;
    }
    let sparse = |p: &FracPoly, lo: i64| -> Option<Vec<(usize, BigInt)>> {
        p.terms
            .iter()
            .map(|(e, c)| Some(((index(e)? - lo) as usize, c.to_integer())))
            .collect()
    };
    let (xs, ys) = (sparse(a, lo_a)?, sparse(b, lo_b)?);
    let mut acc = vec![BigInt::zero(); len as usize];
    for (i, c1) in &xs {
        for (j, c2) in &ys {
            acc[i + j] += c1 * c2;
        }
    }
    let lo = lo_a + lo_b;
    let terms = acc
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (Rat::new(BigInt::from(lo + k as i64), n.clone()), Rat::from_integer(c)))
        .collect();
    Some(FracPoly { terms })
}

impl Neg for &FracPoly {
    type Output = FracPoly;
    fn neg(self) -> FracPoly {
        FracPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for FracPoly {
            type Output = FracPoly;
            fn $m(self, rhs: FracPoly) -> FracPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::iter::Sum for FracPoly {
    fn sum<I: Iterator<Item = FracPoly>>(iter: I) -> Self {
        iter.fold(FracPoly::zero(), |a, b| &a + &b)
    }
}

fn fmt_power(e: &Rat) -> String {
    if e.is_one() {
        "t".to_string()
    } else if e.is_integer() && !e.is_negative() {
        format!("t^{}", e.numer())
    } else {
        format!("t^({})", fmt_rat(e))
    }
}

/// Golden format: ascending exponents, `2*t^(1/2)`, unit coefficients
/// omitted on non-constant terms, `0` for the zero polynomial.
impl fmt::Display for FracPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if e.is_zero() {
                f.write_str(&fmt_rat(&mag))?;
            } else if mag.is_one() {
                f.write_str(&fmt_power(e))?;
            } else {
                write!(f, "{}*{}", fmt_rat(&mag), fmt_power(e))?;
            }
        }
        Ok(())
    }
}
