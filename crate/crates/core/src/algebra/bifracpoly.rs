use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::fracpoly::FracPoly;
use super::rational::{fmt_rat, Rat};

/// Integer polynomial in `s` and `t`, both with rational exponents.
/// Keys are `(s_exponent, t_exponent)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BiFracPoly {
    terms: BTreeMap<(Rat, Rat), BigInt>,
}

impl BiFracPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, s_exp: Rat, t_exp: Rat, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry((s_exp, t_exp)) {
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

    /// Adds `s^s_exp * p(t)`; `p` must be integral.
    pub fn add_s_times(&mut self, s_exp: &Rat, p: &FracPoly) {
        for (e, c) in p.terms() {
            assert!(c.is_integer(), "bivariate coefficients are integral");
            self.add_term(s_exp.clone(), e.clone(), c.to_integer());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Rat, Rat), &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Distinct `s` exponents in ascending order.
    pub fn s_exponents(&self) -> Vec<Rat> {
        let mut out: Vec<Rat> = self.terms.keys().map(|(s, _)| s.clone()).collect();
        out.dedup();
        out
    }

    /// Coefficient of `s^k` as a polynomial in `t`.
    pub fn s_coefficient(&self, k: &Rat) -> FracPoly {
        FracPoly::from_terms(
            self.terms
                .iter()
                .filter(|((s, _), _)| s == k)
                .map(|((_, t), c)| (t.clone(), Rat::from_integer(c.clone()))),
        )
    }

    /// Substitutes `s := t`, merging terms by exponent sum.
    pub fn specialize_s_to_t(&self) -> FracPoly {
        FracPoly::from_terms(
            self.terms
                .iter()
                .map(|((s, t), c)| (s + t, Rat::from_integer(c.clone()))),
        )
    }

    /// Substitutes `s := 1`.
    pub fn specialize_s_to_one(&self) -> FracPoly {
        FracPoly::from_terms(
            self.terms
                .iter()
                .map(|((_, t), c)| (t.clone(), Rat::from_integer(c.clone()))),
        )
    }
}

impl Add for &BiFracPoly {
    type Output = BiFracPoly;
    fn add(self, rhs: &BiFracPoly) -> BiFracPoly {
        let mut out = self.clone();
        for ((s, t), c) in &rhs.terms {
            out.add_term(s.clone(), t.clone(), c.clone());
        }
        out
    }
}

impl fmt::Display for BiFracPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((s, t), c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let mag = c.abs();
            let mut factors = Vec::new();
            if !mag.is_one() || (s.is_zero() && t.is_zero()) {
                factors.push(mag.to_string());
            }
            if !s.is_zero() {
                factors.push(format!("s^({})", fmt_rat(s)));
            }
            if !t.is_zero() {
                factors.push(format!("t^({})", fmt_rat(t)));
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    #[test]
    fn specializations() {
        // ray box element with psi = 1/2: s^(-1/2) t (1 + t)
        let mut b = BiFracPoly::zero();
        b.add_s_times(&rat(-1, 2), &FracPoly::from_coeffs([0, 1, 1]));
        b.add_s_times(&int(0), &FracPoly::from_coeffs([1, 4, 1]));
        assert_eq!(
            b.specialize_s_to_t().to_string(),
            "1 + t^(1/2) + 4*t + t^(3/2) + t^2"
        );
        assert_eq!(b.specialize_s_to_one(), FracPoly::from_coeffs([1, 5, 2]));
        assert_eq!(b.s_exponents(), vec![rat(-1, 2), int(0)]);
        assert_eq!(b.s_coefficient(&rat(-1, 2)), FracPoly::from_coeffs([0, 1, 1]));
        assert!(b.s_coefficient(&rat(-1, 3)).is_zero());
        assert_eq!(b.to_string(), "s^(-1/2)*t^(1) + s^(-1/2)*t^(2) + 1 + 4*t^(1) + t^(2)");
    }

    #[test]
    fn cancellation() {
        let mut b = BiFracPoly::zero();
        b.add_term(int(0), int(1), BigInt::from(3));
        b.add_term(int(0), int(1), BigInt::from(-3));
        assert!(b.is_zero());
    }
}
