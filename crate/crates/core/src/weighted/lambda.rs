use num_traits::{Signed, Zero};

use crate::algebra::rational::{common_denominator, int, parse_rat, Rat};
use crate::error::{Error, Result};
use crate::fan::StackyFan;

/// Piecewise linear function on a simplicial fan, fixed by its values on the
/// `b_i` and extended linearly on each cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaFunction {
    values: Vec<Rat>,
}

impl LambdaFunction {
    pub fn zero(n_rays: usize) -> Self {
        Self {
            values: vec![Rat::zero(); n_rays],
        }
    }

    pub fn new(values: Vec<Rat>) -> Self {
        Self { values }
    }

    /// Comma-separated exact rationals, one per ray.
    pub fn parse(s: &str) -> Result<Self> {
        Ok(Self::new(
            s.split(',').map(parse_rat).collect::<Result<Vec<_>>>()?,
        ))
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    /// `lambda(b_i) > -1` for every ray.
    pub fn rays_above_minus_one(&self) -> bool {
        self.values.iter().all(|x| *x > int(-1))
    }

    /// `lambda >= 0` on the support, i.e. on every `b_i`.
    pub fn is_nonnegative(&self) -> bool {
        !self.values.iter().any(Signed::is_negative)
    }

    pub fn min_value(&self) -> Rat {
        self.values.iter().min().cloned().unwrap_or_else(Rat::zero)
    }

    /// Smallest positive ray value, if any.
    pub fn min_positive(&self) -> Option<Rat> {
        self.values.iter().filter(|x| x.is_positive()).min().cloned()
    }

    pub fn denominator(&self) -> i64 {
        common_denominator(&self.values)
            .try_into()
            .expect("lambda denominators fit in i64")
    }

    pub fn check_len(&self, fan: &StackyFan) -> Result<()> {
        if self.values.len() != fan.rays().len() {
            return Err(Error::Parse(format!(
                "lambda has {} values but the fan has {} rays",
                self.values.len(),
                fan.rays().len()
            )));
        }
        Ok(())
    }

    pub fn require_above_minus_one(&self) -> Result<()> {
        match self.values.iter().position(|x| *x <= int(-1)) {
            Some(i) => Err(Error::LambdaOutOfRange(format!(
                "lambda(b_{i}) = {} is not > -1",
                crate::algebra::fmt_rat(&self.values[i])
            ))),
            None => Ok(()),
        }
    }

    pub fn value(&self, fan: &StackyFan, v: &[i64]) -> Result<Rat> {
        let loc = fan.locate(v)?;
        Ok(loc
            .cone
            .rays
            .iter()
            .zip(&loc.coords)
            .map(|(&r, c)| c * &self.values[r])
            .sum())
    }
}

/// `w(v) = psi(v) - ceil(psi(v)) + lambda(v)`.
pub fn weight(fan: &StackyFan, lambda: &LambdaFunction, v: &[i64]) -> Result<Rat> {
    let psi = fan.psi(v)?;
    Ok(&psi - psi.ceil() + lambda.value(fan, v)?)
}
