//! Exact rational scalars.
//!
//! `Rat` is `num_rational::BigRational`: always in lowest terms with a
//! positive denominator, totally ordered. The helpers here cover the wire
//! format (`p/q`) and a few number-theoretic conveniences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p`, or `p/q` into a reduced rational.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            Ok(Rat::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(Rat::from_integer(p))
        }
    }
}

/// Renders `p` for integers and `p/q` otherwise. Inverse of [`parse_rat`].
pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn ceil_int(r: &Rat) -> BigInt {
    r.ceil().to_integer()
}

pub fn floor_int(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

/// Fractional part in `[0, 1)`.
pub fn frac(r: &Rat) -> Rat {
    r - r.floor()
}

pub fn to_i64(r: &Rat) -> Option<i64> {
    if r.is_integer() {
        r.numer().to_i64()
    } else {
        None
    }
}

/// Least common multiple of the denominators; 1 for an empty iterator.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

/// Exact value of `base^exponent` when it is rational.
///
/// A rational exponent `p/q` needs a perfect `q`-th root of `base`; anything
/// else is reported as [`Error::IrrationalPower`].
pub fn rational_pow(base: &Rat, exponent: &Rat) -> Result<Rat> {
    let irrational = || Error::IrrationalPower {
        base: fmt_rat(base),
        exponent: fmt_rat(exponent),
    };
    let q = exponent.denom().to_u32().ok_or_else(irrational)?;
    let p = exponent.numer().to_i64().ok_or_else(irrational)?;
    if base.is_zero() {
        return if p > 0 {
            Ok(Rat::zero())
        } else if p == 0 {
            Ok(Rat::one())
        } else {
            Err(Error::ZeroDenominator)
        };
    }
    let root = if q == 1 {
        base.clone()
    } else {
        if base.is_negative() && q % 2 == 0 {
            return Err(irrational());
        }
        let n = exact_root(base.numer(), q).ok_or_else(irrational)?;
        let d = exact_root(base.denom(), q).ok_or_else(irrational)?;
        Rat::new(n, d)
    };
    let magnitude = num_traits::pow(root.clone(), p.unsigned_abs() as usize);
    Ok(if p < 0 { magnitude.recip() } else { magnitude })
}

fn exact_root(n: &BigInt, q: u32) -> Option<BigInt> {
    let r = n.nth_root(q);
    if num_traits::pow(r.clone(), q as usize) == *n {
        Some(r)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rat("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rat("-4").unwrap(), int(-4));
        assert_eq!(parse_rat(" 2/-4 ").unwrap(), rat(-1, 2));
        assert_eq!(fmt_rat(&rat(-2, 3)), "-2/3");
        assert_eq!(fmt_rat(&rat(6, 3)), "2");
        assert!(matches!(parse_rat("1/0"), Err(Error::ZeroDenominator)));
        assert!(parse_rat("0.5").is_err());
    }

    #[test]
    fn rounding() {
        assert_eq!(ceil_int(&rat(2, 3)), BigInt::from(1));
        assert_eq!(ceil_int(&rat(-2, 3)), BigInt::from(0));
        assert_eq!(floor_int(&rat(-2, 3)), BigInt::from(-1));
        assert_eq!(frac(&rat(-2, 3)), rat(1, 3));
        assert_eq!(frac(&int(5)), int(0));
    }

    #[test]
    fn powers() {
        assert_eq!(rational_pow(&rat(4, 9), &rat(1, 2)).unwrap(), rat(2, 3));
        assert_eq!(rational_pow(&rat(8, 27), &rat(-2, 3)).unwrap(), rat(9, 4));
        assert_eq!(rational_pow(&rat(-8, 1), &rat(1, 3)).unwrap(), int(-2));
        assert!(matches!(
            rational_pow(&int(2), &rat(1, 2)),
            Err(Error::IrrationalPower { .. })
        ));
        assert_eq!(common_denominator(&[rat(1, 4), rat(5, 6), int(3)]), BigInt::from(12));
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(p in -10_000i64..10_000, q in 1i64..500) {
            let r = rat(p, q);
            prop_assert_eq!(parse_rat(&fmt_rat(&r)).unwrap(), r);
        }
    }
}
