//! Exact arithmetic substrate: rational scalars, fractional-exponent
//! polynomials in one and two variables, unreduced rational functions and
//! exact linear solving.

pub mod bifracpoly;
pub mod fracpoly;
pub mod interp;
pub mod linalg;
pub mod ratfunc;
pub mod rational;

pub use bifracpoly::BiFracPoly;
pub use fracpoly::FracPoly;
pub use linalg::{solve_linear, QMatrix, QVector};
pub use ratfunc::RationalFunction;
pub use rational::{fmt_rat, int, parse_rat, rat, Rat};
