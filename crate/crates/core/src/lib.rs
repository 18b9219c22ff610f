//! Weighted Ehrhart theory for lattice polytopes and stacky fans.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod fan;
pub mod fuzz;
pub mod polytope;
pub mod reciprocity;
pub mod report;
pub mod suite;
pub mod weighted;

pub use error::{Error, Result};
