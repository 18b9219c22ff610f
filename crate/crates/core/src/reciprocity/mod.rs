//! Reciprocity for class polynomials, the palindromy criterion, orbifold
//! Betti numbers and the pyramid construction.

pub mod classes;
pub mod orbifold;
pub mod pyramid;

pub use classes::{
    class_polynomials, hibi_check, interpolate_class, verify_boundary_identity,
    verify_ehrhart_reciprocity, verify_low_coefficients, verify_planar_closed_forms,
    verify_polytope_reciprocity, verify_weighted_reciprocity, ClassData, ClassPolynomial, HibiReport,
};
pub use orbifold::{group_betti_to_delta, orbifold_betti, verify_grouping, OrbifoldBetti};
pub use pyramid::{pyramid_delta, pyramid_fan, Triangulation};
