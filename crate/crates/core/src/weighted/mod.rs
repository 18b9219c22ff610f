//! Weight classes of lattice points, refined delta-vectors by direct
//! counting and by local formulas, and the identities relating them.

pub mod checks;
pub mod counting;
pub mod delta;
pub mod lambda;
pub mod local;

pub use counting::{count_weights, WeightTable};
pub use delta::{default_horizon, delta_by_class, weighted_delta, WeightedDelta};
pub use lambda::{weight, LambdaFunction};
pub use local::{
    delta0_bivariate_local, delta0_local, delta_lambda_local, sectors, weighted_h, weighted_h_rf,
    Sector,
};
