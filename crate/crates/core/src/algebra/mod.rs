//! Exact polynomial arithmetic, Sylvester resultants and multiplier curves.

pub mod curves;
pub mod poly;
pub mod resultant;
pub mod roots;

pub use curves::{
    eliminate_multiplier, fixed_point_multipliers, fixed_point_system, multiplier_curve,
    pc_fixed_point_system, pc_multiplier_curve,
};
pub use poly::{IntPoly, Monomial, Var};
pub use resultant::{resultant, sylvester_resultant, ResultantReport};
