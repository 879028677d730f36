//! Exact evaluation of the density series and their truncation bounds, plus
//! direct estimates by enumeration and sampling.

pub mod bounds;
pub mod empirical;
pub mod laurent;
mod product;
pub mod rat;
pub mod z2;
pub mod z3;
pub mod zn;

pub use bounds::{BoundsResult, Params, Target};
pub use empirical::{empirical_density, DensityEstimate, DensityTarget, Mode};
pub use laurent::{rsuv_eval, Laurent, Poly};
pub use rat::{cmp_rat, parse_rat, to_decimal, Rat};
pub use z2::{iz2, iz2_partial, iz2_term, z2_exact_prefix_density};
pub use z3::{gh_sum, gh_term, iz3, iz3_bounds, Series};
pub use zn::{fhat_eval, fhat_stage_one_eval, izn_generic_bounds, izn_upper};
