//! Exact scalars and dense linear algebra over the Gaussian rationals.
//!
//! Every amplitude, gate and projector in the crate lives here, which is what
//! makes all verdicts bit-exact.

mod matrix;
mod scalar;

pub use matrix::{
    inner, is_zero_vec, solve_in_rowspace, vec_add, vec_kron, vec_scale, Infeasible, Matrix,
};
pub use scalar::{format_rational, parse_rational, GaussianRational};
