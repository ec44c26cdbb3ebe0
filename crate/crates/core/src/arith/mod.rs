//! Exact rational scalars and the linear algebra every geometric predicate
//! reduces to: rank, determinants, linear solves and null spaces.

mod matrix;
mod scalar;

pub use matrix::{
    bareiss_det, det, det_sign, gauss_rank, integer_kernel, kernel, make_primitive,
    primitive_integer, row_echelon, solve_linear, Matrix, Solution, Vector,
};
pub use scalar::Scalar;
