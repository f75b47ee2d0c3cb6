//! Exact coefficients: Laurent polynomials and rational functions in the
//! formal root `v` of the deformation parameter (`v^D = q`).

mod dense;
mod laurent;
mod qnum;
mod ratfunc;

pub use laurent::LaurentPoly;
pub(crate) use qnum::v_exponent;
pub use qnum::{arith, q_pow, qbinom, qfact, qint, qint_poly, qint_rational, ArithOp};
pub use ratfunc::RatFunc;
