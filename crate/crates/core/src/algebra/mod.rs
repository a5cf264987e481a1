//! Exact arithmetic over `Q(i)`: scalars, polynomials in the commuting
//! indeterminates ξ and ξ̄, rational functions, and matrices over them.

mod gaussian;
mod gcd;
mod matrix;
pub(crate) mod poly;
mod ratfun;

pub use gaussian::GaussianRational;
pub use gcd::{gcd, gcd_holomorphic, UniPoly};
pub use matrix::{herm_conj, mat_is_zero, MatRF};
pub use poly::{term, BiPoly, Monomial};
pub use ratfun::{d_xi, d_xibar, reduction_threshold, rf_equal, set_reduction_threshold, RatFun};
