//! Projector towers and soliton surfaces of CP^(N−1) sigma models built from
//! polynomial holomorphic seeds.
//!
//! The symbolic layer ([`algebra`], [`sigma`], [`surfaces`]) works over
//! exact Gaussian rationals, so every identity it checks is a polynomial
//! identity decided with zero tolerance. [`spectrum`] handles the
//! eigenvalue combinatorics in exact rationals, and [`numeric`] evaluates
//! towers in floating point for the diagonalising-frame dynamics, residual
//! studies and action quadrature.

pub mod algebra;
pub mod error;
pub mod numeric;
pub mod par;
pub mod report;
pub mod sigma;
pub mod spectrum;
pub mod surfaces;

pub use error::{Error, ParseError, Result};
pub use par::Exec;
