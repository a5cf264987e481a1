//! Floating-point side: evaluation of exact towers, Hermitian
//! eigendecomposition, the diagonalising unitary frame, finite-difference
//! residuals of its dynamics and quadrature of the action.

use nalgebra::DMatrix;
use num_complex::Complex64;

mod dynamics;
mod eigen;
mod eval;
mod frame;
mod quadrature;

pub use dynamics::{
    cov_deriv_matrix, point_residuals, residual_first_form, residual_second_form, residual_study, var_op,
    z_equation_residual, PointResiduals, ResidualRecord, ResidualStudy, StudyLevel, FORM_AGREEMENT, NU_AGREEMENT,
    RATIO_RANGE,
};
pub use eigen::{hermitian_eigen, Eigen, CLUSTER_GAP, HERMITIAN_TOLERANCE, MAX_SWEEPS};
pub use eval::{eval_mat, CompiledMat, CompiledPoly, CompiledRatFun, POLE_TOLERANCE};
pub use frame::{
    assemble_v, eigen_cross_check, frame_with_gauge, random_regular_points, EigenCheck, GridSpec, NumericTower,
    Stencil, Vframe, GAUGE_THRESHOLD, PROJECTOR_DRIFT, UNITARITY_DRIFT,
};
pub use quadrature::{action_quadrature, action_study, ActionQuadrature, ActionStudy};

/// Dense complex matrix used for pointwise values.
pub type CMatrix = DMatrix<Complex64>;

/// Matrix ∞-norm (largest absolute row sum).
pub fn inf_norm(m: &CMatrix) -> f64 {
    m.row_iter().map(|r| r.iter().map(|z| z.norm()).sum::<f64>()).fold(0.0, f64::max)
}

/// Diagonal part of a square matrix, zeros elsewhere.
pub fn diag_part(m: &CMatrix) -> CMatrix {
    CMatrix::from_diagonal(&m.diagonal())
}
