use thiserror::Error;

/// Failures while reading textual input (coefficients, seed files).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed coefficient literal `{0}`")]
    Coefficient(String),
    #[error("zero denominator in coefficient literal `{0}`")]
    ZeroDenominator(String),
    #[error("invalid seed: {0}")]
    Seed(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    // seeds
    #[error("all seed components are zero")]
    ZeroSeed,
    #[error("seed dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("seed has {found} components but declares dimension {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("seed component {0} depends on the antiholomorphic variable")]
    NotHolomorphic(usize),
    #[error("seed components share the non-constant factor {0}")]
    CommonFactor(String),

    // ladders and towers
    #[error("ladder operator annihilates the projector (zero trace)")]
    Annihilated,
    #[error("raising operator annihilated the tower at step {step} of {n}")]
    PrematureAnnihilation { step: usize, n: usize },
    #[error("projector is constant: both ladder operators annihilate it")]
    DegenerateProjector,
    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    // spectrum
    #[error("proposition violated: {0}")]
    PropositionViolated(String),

    // numerics
    #[error("denominator vanishes at {0}")]
    PoleAtPoint(String),
    #[error("matrix is not Hermitian (defect {0:e})")]
    NotHermitian(f64),
    #[error("Jacobi iteration did not converge after {0} sweeps")]
    NoConvergence(usize),
    #[error("projector {0} has numerically zero range at this point")]
    RankDeficient(usize),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("finite-difference stencil leaves the grid at {0}")]
    StencilOutOfGrid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
