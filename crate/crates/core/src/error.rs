use thiserror::Error;

/// Errors raised by the spectral routines.
///
/// Every variant maps to a stable name (see [`Error::name`]) that the
/// command-line front end prints on failure.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("argument {0} lies outside the supported domain")]
    Domain(String),
    #[error("floating-point overflow: {0}")]
    Overflow(String),
    #[error("iteration failed to converge: {0}")]
    Convergence(String),
    #[error("continuation jumped branches: {0}")]
    BranchJump(String),
    #[error("adaptive step size underflow at y = {0}")]
    StepFailure(f64),
    #[error("root is not simple: |dF/dlambda| = {0:e}")]
    Simplicity(f64),
    #[error("contour passes through a zero after {0} nudges")]
    ContourOnZero(usize),
    #[error("eigenfunction normalisation is degenerate")]
    DegenerateScale,
    #[error("basis frequency bracket failed for mode {0}")]
    FrequencySolve(usize),
    #[error("eigen decomposition failed: {0}")]
    EigenFailure(String),
    #[error("shift is within {0:e} of the spectrum")]
    NearSpectrum(f64),
    #[error("tangential derivative has a degenerate zero near s = {0}")]
    DegenerateZero(f64),
    #[error("restricted Hessian vanishes at a minimiser")]
    Nondegeneracy,
    #[error("no boundary point where the gradient is normal")]
    EmptyPerpSet,
    #[error("grid resolves the boundary layer with only {0} points")]
    GridResolution(usize),
    #[error("adaptive quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable identifier used in diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DomainError",
            Error::Overflow(_) => "OverflowError",
            Error::Convergence(_) => "ConvergenceError",
            Error::BranchJump(_) => "BranchJumpError",
            Error::StepFailure(_) => "StepFailure",
            Error::Simplicity(_) => "SimplicityError",
            Error::ContourOnZero(_) => "ContourOnZeroError",
            Error::DegenerateScale => "DegenerateScaleError",
            Error::FrequencySolve(_) => "FrequencySolveError",
            Error::EigenFailure(_) => "EigenFailure",
            Error::NearSpectrum(_) => "NearSpectrumError",
            Error::DegenerateZero(_) => "DegenerateZeroError",
            Error::Nondegeneracy => "NondegeneracyError",
            Error::EmptyPerpSet => "EmptyPerpSetError",
            Error::GridResolution(_) => "GridResolutionError",
            Error::Quadrature(_) => "QuadratureError",
            Error::InvalidInput(_) => "InvalidInputError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
