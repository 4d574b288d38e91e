use thiserror::Error;

use crate::iteration::CentralPointResult;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("grid size {n} is invalid: must be even and at least 16")]
    InvalidGrid { n: usize },

    #[error("sample {index} is not finite")]
    NonFinite { index: usize },

    #[error("expected {expected} samples, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("operands live on different grids ({left} vs {right} samples)")]
    GridMismatch { left: usize, right: usize },

    #[error("integrand has mean {mean:e} above tolerance {tol:e}; no periodic antiderivative")]
    NonZeroMean { mean: f64, tol: f64 },

    #[error("integrand is not anti-periodic: |f(θ+π)+f(θ)| = {residual:e} > {tol:e}")]
    NotAntiPeriodic { residual: f64, tol: f64 },

    #[error("support function is not π-periodic: residual {residual:e}")]
    NotSymmetric { residual: f64 },

    #[error("degenerate unit ball at sample {index}: {quantity} = {value:e}")]
    DegenerateBall {
        index: usize,
        quantity: &'static str,
        value: f64,
    },

    #[error("curve is not strictly convex at sample {index}: {quantity} = {value:e}")]
    NotConvex {
        index: usize,
        quantity: &'static str,
        value: f64,
    },

    #[error("sign data degenerate: {run} consecutive near-zero samples")]
    DegenerateSignData { run: usize },

    #[error("point lies on the boundary (distance {distance:e})")]
    OnBoundary { distance: f64 },

    #[error("iteration blew up at step {step}: sup-norm grew by {ratio:e}")]
    NumericalBlowup { step: usize, ratio: f64 },

    #[error("central point did not converge after {} steps (diameter {:e})", .estimate.iterations, .estimate.final_diameter)]
    NotConverged { estimate: CentralPointResult },

    #[error("non-transversal intersection: chord count ill-defined")]
    Tangency,

    #[error("need at least {needed} points, got {got}")]
    TooFewPoints { needed: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
