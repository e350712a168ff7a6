use thiserror::Error;

/// Errors raised by the numerical kernels.
///
/// Numeric payloads are carried as `f64` regardless of the working scalar.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("blade subset has signature ({plus},{minus}), expected (2,4)")]
    WrongSignature { plus: usize, minus: usize },
    #[error("blade subset must contain 6 distinct blades")]
    DuplicateBlade,
    #[error("singular metric")]
    SingularMetric,
    #[error("4-metric is not Lorentzian (det = {0})")]
    NotLorentzian(f64),
    #[error("lapse must be positive, got {0}")]
    NonPositiveLapse(f64),
    #[error("stencil at axis {axis}, index {index} leaves a non-periodic grid")]
    StencilOutOfBounds { axis: usize, index: usize },
    #[error("grid axis {axis} has {len} points, stencil needs at least {need}")]
    GridTooSmall { axis: usize, len: usize, need: usize },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("non-finite state at step {0}")]
    NonFinite(usize),
    #[error("worldline leaves the grid at sample {0}")]
    WorldlineExitsGrid(usize),
    #[error("Lambda must be non-zero")]
    ZeroLambda,
    #[error("plane waves carry different P6 values ({0} vs {1})")]
    MixedP6(f64, f64),
    #[error("plane wave {index} is off the 6D mass shell (residual {residual})")]
    OffShell { index: usize, residual: f64 },
    #[error("time step too large: dt * energy scale = {ratio} exceeds {limit}")]
    StepTooLarge { ratio: f64, limit: f64 },
    #[error("degenerate moduli: {0}")]
    DegenerateModuli(String),
    #[error("state depends on the particle coordinates; outside the homogeneous truncation")]
    OutsideTruncation,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
