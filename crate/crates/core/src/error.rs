use thiserror::Error;

/// Errors raised by the closed-form evaluators, the Fock-space oracle and the sweep layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum JanusError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("order k={k} outside supported range 0..={max}")]
    OrderOutOfRange { k: i64, max: usize },

    #[error("argument x={0} outside [0, 1)")]
    ArgumentOutOfRange(f64),

    #[error("invalid Janus configuration: chi and eta are both zero")]
    InvalidConfig,

    #[error("invalid sweep specification: {0}")]
    InvalidSpec(String),

    #[error("degenerate superposition: norm {norm:e} is below {threshold:e}")]
    DegenerateSuperposition { norm: f64, threshold: f64 },

    #[error("mean photon number {mean:e} is below {threshold:e}")]
    MeanPhotonUnderflow { mean: f64, threshold: f64 },

    #[error("coherence diverges at r = 0 (zero mean photon number)")]
    DivergentInput,

    #[error("interference kernel vanishes (z = 0); steering phase undefined")]
    ZeroKernel,

    #[error("cutoff {cutoff} inadequate: tail weight {tail:e} exceeds {tolerance:e}")]
    CutoffInadequate { cutoff: usize, tail: f64, tolerance: f64 },

    #[error("invalid worldline: p'(u) = {derivative:e} at u = {u}")]
    InvalidWorldline { u: f64, derivative: f64 },

    #[error("trajectory stencil at u = {0} leaves the sampled range")]
    StencilOutOfRange(f64),

    #[error("grid has no finite cells")]
    EmptyGrid,

    #[error("{failed} of {total} sweep cells failed")]
    SweepFailed { failed: usize, total: usize },

    #[error("malformed data: {0}")]
    Parse(String),

    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for JanusError {
    fn from(e: std::io::Error) -> Self {
        JanusError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, JanusError>;
