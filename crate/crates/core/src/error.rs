use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vortex configuration is empty")]
    EmptyConfiguration,

    #[error("{points} points but {degrees} degrees")]
    DegreeCountMismatch { points: usize, degrees: usize },

    #[error("vortex {index} has modulus {modulus}, outside the admissible disc of radius {limit}")]
    VortexTooCloseToBoundary {
        index: usize,
        modulus: f64,
        limit: f64,
    },

    #[error("vortices {first} and {second} are {distance} apart")]
    VorticesCollide {
        first: usize,
        second: usize,
        distance: f64,
    },

    #[error("map has no coefficients")]
    EmptyMap,

    #[error("derivative of the map may vanish on the closed disc (certified lower bound {bound})")]
    DegenerateDerivative { bound: f64 },

    #[error("boundary image is not a simple curve: {reason}")]
    BoundaryNotSimple { reason: String },

    #[error("evaluation point coincides with vortex {index}")]
    EvaluationAtVortex { index: usize },

    #[error("invalid radius: {reason}")]
    InvalidRadius { reason: String },

    #[error("Newton iteration failed after {iterations} iterations (residual {residual})")]
    NewtonDiverged { iterations: usize, residual: f64 },

    #[error("iterate left the admissible configuration space at iteration {iteration}")]
    LeftAdmissibleRegion { iteration: usize },

    #[error("critical point became degenerate at path step {step} (smallest singular value {sigma})")]
    NondegeneracyLost { step: usize, sigma: f64 },

    #[error("no critical point found")]
    NoCriticalPointFound,

    #[error("smallest singular value moved from {coarse} to {fine} under truncation doubling")]
    TruncationUnstable { coarse: f64, fine: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::EmptyConfiguration => "EmptyConfiguration",
            Error::DegreeCountMismatch { .. } => "DegreeCountMismatch",
            Error::VortexTooCloseToBoundary { .. } => "VortexTooCloseToBoundary",
            Error::VorticesCollide { .. } => "VorticesCollide",
            Error::EmptyMap => "EmptyMap",
            Error::DegenerateDerivative { .. } => "DegenerateDerivative",
            Error::BoundaryNotSimple { .. } => "BoundaryNotSimple",
            Error::EvaluationAtVortex { .. } => "EvaluationAtVortex",
            Error::InvalidRadius { .. } => "InvalidRadius",
            Error::NewtonDiverged { .. } => "NewtonDiverged",
            Error::LeftAdmissibleRegion { .. } => "LeftAdmissibleRegion",
            Error::NondegeneracyLost { .. } => "NondegeneracyLost",
            Error::NoCriticalPointFound => "NoCriticalPointFound",
            Error::TruncationUnstable { .. } => "TruncationUnstable",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }

    /// True for errors caused by malformed or inadmissible input rather
    /// than by a failed computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::EmptyConfiguration
                | Error::DegreeCountMismatch { .. }
                | Error::VortexTooCloseToBoundary { .. }
                | Error::VorticesCollide { .. }
                | Error::EmptyMap
                | Error::DegenerateDerivative { .. }
                | Error::BoundaryNotSimple { .. }
                | Error::InvalidRadius { .. }
                | Error::InvalidInput(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
