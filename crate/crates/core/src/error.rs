use thiserror::Error;

/// Errors raised by kernel evaluation, quadrature and the polynomial tools.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("argument {value} lies within the branch-cut guard of the principal power")]
    BranchCutProximity { value: String },

    #[error("kernel denominator |w| = {modulus:e} is below the singularity guard")]
    NearSingular { modulus: f64 },

    #[error("radius product {radius} exceeds the series convergence cap {r_max}")]
    ConvergenceDomain { radius: f64, r_max: f64 },

    #[error("finite-difference stencil leaves the admissible domain: {0}")]
    StencilOutOfDomain(String),

    #[error("geometry violation: {0}")]
    Geometry(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Stable machine-readable code used in CLI error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::NonFinite(_) => "non_finite",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::BranchCutProximity { .. } => "branch_cut_proximity",
            Error::NearSingular { .. } => "near_singular",
            Error::ConvergenceDomain { .. } => "convergence_domain",
            Error::StencilOutOfDomain(_) => "stencil_out_of_domain",
            Error::Geometry(_) => "geometry_violation",
            Error::ResourceLimit(_) => "resource_limit",
            Error::Io(_) => "io",
        }
    }

    /// True for errors caused by the numerical domain rather than by bad input.
    pub fn is_numeric_domain(&self) -> bool {
        matches!(
            self,
            Error::BranchCutProximity { .. }
                | Error::NearSingular { .. }
                | Error::ConvergenceDomain { .. }
                | Error::StencilOutOfDomain(_)
                | Error::Geometry(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
