use thiserror::Error;

/// Failure modes across the construction and verification pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("marked points {0} and {1} coincide")]
    DuplicatePoints(usize, usize),
    #[error("root triple is too close to degenerate (min separation {0:e})")]
    RootsTooClose(f64),
    #[error("invalid arguments for R_F: {0}")]
    InvalidArguments(&'static str),
    #[error("duplication iteration did not converge after {0} steps")]
    NonConvergence(usize),
    #[error("no sign/permutation of half-periods reproduces the root labels")]
    LabelingFailure,
    #[error("could not invert p at {0}")]
    InversionFailure(String),
    #[error("({0}, {1}) is not a primitive lattice vector")]
    NotPrimitive(i64, i64),
    #[error("adaptive sampling exceeded the cap of {0} samples")]
    BudgetExceeded(usize),
    #[error("arc crosses itself near node {0}")]
    SelfIntersection(usize),
    #[error("degenerate arc: {0}")]
    DegenerateArc(&'static str),
    #[error("point {0} lies on the slit")]
    EndpointOnSlit(String),
    #[error("arc {arc} endpoints do not match the marked points")]
    EndpointMismatch { arc: usize },
    #[error("tolerance {tol:e} is below the discretization floor {floor:e}")]
    ToleranceBelowFloor { tol: f64, floor: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DuplicatePoints(..) => "DuplicatePoints",
            Error::RootsTooClose(_) => "RootsTooClose",
            Error::InvalidArguments(_) => "InvalidArguments",
            Error::NonConvergence(_) => "NonConvergence",
            Error::LabelingFailure => "LabelingFailure",
            Error::InversionFailure(_) => "InversionFailure",
            Error::NotPrimitive(..) => "NotPrimitive",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::SelfIntersection(_) => "SelfIntersection",
            Error::DegenerateArc(_) => "DegenerateArc",
            Error::EndpointOnSlit(_) => "EndpointOnSlit",
            Error::EndpointMismatch { .. } => "EndpointMismatch",
            Error::ToleranceBelowFloor { .. } => "ToleranceBelowFloor",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }

    /// True when the failure is caused by the caller's input rather than by
    /// the numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::DuplicatePoints(..)
                | Error::InvalidArguments(_)
                | Error::NotPrimitive(..)
                | Error::EndpointOnSlit(_)
                | Error::EndpointMismatch { .. }
                | Error::ToleranceBelowFloor { .. }
                | Error::InvalidInput(_)
                | Error::DegenerateArc(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
