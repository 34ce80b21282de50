use thiserror::Error;

/// Errors raised by the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("multiple point: traceless part vanishes, every line is an eigenline")]
    MultiplePoint,
    #[error("point ({0}, {1}) lies outside the chart domain")]
    OutOfDomain(f64, f64),
    #[error("determinant field vanishes identically on the sampling grid")]
    DegenerateField,
    #[error("coefficient matrix is numerically zero (kernel is two-dimensional)")]
    RankZero,
    #[error("kernel-line lift failed: jump of {jump} rad at vertex {vertex}")]
    LiftFailure { vertex: usize, jump: f64 },
    #[error("winding {value} is not within {tol} of an integer")]
    WindingResidual { value: f64, tol: f64 },
    #[error("curve is not closed")]
    OpenCurve,
    #[error("section vanishes on mesh vertex {0}")]
    ZeroOnVertex(usize),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("polynomial degree {0} exceeds 2")]
    DegreeTooHigh(usize),
    #[error("dielectric tensor has a repeated eigenvalue")]
    NotBiaxial,
    #[error("singular direction search failed: {0}")]
    SearchFailed(String),
    #[error("gluing mismatch at multiplicity point {point}: eigenline map has half-turn count {half_turns}")]
    GluingMismatch { point: usize, half_turns: f64 },
    #[error("mesh is not closed")]
    NotClosed,
    #[error("mesh has {0} connected components")]
    NotConnected(usize),
    #[error("mesh is not a consistently oriented manifold")]
    NotManifold,
    #[error("no extracted contour matches singular radius {0}")]
    ContourMismatch(f64),
}

impl Error {
    /// True for errors caused by invalid input rather than numerical breakdown.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::OutOfDomain(..)
                | Error::OutOfRange(_)
                | Error::InvalidParameter(_)
                | Error::DegreeTooHigh(_)
                | Error::NotBiaxial
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
