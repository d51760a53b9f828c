use num_rational::BigRational;
use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two values from distinct rings (mismatched genus or vortex number)
    /// were combined.
    #[error("elements belong to distinct rings: (g={lhs_genus}, N={lhs_points}) vs (g={rhs_genus}, N={rhs_points})")]
    DistinctRings {
        lhs_genus: u32,
        lhs_points: u32,
        rhs_genus: u32,
        rhs_points: u32,
    },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// A sigma generator index outside 1..=genus (or beyond the bitmask width).
    #[error("sigma index {index} out of range for genus {genus} (supported range 1..={max})")]
    SigmaIndex { index: u32, genus: u32, max: u32 },

    /// `exp` of an element with a nonzero constant term does not terminate.
    #[error("exp requires a nilpotent argument (zero constant term), got constant term {0}")]
    NonNilpotent(BigRational),

    /// Series reciprocal of something with zero constant term.
    #[error("series is not invertible: constant term is zero")]
    NonInvertibleSeries,

    /// The closed form C(k, N) needs k to be a positive integer.
    #[error("area quanta must be a positive integer, got {0}")]
    NonIntegralArea(BigRational),

    /// The tensor-ring oracle refuses bases larger than its guard.
    #[error("oracle basis size (2g+2)^N = {size} exceeds the bound {bound} for g={genus}, N={points}")]
    OracleSizeBound {
        genus: u32,
        points: u32,
        size: u128,
        bound: u128,
    },

    /// The two independent evaluation routes disagreed; this signals an
    /// implementation bug, never expected on valid input.
    #[error("cross-check mismatch for (g={}, N={}, k={}): ring path {} vs closed form {}",
            .0.genus, .0.points, .0.area_quanta, .0.ring_value, .0.closed_form)]
    CrossCheckMismatch(Box<CrossCheckMismatch>),

    #[error("grid of {size} points exceeds the cap of {cap}")]
    GridCapExceeded { size: usize, cap: usize },
}

/// Payload of [`Error::CrossCheckMismatch`], boxed to keep the error enum
/// small on the happy path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheckMismatch {
    pub genus: u32,
    pub points: u32,
    pub area_quanta: BigRational,
    pub ring_value: BigRational,
    pub closed_form: String,
}

pub type Result<T> = std::result::Result<T, Error>;
