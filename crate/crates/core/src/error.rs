use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: bad JSON, schema violations, invalid diagrams.
    #[error("input error: {0}")]
    Input(String),

    /// A stated precondition does not hold (ring/N mismatch, bad basepoint, ...).
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// No exact polynomial quotient exists.
    #[error("not divisible")]
    NotDivisible,

    /// The proposed spanning set misses the known rank at some q-degree.
    #[error("spanning certificate failed at q-degree {degree}: rank {got}, expected {expected}")]
    SpanningCertificateFailed {
        degree: i64,
        got: usize,
        expected: usize,
    },

    /// MOY graph rewriting found no applicable local relation.
    #[error("irreducible MOY graph: {0}")]
    IrreducibleGraph(String),

    /// The differential operator requires the characteristic to divide N.
    #[error("characteristic of {ring} does not divide N={n}")]
    CharacteristicMismatch {
        ring: crate::rings::RingSpec,
        n: u8,
    },

    /// Foam composition on non-matching boundary graphs.
    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Distinct process exit codes for the CLI surface.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Json(_) => 2,
            Error::Precondition(_) | Error::CharacteristicMismatch { .. } => 3,
            Error::SpanningCertificateFailed { .. } => 4,
            Error::IrreducibleGraph(_) => 5,
            Error::BoundaryMismatch(_) => 6,
            Error::NotDivisible => 7,
            Error::Io(_) => 8,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Input(_) => "input",
            Error::Precondition(_) => "precondition",
            Error::NotDivisible => "not-divisible",
            Error::SpanningCertificateFailed { .. } => "spanning-certificate",
            Error::IrreducibleGraph(_) => "irreducible-graph",
            Error::CharacteristicMismatch { .. } => "characteristic-mismatch",
            Error::BoundaryMismatch(_) => "boundary-mismatch",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}
