use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("edge {edge} has nonpositive length {length}")]
    NonpositiveLength { edge: String, length: String },
    #[error("edge {edge} references unknown vertex {vertex}")]
    DanglingEdgeEndpoint { edge: String, vertex: String },
    #[error("duplicate name {0}")]
    DuplicateName(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("offset {offset} outside edge {edge}")]
    OffsetOutOfRange { edge: String, offset: String },
    #[error("invalid rational {0:?}: expected \"p/q\" or an integer")]
    BadRational(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("genus {0} not supported by this family (need g >= 3)")]
    BadGenus(usize),
    #[error("family {family}: {reason}")]
    BadFamilyParameters { family: String, reason: String },
    #[error("piecewise-linear function has non-integer slope {slope} on edge {edge}")]
    NonIntegerSlope { edge: String, slope: String },
    #[error("piecewise-linear function is inconsistent: {0}")]
    InconsistentFunction(String),
    #[error("divisor has a negative coefficient away from the basepoint")]
    NotEffectiveAwayFromBasepoint,
    #[error("firing time {requested} exceeds the event-free time {limit}")]
    FiringTimeTooLarge { requested: String, limit: String },
    #[error("firing time must be positive")]
    NonpositiveFiringTime,
    #[error("boundary point {point} holds {chips} chips but has out-degree {outdegree}")]
    InsufficientChips {
        point: String,
        chips: i64,
        outdegree: usize,
    },
    #[error("malformed open set: {0}")]
    MalformedOpenSet(String),
    #[error("lattice enumeration needs {needed} candidates, budget is {budget}")]
    ResourceBudgetExceeded { needed: u128, budget: u128 },
    #[error("case analysis inconsistency: {0}")]
    CaseMismatch(String),
    #[error("incompatible denominator: {0}")]
    IncompatibleDenominator(String),
    #[error("json: {0}")]
    Json(String),
}

impl Error {
    /// Stable variant name, used in machine-readable reports.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Disconnected => "Disconnected",
            Error::EmptyGraph => "EmptyGraph",
            Error::NonpositiveLength { .. } => "NonpositiveLength",
            Error::DanglingEdgeEndpoint { .. } => "DanglingEdgeEndpoint",
            Error::DuplicateName(_) => "DuplicateName",
            Error::UnknownVertex(_) => "UnknownVertex",
            Error::UnknownEdge(_) => "UnknownEdge",
            Error::OffsetOutOfRange { .. } => "OffsetOutOfRange",
            Error::BadRational(_) => "BadRational",
            Error::Malformed(_) => "Malformed",
            Error::BadGenus(_) => "BadGenus",
            Error::BadFamilyParameters { .. } => "BadFamilyParameters",
            Error::NonIntegerSlope { .. } => "NonIntegerSlope",
            Error::InconsistentFunction(_) => "InconsistentFunction",
            Error::NotEffectiveAwayFromBasepoint => "NotEffectiveAwayFromBasepoint",
            Error::FiringTimeTooLarge { .. } => "FiringTimeTooLarge",
            Error::NonpositiveFiringTime => "NonpositiveFiringTime",
            Error::InsufficientChips { .. } => "InsufficientChips",
            Error::MalformedOpenSet(_) => "MalformedOpenSet",
            Error::ResourceBudgetExceeded { .. } => "ResourceBudgetExceeded",
            Error::CaseMismatch(_) => "CaseMismatch",
            Error::IncompatibleDenominator(_) => "IncompatibleDenominator",
            Error::Json(_) => "Json",
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
