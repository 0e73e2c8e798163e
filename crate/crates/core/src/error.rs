use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("rank deficient: {0}")]
    RankDeficient(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("non-homogeneous input: {0}")]
    NonHomogeneous(String),
    #[error("not isolated: the ideal is positive-dimensional at the point")]
    NotIsolated,
    #[error("unsupported arity: {0} local parameters (at most 2 supported)")]
    UnsupportedArity(usize),
    #[error("point is not on the variety")]
    NotOnVariety,
    #[error("singular point")]
    SingularPoint,
    #[error("no point found within budget")]
    NoPointFound,
    #[error("unsupported presentation: {0}")]
    UnsupportedPresentation(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("probe budget too small: {0}")]
    ProbeBudget(String),
    #[error("certificate not applicable: {0}")]
    CertificateNotApplicable(String),
    #[error("rank-two element present")]
    RankTwoElement,
    #[error("invariant violation: {0}")]
    InvariantViolation(String),
    #[error("stationary/hyperosculating point")]
    Stationary,
    #[error("non-general configuration, reseed: {0}")]
    NonGeneral(String),
    #[error("no rational contact line")]
    NoRationalContactLine,
    #[error("contact order below requested: {0}")]
    ContactTooLow(String),
    #[error("not isotropic at sample: {0}")]
    NotIsotropic(String),
    #[error("mixed adapted bases")]
    MixedBases,
    #[error("precondition failed: {0}")]
    Precondition(String),
}
