use thiserror::Error;

/// Errors raised by the algebra, invariant-theory and relation pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("minimal polynomial must be monic and nonconstant")]
    NotMonic,
    #[error("minimal polynomial degree {0} is not supported (1..=4)")]
    MinpolyDegree(usize),
    #[error("minimal polynomial is reducible over the rationals")]
    ReducibleMinpoly,
    #[error("division by zero")]
    DivisionByZero,
    #[error("constant fields differ")]
    FieldMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("operator kinds differ")]
    KindMismatch,
    #[error("degree {0} out of range")]
    DegreeOutOfRange(usize),
    #[error("finite group list is not closed: {0}")]
    NotAGroup(String),
    #[error("determinant group is infinite; theorem hypothesis violated")]
    InfiniteDeterminantGroup,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("sampling failed for seed {seed}: {what}")]
    Sampling { seed: u64, what: String },
    #[error("not of the form lambda*W^N: {0}")]
    FmtViolation(String),
    #[error("invariant theory violation: {0}")]
    InvariantTheoryViolation(String),
    #[error("subspace is not stable under the group: {0}")]
    NotStable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("polynomial is not invariant under the group")]
    NotInvariant,
    #[error("normal form {0} does not lie in K: ideal not PV-maximal or P not invariant")]
    NotInGroundField(String),
    #[error("polynomial is not in the ideal")]
    NotInIdeal,
    #[error("invariant generators are insufficient: {0}")]
    GeneratorInsufficiency(String),
    #[error("context hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("certificate check failed: {0}")]
    Unsound(String),
    #[error("{step}: {source}")]
    Step {
        step: &'static str,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn at(step: &'static str) -> impl FnOnce(Error) -> Error {
        move |source| Error::Step {
            step,
            source: Box::new(source),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
