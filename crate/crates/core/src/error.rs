use thiserror::Error;

use crate::fields::FieldSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("valuation of zero undefined")]
    ZeroValuation,
    #[error("zero input: {0}")]
    ZeroInput(&'static str),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("square classes of Q_2 have no quadratic non-residue representative")]
    EvenPrime,
    #[error("hilbert_symbol over Q needs a place; use hilbert_symbol_at_place")]
    WrongEntryPoint,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(FieldSpec, FieldSpec),
    #[error("scalar {0} does not belong to field {1}")]
    ForeignScalar(String, FieldSpec),
    #[error("cannot parse field spec {0:?}")]
    BadFieldSpec(String),
    #[error("cannot parse scalar {0:?}")]
    BadScalar(String),
    #[error("cannot parse {what} {input:?}")]
    Parse { what: &'static str, input: String },
    #[error("integer {0} is too large to factor by trial division")]
    FactorizationLimit(String),
    #[error("doubling is only defined up to dimension 4 (got {0})")]
    HurwitzBound(usize),
    #[error("doubling needs an associative algebra: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(usize, usize, usize),
    #[error("degenerate quadratic form")]
    DegenerateForm,
    #[error("singular linear map")]
    Singular,
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("not an involution: {0}")]
    NotInvolution(String),
    #[error("invalid subalgebra: {0}")]
    InvalidSubalgebra(String),
    #[error("expected a quaternion subalgebra, got dimension {0}")]
    NotQuaternion(usize),
    #[error("presentation search exhausted")]
    PresentationSearchExhausted,
    #[error("presentation invariant violated: {0}")]
    PresentationInvariant(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("engine consistency failure: {0}")]
    Engine(String),
    #[error("class count mismatch over {field}: expected {expected}, found {found}; {diagnostic}")]
    ClassCountMismatch {
        field: FieldSpec,
        expected: String,
        found: usize,
        diagnostic: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
