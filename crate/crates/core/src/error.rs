use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field size {q} exceeds the table guard {limit}")]
    SizeGuardExceeded { q: u128, limit: u64 },
    #[error("zero has no discrete logarithm")]
    ZeroHasNoLog,
    #[error("N = {n} does not divide q - 1 = {q_minus_one}")]
    NDoesNotDivide { n: u64, q_minus_one: u64 },
    #[error("class index {index} out of range for order {order}")]
    ClassIndexOutOfRange { index: u64, order: u64 },
    #[error("no Diophantine witness for p = {p}, m = {m}: {reason}")]
    NoSolutionFound { p: u64, m: u32, reason: String },
    #[error("Diophantine witness for p = {p}, m = {m} is not unique ({count} candidates)")]
    WitnessNotUnique { p: u64, m: u32, count: usize },
    #[error("period polynomial coefficient of X^{degree} is not a rational integer")]
    NonIntegerCoefficient { degree: usize },
    #[error("Gauss period bound violated for class {index} of order {order}")]
    BoundViolated { order: u64, index: u64 },
    #[error("multiset lemma failed for e = {order}, i = {index}: {detail}")]
    MultisetMismatch {
        order: u64,
        index: u64,
        detail: String,
    },
    #[error("closed-form period cases disagree: {0}")]
    CaseConflict(String),
    #[error("multiplicative order of p modulo n1 = {n1} is {order}, not m = {m}")]
    OrderAssumptionViolated { n1: u64, order: u64, m: u32 },
    #[error("family B needs N1 <= sqrt(q), got N1 = {n1} with q = {q}")]
    IsoPreconditionFailed { n1: u64, q: u64 },
    #[error("canonical skew set <alpha^2> needs q = 3 mod 4, got q = {q}")]
    SkewCanonicalUnavailable { q: u64 },
    #[error("operation needs a family {0} defining set")]
    WrongFamily(&'static str),
    #[error("defining set contains zero")]
    ZeroInDefiningSet,
    #[error("enumeration needs {needed} operations, budget is {budget}")]
    EnumerationBudgetExceeded { needed: u128, budget: u128 },
    #[error("code map is not injective (k = {k} < m = {m})")]
    NotInjective { k: usize, m: u32 },
    #[error("weight formula mismatch at a = {element}: actual {actual}, formula {formula}")]
    WeightFormulaMismatch {
        element: u32,
        actual: u64,
        formula: String,
    },
    #[error("zero-count formula gave non-integer value {0}")]
    NonIntegerResult(String),
    #[error("Gauss periods of order {0} are not rational")]
    PeriodsNotRational(u64),
    #[error("corollaries disagree at r = {r}: {detail}")]
    CorollaryConflict { r: u32, detail: String },
    #[error("dimension r = {r} out of range 0..={m}")]
    DimensionOutOfRange { r: u32, m: u32 },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    /// True when the error reports bad input rather than a failed
    /// mathematical check.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotOddPrime(_)
                | Error::ZeroDegree
                | Error::SizeGuardExceeded { .. }
                | Error::ZeroHasNoLog
                | Error::NDoesNotDivide { .. }
                | Error::ClassIndexOutOfRange { .. }
                | Error::OrderAssumptionViolated { .. }
                | Error::IsoPreconditionFailed { .. }
                | Error::SkewCanonicalUnavailable { .. }
                | Error::ZeroInDefiningSet
                | Error::WrongFamily(_)
                | Error::EnumerationBudgetExceeded { .. }
                | Error::NotInjective { .. }
                | Error::DimensionOutOfRange { .. }
        )
    }
}
