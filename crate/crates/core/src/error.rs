use thiserror::Error;

use crate::interval::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("interval {0} is not contained in the universe {1}")]
    ComponentOutsideUniverse(String, String),
    #[error("operands live in different universes ({0} vs {1})")]
    UniverseMismatch(String, String),
    #[error("invalid interval: {0}")]
    InvalidInterval(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("point {0} is outside the domain")]
    PointOutsideDomain(String),
    #[error("operands have different domains")]
    DomainMismatch,
    #[error("undefined arithmetic on infinite values ({0})")]
    UndefinedInfinityArithmetic(&'static str),
    #[error("operation not supported for this function kind: {0}")]
    KindMismatch(String),
    #[error("function takes negative values on a set of the domain")]
    NegativeFunction,
    #[error("monotonicity of |f_k - f| violated between k = {0} and k = {1}")]
    MonotonicityViolation(u64, u64),
    #[error("function is not finite almost everywhere (infinity set has measure {})", .0)]
    NotFiniteAE(Rational),
    #[error("iteration cap {cap} exceeded while searching for {what}")]
    IterationCapExceeded { what: String, cap: u64 },
    #[error("step function has infinite values")]
    NotSimple,
    #[error("sequence is not in exact mode")]
    NotExactMode,
    #[error("sequence of deviations is not monotone at n = {0}")]
    NonMonotoneSequence(u64),
    #[error("function is not continuous on the given set: {0}")]
    NotContinuousKind(String),
    #[error("family member {m} violates its budget: measure {loss} is not below 1/{m}")]
    BudgetViolated { m: usize, loss: Rational },
    #[error("no exact continuity witness for the restriction to K")]
    WitnessMissing,
    #[error("certificate does not match the supplied inputs: {0}")]
    InputMismatch(String),
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(Rational),
    #[error("invalid scenario: {0}")]
    Scenario(String),
}
