use thiserror::Error;

use crate::subset::SubsetWord;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground size n = {0} is outside the supported range 3..=63")]
    GroundSize(u32),

    #[error("element {element} is outside 1..={n}")]
    ElementOutOfRange { element: i64, n: u32 },

    #[error("element {0} listed more than once")]
    DuplicateElement(u32),

    #[error("ground sizes differ: {left} vs {right}")]
    GroundMismatch { left: u32, right: u32 },

    #[error("operation is undefined on the empty family")]
    EmptyFamily,

    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: i64,
        reason: String,
    },

    #[error("budget exceeded: {what} needs {needed} bytes, budget is {budget} bytes")]
    Budget {
        what: String,
        needed: u128,
        budget: u64,
    },

    #[error("construction invariant failed for {construction}: {detail}")]
    Invariant {
        construction: String,
        detail: String,
    },

    #[error("swap plan rejected: {0}")]
    SwapPlan(SwapPlanError),

    #[error("layer i = {0} is not regular, degree ledger undefined")]
    NonRegularLayer(u32),

    #[error("integer overflow evaluating {0}")]
    Overflow(&'static str),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("precondition failed: {0}")]
    Precondition(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SwapPlanError {
    #[error("small set {0} appears twice")]
    DuplicateSmallSet(SubsetWord),
    #[error("complement of {0} is not a member of the base family")]
    ComplementMissing(SubsetWord),
    #[error("small set {0} is already a member of the base family")]
    AlreadyInBase(SubsetWord),
    #[error("ground sizes differ: base {base}, small side {small}")]
    GroundMismatch { base: u32, small: u32 },
}

impl Error {
    pub(crate) fn param(name: &'static str, value: i64, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            value,
            reason: reason.into(),
        }
    }
}
