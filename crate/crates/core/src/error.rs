use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("composition must have at least one part")]
    EmptyComposition,
    #[error("flag weights differ: |a|={a}, |b|={b}, |c|={c}")]
    WeightMismatch { a: u64, b: u64, c: u64 },
    #[error("joint condition violated: |b'|+|c'| = {bc} but |a| = {a}")]
    JointConditionViolated { a: u64, bc: u64 },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize, usize),
        right: (usize, usize, usize),
    },
    #[error("cannot split {n} into {m} positive parts")]
    Infeasible { n: u64, m: u64 },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("budget exceeded: {what} would exceed limit {limit}")]
    BudgetExceeded { what: &'static str, limit: u64 },
    #[error("({x}, {y}) is outside the domain of relaxation case {case}")]
    DomainViolation { case: String, x: i64, y: i64 },
    #[error("unknown relaxation case {0:?}")]
    UnknownCase(String),
    #[error("dimension vector {0} is not of finite type")]
    NotFiniteType(String),
    #[error("inconsistent double flag datum: {0}")]
    InconsistentDatum(String),
    #[error("unsupported field order {0}; expected 2, 3 or 5")]
    UnsupportedField(u32),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("idempotent splitting failed: {0}")]
    SplittingFailed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
