use thiserror::Error;

/// Errors shared across the whole toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different prime fields ({0} vs {1})")]
    ModulusMismatch(u64, u64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not a real quadratic model: {0}")]
    NotRealModel(String),
    #[error("defining polynomial is not squarefree")]
    NotSquarefree,
    #[error("characteristic 2 is not supported")]
    EvenCharacteristic,
    #[error("point does not belong to this backend: {0}")]
    BackendMismatch(String),
    #[error("ideal is not reduced: {0}")]
    NotReduced(String),
    #[error("cycle exceeds the enumeration cap of {cap} points")]
    CycleTooLong { cap: u64 },
    #[error("curve too large for naive point counting (q^g = {qg} > {cap})")]
    CurveTooLarge { qg: u128, cap: u128 },
    #[error("|f| = {f} exceeds the normalization cap {cap}")]
    FTooLarge { f: i64, cap: i64 },
    #[error("base element does not have order dividing {p}")]
    BadOrder { p: u64 },
    #[error("target is not in the subgroup generated by the base{}",
            .prime.map(|p| format!(" (failed at prime {p})")).unwrap_or_default())]
    NotInSubgroup { prime: Option<u64> },
    #[error("CRT moduli are not pairwise coprime")]
    BadModuli,
    #[error("claimed multiple {value} does not annihilate the generator")]
    NotAMultiple { value: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
