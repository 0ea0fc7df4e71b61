use alloc::string::String;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid rank {rank} for type {ty}")]
    InvalidRank { ty: String, rank: usize },
    #[error("operation requires a classical type, got {0}")]
    NotClassical(String),
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("string has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("highest weight element failed its self-check: {0}")]
    HighestWeightCheck(String),
    #[error("size exceeds the cap of {0}")]
    CapExceeded(usize),
    #[error("lowering operator f_{index} vanished at step {step}")]
    NullOperator { step: usize, index: u8 },
    #[error("letter {a} does not strictly dominate {b}")]
    NotDominating { a: i8, b: i8 },
    #[error("invalid letter {0}")]
    InvalidLetter(i8),
    #[error("string is not in the string cone")]
    NotInCone,
    #[error("infeasible multiplicity row: {0}")]
    InfeasibleRow(String),
    #[error("invalid structure-constant choice: {0}")]
    InvalidChoice(String),
    #[error("arithmetic overflow")]
    Overflow,
    #[error("malformed inequality system: {0}")]
    Parse(String),
}
