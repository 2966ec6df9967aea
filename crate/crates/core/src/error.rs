use thiserror::Error;

use crate::dfa::StateId;

/// Errors raised while constructing or running digit automata.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DfaError {
    #[error("base must be at least 2, got {0}")]
    InvalidBase(u32),
    #[error("digit {digit} is out of range for base {base}")]
    DigitOutOfRange { digit: u32, base: u32 },
    #[error("state {state} is outside 0..{count}")]
    StateOutOfRange { state: StateId, count: usize },
    #[error("transition table has {got} entries, expected {expected}")]
    TableSize { expected: usize, got: usize },
    #[error("automaton must have at least one state")]
    NoStates,
    #[error("state {0} is not reachable from the initial state")]
    Unreachable(StateId),
    #[error("base mismatch: {left} vs {right}")]
    BaseMismatch { left: u32, right: u32 },
    #[error("numeric overflow while evaluating a word")]
    Overflow,
}

/// Errors raised by the arithmetic helpers and the automaton builders.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum BuildError {
    #[error("period {period} is not coprime with base {base}")]
    NotCoprime { period: u64, base: u32 },
    #[error("{modulus} does not divide a power of base {base}")]
    NotBaseDivisor { modulus: u64, base: u32 },
    #[error("modulus must be positive")]
    ZeroModulus,
    #[error("residue {residue} is not below {modulus}")]
    ResidueOutOfRange { residue: u64, modulus: u64 },
    #[error(transparent)]
    Dfa(#[from] DfaError),
}
