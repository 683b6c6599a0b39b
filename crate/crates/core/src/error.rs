use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("base must be at least 2, got {0}")]
    InvalidBase(u64),

    #[error("digit {digit} out of range for base {base}")]
    DigitOutOfRange { digit: u64, base: u64 },

    #[error("invalid digit character {ch:?} for base {base}")]
    InvalidDigitChar { ch: char, base: u64 },

    #[error("malformed numeral {0:?}")]
    MalformedNumeral(String),

    #[error("value does not fit in 128 bits")]
    Overflow,

    #[error("multiplier a = {a} must satisfy 1 <= a < base = {base}")]
    MultiplierOutOfRange { a: u64, base: u64 },

    #[error("carry pair ({lambda}, {rho}) out of range for a = {a}")]
    CarryOutOfRange { lambda: u64, rho: u64, a: u64 },

    #[error("nondeterministic transition from state {state} on label {label}")]
    Nondeterministic { state: usize, label: String },

    #[error("label string is not accepted by the automaton")]
    NotAccepted,

    #[error("label string has no pair label; single-digit pairs cannot be lifted")]
    NothingToLift,

    #[error("formal family is not a pair for a = {a}, T = {t}")]
    ExcludedFamily { a: u64, t: u64 },

    #[error("generic automata require a >= 2, got {0}")]
    DegenerateModulus(u64),

    #[error("residue {v} out of range for modulus {modulus}")]
    ResidueOutOfRange { v: u64, modulus: u64 },

    #[error("invalid automaton description: {0}")]
    InvalidDescription(String),
}

pub type Result<T> = std::result::Result<T, Error>;
