//! Reversed sum-product pairs: integers `a ≤ b` whose sum and product have
//! mutually reversed digits in a base `β`.
//!
//! For each `1 ≤ a < β` the values `b` are exactly the strings accepted by a
//! small deterministic automaton over digit-pair labels ([`automaton`]).
//! [`language`] enumerates those strings and extracts regular expressions,
//! [`oracle`] checks pairs directly from the definition, and
//! [`participation`] studies which `a` occur as `β` varies.

pub mod arith;
pub mod automaton;
pub mod error;
pub mod export;
pub mod language;
pub mod numerals;
pub mod oracle;
pub mod participation;

pub use automaton::{Label, RspAutomaton, StateKind};
pub use error::{Error, Result};
pub use oracle::{is_rsp_pair, RspPair};
