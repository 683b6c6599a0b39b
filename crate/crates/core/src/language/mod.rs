//! Walking the automaton: accepted strings, the values `b` they spell, and an
//! equivalent regular expression.

mod enumerate;
mod regex;

pub use enumerate::{
    accepted_strings, accepted_words, all_pairs, b_digits, b_from_string, b_values, b_values_with,
    AcceptedString, EnumeratedPair,
};
pub use regex::{regex_language, to_regex, RegexExpr};
