use crate::automaton::{Label, RspAutomaton, StateId};
use crate::error::Result;
use crate::numerals;

/// A label string accepted by an automaton: pair labels, optionally followed
/// by a single middle digit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AcceptedString {
    pub labels: Vec<Label>,
}

impl AcceptedString {
    pub fn new(labels: Vec<Label>) -> Self {
        Self { labels }
    }

    /// Number of digits of the value this string spells.
    pub fn digit_len(&self) -> usize {
        self.labels.iter().map(Label::digit_len).sum()
    }

    pub fn has_pair(&self) -> bool {
        self.labels.iter().any(|l| matches!(l, Label::Pair(..)))
    }

    pub fn render(&self, base: u64) -> String {
        self.labels.iter().map(|l| l.render(base)).collect()
    }
}

/// Depth-first walk over the productive part of the automaton, reporting
/// every accepted label string whose cost stays within `budget`.
fn walk(dfa: &RspAutomaton, budget: usize, cost: impl Fn(&Label) -> usize) -> Vec<Vec<Label>> {
    let productive = dfa.productive();
    let mut out = Vec::new();
    let mut path = Vec::new();

    fn go(
        dfa: &RspAutomaton,
        productive: &[bool],
        state: StateId,
        remaining: usize,
        cost: &dyn Fn(&Label) -> usize,
        path: &mut Vec<Label>,
        out: &mut Vec<Vec<Label>>,
    ) {
        if dfa.is_accepting(state) {
            out.push(path.clone());
        }
        for t in dfa.outgoing(state) {
            let c = cost(&t.label);
            if c <= remaining && productive[t.to] {
                path.push(t.label);
                go(dfa, productive, t.to, remaining - c, cost, path, out);
                path.pop();
            }
        }
    }

    if productive[dfa.initial()] {
        go(dfa, &productive, dfa.initial(), budget, &cost, &mut path, &mut out);
    }
    out
}

/// Accepted strings whose value has at most `max_digits` digits, shortest
/// first and then in label order.
pub fn accepted_strings(dfa: &RspAutomaton, max_digits: usize) -> Vec<AcceptedString> {
    let mut out: Vec<AcceptedString> = walk(dfa, max_digits, Label::digit_len)
        .into_iter()
        .map(AcceptedString::new)
        .collect();
    out.sort_by(|x, y| x.digit_len().cmp(&y.digit_len()).then_with(|| x.labels.cmp(&y.labels)));
    out
}

/// Accepted label strings with at most `max_labels` labels, ordered by length
/// and then label order.
pub fn accepted_words(dfa: &RspAutomaton, max_labels: usize) -> Vec<Vec<Label>> {
    let mut out = walk(dfa, max_labels, |_| 1);
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    out
}

/// Digits of `b` spelled by an accepted string: the left digits in order, the
/// middle digit if present, then the right digits in reverse.
pub fn b_from_string(s: &AcceptedString) -> Vec<u64> {
    let mut left = Vec::new();
    let mut right = Vec::new();
    let mut middle = None;
    for label in &s.labels {
        match *label {
            Label::Pair(x, y) => {
                left.push(x);
                right.push(y);
            }
            Label::Single(z) => middle = Some(z),
        }
    }
    left.extend(middle);
    left.extend(right.into_iter().rev());
    left
}

/// Digit sequences of every `b` with at most `max_digits` digits, ordered by
/// length then value. Single-digit values come from the `(2)` and `(β-1)`
/// edges and can be left out.
pub fn b_digits(dfa: &RspAutomaton, max_digits: usize, include_single_digit: bool) -> Vec<Vec<u64>> {
    let mut values: Vec<Vec<u64>> = accepted_strings(dfa, max_digits)
        .iter()
        .filter(|s| include_single_digit || s.has_pair())
        .map(b_from_string)
        .collect();
    values.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    values.dedup();
    values
}

/// Rendered values `b` with at most `max_digits` digits.
pub fn b_values(dfa: &RspAutomaton, max_digits: usize) -> Vec<String> {
    b_values_with(dfa, max_digits, true)
}

pub fn b_values_with(dfa: &RspAutomaton, max_digits: usize, include_single_digit: bool) -> Vec<String> {
    b_digits(dfa, max_digits, include_single_digit)
        .iter()
        .map(|d| numerals::render(d, dfa.base()))
        .collect()
}

/// A pair found by walking the automata, with `b` kept as digits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumeratedPair {
    pub base: u64,
    pub a: u64,
    pub b: Vec<u64>,
}

impl EnumeratedPair {
    pub fn render(&self) -> String {
        let a = numerals::render(&numerals::to_digits(self.a as u128, self.base).expect("valid base"), self.base);
        format!("({},{})", a, numerals::render(&self.b, self.base))
    }

    pub fn is_interesting(&self) -> bool {
        self.b.len() > 1
    }
}

/// Every pair for the base with `b` of at most `max_digits` digits, ordered by
/// `a`, then digit count, then `b`.
pub fn all_pairs(base: u64, max_digits: usize) -> Result<Vec<EnumeratedPair>> {
    let mut out = Vec::new();
    for a in 1..base {
        let dfa = RspAutomaton::build(a, base)?;
        out.extend(
            b_digits(&dfa, max_digits, true)
                .into_iter()
                .map(|b| EnumeratedPair { base, a, b }),
        );
    }
    Ok(out)
}
