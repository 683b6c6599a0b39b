//! Regular expressions over automaton labels, extracted by state elimination.
//!
//! Runs of pair labels print compressed the way `b` is read: the pair string
//! `(2,8)(4,D)(8,3)` prints as `(248,3D8)`. Grouping uses square brackets so it
//! cannot be confused with label parentheses.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::automaton::{Label, RspAutomaton};
use crate::numerals;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RegexExpr {
    /// The empty language.
    Empty,
    Epsilon,
    /// A fixed, nonempty label string.
    Word(Vec<Label>),
    Concat(Vec<RegexExpr>),
    Union(Vec<RegexExpr>),
    Star(Box<RegexExpr>),
}

impl RegexExpr {
    pub fn word(labels: Vec<Label>) -> Self {
        if labels.is_empty() {
            RegexExpr::Epsilon
        } else {
            RegexExpr::Word(labels)
        }
    }

    /// Concatenation with `∅` absorption, `ε` elimination and merging of
    /// adjacent words.
    pub fn concat(self, other: RegexExpr) -> Self {
        let mut parts = Vec::new();
        for e in [self, other] {
            match e {
                RegexExpr::Empty => return RegexExpr::Empty,
                RegexExpr::Epsilon => {}
                RegexExpr::Concat(inner) => parts.extend(inner),
                e => parts.push(e),
            }
        }
        let mut merged: Vec<RegexExpr> = Vec::with_capacity(parts.len());
        for part in parts {
            match (merged.last_mut(), part) {
                (Some(RegexExpr::Word(prev)), RegexExpr::Word(next)) => prev.extend(next),
                (_, part) => merged.push(part),
            }
        }
        match merged.len() {
            0 => RegexExpr::Epsilon,
            1 => merged.pop().expect("one element"),
            _ => RegexExpr::Concat(merged),
        }
    }

    /// Union with `∅` elimination, flattening and removal of repeated terms.
    pub fn union(self, other: RegexExpr) -> Self {
        let mut terms: Vec<RegexExpr> = Vec::new();
        for e in [self, other] {
            let items = match e {
                RegexExpr::Empty => continue,
                RegexExpr::Union(inner) => inner,
                e => vec![e],
            };
            for item in items {
                if !terms.contains(&item) {
                    terms.push(item);
                }
            }
        }
        match terms.len() {
            0 => RegexExpr::Empty,
            1 => terms.pop().expect("one element"),
            _ => RegexExpr::Union(terms),
        }
    }

    pub fn star(self) -> Self {
        match self {
            RegexExpr::Empty | RegexExpr::Epsilon => RegexExpr::Epsilon,
            e @ RegexExpr::Star(_) => e,
            e => RegexExpr::Star(Box::new(e)),
        }
    }

    pub fn is_empty_language(&self) -> bool {
        matches!(self, RegexExpr::Empty)
    }

    /// Text form, rendering digits in `base`.
    pub fn render(&self, base: u64) -> String {
        let mut out = String::new();
        self.render_into(base, &mut out, false);
        out
    }

    fn render_into(&self, base: u64, out: &mut String, grouped: bool) {
        match self {
            RegexExpr::Empty => out.push('∅'),
            RegexExpr::Epsilon => out.push('ε'),
            RegexExpr::Word(labels) => out.push_str(&render_word(labels, base)),
            RegexExpr::Concat(parts) => {
                for p in parts {
                    p.render_into(base, out, true);
                }
            }
            RegexExpr::Union(terms) => {
                if grouped {
                    out.push('[');
                }
                for (i, t) in terms.iter().enumerate() {
                    if i > 0 {
                        out.push_str(" + ");
                    }
                    t.render_into(base, out, false);
                }
                if grouped {
                    out.push(']');
                }
            }
            RegexExpr::Star(inner) => {
                let atomic = matches!(**inner, RegexExpr::Word(ref w) if word_is_atomic(w));
                if atomic {
                    inner.render_into(base, out, true);
                } else {
                    out.push('[');
                    inner.render_into(base, out, false);
                    out.push(']');
                }
                out.push('*');
            }
        }
    }
}

fn word_is_atomic(labels: &[Label]) -> bool {
    labels.iter().all(|l| matches!(l, Label::Pair(..))) || labels.len() == 1
}

/// Maximal runs of pair labels print as one `(X,Y)`; singletons as `(z)`.
fn render_word(labels: &[Label], base: u64) -> String {
    let mut out = String::new();
    let mut left = Vec::new();
    let mut right = Vec::new();
    let flush = |left: &mut Vec<u64>, right: &mut Vec<u64>, out: &mut String| {
        if !left.is_empty() {
            right.reverse();
            let _ = write!(out, "({},{})", numerals::render(left, base), numerals::render(right, base));
            left.clear();
            right.clear();
        }
    };
    for label in labels {
        match *label {
            Label::Pair(x, y) => {
                left.push(x);
                right.push(y);
            }
            Label::Single(z) => {
                flush(&mut left, &mut right, &mut out);
                let _ = write!(out, "({})", numerals::render_digit(z, base));
            }
        }
    }
    flush(&mut left, &mut right, &mut out);
    out
}

/// Regular expression for the language of `dfa`, by state elimination over
/// its trimmed form.
///
/// A fresh start and final node are added, then states are removed in the
/// order: non-initial non-accepting states by id, accepting states by id,
/// and finally the initial state.
pub fn to_regex(dfa: &RspAutomaton) -> RegexExpr {
    let dfa = dfa.trim();
    let n = dfa.states().len();
    let (start, end) = (n, n + 1);
    let size = n + 2;
    let mut edges = vec![vec![RegexExpr::Empty; size]; size];

    edges[start][dfa.initial()] = RegexExpr::Epsilon;
    for t in dfa.transitions() {
        let cell = std::mem::replace(&mut edges[t.from][t.to], RegexExpr::Empty);
        edges[t.from][t.to] = cell.union(RegexExpr::Word(vec![t.label]));
    }
    for (id, row) in edges.iter_mut().enumerate().take(n) {
        if dfa.is_accepting(id) {
            row[end] = RegexExpr::Epsilon;
        }
    }

    let mut order: Vec<usize> = (0..n)
        .filter(|&i| i != dfa.initial() && !dfa.is_accepting(i))
        .collect();
    order.extend((0..n).filter(|&i| dfa.is_accepting(i)));
    order.push(dfa.initial());

    let mut alive = vec![true; size];
    for q in order {
        alive[q] = false;
        let loop_expr = std::mem::replace(&mut edges[q][q], RegexExpr::Empty).star();
        let sources: Vec<usize> = (0..size).filter(|&p| alive[p] && !edges[p][q].is_empty_language()).collect();
        let targets: Vec<usize> = (0..size).filter(|&r| alive[r] && !edges[q][r].is_empty_language()).collect();
        for &p in &sources {
            let into = std::mem::replace(&mut edges[p][q], RegexExpr::Empty);
            let prefix = into.concat(loop_expr.clone());
            for &r in &targets {
                let path = prefix.clone().concat(edges[q][r].clone());
                let cell = std::mem::replace(&mut edges[p][r], RegexExpr::Empty);
                edges[p][r] = cell.union(path);
            }
        }
        edges[q].fill(RegexExpr::Empty);
    }
    std::mem::replace(&mut edges[start][end], RegexExpr::Empty)
}

/// All label strings of at most `max_len` labels denoted by `expr`.
pub fn regex_language(expr: &RegexExpr, max_len: usize) -> BTreeSet<Vec<Label>> {
    match expr {
        RegexExpr::Empty => BTreeSet::new(),
        RegexExpr::Epsilon => BTreeSet::from([Vec::new()]),
        RegexExpr::Word(w) => {
            if w.len() <= max_len {
                BTreeSet::from([w.clone()])
            } else {
                BTreeSet::new()
            }
        }
        RegexExpr::Union(terms) => terms.iter().flat_map(|t| regex_language(t, max_len)).collect(),
        RegexExpr::Concat(parts) => {
            let mut acc = BTreeSet::from([Vec::new()]);
            for p in parts {
                let lang = regex_language(p, max_len);
                acc = product(&acc, &lang, max_len);
                if acc.is_empty() {
                    break;
                }
            }
            acc
        }
        RegexExpr::Star(inner) => {
            let lang: BTreeSet<Vec<Label>> = regex_language(inner, max_len)
                .into_iter()
                .filter(|w| !w.is_empty())
                .collect();
            let mut all = BTreeSet::from([Vec::new()]);
            let mut frontier = all.clone();
            while !frontier.is_empty() {
                let next: BTreeSet<Vec<Label>> = product(&frontier, &lang, max_len)
                    .into_iter()
                    .filter(|w| !all.contains(w))
                    .collect();
                all.extend(next.iter().cloned());
                frontier = next;
            }
            all
        }
    }
}

fn product(left: &BTreeSet<Vec<Label>>, right: &BTreeSet<Vec<Label>>, max_len: usize) -> BTreeSet<Vec<Label>> {
    let mut out = BTreeSet::new();
    for u in left {
        for v in right {
            if u.len() + v.len() <= max_len {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.insert(w);
            }
        }
    }
    out
}
