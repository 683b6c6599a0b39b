//! JSON and Graphviz DOT forms of an automaton.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::automaton::{Label, RspAutomaton, State, StateKind, Transition};
use crate::error::{Error, Result};
use crate::numerals;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StateKindDoc {
    Initial,
    Odd,
    Carry,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateDoc {
    pub id: usize,
    pub kind: StateKindDoc,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rho: Option<u64>,
    pub accepting: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionDoc {
    pub from: usize,
    pub to: usize,
    pub label: Vec<u64>,
    /// Alphanumeric form of the label, present for bases up to 36.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub render: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonDoc {
    pub base: u64,
    pub a: u64,
    pub trimmed: bool,
    pub states: Vec<StateDoc>,
    pub transitions: Vec<TransitionDoc>,
}

impl From<&RspAutomaton> for AutomatonDoc {
    fn from(dfa: &RspAutomaton) -> Self {
        let states = dfa
            .states()
            .iter()
            .enumerate()
            .map(|(id, s)| {
                let (kind, lambda, rho) = match s.kind {
                    StateKind::Initial => (StateKindDoc::Initial, None, None),
                    StateKind::Odd => (StateKindDoc::Odd, None, None),
                    StateKind::Carry { lambda, rho } => (StateKindDoc::Carry, Some(lambda), Some(rho)),
                };
                StateDoc { id, kind, lambda, rho, accepting: s.accepting }
            })
            .collect();
        let alphanumeric = dfa.base() <= numerals::MAX_ALPHANUMERIC_BASE;
        let transitions = dfa
            .transitions()
            .iter()
            .map(|t| TransitionDoc {
                from: t.from,
                to: t.to,
                label: t.label.digits(),
                render: alphanumeric.then(|| t.label.render(dfa.base())),
            })
            .collect();
        AutomatonDoc { base: dfa.base(), a: dfa.a(), trimmed: dfa.is_trimmed(), states, transitions }
    }
}

impl TryFrom<AutomatonDoc> for RspAutomaton {
    type Error = Error;

    fn try_from(doc: AutomatonDoc) -> Result<Self> {
        let mut states = Vec::with_capacity(doc.states.len());
        for (i, s) in doc.states.iter().enumerate() {
            if s.id != i {
                return Err(Error::InvalidDescription(format!("state ids must be 0..n, found {} at {i}", s.id)));
            }
            let kind = match (&s.kind, s.lambda, s.rho) {
                (StateKindDoc::Initial, None, None) => StateKind::Initial,
                (StateKindDoc::Odd, None, None) => StateKind::Odd,
                (StateKindDoc::Carry, Some(lambda), Some(rho)) => StateKind::Carry { lambda, rho },
                _ => return Err(Error::InvalidDescription(format!("state {i} has inconsistent carries"))),
            };
            states.push(State { kind, accepting: s.accepting });
        }
        let transitions = doc
            .transitions
            .iter()
            .map(|t| {
                let label = match t.label[..] {
                    [z] => Label::Single(z),
                    [x, y] => Label::Pair(x, y),
                    _ => return Err(Error::InvalidDescription(format!("bad label {:?}", t.label))),
                };
                if t.label.iter().any(|&d| d >= doc.base) {
                    return Err(Error::DigitOutOfRange { digit: *t.label.iter().max().unwrap(), base: doc.base });
                }
                Ok(Transition { from: t.from, label, to: t.to })
            })
            .collect::<Result<Vec<_>>>()?;
        RspAutomaton::from_parts(doc.base, doc.a, states, transitions, doc.trimmed)
    }
}

pub fn to_json(dfa: &RspAutomaton) -> String {
    serde_json::to_string_pretty(&AutomatonDoc::from(dfa)).expect("serializable")
}

pub fn from_json(text: &str) -> Result<RspAutomaton> {
    let doc: AutomatonDoc =
        serde_json::from_str(text).map_err(|e| Error::InvalidDescription(e.to_string()))?;
    RspAutomaton::try_from(doc)
}

fn state_label(kind: StateKind) -> String {
    match kind {
        StateKind::Initial => "s_i".into(),
        StateKind::Odd => "s_o".into(),
        StateKind::Carry { lambda, rho } => format!("s_{{{lambda},{rho}}}"),
    }
}

/// Graphviz source: initial state filled yellow, accepting states drawn as
/// light blue double circles, edge labels in the digit alphabet of the base.
pub fn to_dot(dfa: &RspAutomaton) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"A_{}_{}\" {{", dfa.base(), dfa.a());
    out.push_str("  rankdir=LR;\n");
    out.push_str("  node [style=filled, fillcolor=white];\n");
    for (id, s) in dfa.states().iter().enumerate() {
        let shape = if s.accepting { "doublecircle" } else { "circle" };
        let fill = if s.kind == StateKind::Initial {
            "yellow"
        } else if s.accepting {
            "lightblue"
        } else {
            "white"
        };
        let _ = writeln!(
            out,
            "  {id} [label=\"{}\", shape={shape}, fillcolor={fill}];",
            state_label(s.kind)
        );
    }
    for t in dfa.transitions() {
        let _ = writeln!(out, "  {} -> {} [label=\"{}\"];", t.from, t.to, t.label.render(dfa.base()));
    }
    out.push_str("}\n");
    out
}
