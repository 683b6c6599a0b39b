//! The carry automaton `A(β, a)`.
//!
//! A value `b` is built from the outside in: the first transition fixes the
//! leading and trailing digits `(b_r, b_0)`, each later pair transition fixes
//! the next digit on each side, and a singleton transition fixes the middle
//! digit of an odd-length `b`. Carry states remember the carry `λ` entering the
//! left frontier of `a·b` and the carry `ρ` leaving the right frontier.
//!
//! Both the start and the step equations are 2×2 linear systems with
//! determinant `a² - 1`, so for each choice of the outgoing right carry there
//! is at most one admissible outgoing left carry. Solving costs `O(a)` per
//! state instead of `O(β²)` for a digit scan.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerals;

pub type StateId = usize;

/// Leading/trailing digits of `b` with the carries they leave behind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StartSolution {
    pub b_r: u64,
    pub b_0: u64,
    pub lambda: u64,
    pub rho: u64,
}

/// One step inward: the next left digit `x`, next right digit `y`, and the
/// carries `lambda`, `rho` of the state reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StepSolution {
    pub x: u64,
    pub y: u64,
    pub lambda: u64,
    pub rho: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StateKind {
    Initial,
    Odd,
    Carry { lambda: u64, rho: u64 },
}

impl StateKind {
    pub fn is_accepting(&self) -> bool {
        match *self {
            StateKind::Initial => false,
            StateKind::Odd => true,
            StateKind::Carry { lambda, rho } => lambda == rho,
        }
    }

    pub fn name(&self) -> String {
        match self {
            StateKind::Initial => "s_i".to_string(),
            StateKind::Odd => "s_o".to_string(),
            StateKind::Carry { lambda, rho } => format!("s_{lambda},{rho}"),
        }
    }
}

/// Edge labels: a middle digit `(z)` or a digit pair `(x, y)`. Singletons
/// order before pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Single(u64),
    Pair(u64, u64),
}

impl Label {
    pub fn digit_len(&self) -> usize {
        match self {
            Label::Pair(..) => 2,
            Label::Single(_) => 1,
        }
    }

    pub fn digits(&self) -> Vec<u64> {
        match *self {
            Label::Pair(x, y) => vec![x, y],
            Label::Single(z) => vec![z],
        }
    }

    pub fn render(&self, base: u64) -> String {
        match *self {
            Label::Pair(x, y) => format!(
                "({},{})",
                numerals::render_digit(x, base),
                numerals::render_digit(y, base)
            ),
            Label::Single(z) => format!("({})", numerals::render_digit(z, base)),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Pair(x, y) => write!(f, "({x},{y})"),
            Label::Single(z) => write!(f, "({z})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct State {
    pub kind: StateKind,
    pub accepting: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Transition {
    pub from: StateId,
    pub label: Label,
    pub to: StateId,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stats {
    pub states: usize,
    pub transitions: usize,
    pub accepting: usize,
    pub trimmed: bool,
}

fn check_multiplier(a: u64, base: u64) -> Result<()> {
    if base < 2 {
        return Err(Error::InvalidBase(base));
    }
    if a == 0 || a >= base {
        return Err(Error::MultiplierOutOfRange { a, base });
    }
    Ok(())
}

/// All `(b_r, b_0, λ, ρ)` with
///
/// ```text
/// a + b_0 = a·b_r + λ
/// a·b_0   = b_r + ρ·β
/// ```
///
/// `0 < b_0 < β - a`, `1 ≤ b_r < β` and carries in `[0, a)`, sorted by `(λ, ρ)`.
/// Empty for `a = 1`, where the system is singular and inconsistent.
pub fn solve_start(a: u64, base: u64) -> Result<Vec<StartSolution>> {
    check_multiplier(a, base)?;
    let mut out = Vec::new();
    if a == 1 {
        return Ok(out);
    }
    let (ai, beta) = (a as i128, base as i128);
    let m = ai * ai - 1;
    for rho in 0..ai {
        // (a²-1)·b_r = a² - aλ + ρβ; a is its own inverse mod a²-1.
        let lambda = (ai * (ai * ai + rho * beta)).rem_euclid(m);
        if lambda >= ai {
            continue;
        }
        let num = ai * ai - ai * lambda + rho * beta;
        if num % m != 0 {
            continue;
        }
        let b_r = num / m;
        let b_0 = ai * b_r + lambda - ai;
        if b_r >= 1 && b_r < beta && b_0 > 0 && b_0 < beta - ai {
            debug_assert_eq!(ai * b_0, b_r + rho * beta);
            out.push(StartSolution {
                b_r: b_r as u64,
                b_0: b_0 as u64,
                lambda: lambda as u64,
                rho: rho as u64,
            });
        }
    }
    out.sort_by_key(|s| (s.lambda, s.rho));
    Ok(out)
}

/// All `(x', y', λ', ρ')` with
///
/// ```text
/// a·x' + λ' = y' + λ·β
/// a·y' + ρ  = x' + ρ'·β
/// ```
///
/// digits in `[0, β)` and carries in `[0, a)`, sorted by `(λ', ρ')`.
/// Empty for `a = 1`.
pub fn solve_step(a: u64, base: u64, lambda: u64, rho: u64) -> Result<Vec<StepSolution>> {
    if base < 2 {
        return Err(Error::InvalidBase(base));
    }
    if lambda >= a || rho >= a {
        return Err(Error::CarryOutOfRange { lambda, rho, a });
    }
    let mut out = Vec::new();
    if a == 1 {
        return Ok(out);
    }
    let (ai, beta, lam, rh) = (a as i128, base as i128, lambda as i128, rho as i128);
    let m = ai * ai - 1;
    for rho_next in 0..ai {
        // x' = ((aλ + ρ')β - aλ' - ρ) / (a² - 1)
        let lam_next = (ai * ((ai * lam + rho_next) * beta - rh)).rem_euclid(m);
        if lam_next >= ai {
            continue;
        }
        let x_num = (ai * lam + rho_next) * beta - ai * lam_next - rh;
        let y_num = (lam + ai * rho_next) * beta - lam_next - ai * rh;
        if x_num % m != 0 || y_num % m != 0 {
            continue;
        }
        let (x, y) = (x_num / m, y_num / m);
        if (0..beta).contains(&x) && (0..beta).contains(&y) {
            debug_assert_eq!(ai * x + lam_next, y + lam * beta);
            debug_assert_eq!(ai * y + rh, x + rho_next * beta);
            out.push(StepSolution {
                x: x as u64,
                y: y as u64,
                lambda: lam_next as u64,
                rho: rho_next as u64,
            });
        }
    }
    out.sort_by_key(|s| (s.lambda, s.rho));
    Ok(out)
}

/// Deterministic automaton whose accepted strings spell the values `b` that
/// pair with `a` in base `β`.
///
/// Only states reachable from the initial state are stored. State ids follow
/// breadth-first discovery, the initial state is always id 0, and transitions
/// are stored grouped by source in the same order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RspAutomaton {
    base: u64,
    a: u64,
    states: Vec<State>,
    transitions: Vec<Transition>,
    outgoing: Vec<Vec<usize>>,
    trimmed: bool,
}

struct Builder {
    states: Vec<State>,
    index: HashMap<StateKind, StateId>,
    transitions: Vec<Transition>,
    queue: VecDeque<StateId>,
}

impl Builder {
    fn intern(&mut self, kind: StateKind) -> StateId {
        if let Some(&id) = self.index.get(&kind) {
            return id;
        }
        let id = self.states.len();
        self.states.push(State { kind, accepting: kind.is_accepting() });
        self.index.insert(kind, id);
        if let StateKind::Carry { .. } = kind {
            self.queue.push_back(id);
        }
        id
    }

    fn edge(&mut self, from: StateId, label: Label, to: StateKind, seen: &mut HashSet<Label>) -> Result<()> {
        if !seen.insert(label) {
            return Err(Error::Nondeterministic { state: from, label: label.to_string() });
        }
        let to = self.intern(to);
        self.transitions.push(Transition { from, label, to });
        Ok(())
    }
}

impl RspAutomaton {
    /// Lazily constructs `A(β, a)` for `1 ≤ a < β`.
    pub fn build(a: u64, base: u64) -> Result<Self> {
        check_multiplier(a, base)?;
        let mut builder = Builder {
            states: Vec::new(),
            index: HashMap::new(),
            transitions: Vec::new(),
            queue: VecDeque::new(),
        };
        let initial = builder.intern(StateKind::Initial);

        let mut seen = HashSet::new();
        for s in solve_start(a, base)? {
            let to = StateKind::Carry { lambda: s.lambda, rho: s.rho };
            builder.edge(initial, Label::Pair(s.b_r, s.b_0), to, &mut seen)?;
        }
        if base >= 5 && a == 2 {
            builder.edge(initial, Label::Single(2), StateKind::Odd, &mut seen)?;
        }
        if base >= 3 && a == base - 1 {
            builder.edge(initial, Label::Single(base - 1), StateKind::Odd, &mut seen)?;
        }

        while let Some(id) = builder.queue.pop_front() {
            let StateKind::Carry { lambda, rho } = builder.states[id].kind else {
                unreachable!("only carry states are queued")
            };
            let mut seen = HashSet::new();
            for s in solve_step(a, base, lambda, rho)? {
                let to = StateKind::Carry { lambda: s.lambda, rho: s.rho };
                builder.edge(id, Label::Pair(s.x, s.y), to, &mut seen)?;
                if s.x == s.y {
                    builder.edge(id, Label::Single(s.x), StateKind::Odd, &mut seen)?;
                }
            }
        }

        Ok(Self::assemble(base, a, builder.states, builder.transitions, false))
    }

    fn assemble(base: u64, a: u64, states: Vec<State>, mut transitions: Vec<Transition>, trimmed: bool) -> Self {
        // Stable: keeps discovery order within each source.
        transitions.sort_by_key(|t| t.from);
        let mut outgoing = vec![Vec::new(); states.len()];
        for (i, t) in transitions.iter().enumerate() {
            outgoing[t.from].push(i);
        }
        Self { base, a, states, transitions, outgoing, trimmed }
    }

    /// Reassembles an automaton from serialized parts, checking ids and
    /// determinism. State 0 must be the initial state.
    pub fn from_parts(
        base: u64,
        a: u64,
        states: Vec<State>,
        transitions: Vec<Transition>,
        trimmed: bool,
    ) -> Result<Self> {
        check_multiplier(a, base)?;
        if states.first().map(|s| s.kind) != Some(StateKind::Initial) {
            return Err(Error::InvalidDescription("state 0 must be the initial state".into()));
        }
        let mut kinds = HashSet::new();
        for s in &states {
            if !kinds.insert(s.kind) {
                return Err(Error::InvalidDescription(format!("duplicate state {}", s.kind.name())));
            }
            if s.accepting != s.kind.is_accepting() {
                return Err(Error::InvalidDescription(format!(
                    "state {} has the wrong accepting flag",
                    s.kind.name()
                )));
            }
        }
        let mut seen = HashSet::new();
        for t in &transitions {
            if t.from >= states.len() || t.to >= states.len() {
                return Err(Error::InvalidDescription(format!("transition {t:?} references a missing state")));
            }
            if !seen.insert((t.from, t.label)) {
                return Err(Error::Nondeterministic { state: t.from, label: t.label.to_string() });
            }
        }
        Ok(Self::assemble(base, a, states, transitions, trimmed))
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn initial(&self) -> StateId {
        0
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn state(&self, id: StateId) -> &State {
        &self.states[id]
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn outgoing(&self, id: StateId) -> impl Iterator<Item = &Transition> + '_ {
        self.outgoing[id].iter().map(move |&i| &self.transitions[i])
    }

    pub fn is_accepting(&self, id: StateId) -> bool {
        self.states[id].accepting
    }

    pub fn is_trimmed(&self) -> bool {
        self.trimmed
    }

    pub fn state_id(&self, kind: StateKind) -> Option<StateId> {
        self.states.iter().position(|s| s.kind == kind)
    }

    pub fn next_state(&self, id: StateId, label: Label) -> Option<StateId> {
        self.outgoing(id).find(|t| t.label == label).map(|t| t.to)
    }

    /// Runs the automaton on a label string, returning the visited states
    /// (starting with the initial state) if it is accepted.
    pub fn run(&self, labels: &[Label]) -> Option<Vec<StateId>> {
        let mut path = vec![self.initial()];
        let mut current = self.initial();
        for &label in labels {
            current = self.next_state(current, label)?;
            path.push(current);
        }
        self.is_accepting(current).then_some(path)
    }

    pub fn accepts(&self, labels: &[Label]) -> bool {
        self.run(labels).is_some()
    }

    pub fn stats(&self) -> Stats {
        Stats {
            states: self.states.len(),
            transitions: self.transitions.len(),
            accepting: self.states.iter().filter(|s| s.accepting).count(),
            trimmed: self.trimmed,
        }
    }

    /// States from which some accepting state is reachable.
    pub fn productive(&self) -> Vec<bool> {
        let mut incoming = vec![Vec::new(); self.states.len()];
        for t in &self.transitions {
            incoming[t.to].push(t.from);
        }
        let mut productive: Vec<bool> = self.states.iter().map(|s| s.accepting).collect();
        let mut stack: Vec<StateId> = (0..self.states.len()).filter(|&i| productive[i]).collect();
        while let Some(id) = stack.pop() {
            for &from in &incoming[id] {
                if !productive[from] {
                    productive[from] = true;
                    stack.push(from);
                }
            }
        }
        productive
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.states.len()];
        let mut stack = vec![self.initial()];
        seen[self.initial()] = true;
        while let Some(id) = stack.pop() {
            for t in self.outgoing(id) {
                if !seen[t.to] {
                    seen[t.to] = true;
                    stack.push(t.to);
                }
            }
        }
        seen
    }

    /// Removes every state that lies on no path from the initial state to an
    /// accepting state. The initial state is always kept.
    pub fn trim(&self) -> Self {
        let productive = self.productive();
        let reachable = self.reachable();
        let keep: Vec<bool> = (0..self.states.len())
            .map(|i| i == self.initial() || (productive[i] && reachable[i]))
            .collect();
        let mut remap = vec![usize::MAX; self.states.len()];
        let mut states = Vec::new();
        for (i, s) in self.states.iter().enumerate() {
            if keep[i] {
                remap[i] = states.len();
                states.push(*s);
            }
        }
        let transitions = self
            .transitions
            .iter()
            .filter(|t| keep[t.from] && keep[t.to])
            .map(|t| Transition { from: remap[t.from], label: t.label, to: remap[t.to] })
            .collect();
        Self::assemble(self.base, self.a, states, transitions, true)
    }

    /// Whether any accepted string contains a pair label, i.e. whether `a`
    /// takes part in a pair other than the single-digit ones.
    pub fn has_interesting_acceptance(&self) -> bool {
        let productive = self.productive();
        self.outgoing(self.initial())
            .any(|t| matches!(t.label, Label::Pair(..)) && productive[t.to])
    }
}

impl fmt::Display for RspAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let stats = self.stats();
        let a = if self.base <= numerals::MAX_ALPHANUMERIC_BASE {
            numerals::render_digit(self.a, self.base)
        } else {
            numerals::render(&[self.a], self.base)
        };
        writeln!(f, "Automaton with base = {} and a = {}", self.base, a)?;
        writeln!(f, "  States: {}", stats.states)?;
        writeln!(f, "  Transitions: {}", stats.transitions)?;
        writeln!(f, "  Accepting: {}", stats.accepting)?;
        write!(f, "  Trimmed: {}", stats.trimmed)
    }
}
