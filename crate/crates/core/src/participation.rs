//! Which multipliers take part in interesting pairs, and for which bases.
//!
//! For fixed `a` the bases where `a` participates are a union of residue
//! classes modulo `a² - 1` (above a threshold). The digit formulas of the carry
//! automaton all have the shape `(C·β - D) / (a² - 1)`, so integrality depends
//! only on `β mod (a² - 1)` and, once `β > a³`, the range checks depend only on
//! `C` and `D`. The generic automaton decides a whole residue class at once;
//! below the threshold the concrete automaton is consulted directly.

use std::collections::{BTreeMap, HashSet, VecDeque};

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{euler_totient, Fraction};
use crate::automaton::{solve_start, solve_step, Label};
use crate::error::{Error, Result};
use crate::language::{b_from_string, AcceptedString};
use crate::oracle::{is_rsp_pair, RspPair};

/// Whether `a` forms an interesting pair with some `b` in base `β`, i.e. the
/// automaton accepts a string containing a pair label.
///
/// Returns `false` outside `2 ≤ a < β`.
pub fn participates(a: u64, base: u64) -> bool {
    if a < 2 || a >= base {
        return false;
    }
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    for s in solve_start(a, base).expect("a < base") {
        if s.lambda == s.rho {
            return true;
        }
        if seen.insert((s.lambda, s.rho)) {
            queue.push_back((s.lambda, s.rho));
        }
    }
    while let Some((lambda, rho)) = queue.pop_front() {
        for s in solve_step(a, base, lambda, rho).expect("carries in range") {
            if s.x == s.y || s.lambda == s.rho {
                return true;
            }
            if seen.insert((s.lambda, s.rho)) {
                queue.push_back((s.lambda, s.rho));
            }
        }
    }
    false
}

/// The pair `(a, b)` in base `β = (a²-1)T + a - 1` with
/// `b = (T+1)β + aT + 1`.
pub fn formal_family_pair(a: u64, t: u64) -> Result<RspPair> {
    if a < 2 || t == 0 || (a == 2 && t <= 2) {
        return Err(Error::ExcludedFamily { a, t });
    }
    let base = (a * a - 1) * t + a - 1;
    let beta = base as u128;
    let (a128, t128) = (a as u128, t as u128);
    let b = (t128 + 1) * beta + a128 * t128 + 1;
    Ok(RspPair { a: a128, b, base })
}

/// An accepted string carried over to base `β + a² - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedPair {
    pub base: u64,
    pub labels: AcceptedString,
    pub b: Vec<u64>,
}

/// Moves an interesting pair for `β` to one for `β + a² - 1` with the same
/// number of digits, keeping every carry along the path.
pub fn lift_pair(a: u64, base: u64, s: &AcceptedString) -> Result<LiftedPair> {
    let mut labels = s.labels.iter();
    let Some(&Label::Pair(b_r, b_0)) = labels.next() else {
        return Err(Error::NothingToLift);
    };
    let start = solve_start(a, base)?
        .into_iter()
        .find(|st| st.b_r == b_r && st.b_0 == b_0)
        .ok_or(Error::NotAccepted)?;
    let (mut lambda, mut rho) = (start.lambda, start.rho);
    let mut lifted = vec![Label::Pair(b_r + rho, b_0 + a * rho)];
    let mut ended_odd = false;

    for &label in labels {
        if ended_odd {
            return Err(Error::NotAccepted);
        }
        let steps = solve_step(a, base, lambda, rho)?;
        match label {
            Label::Pair(x, y) => {
                let st = steps.iter().find(|st| st.x == x && st.y == y).ok_or(Error::NotAccepted)?;
                lifted.push(Label::Pair(x + lambda * a + st.rho, y + st.rho * a + lambda));
                (lambda, rho) = (st.lambda, st.rho);
            }
            Label::Single(z) => {
                let st = steps.iter().find(|st| st.x == z && st.y == z).ok_or(Error::NotAccepted)?;
                lifted.push(Label::Single(z + lambda * a + st.rho));
                ended_odd = true;
            }
        }
    }
    if !ended_odd && lambda != rho {
        return Err(Error::NotAccepted);
    }
    let labels = AcceptedString::new(lifted);
    let b = b_from_string(&labels);
    Ok(LiftedPair { base: base + a * a - 1, labels, b })
}

/// Whether `lo ≤ (c·β - d)/m < β - hi_offset` for every large enough `β`.
fn eventually_in_range(c: i128, d: i128, m: i128, lo: i128, hi_offset: i128) -> bool {
    let lower = c > 0 || (c == 0 && -d >= lo * m);
    let upper = c < m || (c == m && d > hi_offset * m);
    lower && upper
}

/// Carry automaton for all bases `β ≡ v (mod a² - 1)` beyond the threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericAutomaton {
    pub a: u64,
    pub residue: u64,
    pub modulus: u64,
    /// Carry states entered from the initial state.
    pub starts: Vec<(u64, u64)>,
    /// Reachable carry states in discovery order.
    pub states: Vec<(u64, u64)>,
    /// Step edges between carry states.
    pub steps: Vec<((u64, u64), (u64, u64))>,
    /// Step edges whose two new digits coincide, i.e. edges that can also
    /// end in the odd state.
    pub overlaps: Vec<((u64, u64), (u64, u64))>,
}

impl GenericAutomaton {
    pub fn is_accepting(&self, state: (u64, u64)) -> bool {
        state.0 == state.1
    }

    /// Whether some string with a pair label is accepted.
    pub fn has_accepting_path(&self) -> bool {
        self.states.iter().any(|&s| self.is_accepting(s)) || !self.overlaps.is_empty()
    }
}

/// Builds the generic automaton for `a` and residue `v`, keeping only carry
/// states reachable from the start edges.
pub fn generic_automaton(a: u64, v: u64) -> Result<GenericAutomaton> {
    if a < 2 {
        return Err(Error::DegenerateModulus(a));
    }
    let modulus = a * a - 1;
    if v >= modulus {
        return Err(Error::ResidueOutOfRange { v, modulus });
    }
    let (ai, m, vi) = (a as i128, modulus as i128, v as i128);

    let mut starts = Vec::new();
    for lambda in 0..ai {
        for rho in 0..ai {
            if (rho * vi + ai * ai - ai * lambda).rem_euclid(m) != 0 {
                continue;
            }
            // b_r = (ρβ - (aλ - a²))/m, b_0 = (aρβ - (λ - a))/m
            if eventually_in_range(rho, ai * lambda - ai * ai, m, 1, 0)
                && eventually_in_range(ai * rho, lambda - ai, m, 1, ai)
            {
                starts.push((lambda as u64, rho as u64));
            }
        }
    }

    let mut states = Vec::new();
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    for &s in &starts {
        if seen.insert(s) {
            states.push(s);
            queue.push_back(s);
        }
    }
    let mut steps = Vec::new();
    let mut overlaps = Vec::new();
    while let Some((lambda, rho)) = queue.pop_front() {
        let (lam, rh) = (lambda as i128, rho as i128);
        for lam_next in 0..ai {
            for rho_next in 0..ai {
                let (cx, dx) = (ai * lam + rho_next, ai * lam_next + rh);
                let (cy, dy) = (lam + ai * rho_next, lam_next + ai * rh);
                if (cx * vi - dx).rem_euclid(m) != 0 || (cy * vi - dy).rem_euclid(m) != 0 {
                    continue;
                }
                if !eventually_in_range(cx, dx, m, 0, 0) || !eventually_in_range(cy, dy, m, 0, 0) {
                    continue;
                }
                let next = (lam_next as u64, rho_next as u64);
                steps.push(((lambda, rho), next));
                if cx == cy && dx == dy {
                    overlaps.push(((lambda, rho), next));
                }
                if seen.insert(next) {
                    states.push(next);
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(GenericAutomaton { a, residue: v, modulus, starts, states, steps, overlaps })
}

/// Residue classes of bases for which `a` participates, with the smallest
/// participating base in each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParticipationProfile {
    pub a: u64,
    pub modulus: u64,
    pub residues: Vec<u64>,
    pub min_base: BTreeMap<u64, u64>,
    /// Bases at or above this are decided by the generic automaton alone.
    pub threshold: u64,
}

impl ParticipationProfile {
    pub fn omega(&self) -> Fraction {
        Fraction::new(self.residues.len() as u64, self.modulus)
    }

    /// Whether `a` participates for `base`, answered from the profile.
    pub fn predicts(&self, base: u64) -> bool {
        let v = base % self.modulus;
        self.min_base.get(&v).is_some_and(|&first| base >= first)
    }
}

pub fn threshold(a: u64) -> u64 {
    a * a * a + 1
}

pub fn participation_residues(a: u64) -> Result<ParticipationProfile> {
    if a < 2 {
        return Err(Error::DegenerateModulus(a));
    }
    let modulus = a * a - 1;
    let threshold = threshold(a);
    let mut residues = Vec::new();
    let mut min_base = BTreeMap::new();
    for v in 0..modulus {
        if !generic_automaton(a, v)?.has_accepting_path() {
            continue;
        }
        residues.push(v);
        // Smallest β > a in the class.
        let mut beta = v + modulus * ((a + 1).saturating_sub(v)).div_ceil(modulus);
        while beta < threshold && !participates(a, beta) {
            beta += modulus;
        }
        min_base.insert(v, beta);
    }
    Ok(ParticipationProfile { a, modulus, residues, min_base, threshold })
}

/// Natural density `ℓ / (a² - 1)` of the bases for which `a` participates,
/// kept unreduced.
pub fn omega(a: u64) -> Result<Fraction> {
    Ok(participation_residues(a)?.omega())
}

/// Multipliers `2 ≤ a < β` that participate. Only `a` with
/// `gcd(a - 1, β - 1) = 1` are tried.
pub fn participating_multipliers(base: u64) -> Vec<u64> {
    (2..base)
        .filter(|&a| (a - 1).gcd(&(base - 1)) == 1 && participates(a, base))
        .collect()
}

/// Multipliers `1 ≤ a < β` with any pair at all, the two uninteresting
/// families included.
pub fn pair_multipliers(base: u64) -> Vec<u64> {
    (2..base)
        .filter(|&a| {
            (a - 1).gcd(&(base - 1)) == 1
                && (((a == 2 || a == base - 1) && is_rsp_pair(a as u128, a as u128, base)) || participates(a, base))
        })
        .collect()
}

/// `|{1 ≤ a < β : (a, b) is a pair for some b}| / φ(β - 1)`.
pub fn r_ratio(base: u64) -> Fraction {
    let count = pair_multipliers(base).len() as u64;
    Fraction::new(count, euler_totient(base.saturating_sub(1)).max(1))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioReport {
    pub ratios: Vec<(u64, Fraction)>,
    pub mean: f64,
    /// Sample variance (divisor `n - 1`).
    pub variance: f64,
}

/// `r(β)` for every `2 ≤ β ≤ max_base`, with sample mean and variance.
pub fn ratio_report(max_base: u64) -> RatioReport {
    let ratios: Vec<(u64, Fraction)> = (2..=max_base)
        .into_par_iter()
        .map(|base| (base, r_ratio(base)))
        .collect();
    let values: Vec<f64> = ratios.iter().map(|(_, r)| r.to_f64()).collect();
    let n = values.len() as f64;
    let mean = if values.is_empty() { 0.0 } else { values.iter().sum::<f64>() / n };
    let variance = if values.len() < 2 {
        0.0
    } else {
        values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)
    };
    RatioReport { ratios, mean, variance }
}

/// Whether some `a` participates for `base`, trying `a` in increasing order.
pub fn has_interesting_pair(base: u64) -> bool {
    (2..base).any(|a| (a - 1).gcd(&(base - 1)) == 1 && participates(a, base))
}

/// Bases `2 ≤ β ≤ max_base` with no interesting pair.
pub fn conjecture_scan(max_base: u64) -> Vec<u64> {
    (2..=max_base)
        .into_par_iter()
        .filter(|&base| !has_interesting_pair(base))
        .collect()
}
