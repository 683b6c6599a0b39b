//! Brute-force verification and search straight from the definition.
//!
//! Nothing here consults the automaton: a pair `(a, b)` qualifies when `a + b`
//! and `a·b` have the same number of base-β digits and one digit string is
//! the reverse of the other.

use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use crate::numerals;

/// A reversed sum-product pair `a ≤ b` for a base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RspPair {
    pub a: u128,
    pub b: u128,
    pub base: u64,
}

impl RspPair {
    /// Interesting pairs are everything except `(2, 2)` and `(β-1, β-1)`.
    pub fn is_interesting(&self) -> bool {
        let top = self.base as u128 - 1;
        !((self.a == 2 && self.b == 2) || (self.a == top && self.b == top))
    }

    pub fn render(&self) -> String {
        // Both components are < 2^128 and the base is valid by construction.
        let a = numerals::render_value(self.a, self.base).expect("valid base");
        let b = numerals::render_value(self.b, self.base).expect("valid base");
        format!("({a},{b})")
    }
}

fn reverse_u64(mut n: u64, base: u64) -> u64 {
    let mut rev = 0u64;
    while n > 0 {
        rev = rev * base + n % base;
        n /= base;
    }
    rev
}

fn reverse_u128(mut n: u128, base: u128) -> Option<u128> {
    let mut rev = 0u128;
    while n > 0 {
        rev = rev.checked_mul(base)?.checked_add(n % base)?;
        n /= base;
    }
    Some(rev)
}

/// Whether `{a, b}` is a reversed sum-product pair for `base`. Order of the
/// arguments does not matter.
///
/// # Panics
///
/// Panics if `base < 2` or if `a·b` overflows `u128`.
pub fn is_rsp_pair(a: u128, b: u128, base: u64) -> bool {
    assert!(base >= 2, "base must be at least 2");
    if a == 0 || b == 0 {
        return false;
    }
    let sum = a.checked_add(b).expect("a + b overflows u128");
    let product = a.checked_mul(b).expect("a * b overflows u128");
    // A trailing zero in the sum would become a leading zero of the product.
    if sum.is_multiple_of(base as u128) {
        return false;
    }
    if let (Ok(sum), Ok(product)) = (u64::try_from(sum), u64::try_from(product)) {
        if sum.checked_mul(base).is_some() {
            return reverse_u64(sum, base) == product;
        }
    }
    reverse_u128(sum, base as u128) == Some(product)
}

/// All pairs with `a < base` and `a ≤ b ≤ max_b`, ordered by `(b, a)`.
pub fn search_pairs(base: u64, max_b: u128) -> Vec<RspPair> {
    search_pairs_in(base, max_b, 1..=(base as u128).saturating_sub(1))
}

/// Like [`search_pairs`] but scanning an explicit range of `a`, which may
/// extend past the base.
pub fn search_pairs_in(base: u64, max_b: u128, a_range: RangeInclusive<u128>) -> Vec<RspPair> {
    assert!(base >= 2, "base must be at least 2");
    let (lo, hi) = (*a_range.start().max(&1), *a_range.end());
    if lo > hi {
        return Vec::new();
    }
    let mut pairs: Vec<RspPair> = (lo..=hi)
        .into_par_iter()
        .flat_map_iter(|a| pairs_for_a(a, base, max_b))
        .collect();
    pairs.sort_by_key(|p| (p.b, p.a));
    pairs
}

/// Pairs `(a, b)` with `a ≤ b ≤ max_b` for one fixed `a`, ordered by `b`.
///
/// The scan is organised by the digit count `d` and leading digit `L` of
/// `a + b`. Inside such a block the product must also have `d` digits, which
/// caps `b`, and its last digit must be `L`, which fixes `b mod β` to a few
/// residues. Every surviving candidate is checked with [`is_rsp_pair`].
pub fn pairs_for_a(a: u128, base: u64, max_b: u128) -> Vec<RspPair> {
    let beta = base as u128;
    let mut found = Vec::new();
    if a == 0 || a > max_b {
        return found;
    }
    // residues[L] = all r in [0, β) with a·r ≡ L (mod β)
    let mut residues: Vec<Vec<u128>> = vec![Vec::new(); base as usize];
    for r in 0..beta {
        residues[((a % beta) * r % beta) as usize].push(r);
    }

    let mut block_lo: u128 = 1; // β^(d-1)
    while let Some(block_hi) = block_lo.checked_mul(beta) {
        // Sums in [block_lo, block_hi) have exactly d digits.
        if block_lo > a && block_lo - a > max_b {
            break;
        }
        let b_cap = max_b.min((block_hi - 1) / a);
        for lead in 1..beta {
            let s_lo = lead * block_lo;
            let s_hi = (lead + 1) * block_lo - 1;
            let b_lo = s_lo.saturating_sub(a).max(a);
            let b_hi = match s_hi.checked_sub(a) {
                Some(v) => v.min(b_cap),
                None => continue,
            };
            if b_lo > b_hi {
                continue;
            }
            for &r in &residues[lead as usize] {
                let offset = (r + beta - b_lo % beta) % beta;
                let mut b = b_lo + offset;
                while b <= b_hi {
                    if is_rsp_pair(a, b, base) {
                        found.push(RspPair { a, b, base });
                    }
                    b += beta;
                }
            }
        }
        block_lo = block_hi;
    }
    found.sort_by_key(|p| p.b);
    found
}

/// The single-digit pairs: `(2, 2)` when `β ≥ 5` and `(β-1, β-1)` when `β ≥ 3`,
/// ordered by `b`.
pub fn small_b_pairs(base: u64) -> Vec<RspPair> {
    let mut pairs = Vec::new();
    if base >= 5 {
        pairs.push(RspPair { a: 2, b: 2, base });
    }
    if base >= 3 {
        let top = base as u128 - 1;
        pairs.push(RspPair { a: top, b: top, base });
    }
    pairs
}
