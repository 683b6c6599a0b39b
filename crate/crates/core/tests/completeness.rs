//! Automaton enumeration against the oracle over whole bases.

use std::collections::BTreeSet;

use revpair::language::all_pairs;
use revpair::numerals;
use revpair::oracle::search_pairs;

fn compare(base: u64, digits: u32) {
    let from_dfa: BTreeSet<(u128, u128)> = all_pairs(base, digits as usize)
        .unwrap()
        .iter()
        .map(|p| (p.a as u128, numerals::from_digits(&p.b, base).unwrap()))
        .collect();
    let limit = (base as u128).pow(digits) - 1;
    let from_oracle: BTreeSet<(u128, u128)> = search_pairs(base, limit).iter().map(|p| (p.a, p.b)).collect();
    assert_eq!(from_dfa, from_oracle, "base {base}, {digits} digits");
}

#[test]
fn every_base_to_four_digits() {
    for base in 2..=40 {
        compare(base, 4);
    }
}

#[test]
fn small_bases_to_six_digits() {
    for base in 2..=14 {
        compare(base, 6);
    }
}

#[test]
fn selected_bases_to_seven_digits() {
    for base in [10, 16, 18] {
        compare(base, 7);
    }
}
