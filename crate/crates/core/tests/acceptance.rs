//! Acceptance suite. Each criterion prints one PASS/FAIL line; the process
//! exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_integer::Integer;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use revpair::arith::Fraction;
use revpair::automaton::{solve_step, Label, RspAutomaton, StateKind};
use revpair::language::{
    accepted_strings, accepted_words, all_pairs, b_digits, b_values, regex_language, to_regex, EnumeratedPair,
};
use revpair::numerals;
use revpair::oracle::{is_rsp_pair, search_pairs, search_pairs_in};
use revpair::participation::{conjecture_scan, formal_family_pair, lift_pair, omega, ratio_report};

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn check(ok: bool, detail: impl Into<String>) -> Self {
        Self { ok, detail: detail.into() }
    }
}

fn within(limit: Duration, started: Instant, mut outcome: Outcome) -> Outcome {
    let elapsed = started.elapsed();
    if elapsed > limit {
        outcome.ok = false;
        outcome.detail = format!("{}; took {elapsed:.2?}, limit {limit:?}", outcome.detail);
    } else {
        outcome.detail = format!("{} [{elapsed:.2?}]", outcome.detail);
    }
    outcome
}

fn base_ten_completeness() -> Outcome {
    let started = Instant::now();
    let mut from_dfa = BTreeSet::new();
    for a in 1..10u64 {
        let dfa = RspAutomaton::build(a, 10).unwrap();
        for b in b_digits(&dfa, 6, true) {
            from_dfa.insert((a as u128, numerals::from_digits(&b, 10).unwrap()));
        }
    }
    let from_oracle: BTreeSet<_> = search_pairs(10, 1_000_000).iter().map(|p| (p.a, p.b)).collect();
    let expected: BTreeSet<(u128, u128)> =
        [(2, 2), (9, 9), (3, 24), (2, 47), (2, 497), (2, 4997), (2, 49997), (2, 499997)].into();
    let ok = from_dfa == expected && from_oracle == expected;
    within(
        Duration::from_secs(5),
        started,
        Outcome::check(ok, format!("automata {} pairs, oracle {} pairs", from_dfa.len(), from_oracle.len())),
    )
}

fn base_sixteen_and_eighteen() -> Outcome {
    let started = Instant::now();
    let render = |base: u64| -> Vec<String> {
        all_pairs(base, 19).unwrap().iter().map(EnumeratedPair::render).collect()
    };
    let sixteen = render(16);
    let mut expected16 = vec!["(2,2)".to_string()];
    expected16.extend((0..18).map(|k| format!("(2,6{}B)", "F".repeat(k))));
    expected16.push("(F,F)".into());
    let printed16 = ["(2,6B)", "(2,6FB)", "(2,6FFB)", "(2,6FFFB)"];

    let eighteen = render(18);
    let expected18 = [
        "(2,2)",
        "(3,37)",
        "(4,25)",
        "(7,2483D8)",
        "(7,2483D9E483D8)",
        "(7,2483D9E483D9E483D8)",
        "(B,1961DC5)",
        "(B,1961DBG461DC5)",
        "(B,1961DBG461DBG461DC5)",
        "(H,H)",
    ];
    let ok = sixteen == expected16
        && printed16.iter().all(|p| sixteen.iter().any(|s| s == p))
        && eighteen == expected18;
    within(
        Duration::from_secs(5),
        started,
        Outcome::check(ok, format!("base 16: {} pairs, base 18: {:?}", sixteen.len(), eighteen)),
    )
}

fn automaton_stats() -> Outcome {
    let started = Instant::now();
    let stats = |a, base| {
        let s = RspAutomaton::build(a, base).unwrap().stats();
        (s.states, s.transitions, s.accepting)
    };
    let trimmed = RspAutomaton::build(31, 150).unwrap().trim().stats();
    let nonempty: Vec<u64> = (1..27)
        .filter(|&a| RspAutomaton::build(a, 27).unwrap().stats().accepting > 0)
        .collect();
    let got = (
        stats(7, 18),
        stats(10, 27),
        stats(31, 150),
        (trimmed.states, trimmed.transitions, trimmed.accepting),
        nonempty.clone(),
    );
    let ok = got == ((7, 7, 2), (12, 15, 1), (13, 13, 0), (1, 0, 0), vec![2, 6, 10, 26]);
    within(Duration::from_secs(5), started, Outcome::check(ok, format!("{got:?}")))
}

fn omega_table() -> Outcome {
    let started = Instant::now();
    let expected = [(1, 3), (1, 8), (4, 15), (3, 24), (13, 35), (4, 48), (22, 63), (12, 80), (26, 99)];
    let got: Vec<Fraction> = (2..=10).map(|a| omega(a).unwrap()).collect();
    let ok = got.iter().zip(expected).all(|(f, (n, d))| *f == Fraction::new(n, d));
    let shown: Vec<String> = got.iter().map(Fraction::to_string).collect();
    within(Duration::from_secs(60), started, Outcome::check(ok, shown.join(" ")))
}

fn conjecture() -> Outcome {
    let started = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let exceptions = pool.install(|| conjecture_scan(512));
    let ok = exceptions == [2, 3, 4, 5, 6, 7, 8, 9, 12, 15, 21];
    within(Duration::from_secs(600), started, Outcome::check(ok, format!("exceptions {exceptions:?}")))
}

fn ratio_statistics() -> Outcome {
    let started = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let report = pool.install(|| ratio_report(512));
    let ok = report.ratios.first().map(|r| r.0) == Some(2)
        && report.ratios.len() == 511
        && (report.mean - 0.1356).abs() <= 0.001
        && (report.variance - 0.0097).abs() <= 0.0005;
    within(
        Duration::from_secs(600),
        started,
        Outcome::check(ok, format!("mean {:.5}, variance {:.5}", report.mean, report.variance)),
    )
}

fn oracle_equivalence() -> Outcome {
    let started = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_2024);
    let mut mismatches = Vec::new();
    let mut total_pairs = 0;
    for _ in 0..200 {
        let base = rng.gen_range(2..=40u64);
        let a = rng.gen_range(1..base);
        let dfa = RspAutomaton::build(a, base).unwrap();
        let from_dfa: Vec<u128> = b_digits(&dfa, 5, true)
            .iter()
            .map(|d| numerals::from_digits(d, base).unwrap())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let limit = (base as u128).pow(5) - 1;
        let from_oracle: Vec<u128> =
            search_pairs_in(base, limit, a as u128..=a as u128).iter().map(|p| p.b).collect();
        total_pairs += from_oracle.len();
        if from_dfa != from_oracle {
            mismatches.push((base, a));
        }
    }
    within(
        Duration::from_secs(60),
        started,
        Outcome::check(
            mismatches.is_empty(),
            format!("200 samples, {total_pairs} pairs, mismatches {mismatches:?}"),
        ),
    )
}

/// Violations of the structural invariants for one `(β, a)`.
fn structural_violations(base: u64, a: u64) -> Vec<String> {
    let mut bad = Vec::new();
    let dfa = RspAutomaton::build(a, base).unwrap();
    for id in 0..dfa.states().len() {
        let labels: Vec<Label> = dfa.outgoing(id).map(|t| t.label).collect();
        let distinct: BTreeSet<_> = labels.iter().collect();
        if distinct.len() != labels.len() {
            bad.push(format!("nondeterministic state {id}"));
        }
    }
    for s in dfa.states() {
        if let StateKind::Carry { lambda, rho } = s.kind {
            if lambda >= a || rho >= a {
                bad.push(format!("carry ({lambda},{rho}) out of range"));
            }
            for st in solve_step(a, base, lambda, rho).unwrap() {
                if st.x == st.y && !(st.lambda == rho && lambda == st.rho) {
                    bad.push(format!("overlap from ({lambda},{rho}) to ({},{})", st.lambda, st.rho));
                }
            }
        }
    }
    for b in b_digits(&dfa, 6, true) {
        let value = numerals::from_digits(&b, base).unwrap();
        if value > base as u128 && *b.last().unwrap() >= base - a {
            bad.push(format!("last digit of {b:?} not below β - a"));
        }
        if value > base as u128
            && numerals::digit_count(value, base) != numerals::digit_count(value + a as u128, base)
        {
            bad.push(format!("{b:?} and a + b differ in length"));
        }
        if (a - 1).gcd(&(base - 1)) != 1 {
            bad.push(format!("gcd fails for ({a},{b:?})"));
        }
        if !is_rsp_pair(a as u128, value, base) {
            bad.push(format!("({a},{b:?}) is not a pair"));
        }
    }
    bad
}

fn structural_invariants() -> Outcome {
    let mut runner = TestRunner::new(Config { cases: 512, failure_persistence: None, ..Config::default() });
    let strategy = (2u64..=40).prop_flat_map(|base| (Just(base), 1..base));
    let sampled = runner.run(&strategy, |(base, a)| {
        let bad = structural_violations(base, a);
        prop_assert!(bad.is_empty(), "base {} a {}: {:?}", base, a, bad);
        Ok(())
    });

    let mut violations: Vec<String> = Vec::new();
    if let Err(e) = sampled {
        violations.push(e.to_string());
    }
    for base in 2..=40u64 {
        for a in 1..base {
            violations.extend(structural_violations(base, a).into_iter().map(|v| format!("β={base} a={a}: {v}")));
        }
        let beta = base as u128;
        let widened = search_pairs_in(base, beta * (beta + 1) - 1, beta + 1..=2 * beta - 1);
        violations.extend(widened.iter().map(|p| format!("β={base}: large-a pair {}", p.render())));
    }
    Outcome::check(
        violations.is_empty(),
        format!(
            "512 sampled + all (β,a) with β ≤ 40, {} violations{}",
            violations.len(),
            violations.first().map(|v| format!(", first: {v}")).unwrap_or_default()
        ),
    )
}

fn regex_equivalence() -> Outcome {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for base in 2..=40u64 {
        for a in 1..base {
            let dfa = RspAutomaton::build(a, base).unwrap();
            if dfa.stats().accepting == 0 {
                continue;
            }
            checked += 1;
            let words: BTreeSet<Vec<Label>> = accepted_words(&dfa, 12).into_iter().collect();
            if regex_language(&to_regex(&dfa), 12) != words {
                mismatches.push((base, a));
            }
        }
    }
    Outcome::check(mismatches.is_empty(), format!("{checked} automata, mismatches {mismatches:?}"))
}

fn lift_and_family() -> Outcome {
    let mut failures = Vec::new();
    let mut lifted_count = 0;
    for a in 1..10u64 {
        let dfa = RspAutomaton::build(a, 10).unwrap();
        for s in accepted_strings(&dfa, 12).iter().filter(|s| s.has_pair()) {
            let (mut base, mut labels) = (10, s.clone());
            for _ in 0..3 {
                let lifted = lift_pair(a, base, &labels).unwrap();
                let b = numerals::from_digits(&lifted.b, lifted.base).unwrap();
                if !is_rsp_pair(a as u128, b, lifted.base) {
                    failures.push(format!("a={a} lifted to base {} gives b={:?}", lifted.base, lifted.b));
                }
                lifted_count += 1;
                (base, labels) = (lifted.base, lifted.labels);
            }
        }
    }
    let three = lift_pair(3, 10, &accepted_strings(&RspAutomaton::build(3, 10).unwrap(), 2)[0]).unwrap();
    if (three.base, numerals::render(&three.b, three.base).as_str()) != (18, "37") {
        failures.push(format!("(3,24) lifted to {:?}", three.b));
    }
    let eighteen = b_values(&RspAutomaton::build(3, 18).unwrap(), 6);
    if eighteen != ["37"] {
        failures.push(format!("base 18, a = 3 gives {eighteen:?}"));
    }

    let mut family = 0;
    for a in 2..=20u64 {
        for t in 1..=50u64 {
            match formal_family_pair(a, t) {
                Ok(p) => {
                    family += 1;
                    if !is_rsp_pair(p.a, p.b, p.base) {
                        failures.push(format!("family a={a} T={t}"));
                    }
                }
                Err(_) if a == 2 && t <= 2 => {}
                Err(e) => failures.push(format!("family a={a} T={t}: {e}")),
            }
        }
    }
    Outcome::check(
        failures.is_empty(),
        format!("{lifted_count} lifts, {family} family pairs, failures {failures:?}"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("base-10 completeness", base_ten_completeness),
        ("base-16 and base-18 lists", base_sixteen_and_eighteen),
        ("automaton stats", automaton_stats),
        ("omega table", omega_table),
        ("conjecture scan to 512", conjecture),
        ("r(β) statistics", ratio_statistics),
        ("oracle equivalence", oracle_equivalence),
        ("structural invariants", structural_invariants),
        ("regex equivalence", regex_equivalence),
        ("lift and formal family", lift_and_family),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = run();
        let verdict = if outcome.ok { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict}: {name}: {}", i + 1, outcome.detail);
        failed += usize::from(!outcome.ok);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
