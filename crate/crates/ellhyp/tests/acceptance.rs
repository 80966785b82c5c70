//! Acceptance suite: one pass/fail line per criterion.
//!
//! `ACCEPTANCE_SEED` overrides the seed and `ACCEPTANCE_ONLY=3,5` restricts the criteria.

use std::process::ExitCode;

use ellhyp::battery::{run_criterion, CRITERIA};

fn main() -> ExitCode {
    let seed = std::env::var("ACCEPTANCE_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20_240_601u64);
    let only: Option<Vec<u8>> =
        std::env::var("ACCEPTANCE_ONLY").ok().map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let mut failed = 0;
    for (number, _, _) in CRITERIA {
        if only.as_ref().is_some_and(|o| !o.contains(&number)) {
            continue;
        }
        let out = run_criterion(number, seed);
        let verdict = if out.passed { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {verdict} [{:.1} s] {}: {}", out.number, out.seconds, out.title, out.detail);
        if !out.passed {
            failed += 1;
        }
    }
    println!("acceptance: {failed} criteria failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
