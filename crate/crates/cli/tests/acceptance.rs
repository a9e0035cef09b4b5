//! Runs the reproduction suite and prints one verdict per acceptance
//! criterion. Criteria whose published claim disagrees with a direct
//! computation are reported as FAIL without failing the target.

use std::process::ExitCode;
use std::time::Duration;

use quadperm_cli::{run_checks, CheckResult, Settings, Status, CRITERIA};

/// Criteria that fail for every faithful implementation, with the claim
/// that breaks them.
const KNOWN_UNATTAINABLE: &[(u8, &str)] = &[
    (3, "the closed form for Pi1(r,l,a) sums to 4g-1; the corner walk gives {a-2, 4k+4-a, 4(g-k)-6}"),
    (5, "the all-ones A1 suspensions split into two SL(2,Z) orbits of sizes 10 and 30"),
    (7, "the all-ones suspension of the second Q(12) representative has three vertical cylinders"),
];

fn main() -> ExitCode {
    let results = run_checks(None, &Settings::default()).expect("the full suite is always selectable");
    let mut unexpected = Vec::new();
    for criterion in CRITERIA {
        let checks: Vec<&CheckResult> = results.iter().filter(|r| r.criterion == criterion.number).collect();
        let elapsed: Duration = checks.iter().map(|c| c.elapsed).sum();
        let failing: Vec<&str> =
            checks.iter().filter(|c| c.status != Status::Pass).map(|c| c.check_id.as_str()).collect();
        let in_time = elapsed <= criterion.time_limit;
        let pass = failing.is_empty() && in_time && !checks.is_empty();
        let known = KNOWN_UNATTAINABLE.iter().find(|(n, _)| *n == criterion.number);
        println!(
            "criterion {:>2} {} {:<46} {:>8.2} s / {} s",
            criterion.number,
            if pass { "PASS" } else { "FAIL" },
            criterion.title,
            elapsed.as_secs_f64(),
            criterion.time_limit.as_secs()
        );
        if !pass {
            if !failing.is_empty() {
                println!("             failing checks: {}", failing.join(", "));
            }
            if !in_time {
                println!("             over the time limit");
            }
            match known {
                Some((_, reason)) => println!("             known unattainable: {reason}"),
                None => unexpected.push(criterion.number),
            }
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures in criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
