//! Acceptance criteria, checked against the embedded expected values at
//! exact equality. Prints one PASS/FAIL line per criterion, followed by the
//! failing checks, and exits nonzero if any criterion fails.

use std::process::ExitCode;

use veldkamp_core::report::verify::{Verifier, CRITERIA};
use veldkamp_core::report::ExpectedFixture;
use veldkamp_core::Context;

const TITLES: [&str; CRITERIA as usize] = [
    "structure counts",
    "hyperplane census",
    "GQ(2,2) hyperplane census",
    "hyperplane types and stabilizers",
    "group order and conjugacy classes",
    "fixed lines per class and grand total",
    "orbit enumeration and Burnside counts",
    "core profiles against expected rows",
    "property suites",
    "footnote discriminators",
];

fn main() -> ExitCode {
    let ctx = Context::build();
    let fixture = ExpectedFixture::embedded().expect("embedded fixture parses");
    let verifier = Verifier::new(&ctx, &fixture);
    let mut failed = 0;
    let mut details = Vec::new();
    for n in 1..=CRITERIA {
        let checks = verifier.criterion(n);
        let bad: Vec<_> = checks.iter().filter(|c| !c.passed).collect();
        let status = if bad.is_empty() && !checks.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        println!(
            "{status} criterion {n:>2}: {} ({} of {} checks)",
            TITLES[n as usize - 1],
            checks.len() - bad.len(),
            checks.len()
        );
        if !bad.is_empty() {
            failed += 1;
            for c in bad {
                details.push(format!("  [{n}] {}: expected {}, got {}", c.name, c.expected, c.actual));
            }
        }
    }
    if !details.is_empty() {
        println!("\nfailing checks:");
        for d in &details {
            println!("{d}");
        }
    }
    println!("\n{} of {CRITERIA} criteria passed", CRITERIA as usize - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
