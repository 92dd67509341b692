//! One line per acceptance criterion; exits nonzero if any criterion fails.
//! Runs without the libtest harness so the lines are never captured.

use std::process::ExitCode;
use std::time::Instant;

use ydlift_cli::suite;

fn main() -> ExitCode {
    let mut failures = Vec::new();
    for c in suite::criteria() {
        let start = Instant::now();
        let checks = c.run();
        let bad: Vec<_> = checks.iter().filter(|x| !x.passed).collect();
        let status = if bad.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status}  {} ({} checks, {:.1}s)",
            c.id,
            c.title,
            checks.len(),
            start.elapsed().as_secs_f64()
        );
        for x in &bad {
            println!("    failed: {} {}", x.name, x.witness.clone().unwrap_or_default());
        }
        if !bad.is_empty() {
            failures.push(c.id);
        }
    }
    if failures.is_empty() {
        println!("acceptance: all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failures:?}");
        ExitCode::FAILURE
    }
}
