//! Runs every reproducibility criterion and prints one line per criterion.
//! Checks are exact unless the criterion says otherwise; timing budgets are
//! part of the pass condition.

use std::process::ExitCode;

use hermlie::verify::CRITERIA;

fn main() -> ExitCode {
    let mut failed = 0;
    for c in CRITERIA {
        let r = c.run();
        let status = if r.passed { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status}  {} ({} ms / budget {} ms): {}",
            r.id, r.name, r.elapsed_ms, r.budget_ms, r.detail
        );
        if !r.passed {
            failed += 1;
        }
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
