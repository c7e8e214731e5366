//! Acceptance run: every criterion in exact arithmetic, one PASS/FAIL line
//! each. Runs without the libtest harness so the lines always reach the
//! console; the process fails if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use qcert::suites::{self, SuiteOutcome};

fn main() -> ExitCode {
    let runs: [(u8, fn() -> SuiteOutcome); 8] = [
        (1, suites::criterion_1),
        (2, suites::criterion_2),
        (3, suites::criterion_3),
        (4, suites::criterion_4),
        (5, suites::criterion_5),
        (6, || suites::criterion_6(true)),
        (7, suites::criterion_7),
        (8, suites::criterion_8),
    ];
    let total = Instant::now();
    let mut failed = 0;
    for (c, run) in runs {
        let start = Instant::now();
        let outcome = run();
        assert_eq!(outcome.criterion, c);
        println!("{} [{:.1}s]", outcome.summary_line(), start.elapsed().as_secs_f64());
        if !outcome.passed() {
            failed += 1;
            for r in outcome.failures().take(10) {
                println!("    {}", r.to_json_line());
            }
        }
    }
    println!("acceptance: {} of 8 criteria passed in {:.1}s", 8 - failed, total.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
