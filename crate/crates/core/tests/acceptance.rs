//! One PASS/FAIL line per reproduction criterion. Runs as a plain binary so
//! wall-clock budgets are measured without a parallel test harness.

use std::path::PathBuf;
use std::process::ExitCode;

use qdilemma::suite::{run_suite, SuiteOptions};

fn archive_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance")
}

fn main() -> ExitCode {
    let report = run_suite(&SuiteOptions::default());
    for c in &report.criteria {
        println!("{}", c.summary_line());
    }

    let dir = archive_dir();
    std::fs::create_dir_all(&dir).expect("create archive directory");
    for r in &report.discrepancy_reports {
        let path = dir.join(format!("discrepancy_{}.json", r.family));
        let json = serde_json::to_string_pretty(r).expect("serialize report");
        std::fs::write(&path, json).expect("write discrepancy report");
        println!(
            "archived {} discrepancy report (max {:.6}) to {}",
            r.family,
            r.max_deviation(),
            path.display()
        );
    }
    let json = serde_json::to_string_pretty(&report).expect("serialize suite");
    std::fs::write(dir.join("suite.json"), json).expect("write suite report");

    let passed = report.criteria.iter().filter(|c| c.passed).count();
    println!(
        "acceptance: {passed}/{} criteria passed in {:.2}s",
        report.criteria.len(),
        report.elapsed_s
    );
    if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
