//! Kept in its own test binary so the suite's runtime budgets are measured
//! without other tests competing for the CPU.

use std::process::Command;

use serde_json::Value;

#[test]
fn verify_paper_passes_with_one_record_per_criterion() {
    let o = Command::new(env!("CARGO_BIN_EXE_qdilemma"))
        .args(["verify-paper", "--json"])
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stdout));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 10);
    assert!(results.iter().all(|r| r["passed"] == true));
    assert_eq!(v["discrepancy_reports"].as_array().unwrap().len(), 2);
}
