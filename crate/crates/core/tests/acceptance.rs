//! Acceptance run: one pass/fail line per criterion. Uses a plain `main`
//! so the report is printed even when everything passes.

use std::process::ExitCode;

use valtree::testkit::{suites, DEFAULT_SEED};

fn main() -> ExitCode {
    println!("seed {DEFAULT_SEED:#x}");
    let results = suites::run_all(DEFAULT_SEED);
    for r in &results {
        println!("{}", r.line());
    }
    let failed = results.iter().filter(|r| !r.pass).count();
    println!("acceptance: {} passed, {failed} failed", results.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
