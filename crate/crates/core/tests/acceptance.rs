//! One PASS/FAIL line per criterion; exits nonzero if any fails.

use std::process::ExitCode;

use qhforge::verify;

fn main() -> ExitCode {
    let results = verify::run_all();
    for r in &results {
        println!("{}", r.line());
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("acceptance: {} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
