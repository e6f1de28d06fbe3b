use std::process::ExitCode;

use kquiver::acceptance::{run, CRITERIA};

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for (id, _, _) in CRITERIA {
        let outcome = run(id);
        println!("{outcome}");
        if !outcome.passed() {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", CRITERIA.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
