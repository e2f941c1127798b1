//! Runs the ten acceptance criteria, one line each, and fails if any row
//! fails or a criterion exceeds its time budget.

use std::process::ExitCode;

use liepcd::suite::{run_criterion, CRITERIA};

fn main() -> ExitCode {
    let seed = 0;
    let mut failed = 0;
    for c in CRITERIA {
        let r = run_criterion(c, seed);
        let secs = r.elapsed.as_secs_f64();
        let in_time = secs < r.limit_secs as f64;
        let ok = r.pass && in_time;
        let passed_rows = r.rows.iter().filter(|row| row.pass).count();
        println!(
            "criterion {:>2}: {}  {:<70} rows {}/{}  {:.2}s (limit {}s)",
            r.id,
            if ok { "PASS" } else { "FAIL" },
            r.title,
            passed_rows,
            r.rows.len(),
            secs,
            r.limit_secs
        );
        for row in r.rows.iter().filter(|row| !row.pass) {
            println!("    {}: expected {}, computed {}", row.claim, row.expected, row.computed);
        }
        if !in_time {
            println!("    over the time budget");
        }
        if !ok {
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
