//! Acceptance checks: one line per criterion, run through the reproduction
//! suite with its built-in expected values.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use smallcover::cli::repro::{run, Expectations};

struct Criterion {
    number: u32,
    row: &'static str,
    target: Duration,
}

const fn c(number: u32, row: &'static str, target_ms: u64) -> Criterion {
    Criterion {
        number,
        row,
        target: Duration::from_millis(target_ms),
    }
}

const CRITERIA: [Criterion; 10] = [
    c(1, "rp-rings", 1_000),
    c(2, "m3-100", 1_000),
    c(3, "m3-101", 1_000),
    c(4, "m4", 5_000),
    c(5, "chain", 5_000),
    c(6, "two-factor-cases", 20_000),
    c(7, "rp-products", 1_000),
    c(8, "structural", 30_000),
    c(9, "equivariant", 1_000),
    c(10, "oracle", 10_000),
];

const SUITE_TARGET: Duration = Duration::from_secs(60);

fn main() -> ExitCode {
    let exp = Expectations::default();
    let start = Instant::now();
    let mut failed = Vec::new();
    for cr in &CRITERIA {
        let t = Instant::now();
        let rows = run(Some(cr.row), &exp);
        let elapsed = t.elapsed();
        assert_eq!(rows.len(), 1, "filter {} must select one row", cr.row);
        let row = &rows[0];
        let in_time = elapsed <= cr.target;
        let ok = row.passed && in_time;
        println!(
            "criterion {:>2} {}: {} ({} ms, target {} ms){}",
            cr.number,
            if ok { "PASS" } else { "FAIL" },
            row.claim,
            elapsed.as_millis(),
            cr.target.as_millis(),
            if in_time { "" } else { " too slow" }
        );
        if !row.passed {
            println!("    expected: {}", row.expected);
            println!("    computed: {}", row.computed);
        }
        if !ok {
            failed.push(cr.number);
        }
    }
    let total = start.elapsed();
    println!(
        "suite: {} ms, target {} ms{}",
        total.as_millis(),
        SUITE_TARGET.as_millis(),
        if total <= SUITE_TARGET { "" } else { " too slow" }
    );
    if failed.is_empty() && total <= SUITE_TARGET {
        println!("all criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("failing criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
