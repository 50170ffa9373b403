//! One line per acceptance criterion, with the measured values behind it.
//!
//!     cargo test --release --test acceptance -- --nocapture

use lamin_mate::verify::{verify, Check, Suite, VerifyOptions};

#[test]
fn acceptance() {
    let opts = VerifyOptions::default();
    let checks: Vec<Check> = Suite::ALL
        .into_iter()
        .flat_map(|s| verify(s, &opts).checks)
        .collect();

    let mut failed = Vec::new();
    println!();
    for n in 1..=9u8 {
        let mine: Vec<&Check> = checks.iter().filter(|c| c.criterion == n).collect();
        let ok = !mine.is_empty() && mine.iter().all(|c| c.passed);
        let detail: Vec<String> = mine
            .iter()
            .map(|c| {
                let mark = if c.passed { "" } else { "FAILED " };
                format!("{mark}{}: {} ({:.2?})", c.name, c.measured, c.elapsed)
            })
            .collect();
        println!("criterion {n}: {} | {}", if ok { "pass" } else { "FAIL" }, detail.join("; "));
        if !ok {
            failed.push(n);
        }
    }
    assert!(failed.is_empty(), "criteria failing: {failed:?}");
}
