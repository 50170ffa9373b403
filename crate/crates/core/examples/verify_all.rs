//! Run every verification suite and print the reports.
//!
//!     cargo run --release --example verify_all

use lamin_mate::verify::{verify, Suite, VerifyOptions};

fn main() {
    let opts = VerifyOptions::default();
    let mut ok = true;
    for suite in Suite::ALL {
        let report = verify(suite, &opts);
        println!("== {}", suite.name());
        print!("{}", report.to_text());
        ok &= report.passed();
    }
    std::process::exit(if ok { 0 } else { 1 });
}
