//! Which copies of 𝓜 outside the Basilica wake stay bounded when mated with
//! the Basilica: Lavaurs pairs up to a period, their renormalization strips,
//! and the doubling exponents that witness unboundedness.
//!
//!     cargo run --example boundedness_table -- [max_period] [out.csv]

use lamin_mate::combinat::{boundedness_table, strip_angles, write_boundedness_csv, WakePair};

fn main() -> lamin_mate::Result<()> {
    let mut args = std::env::args().skip(1);
    let max_period: u32 = args.next().map_or(Ok(6), |s| s.parse()).expect("period must be an integer");
    let out = args.next();

    let rows = boundedness_table(max_period)?;
    let show = |w: Option<u32>| w.map_or("none".to_string(), |n| format!("n={n}"));
    println!("{:>6} {:>10} {:>10} {:>6} {:>6}  strip", "period", "phi1", "phi2", "phi1", "phi2");
    for r in &rows {
        let s = strip_angles(&WakePair::new(r.phi1.clone(), r.phi2.clone())?)?;
        println!(
            "{:>6} {:>10} {:>10} {:>6} {:>6}  ({}, {}) ({}, {})",
            r.period,
            r.phi1.to_string(),
            r.phi2.to_string(),
            show(r.witness_phi1),
            show(r.witness_phi2),
            s.phi1,
            s.psi1,
            s.psi2,
            s.phi2
        );
    }
    let bounded = rows.iter().filter(|r| r.witness_phi1.is_none() || r.witness_phi2.is_none()).count();
    println!("{} pairs, {bounded} with at least one side bounded", rows.len());

    if let Some(path) = out {
        write_boundedness_csv(&rows, std::fs::File::create(&path)?)?;
        println!("wrote {path}");
    }
    Ok(())
}
