//! The Basilica lamination as hyperbolic geodesics in the unit disk.
//!
//!     cargo run --example lamination_disk -- [depth] [out.svg]

use lamin_mate::lamination::generate;
use lamin_mate::render::render_lamination_disk;

fn main() -> lamin_mate::Result<()> {
    let mut args = std::env::args().skip(1);
    let depth: u32 = args.next().map_or(Ok(5), |s| s.parse()).expect("depth must be an integer");
    let out = args.next().unwrap_or_else(|| "disk.svg".into());
    let d = render_lamination_disk(&generate(depth)?, depth)?;
    std::fs::write(&out, &d.svg)?;
    println!("{} chords, wrote {out}", d.chords.len());
    Ok(())
}
