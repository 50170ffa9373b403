//! The Mandelbrot set with the Basilica lamination embedded as parameter-ray
//! pairs and the Basilica wake tinted.
//!
//!     cargo run --release --example parameter_overlay -- [depth] [out.png]

use std::path::PathBuf;

use lamin_mate::dynamics::RayOptions;
use lamin_mate::lamination::generate;
use lamin_mate::render::{render_m1_overlay, RenderConfig};

fn main() -> lamin_mate::Result<()> {
    let mut args = std::env::args().skip(1);
    let depth: u32 = args.next().map_or(3, |s| s.parse().expect("depth"));
    let out = PathBuf::from(args.next().unwrap_or_else(|| "m1_overlay.png".into()));

    let lam = generate(depth)?;
    let cfg = RenderConfig {
        lamination_depth: Some(depth),
        ..RenderConfig::m1()
    };
    let t = std::time::Instant::now();
    let img = render_m1_overlay(&cfg, &lam, &RayOptions::default())?;
    let side = img.write_png(&out)?;
    println!("{} leaf curves, {} member pixels, {:.2?}", img.curves.len(), img.member_count(), t.elapsed());
    for c in &img.curves {
        if let [Some(p), Some(q)] = c.endpoints {
            println!("⟨{}, {}⟩ lands at {:.6} and {:.6}", c.leaf.a, c.leaf.b, p, q);
        }
    }
    for n in &img.notes {
        eprintln!("note: {n}");
    }
    println!("wrote {} and {}", out.display(), side.display());
    Ok(())
}
