//! The slice 𝓜₂ of quadratic rational maps `a/(z² + 2z)`, and how stable its
//! member-pixel count is when the iteration budget doubles.
//!
//!     cargo run --release --example v2_slice -- [out.png]

use std::path::PathBuf;
use std::time::Instant;

use lamin_mate::render::{render_m2, RenderConfig};

fn main() -> lamin_mate::Result<()> {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "m2.png".into()));

    let mut counts = Vec::new();
    for max_iter in [500, 1000] {
        let cfg = RenderConfig {
            max_iter,
            palette: lamin_mate::render::Palette::Ember,
            ..RenderConfig::m2()
        };
        let t = Instant::now();
        let img = render_m2(&cfg)?;
        println!("max_iter {max_iter}: {} member pixels in {:.2?}", img.member_count(), t.elapsed());
        counts.push(img.member_count() as f64);
        if max_iter == 1000 {
            img.write_png(&out)?;
            for n in &img.notes {
                println!("note: {n}");
            }
        }
    }
    println!("relative change {:.4}%", 100.0 * (counts[1] - counts[0]).abs() / counts[0]);
    println!("wrote {}", out.display());
    Ok(())
}
