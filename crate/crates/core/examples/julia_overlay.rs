//! Leaves of the Basilica lamination drawn in the dynamical plane of f_c as
//! pairs of external rays joined along an equipotential. For c = −1 each
//! pair pinches at a point of the Basilica; move c into another limb and the
//! pairs land apart.
//!
//!     cargo run --release --example julia_overlay -- [re] [im] [out.png]

use lamin_mate::dynamics::{Complex64, RayOptions};
use lamin_mate::lamination::generate;
use lamin_mate::render::{render_dynamical_overlay, RenderConfig, Viewport};

fn main() -> lamin_mate::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let num = |i: usize, d: f64| args.get(i).map_or(d, |s| s.parse().expect("a number"));
    let c = Complex64::new(num(0, -1.0), num(1, 0.0));
    let out = args.get(2).cloned().unwrap_or_else(|| "julia.png".into());

    let cfg = RenderConfig {
        width: 900,
        height: 600,
        viewport: Viewport::new(-1.8, 1.8, -1.2, 1.2)?,
        lamination_depth: Some(3),
        leaf_height: 0.05,
        shade_wake: false,
        ray_angles: vec!["1/3".parse()?, "2/3".parse()?],
        ..RenderConfig::m1()
    };
    let img = render_dynamical_overlay(c, &cfg, &generate(3)?, &RayOptions::default())?;
    let side = img.write_png(out.as_ref())?;
    for n in &img.notes {
        println!("note: {n}");
    }
    println!("{} leaf curves, wrote {out} and {}", img.curves.len(), side.display());
    Ok(())
}
