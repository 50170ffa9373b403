//! Parameter rays of 𝓜 and dynamic rays of the Basilica, with their landing
//! points.
//!
//!     cargo run --release --example external_rays

use lamin_mate::dynamics::{trace_dynamic_ray, trace_parameter_ray, Complex64, RayOptions};
use lamin_mate::Angle;

fn main() -> lamin_mate::Result<()> {
    let opts = RayOptions::default();

    println!("parameter rays");
    for t in ["1/3", "2/3", "1/7", "1/6", "1/4", "5/12"] {
        let t: Angle = t.parse()?;
        let r = trace_parameter_ray(&t, &opts)?;
        report(&t, r.points.len(), r.landing_estimate);
    }

    let basilica = Complex64::new(-1.0, 0.0);
    println!("dynamic rays of z² − 1");
    for t in ["1/3", "2/3", "1/6", "5/12", "1/12", "0"] {
        let t: Angle = t.parse()?;
        let r = trace_dynamic_ray(basilica, &t, &opts)?;
        report(&t, r.points.len(), r.landing_estimate);
    }
    Ok(())
}

fn report(t: &Angle, nodes: usize, landing: Option<Complex64>) {
    match landing {
        Some(z) => println!("  {t:>5}: {nodes} nodes, lands at {:+.12} {:+.12}i", z.re, z.im),
        None => println!("  {t:>5}: {nodes} nodes, no landing estimate"),
    }
}
