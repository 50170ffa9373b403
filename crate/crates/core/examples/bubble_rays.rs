//! Rays in bubbles for g_a(z) = a/(z² + 2z): the combinatorial plan read off
//! the Basilica lamination, and the traced ray.
//!
//!     cargo run --release --example bubble_rays -- [re] [im]

use lamin_mate::dynamics::{plan_bubble_ray, trace_bubble_ray, Complex64, RayOptions};
use lamin_mate::lamination::generate;
use lamin_mate::Angle;

fn main() -> lamin_mate::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<f64>().expect("a number"));
    let a = Complex64::new(args.next().unwrap_or(1.0), args.next().unwrap_or(0.0));
    let lam = generate(10)?;
    let opts = RayOptions::default();

    for t in ["1/3", "2/3", "5/12", "1/6", "0", "1/5"] {
        let t: Angle = t.parse()?;
        let plan = plan_bubble_ray(&t, &lam)?;
        println!("angle {t}: {} bubbles planned", plan.steps.len());
        for s in plan.steps.iter().take(4) {
            let show = |x: &Option<Angle>| x.as_ref().map_or("-".into(), |x| x.to_string());
            println!(
                "    generation {}: enter {}, leave {}",
                s.generation,
                show(&s.entry_angle),
                show(&s.exit_angle)
            );
        }
        match trace_bubble_ray(a, &t, &lam, 5, &opts) {
            Ok(ray) => match ray.trace.landing_estimate {
                Some(z) => println!("  lands at {:+.12} {:+.12}i", z.re, z.im),
                None => println!("  traced {} bubbles", ray.centers.len()),
            },
            Err(e) => println!("  not traced: {e}"),
        }
    }
    Ok(())
}
