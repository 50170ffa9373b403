//! Generate the Basilica lamination, look at a few leaves and chains, and
//! dump the whole thing as JSON.
//!
//!     cargo run --example basilica_lamination -- [depth] [out.json]

use lamin_mate::lamination::generate;
use lamin_mate::Angle;

fn main() -> lamin_mate::Result<()> {
    let mut args = std::env::args().skip(1);
    let depth: u32 = args.next().map_or(Ok(6), |s| s.parse()).expect("depth must be an integer");
    let out = args.next();

    let lam = generate(depth)?;
    println!("{} leaves through depth {depth}", lam.len());
    for d in -1..=2 {
        let leaves: Vec<String> = lam.leaves_at(d).iter().map(|l| format!("⟨{}, {}⟩", l.a, l.b)).collect();
        println!("depth {d:>2}: {}", leaves.join(" "));
    }

    for t in ["5/12", "1/6", "1/7", "1/5", "0"] {
        let t: Angle = t.parse()?;
        match lam.leaf_of(&t) {
            Some(l) => println!("{t} is an endpoint of ⟨{}, {}⟩", l.a, l.b),
            None => println!("{t} is not an endpoint"),
        }
        // endpoints sit on a leaf, so only the others have a separating chain
        if let Ok(chain) = lam.separating_chain(&t) {
            let links: Vec<String> = chain.leaves().iter().map(|l| format!("⟨{}, {}⟩", l.a, l.b)).collect();
            println!("  separated from the major leaf by {} leaves: {}", chain.len(), links.join(" "));
        }
    }

    if let Some(path) = out {
        std::fs::write(&path, lam.to_json()?)?;
        println!("wrote {path}");
    }
    Ok(())
}
