//! The lamination drawn in the unit disk, leaves as hyperbolic geodesics.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::lamination::{Lamination, Leaf};

const SIZE: f64 = 800.0;
const MARGIN: f64 = 20.0;

#[derive(Clone, Debug, PartialEq)]
pub struct DiskDrawing {
    pub svg: String,
    /// The leaves drawn, outermost depth first.
    pub chords: Vec<Leaf>,
}

fn screen(angle: f64) -> (f64, f64) {
    let r = SIZE / 2.0 - MARGIN;
    let c = SIZE / 2.0;
    (c + r * (2.0 * PI * angle).cos(), c - r * (2.0 * PI * angle).sin())
}

fn stroke(depth: i32) -> f64 {
    2.4 * 0.8f64.powi(depth + 1)
}

fn path(leaf: &Leaf) -> String {
    let (x0, y0) = screen(leaf.a.to_f64());
    let (x1, y1) = screen(leaf.b.to_f64());
    let delta = leaf.arc_length().to_f64();
    if (delta - 0.5).abs() < 1e-12 {
        return format!("M {x0:.3} {y0:.3} L {x1:.3} {y1:.3}");
    }
    let r = (PI * delta).tan() * (SIZE / 2.0 - MARGIN);
    // a → b is counterclockwise on the circle, which is clockwise on screen,
    // and the geodesic bends the other way
    format!("M {x0:.3} {y0:.3} A {r:.3} {r:.3} 0 0 0 {x1:.3} {y1:.3}")
}

/// SVG of the unit circle and every leaf of depth ≤ `depth` (the major leaf
/// has depth −1), thinner with depth.
pub fn render_lamination_disk(lam: &Lamination, depth: u32) -> Result<DiskDrawing> {
    if depth > lam.max_depth() {
        return Err(Error::Config(format!(
            "depth {depth} exceeds the lamination's {}",
            lam.max_depth()
        )));
    }
    let chords: Vec<Leaf> = (-1..=depth as i32)
        .flat_map(|d| lam.leaves_at(d).iter().cloned())
        .collect();
    let mut svg = String::new();
    let c = SIZE / 2.0;
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}" data-format-version="{}">"#,
        crate::FORMAT_VERSION
    )
    .unwrap();
    writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        svg,
        r#"<circle cx="{c}" cy="{c}" r="{}" fill="none" stroke="black" stroke-width="1.5"/>"#,
        c - MARGIN
    )
    .unwrap();
    for l in &chords {
        writeln!(
            svg,
            r#"<path d="{}" fill="none" stroke="black" stroke-width="{:.3}" data-leaf="{} {}"/>"#,
            path(l),
            stroke(l.depth),
            l.a,
            l.b
        )
        .unwrap();
    }
    svg.push_str("</svg>\n");
    Ok(DiskDrawing { svg, chords })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lamination::{crosses, generate, leaf_geometry};

    #[test]
    fn chord_counts() {
        let lam = generate(4).unwrap();
        assert_eq!(render_lamination_disk(&lam, 0).unwrap().chords.len(), 2);
        let d = render_lamination_disk(&lam, 2).unwrap();
        assert_eq!(d.chords.len(), 8);
        assert_eq!(d.svg.matches("<path").count(), 8);
        assert!(render_lamination_disk(&lam, 5).is_err());
    }

    #[test]
    fn drawn_chords_are_disjoint() {
        let lam = generate(5).unwrap();
        let d = render_lamination_disk(&lam, 5).unwrap();
        for (i, l) in d.chords.iter().enumerate() {
            for m in &d.chords[i + 1..] {
                assert!(!crosses(l, m), "{l:?} {m:?}");
            }
        }
    }

    /// The SVG arc and the sampled geodesic agree at the midpoint.
    #[test]
    fn arc_bends_inward() {
        let l = Leaf::new("5/6".parse().unwrap(), "1/6".parse().unwrap(), 0);
        let mid = leaf_geometry(&l, 3).unwrap()[1];
        // geodesic through e^{±iπ/3} crosses the real axis at 2 − √3
        assert!((mid.re - (2.0 - 3f64.sqrt())).abs() < 1e-12 && mid.im.abs() < 1e-12);
        assert!(path(&l).contains(" A "));
    }
}
