//! Leaf curves over escape-time rasters: the embedded lamination 𝓛_B in the
//! parameter plane with the Basilica wake shaded, and `L_B` drawn in a
//! dynamical plane over `K_c`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use super::draw::Canvas;
use super::{colorize, raster, ImageGrid, RenderConfig};
use crate::circle::Angle;
use crate::dynamics::{
    trace_dynamic_ray, trace_dynamical_leaf, trace_parameter_leaf, trace_parameter_ray, EscapeResult,
    EscapeStatus, LeafCurve, RayOptions,
};
use crate::error::{Error, Result};
use crate::lamination::{Lamination, Leaf};

const LEAF: [u8; 3] = [200, 30, 30];
const RAY: [u8; 3] = [30, 90, 220];
const WAKE: [u8; 3] = [255, 200, 60];
const ARC_POINTS: usize = 64;

fn leaves_to_draw(cfg: &RenderConfig, lam: &Lamination) -> Result<Vec<Leaf>> {
    let Some(depth) = cfg.lamination_depth else {
        return Ok(Vec::new());
    };
    if depth > lam.max_depth() {
        return Err(Error::Config(format!(
            "overlay depth {depth} exceeds the lamination's {}",
            lam.max_depth()
        )));
    }
    Ok((-1..=depth as i32)
        .flat_map(|d| lam.leaves_at(d).iter().cloned())
        .collect())
}

/// Boundary of the Basilica wake: parameter ray 1/3 in to its landing point
/// −3/4, ray 2/3 back out, closed by an arc at the rays' starting radius
/// through the negative real axis.
pub fn wake_polygon(opts: &RayOptions) -> Result<Vec<Complex64>> {
    let r1 = trace_parameter_ray(&Angle::frac(1, 3), opts)?;
    let r2 = trace_parameter_ray(&Angle::frac(2, 3), opts)?;
    let mut poly = r1.points.clone();
    poly.extend(r1.landing_estimate);
    poly.extend(r2.points.iter().rev());
    let (start, end) = (r2.points[0], r1.points[0]);
    let radius = start.norm().max(end.norm());
    let (a0, mut a1) = (start.arg().rem_euclid(TAU), end.arg().rem_euclid(TAU));
    // from arg ≈ 4π/3 back down to arg ≈ 2π/3, passing π
    if a1 > a0 {
        a1 -= TAU;
    }
    for k in 1..ARC_POINTS {
        let s = k as f64 / ARC_POINTS as f64;
        poly.push(Complex64::from_polar(radius, a0 + s * (a1 - a0)));
    }
    Ok(poly)
}

fn draw_curves(g: &mut ImageGrid, curves: Vec<LeafCurve>) {
    let mut canvas = Canvas::of(g);
    for c in &curves {
        canvas.polyline(&c.points, LEAF, c.broken.is_some());
    }
    for c in &curves {
        if let Some(reason) = &c.broken {
            g.notes.push(format!("leaf ⟨{}, {}⟩ drawn dashed: {reason}", c.leaf.a, c.leaf.b));
        }
    }
    g.curves = curves;
}

/// 𝓜 with the leaves of `lam` up to `cfg.lamination_depth` drawn as
/// parameter-ray pairs joined at potential `cfg.leaf_height`, parameter rays
/// at `cfg.ray_angles`, and the Basilica wake tinted.
pub fn render_m1_overlay(cfg: &RenderConfig, lam: &Lamination, opts: &RayOptions) -> Result<ImageGrid> {
    let leaves = leaves_to_draw(cfg, lam)?;
    let mut g = super::render_m1(cfg)?;
    if cfg.shade_wake {
        let poly = wake_polygon(opts)?;
        Canvas::of(&mut g).tint(&poly, WAKE, 0.35);
    }
    let curves = leaves
        .par_iter()
        .map(|l| trace_parameter_leaf(l, cfg.leaf_height, opts))
        .collect::<Result<Vec<_>>>()?;
    draw_curves(&mut g, curves);
    let rays: Vec<_> = cfg
        .ray_angles
        .par_iter()
        .map(|t| trace_parameter_ray(t, opts))
        .collect();
    draw_rays(&mut g, &cfg.ray_angles, rays);
    Ok(g)
}

fn draw_rays(g: &mut ImageGrid, angles: &[Angle], rays: Vec<Result<crate::dynamics::RayTrace>>) {
    for (t, r) in angles.iter().zip(rays) {
        match r {
            Ok(r) => {
                let mut canvas = Canvas::of(g);
                let mut pts = r.points.clone();
                pts.extend(r.landing_estimate);
                canvas.polyline(&pts, RAY, false);
                if let Some(z) = r.landing_estimate {
                    canvas.marker(z, RAY);
                }
            }
            Err(e) => g.notes.push(format!("ray {t} not drawn: {e}")),
        }
    }
}

fn filled_julia(c: Complex64, mut z: Complex64, max_iter: u32, radius: f64) -> EscapeResult {
    let r2 = radius * radius;
    for n in 0..max_iter {
        if z.norm_sqr() > r2 {
            return EscapeResult {
                status: EscapeStatus::Escaped,
                iterations: n,
                final_modulus: z.norm(),
            };
        }
        z = z * z + c;
    }
    EscapeResult {
        status: EscapeStatus::Member,
        iterations: max_iter,
        final_modulus: z.norm(),
    }
}

/// `K_c` with the leaves of `lam` drawn as dynamic-ray pairs of `f_c`.
pub fn render_dynamical_overlay(
    c: Complex64,
    cfg: &RenderConfig,
    lam: &Lamination,
    opts: &RayOptions,
) -> Result<ImageGrid> {
    cfg.validate()?;
    if !c.is_finite() {
        return Err(Error::Config(format!("parameter {c} is not finite")));
    }
    let leaves = leaves_to_draw(cfg, lam)?;
    let cells = raster(cfg, |z| Ok(filled_julia(c, z, cfg.max_iter, cfg.escape_radius)))?;
    let mut g = ImageGrid {
        width: cfg.width,
        height: cfg.height,
        viewport: cfg.viewport,
        rgb: colorize(cfg, &cells),
        cells,
        notes: Vec::new(),
        curves: Vec::new(),
        config: cfg.clone(),
    };
    let curves = leaves
        .par_iter()
        .map(|l| trace_dynamical_leaf(c, l, cfg.leaf_height, opts))
        .collect::<Result<Vec<_>>>()?;
    draw_curves(&mut g, curves);
    let rays: Vec<_> = cfg
        .ray_angles
        .par_iter()
        .map(|t| trace_dynamic_ray(c, t, opts))
        .collect();
    draw_rays(&mut g, &cfg.ray_angles, rays);
    Ok(g)
}
