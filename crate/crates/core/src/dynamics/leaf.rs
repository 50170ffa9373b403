//! Leaves of the Basilica lamination drawn in a dynamical or parameter plane
//! as ray–equipotential–ray curves: down the ray at one endpoint angle from
//! potential `height`, around the equipotential through the leaf's short arc,
//! and out along the ray at the other endpoint.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::bottcher::{Coordinate, BAILOUT};
use super::rays::{trace_dynamic_ray, trace_parameter_ray, RayOptions, RayTrace};
use crate::error::{Error, Result};
use crate::lamination::Leaf;

const ARC_SAMPLES: usize = 96;
const MAX_SEGMENT: f64 = 0.01;
const MIN_ARC_STEP: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LeafCurve {
    pub leaf: Leaf,
    /// From the landing end of the ray at `leaf.a` to that of the ray at `leaf.b`.
    pub points: Vec<Complex64>,
    pub endpoints: [Option<Complex64>; 2],
    /// Set when one of the two rays could not be traced; `points` then holds
    /// only the parts that were.
    pub broken: Option<String>,
}

fn equipotential(coord: Coordinate, leaf: &Leaf, height: f64, opts: &RayOptions) -> Result<Vec<Complex64>> {
    let start = leaf.a.to_f64();
    let len = leaf.arc_length().to_f64();
    // the first node comes from a short radial trace down to `height`
    let ray_opts = RayOptions {
        t_end: height,
        ..*opts
    };
    let (pts, _) = super::rays::trace_coordinate(coord, start, &ray_opts)?;
    let mut z = *pts.last().unwrap();
    let mut out = vec![z];
    // The argument of log φ is only resolved up to 2π·2^{-n}, n the escape
    // time, and 2^{-n} ≈ height/log(BAILOUT); steps in angle stay well below
    // that so the branch nearest the target is the continuous one. Nodes
    // are also required to be close to their predecessor.
    let max_ds = (height / (8.0 * BAILOUT.ln())).min(len / ARC_SAMPLES as f64);
    let (mut s, mut ds) = (0.0, max_ds);
    while s < len {
        let step = ds.min(len - s);
        let theta = start + s + step;
        let target = Complex64::new(height, TAU * theta);
        let limit = MAX_SEGMENT * z.norm().max(1.0);
        match super::rays::solve_node(coord, z, target, &opts.newton) {
            Some(w) if (w - z).norm() <= limit => {
                if (w - z).norm() < 0.25 * limit {
                    ds = (2.0 * step).min(max_ds);
                }
                z = w;
                s += step;
                out.push(z);
            }
            _ if step > MIN_ARC_STEP => ds = step / 2.0,
            _ => {
                return Err(Error::RayBroken {
                    t: height,
                    reason: format!("equipotential lost at angle {theta}"),
                })
            }
        }
    }
    Ok(out)
}

fn below(trace: &RayTrace, height: f64) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = trace
        .points
        .iter()
        .zip(&trace.t)
        .filter(|(_, t)| **t < height)
        .map(|(z, _)| *z)
        .collect();
    if let Some(z) = trace.landing_estimate {
        v.push(z);
    }
    v
}

fn assemble(
    leaf: &Leaf,
    height: f64,
    arc: Vec<Complex64>,
    ra: Result<RayTrace>,
    rb: Result<RayTrace>,
) -> LeafCurve {
    let mut broken = Vec::new();
    let mut points = Vec::new();
    let mut endpoints = [None, None];
    match ra {
        Ok(r) => {
            endpoints[0] = r.landing_estimate;
            let mut v = below(&r, height);
            v.reverse();
            points.extend(v);
        }
        Err(e) => broken.push(format!("ray {}: {e}", leaf.a)),
    }
    points.extend(arc);
    match rb {
        Ok(r) => {
            endpoints[1] = r.landing_estimate;
            points.extend(below(&r, height));
        }
        Err(e) => broken.push(format!("ray {}: {e}", leaf.b)),
    }
    LeafCurve {
        leaf: leaf.clone(),
        points,
        endpoints,
        broken: (!broken.is_empty()).then(|| broken.join("; ")),
    }
}

/// The leaf `l` in the dynamical plane of `f_c`, joined at potential `height`.
pub fn trace_dynamical_leaf(c: Complex64, l: &Leaf, height: f64, opts: &RayOptions) -> Result<LeafCurve> {
    if !(height > opts.t_end && height < opts.t_start) {
        return Err(Error::Config(format!("height {height} outside (t_end, t_start)")));
    }
    let arc = equipotential(Coordinate::Dynamic { c }, l, height, opts)?;
    let ra = trace_dynamic_ray(c, &l.a, opts);
    let rb = trace_dynamic_ray(c, &l.b, opts);
    Ok(assemble(l, height, arc, ra, rb))
}

/// The leaf `l` in the parameter plane, built from parameter rays.
pub fn trace_parameter_leaf(l: &Leaf, height: f64, opts: &RayOptions) -> Result<LeafCurve> {
    if !(height > opts.t_end && height < opts.t_start) {
        return Err(Error::Config(format!("height {height} outside (t_end, t_start)")));
    }
    let arc = equipotential(Coordinate::Parameter, l, height, opts)?;
    let ra = trace_parameter_ray(&l.a, opts);
    let rb = trace_parameter_ray(&l.b, opts);
    Ok(assemble(l, height, arc, ra, rb))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn leaf(x: &str, y: &str, d: i32) -> Leaf {
        Leaf::new(x.parse().unwrap(), y.parse().unwrap(), d)
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn major_leaf_for_z_squared() {
        let curve = trace_dynamical_leaf(c(0.0, 0.0), &Leaf::major(), 0.5, &RayOptions::default()).unwrap();
        let [p, q] = curve.endpoints;
        assert!((p.unwrap() - Complex64::from_polar(1.0, TAU / 3.0)).norm() < 1e-10);
        assert!((q.unwrap() - Complex64::from_polar(1.0, 2.0 * TAU / 3.0)).norm() < 1e-10);
        assert!(curve.broken.is_none());
        // for z² the curve is two radial segments and an arc of |z| = e^{0.5}
        // through angle 1/2
        on_radial_leaf(&curve.points, 1.0 / 3.0, 2.0 / 3.0, 0.5);
        assert!(curve.points.iter().any(|z| (z.arg() - PI).abs() < 0.05));
    }

    fn on_radial_leaf(points: &[Complex64], a: f64, b: f64, height: f64) {
        let ray = |z: &Complex64, t: f64| (z.arg() - Complex64::from_polar(1.0, TAU * t).arg()).abs() < 1e-9;
        for z in points {
            let arc = (z.norm().ln() - height).abs() < 1e-9;
            assert!(arc || ray(z, a) || ray(z, b), "{z} is off the leaf curve");
        }
    }

    #[test]
    fn symmetric_leaf_for_z_squared() {
        let curve =
            trace_dynamical_leaf(c(0.0, 0.0), &leaf("5/6", "1/6", 0), 0.3, &RayOptions::default()).unwrap();
        on_radial_leaf(&curve.points, 5.0 / 6.0, 1.0 / 6.0, 0.3);
        // the arc crosses the positive real axis, not the negative one
        assert!(curve.points.iter().any(|z| z.arg().abs() < 0.05 && z.re > 0.0));
        assert!(curve.points.iter().all(|z| z.re > 0.0));
    }

    #[test]
    fn basilica_pinch() {
        // −α with α = (1 − √5)/2, the negative root of α² − 1 = α
        let minus_alpha = c((5f64.sqrt() - 1.0) / 2.0, 0.0);
        let curve =
            trace_dynamical_leaf(c(-1.0, 0.0), &leaf("5/6", "1/6", 0), 0.3, &RayOptions::default()).unwrap();
        for e in curve.endpoints {
            assert!((e.unwrap() - minus_alpha).norm() < 1e-6);
        }
    }
}
