//! External rays by Newton continuation of the Böttcher coordinate.
//!
//! The ray of angle θ is the curve `log φ(z) = t + 2πiθ`, `t > 0`. Nodes are
//! placed at `t_k = t_start·2^{-k/S}`, S nodes per halving of the potential,
//! and each node is found by Newton from the previous one. A node whose
//! Newton run fails is bracketed by intermediate potentials, up to a fixed
//! refinement depth; past that the ray is reported broken.
//!
//! Landing: the last node sits at distance ~`t_end^δ` from the landing point,
//! far from the 1e-8 the acceptance tests need, so the estimate is obtained by
//! polishing the tail with Newton on the equation the landing point solves
//! ((pre)periodic point, Misiurewicz or parabolic parameter). The polished
//! root is accepted when it lies within [`LANDING_REACH`] times the distance
//! covered by the trace over its last halving of potential.

use std::f64::consts::TAU;
use std::io::Write;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::bottcher::{log_phi, Coordinate};
use super::solve::{
    misiurewicz_solve, newton, parabolic_solve, periodic_cycle_solve, preperiodic_point_solve, NewtonOptions,
};
use crate::circle::Angle;
use crate::error::{Error, Result};

pub(crate) const LANDING_REACH: f64 = 50.0;
const MAX_REFINE: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RayKind {
    Dynamic,
    Parameter,
    Bubble,
}

impl RayKind {
    pub fn name(self) -> &'static str {
        match self {
            RayKind::Dynamic => "dynamic",
            RayKind::Parameter => "parameter",
            RayKind::Bubble => "bubble",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RayOptions {
    /// Potential of the first node; its modulus is about `e^{t_start}`.
    pub t_start: f64,
    /// Potential of the last node.
    pub t_end: f64,
    /// Nodes per halving of the potential.
    pub steps: u32,
    pub newton: NewtonOptions,
}

impl Default for RayOptions {
    fn default() -> Self {
        RayOptions {
            t_start: 10.0,
            t_end: 1e-7,
            steps: 24,
            newton: NewtonOptions {
                tol: 1e-14,
                max_iter: 60,
            },
        }
    }
}

impl RayOptions {
    fn validate(&self) -> Result<()> {
        if !(self.t_end > 0.0 && self.t_end < self.t_start) || self.steps == 0 {
            return Err(Error::Config(format!(
                "need 0 < t_end < t_start and steps ≥ 1 (got {}, {}, {})",
                self.t_end, self.t_start, self.steps
            )));
        }
        Ok(())
    }
}

/// A traced curve. For external rays `t` holds the potential of each node
/// (strictly decreasing); for rays in bubbles it holds the index of the
/// bubble each node lies in (0 for `E_∞`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RayTrace {
    pub kind: RayKind,
    pub angle: Angle,
    /// `c` for dynamic rays, `a` for rays in bubbles.
    pub parameter: Option<Complex64>,
    pub points: Vec<Complex64>,
    pub t: Vec<f64>,
    pub landing_estimate: Option<Complex64>,
}

impl RayTrace {
    pub fn landed(&self) -> bool {
        self.landing_estimate.is_some()
    }

    pub fn tail(&self) -> Option<Complex64> {
        self.points.last().copied()
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["t", "re", "im"])?;
        for (z, t) in self.points.iter().zip(&self.t) {
            w.write_record([t.to_string(), z.re.to_string(), z.im.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let pair = |z: Complex64| serde_json::json!([z.re, z.im]);
        let v = serde_json::json!({
            "format_version": crate::FORMAT_VERSION,
            "kind": self.kind.name(),
            "angle": self.angle.to_string(),
            "parameter": self.parameter.map(pair),
            "landed": self.landed(),
            "estimate": self.landing_estimate.map(pair),
            "points": self
                .points
                .iter()
                .zip(&self.t)
                .map(|(z, t)| serde_json::json!([t, z.re, z.im]))
                .collect::<Vec<_>>(),
        });
        Ok(serde_json::to_string_pretty(&v)?)
    }
}

/// Newton for one node: `log φ(z) = target`.
pub(crate) fn solve_node(coord: Coordinate, z0: Complex64, target: Complex64, opts: &NewtonOptions) -> Option<Complex64> {
    let mut z = z0;
    for _ in 0..opts.max_iter {
        let lp = log_phi(coord, z, target.im).ok()?;
        let r = lp.value - target;
        if r.norm() <= opts.tol {
            return Some(z);
        }
        let step = r / lp.derivative;
        if !step.is_finite() {
            return None;
        }
        z -= step;
        if step.norm() <= opts.tol * z.norm().max(1.0) {
            return Some(z);
        }
    }
    None
}

/// Node `z` at potential `t` starting from `z_prev` at `t_prev`, bisecting
/// the potential step (geometrically) on failure.
fn advance(
    coord: Coordinate,
    arg: f64,
    z_prev: Complex64,
    t_prev: f64,
    t: f64,
    opts: &NewtonOptions,
    depth: u32,
    out: &mut Vec<(f64, Complex64)>,
) -> Result<Complex64> {
    if let Some(z) = solve_node(coord, z_prev, Complex64::new(t, arg), opts) {
        // a converged node may still have jumped: demand it stay closer to
        // the previous node than the previous node is to its own landing scale
        if (z - z_prev).norm() <= 0.5 * z_prev.norm().max(1e-3) + 10.0 * (t_prev - t).abs() {
            return Ok(z);
        }
    }
    if depth >= MAX_REFINE {
        return Err(Error::RayBroken {
            t,
            reason: "Newton continuation failed after step refinement".into(),
        });
    }
    let mid = (t_prev * t).sqrt();
    let zm = advance(coord, arg, z_prev, t_prev, mid, opts, depth + 1, out)?;
    out.push((mid, zm));
    advance(coord, arg, zm, mid, t, opts, depth + 1, out)
}

pub(crate) fn trace_coordinate(
    coord: Coordinate,
    theta: f64,
    opts: &RayOptions,
) -> Result<(Vec<Complex64>, Vec<f64>)> {
    opts.validate()?;
    let arg = TAU * theta;
    let s = opts.steps as f64;
    let mut pts = Vec::new();
    let mut ts = Vec::new();
    let mut t = opts.t_start;
    let seed = coord.seed(Complex64::new(t, arg));
    let z0 = solve_node(coord, seed, Complex64::new(t, arg), &opts.newton).ok_or(Error::RayBroken {
        t,
        reason: "no start node".into(),
    })?;
    pts.push(z0);
    ts.push(t);
    let mut k = 0u32;
    while t > opts.t_end {
        k += 1;
        let next = (opts.t_start * (-(k as f64) / s).exp2()).max(opts.t_end);
        let mut extra = Vec::new();
        let z = advance(coord, arg, *pts.last().unwrap(), t, next, &opts.newton, 0, &mut extra)?;
        for (te, ze) in extra {
            ts.push(te);
            pts.push(ze);
        }
        pts.push(z);
        ts.push(next);
        t = next;
    }
    Ok((pts, ts))
}

/// The node one halving of potential before the tail, for the reach test.
pub(crate) fn halving_displacement(pts: &[Complex64], ts: &[f64]) -> f64 {
    let (tail, t_end) = (pts[pts.len() - 1], ts[ts.len() - 1]);
    let idx = ts.iter().rposition(|&t| t >= 2.0 * t_end).unwrap_or(0);
    (pts[idx] - tail).norm()
}

fn accept_landing(
    pts: &[Complex64],
    ts: &[f64],
    candidate: Result<Complex64>,
) -> Option<Complex64> {
    let z = candidate.ok()?;
    let tail = *pts.last()?;
    let reach = LANDING_REACH * halving_displacement(pts, ts) + 1e-12;
    ((z - tail).norm() <= reach).then_some(z)
}

/// Beyond this many steps from the tail, Newton on `f_c^{l+p}(z) = f_c^l(z)`
/// no longer has the tail in its basin and the cycle is found by shooting.
const DIRECT_STEPS: u32 = 16;

/// Landing point of a dynamic ray from its tail.
fn dynamic_landing(c: Complex64, theta: &Angle, tail: Complex64, opts: &RayOptions) -> Result<Complex64> {
    let class = theta.classify();
    if class.preperiod + class.period <= DIRECT_STEPS {
        return preperiodic_point_solve(c, class.preperiod, class.period, tail, &opts.newton);
    }
    // seed each point of the cycle with the tail of its own ray
    let coarse = RayOptions {
        steps: opts.steps.min(8),
        t_end: opts.t_end.max(1e-6),
        ..*opts
    };
    let cycle_start = theta.double_n(class.preperiod);
    let seeds = (0..class.period)
        .map(|k| {
            let t = cycle_start.double_n(k);
            if k == 0 && class.preperiod == 0 {
                return Ok(tail);
            }
            let (pts, _) = trace_coordinate(Coordinate::Dynamic { c }, t.to_f64(), &coarse)?;
            Ok(*pts.last().unwrap())
        })
        .collect::<Result<Vec<_>>>()?;
    let x = periodic_cycle_solve(c, &seeds, &opts.newton)?[0];
    if class.preperiod == 0 {
        return Ok(x);
    }
    newton(tail, &opts.newton, |z| {
        let (mut u, mut du) = (z, Complex64::new(1.0, 0.0));
        for _ in 0..class.preperiod {
            (u, du) = (u * u + c, 2.0 * u * du);
        }
        (u - x, du)
    })
}

/// Dynamic ray of `f_c`: `B_c(z) = exp(t + 2πiθ)`.
pub fn trace_dynamic_ray(c: Complex64, theta: &Angle, opts: &RayOptions) -> Result<RayTrace> {
    let (points, t) = trace_coordinate(Coordinate::Dynamic { c }, theta.to_f64(), opts)?;
    let tail = *points.last().unwrap();
    let landing = accept_landing(&points, &t, dynamic_landing(c, theta, tail, opts));
    Ok(RayTrace {
        kind: RayKind::Dynamic,
        angle: theta.clone(),
        parameter: Some(c),
        points,
        t,
        landing_estimate: landing,
    })
}

/// Parameter ray: `𝓑(c) = B_c(c) = exp(t + 2πiθ)`.
pub fn trace_parameter_ray(theta: &Angle, opts: &RayOptions) -> Result<RayTrace> {
    let (points, t) = trace_coordinate(Coordinate::Parameter, theta.to_f64(), opts)?;
    let class = theta.classify();
    let tail = *points.last().unwrap();
    let candidate = if class.preperiod == 0 {
        parabolic_solve(class.period, tail, &opts.newton)
    } else {
        misiurewicz_solve(class.preperiod, class.period, tail, &opts.newton)
    };
    let landing = accept_landing(&points, &t, candidate);
    Ok(RayTrace {
        kind: RayKind::Parameter,
        angle: theta.clone(),
        parameter: None,
        points,
        t,
        landing_estimate: landing,
    })
}
