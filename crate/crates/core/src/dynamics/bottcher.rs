//! Böttcher coordinates at a superattracting point at ∞.
//!
//! All three coordinates used by the crate have the shape
//! `φ(z) = lim (u_n/κ)^{2^{-n}}` for an orbit `u_n` growing like `u ↦ u²/κ`:
//!
//! * dynamic, `B_c`: `u₀ = z`, `u ↦ u² + c`, `κ = 1`;
//! * parameter, `𝓑`: `u₀ = c`, `u ↦ u² + c`, `κ = 1`, differentiated in `c`;
//! * internal at ∞ for `g_a²`: `u₀ = z`, `u ↦ g_a²(u) ≈ u²/2`, `κ = 2`.
//!
//! The orbit is run until `|u_n|` exceeds [`BAILOUT`], where the tail of the
//! product is below double precision, and `log φ = 2^{-n}(log u_n − log κ)`
//! up to a multiple of `2πi/2^n`. The multiple is picked to land nearest to
//! a caller-supplied argument; tracing supplies the previous node's
//! argument, which is what keeps a trace on one branch.

use std::f64::consts::{LN_2, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::escape::g_a_second;
use crate::error::{Error, Result};

pub(crate) const BAILOUT: f64 = 1e15;
pub(crate) const MAX_ORBIT: usize = 4000;

#[derive(Clone, Copy, Debug)]
pub(crate) enum Coordinate {
    Dynamic { c: Complex64 },
    Parameter,
    InternalInfinity { a: Complex64 },
}

impl Coordinate {
    fn log_kappa(&self) -> f64 {
        match self {
            Coordinate::InternalInfinity { .. } => LN_2,
            _ => 0.0,
        }
    }

    /// Rough inverse at large modulus, used to seed Newton.
    pub(crate) fn seed(&self, log_phi: Complex64) -> Complex64 {
        log_phi.exp() * self.log_kappa().exp()
    }
}

pub(crate) struct LogPhi {
    pub value: Complex64,
    pub derivative: Complex64,
}

/// `log φ(z)` and `d log φ/dz`, the imaginary part chosen nearest `arg_hint`.
pub(crate) fn log_phi(coord: Coordinate, z: Complex64, arg_hint: f64) -> Result<LogPhi> {
    let (mut u, mut du) = (z, Complex64::new(1.0, 0.0));
    let mut n = 0usize;
    while u.norm_sqr() < BAILOUT * BAILOUT {
        if n >= MAX_ORBIT || !u.is_finite() {
            return Err(Error::Domain(format!("orbit of {z} does not escape")));
        }
        (u, du) = match coord {
            Coordinate::Dynamic { c } => (u * u + c, 2.0 * u * du),
            Coordinate::Parameter => (u * u + z, 2.0 * u * du + 1.0),
            Coordinate::InternalInfinity { a } => {
                let s = u * (u + 2.0);
                let den = 2.0 * s + a;
                let ds = 2.0 * u + 2.0;
                // d/du s²/(2s + a) = (2s(2s + a) − 2s²) ds/(2s + a)² = 2s(s + a) ds/(2s + a)²
                let g = s * s / den;
                (g, 2.0 * s * (s + a) * ds / (den * den) * du)
            }
        };
        n += 1;
    }
    let scale = 0.5f64.powi(n as i32);
    let base = (u.ln() - coord.log_kappa()) * scale;
    let step = TAU * scale;
    let k = ((arg_hint - base.im) / step).round();
    Ok(LogPhi {
        value: base + Complex64::new(0.0, k * step),
        derivative: du / u * scale,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BottcherValue {
    pub value: Complex64,
    /// Bound on the relative size of the first omitted factor.
    pub relative_error: f64,
}

/// `B_c(z)` by the product `z·∏(1 + c/u_k²)^{2^{-(k+1)}}` with principal roots.
///
/// Requires `|z|² > 2|c| + |z|`-type escape from the first step on; each
/// factor must lie within distance 1/2 of 1 for the principal branch to be
/// the continuous one.
pub fn bottcher_value(c: Complex64, z: Complex64, terms: usize) -> Result<BottcherValue> {
    let mut u = z;
    let mut log_b = z.ln();
    let mut scale = 0.5;
    let mut last = f64::INFINITY;
    for _ in 0..terms.max(1) {
        let r = c / (u * u);
        if !(r.norm() < 0.5) {
            return Err(Error::Domain(format!(
                "{z} is not in the region where the Böttcher product converges for c = {c}"
            )));
        }
        log_b += (1.0 + r).ln() * scale;
        last = r.norm() * scale;
        u = u * u + c;
        scale *= 0.5;
        if last < 1e-18 || u.norm() > BAILOUT {
            break;
        }
    }
    Ok(BottcherValue {
        value: log_b.exp(),
        relative_error: last,
    })
}

/// Böttcher coordinate of `g_a²` at ∞, normalized to `φ(w) ~ w/2`, so that
/// `φ(g_a²(w)) = φ(w)²`.
pub fn bubble_boettcher_inf(a: Complex64, w: Complex64) -> Result<Complex64> {
    let radius = 8.0 + 4.0 * a.norm().sqrt();
    if !(w.norm() >= radius) {
        return Err(Error::Domain(format!(
            "|w| = {} is inside the radius {radius} where the series is trusted",
            w.norm()
        )));
    }
    let mut u = w;
    let mut log_phi = (w / 2.0).ln();
    let mut scale = 0.5;
    while u.norm() < BAILOUT {
        let next = g_a_second(a, u);
        let ratio = 2.0 * next / (u * u);
        if !((ratio - 1.0).norm() < 0.5) {
            return Err(Error::Domain(format!("series at {w} leaves its disk of convergence")));
        }
        log_phi += ratio.ln() * scale;
        scale *= 0.5;
        u = next;
    }
    Ok(log_phi.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_for_z_squared() {
        let b = bottcher_value(c(0.0, 0.0), c(3.0, 0.0), 30).unwrap();
        assert!((b.value - c(3.0, 0.0)).norm() < 1e-15);
        let z = Complex64::from_polar(2.0, TAU / 3.0);
        assert!((bottcher_value(c(0.0, 0.0), z, 30).unwrap().value - z).norm() < 1e-15);
    }

    #[test]
    fn chebyshev_closed_form() {
        for x in [2.5, 3.0, 10.0, 100.0] {
            let b = bottcher_value(c(-2.0, 0.0), c(x, 0.0), 60).unwrap().value;
            let exact = (x + (x * x - 4.0).sqrt()) / 2.0;
            assert!(b.im.abs() < 1e-14 && ((b.re - exact) / exact).abs() < 1e-12, "{x}: {b}");
        }
    }

    #[test]
    fn functional_equation() {
        for cc in [c(0.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(-2.0, 0.0)] {
            for z in [c(4.0, 1.0), c(-3.0, 3.0), c(0.5, -6.0)] {
                let b = bottcher_value(cc, z, 60).unwrap().value;
                let bf = bottcher_value(cc, z * z + cc, 60).unwrap().value;
                assert!((bf - b * b).norm() < 1e-9 * b.norm_sqr(), "{cc} {z}");
            }
        }
    }

    #[test]
    fn log_form_agrees_with_product() {
        let cc = c(-0.12, 0.75);
        let z = c(2.0, 2.5);
        let b = bottcher_value(cc, z, 60).unwrap().value;
        let l = log_phi(Coordinate::Dynamic { c: cc }, z, b.arg()).unwrap();
        assert!((l.value.exp() - b).norm() < 1e-12 * b.norm());
        // derivative against a central difference
        let h = 1e-6;
        let lp = log_phi(Coordinate::Dynamic { c: cc }, z + h, b.arg()).unwrap().value;
        let lm = log_phi(Coordinate::Dynamic { c: cc }, z - h, b.arg()).unwrap().value;
        assert!(((lp - lm) / (2.0 * h) - l.derivative).norm() < 1e-7);
    }

    #[test]
    fn internal_coordinate_at_infinity() {
        let a = c(1.0, 0.0);
        let w = c(50.0, 0.0);
        let phi = bubble_boettcher_inf(a, w).unwrap();
        assert!(phi.im.abs() < 1e-14 && phi.re > 0.0);
        let phi2 = bubble_boettcher_inf(a, g_a_second(a, w)).unwrap();
        assert!((phi2 - phi * phi).norm() < 1e-10 * phi.norm_sqr());
        let l = log_phi(Coordinate::InternalInfinity { a }, w, 0.0).unwrap();
        assert!((l.value.exp() - phi).norm() < 1e-10 * phi.norm());
        let a = c(-0.4, 2.0);
        let w = c(-30.0, 25.0);
        let phi = bubble_boettcher_inf(a, w).unwrap();
        let phi2 = bubble_boettcher_inf(a, g_a_second(a, w)).unwrap();
        assert!((phi2 - phi * phi).norm() < 1e-10 * phi.norm_sqr());
        assert!(bubble_boettcher_inf(a, c(1.0, 0.0)).is_err());
    }

    #[test]
    fn parameter_coordinate_at_large_c() {
        let cc = c(100.0, 0.0);
        let l = log_phi(Coordinate::Parameter, cc, 0.0).unwrap();
        let b = bottcher_value(cc, cc, 60).unwrap().value;
        assert!((l.value.exp() - b).norm() < 1e-10 * b.norm());
    }
}
