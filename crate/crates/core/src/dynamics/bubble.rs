//! Rays in bubbles for `g_a(z) = a/(z² + 2z)`.
//!
//! A ray in bubbles starts at ∞, runs along an internal ray of `E_∞` to a
//! pinch point on `∂E_∞`, crosses into the next bubble, runs to its center
//! (a preimage of ∞) and out along another internal ray, and so on. The
//! sequence of pinch points is the separating chain of `−θ` in the Basilica
//! lamination; `B^θ` is twinned with `R^{−θ}` of `f_B` through `ρ`.
//!
//! Combinatorics. Bubbles of `f_B` are gaps of the lamination. The main gap
//! (the bubble `U₀` around 0, matching `E_∞` under `ρ`) has boundary angles
//! `Γ₀`, those whose orbit under `×4` stays in `[1/6,1/3] ∪ [2/3,5/6]`, and
//! `f_B²` acts on `∂U₀` as doubling of the internal angle. The internal angle
//! of `φ ∈ Γ₀` therefore has binary digits `[4^k φ ∈ [1/6,1/3]]`. A bubble of
//! generation `n` inherits internal angles through `f_B^n`. In `g_a`'s plane
//! the Böttcher coordinate at ∞ is `1/ζ` for `ζ` that of `f_B²` at 0, so
//! internal angles change sign.
//!
//! Numerics. Internal rays of `E_∞` are traced like external rays with the
//! coordinate of `g_a²` at ∞. A ray inside a bubble of generation `n` is the
//! pullback of an `E_∞` ray by `n` inverse branches `z = −1 ± √(1 + a/w)`.
//! The branch of the ray entering a bubble is anchored at the forward orbit
//! of the pinch point it lands on; the ray leaving the bubble is anchored at
//! the bubble's center, which it shares with the entering one. Each choice is
//! then continued along the polyline. For `a ≠ 1` this realizes the
//! continuation of `h_a⁻¹` along the ray as long as the ray avoids −1 and its
//! preimages, which is what existence means.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::bottcher::{log_phi, Coordinate};
use super::escape::g_a;
use super::rays::{halving_displacement, solve_node, trace_coordinate, RayKind, RayOptions, RayTrace, LANDING_REACH};
use super::solve::{g_fixed_point, g_preperiodic_solve, preimage_solve, NewtonOptions};
use crate::circle::{normalize, Angle};
use crate::error::{Error, Result};
use crate::lamination::{Lamination, Leaf, LeafChain};

/// Internal angle, in `U₀`, of the boundary point of `f_B` with external
/// angle `φ ∈ Γ₀`. Angle 0 is the α-fixed point.
pub fn basilica_internal_angle(phi: &Angle) -> Result<Angle> {
    let (s1, t1) = (Angle::frac(1, 6), Angle::frac(1, 3));
    let (s2, t2) = (Angle::frac(2, 3), Angle::frac(5, 6));
    let mut seen: HashMap<Angle, usize> = HashMap::new();
    let mut digits: Vec<bool> = Vec::new();
    let mut y = phi.clone();
    let pre = loop {
        if let Some(&i) = seen.get(&y) {
            break i;
        }
        seen.insert(y.clone(), digits.len());
        if y.in_cyclic_arc(&s1, &t1, false) {
            digits.push(true);
        } else if y.in_cyclic_arc(&s2, &t2, false) {
            digits.push(false);
        } else {
            return Err(Error::Domain(format!(
                "{phi} is not a boundary angle of the main bubble"
            )));
        }
        y = y.double().double();
    };
    let as_int = |d: &[bool]| {
        d.iter()
            .fold(BigInt::from(0), |acc, &b| (acc << 1u32) + BigInt::from(b as u8))
    };
    let per = digits.len() - pre;
    let p = as_int(&digits[..pre]);
    let r = as_int(&digits[pre..]);
    let cycle = (BigInt::one() << per) - 1;
    normalize(p * &cycle + r, (BigInt::one() << pre) * cycle)
}

/// Generation of the bubble of `f_B` lying behind `leaf` (on the side away
/// from `U₀`): the least `n` with `f_B^n` of it equal to `U₀`.
pub fn bubble_generation(leaf: &Leaf) -> u32 {
    let m = (leaf.depth + 1) as u32;
    // ⟨x,y⟩ lands on the major leaf after m doublings; the far side of the
    // leaf goes to U₋₁ (one more step to U₀) iff x goes to 1/3
    if leaf.a.double_n(m) == Angle::frac(1, 3) {
        m + 1
    } else {
        m
    }
}

/// Number of `g_a` steps taking the pinch point of `leaf` to α.
fn steps_to_alpha(leaf: &Leaf) -> u32 {
    (leaf.depth + 1) as u32
}

/// Internal angle in `g_a`'s convention of the point with Basilica angle
/// `phi` on a generation-`n` bubble.
fn internal_angle(phi: &Angle, generation: u32) -> Result<Angle> {
    basilica_internal_angle(&phi.double_n(generation)).map(|s| s.neg())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BubbleStep {
    pub generation: u32,
    /// The leaf crossed to enter this bubble; none for `E_∞`.
    pub entry: Option<Leaf>,
    /// Internal angle of the entry pinch point.
    pub entry_angle: Option<Angle>,
    /// Internal angle of the ray leaving the bubble, if it does.
    pub exit_angle: Option<Angle>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BubblePlan {
    pub angle: Angle,
    /// `−θ`, the angle of the twinned external ray of `f_B`.
    pub basilica_angle: Angle,
    pub chain: LeafChain,
    pub steps: Vec<BubbleStep>,
    /// True when the ray ends on the boundary of its last bubble.
    pub finite: bool,
    /// For 𝔅 targets: the leaf whose pinch point the ray lands on.
    pub target_leaf: Option<Leaf>,
}

/// Does some forward image of `phi` lie on the boundary of `U₀`?
fn lands_on_bubble(phi: &Angle) -> bool {
    let c = phi.classify();
    (0..c.preperiod + c.period).any(|n| basilica_internal_angle(&phi.double_n(n)).is_ok())
}

/// The combinatorial skeleton of `B^θ` from the lamination alone.
pub fn plan_bubble_ray(theta: &Angle, lam: &Lamination) -> Result<BubblePlan> {
    let phi = theta.neg();
    let (chain, target_leaf) = if phi.is_b_angle() {
        let target = lam.leaf_of(&phi).cloned().ok_or_else(|| {
            Error::Config(format!(
                "{phi} has no leaf up to depth {}; generate a deeper lamination",
                lam.max_depth()
            ))
        })?;
        (lam.leaves_containing(&phi), Some(target))
    } else {
        (lam.separating_chain(&phi)?, None)
    };
    let mut steps = Vec::with_capacity(chain.len() + 1);
    for k in 0..=chain.len() {
        let (generation, entry, entry_angle) = if k == 0 {
            (0, None, None)
        } else {
            let l = &chain.leaves()[k - 1];
            let n = bubble_generation(l);
            (n, Some(l.clone()), Some(internal_angle(&l.a, n)?))
        };
        let exit_angle = match chain.leaves().get(k) {
            Some(next) => Some(internal_angle(&next.a, generation)?),
            None => None,
        };
        steps.push(BubbleStep {
            generation,
            entry,
            entry_angle,
            exit_angle,
        });
    }
    // the last bubble: does φ sit on its boundary?
    let last = steps.last_mut().unwrap();
    let finite = match internal_angle(&phi, last.generation) {
        Ok(s) => {
            last.exit_angle = Some(s);
            true
        }
        Err(_) => false,
    };
    if !finite && target_leaf.is_some() {
        return Err(Error::Internal(format!("𝔅 target {phi} is not on its last bubble")));
    }
    if !finite && lands_on_bubble(&phi) && chain.len() as u32 >= lam.max_depth() {
        return Err(Error::Config(format!(
            "the ray ends on a bubble deeper than depth {}",
            lam.max_depth()
        )));
    }
    Ok(BubblePlan {
        angle: theta.clone(),
        basilica_angle: phi,
        chain,
        steps,
        finite,
        target_leaf,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BubbleRay {
    pub angle: Angle,
    pub chain: LeafChain,
    pub plan: BubblePlan,
    /// Nodes with `t` = index of the bubble containing them.
    pub trace: RayTrace,
    /// Pinch points crossed, in order.
    pub pinch_points: Vec<Complex64>,
    /// Centers of the bubbles after `E_∞`.
    pub centers: Vec<Complex64>,
}

impl BubbleRay {
    /// Bounding-box diagonal of the traced part of each bounded bubble,
    /// pinch points included.
    pub fn bubble_extents(&self) -> Vec<f64> {
        let bubbles = self.trace.t.iter().fold(0usize, |m, &t| m.max(t as usize));
        (1..=bubbles)
            .map(|k| {
                let pts = self
                    .trace
                    .points
                    .iter()
                    .zip(&self.trace.t)
                    .filter(|(_, t)| **t as usize == k)
                    .map(|(z, _)| *z)
                    .chain(self.pinch_points.get(k - 1).copied())
                    .chain(self.pinch_points.get(k).copied());
                let (mut lo, mut hi) = (Complex64::new(f64::MAX, f64::MAX), Complex64::new(f64::MIN, f64::MIN));
                for z in pts {
                    lo = Complex64::new(lo.re.min(z.re), lo.im.min(z.im));
                    hi = Complex64::new(hi.re.max(z.re), hi.im.max(z.im));
                }
                (hi - lo).norm()
            })
            .collect()
    }
}

fn preimages(a: Complex64, w: Complex64) -> Result<[Complex64; 2]> {
    let s = (1.0 + a / w).sqrt();
    if !(s.norm() > 1e-9) {
        return Err(Error::RayNonexistent(format!(
            "pullback of {w} meets the critical point −1"
        )));
    }
    Ok([s - 1.0, -s - 1.0])
}

fn nearest(c: [Complex64; 2], r: Complex64) -> Complex64 {
    if (c[0] - r).norm() <= (c[1] - r).norm() {
        c[0]
    } else {
        c[1]
    }
}

enum Anchor<'a> {
    /// The last point of the polyline pulls back next to `orbit[j]` at level `j`.
    Landing(&'a [Complex64]),
    /// The first point pulls back next to `firsts[j]` at level `j`.
    Start(&'a [Complex64]),
}

/// Pulls a polyline back `n` levels; returns it at level 0 together with its
/// first point at each level.
fn pull_back(a: Complex64, poly: &[Complex64], n: u32, anchor: Anchor) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let mut cur = poly.to_vec();
    let mut firsts = vec![Complex64::new(0.0, 0.0); n as usize];
    for j in (0..n as usize).rev() {
        let mut next = vec![Complex64::new(0.0, 0.0); cur.len()];
        match anchor {
            Anchor::Landing(orbit) => {
                let mut r = orbit[j];
                for i in (0..cur.len()).rev() {
                    r = nearest(preimages(a, cur[i])?, r);
                    next[i] = r;
                }
            }
            Anchor::Start(refs) => {
                let mut r = refs[j];
                for i in 0..cur.len() {
                    r = nearest(preimages(a, cur[i])?, r);
                    next[i] = r;
                }
            }
        }
        firsts[j] = next[0];
        cur = next;
    }
    Ok((cur, firsts))
}

fn internal_ray(a: Complex64, s: &Angle, opts: &RayOptions) -> Result<(Vec<Complex64>, Vec<f64>)> {
    trace_coordinate(Coordinate::InternalInfinity { a }, s.to_f64(), opts)
}

fn within_reach(z: Complex64, pts: &[Complex64], ts: &[f64]) -> bool {
    let tail = *pts.last().unwrap();
    (z - tail).norm() <= LANDING_REACH * halving_displacement(pts, ts) + 1e-12
}

/// The fixed point `α(g_a)` where the internal ray of angle 0 in `E_∞` lands.
pub fn alpha_fixed_point(a: Complex64, opts: &RayOptions) -> Result<Complex64> {
    let (pts, ts) = internal_ray(a, &Angle::zero(), opts)?;
    let z = g_fixed_point(a, *pts.last().unwrap(), &opts.newton)?;
    if !within_reach(z, &pts, &ts) {
        return Err(Error::Internal(format!(
            "fixed point {z} too far from the tail of the internal ray"
        )));
    }
    Ok(z)
}

fn polish_landing(
    a: Complex64,
    alpha: Complex64,
    target: Landing<'_>,
    pts: &[Complex64],
    ts: &[f64],
    newton: &NewtonOptions,
) -> Result<Complex64> {
    let tail = *pts.last().unwrap();
    let z = match target {
        Landing::Pinch(leaf) => match steps_to_alpha(leaf) {
            0 => alpha,
            m => preimage_solve(a, m, alpha, tail, newton)?,
        },
        Landing::Angle(phi) => {
            let c = phi.classify();
            g_preperiodic_solve(a, c.preperiod, c.period, tail, newton)?
        }
    };
    if !within_reach(z, pts, ts) {
        return Err(Error::Internal(format!(
            "landing point {z} too far from the traced tail {tail}"
        )));
    }
    Ok(z)
}

#[derive(Clone, Copy)]
enum Landing<'a> {
    Pinch(&'a Leaf),
    Angle(&'a Angle),
}

/// Traces `B^θ` for `g_a` through at most `max_bubbles` bubbles (`E_∞` counts).
pub fn trace_bubble_ray(
    a: Complex64,
    theta: &Angle,
    lam: &Lamination,
    max_bubbles: usize,
    opts: &RayOptions,
) -> Result<BubbleRay> {
    if a == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("a = 0 is excluded from the slice".into()));
    }
    if max_bubbles == 0 {
        return Err(Error::Config("max_bubbles must be ≥ 1".into()));
    }
    let plan = plan_bubble_ray(theta, lam)?;
    let alpha = alpha_fixed_point(a, opts)?;
    let mut points = Vec::new();
    let mut tags = Vec::new();
    let mut pinches: Vec<Complex64> = Vec::new();
    let mut centers = Vec::new();
    let mut landing = None;
    let bubbles = plan.steps.len().min(max_bubbles);
    let phi = plan.basilica_angle.clone();

    for (k, step) in plan.steps.iter().take(bubbles).enumerate() {
        let tag = k as f64;
        let n = step.generation;
        let is_last = k + 1 == plan.steps.len();
        // where the exit ray of this bubble lands, if it has one
        let exit_target = match (plan.chain.leaves().get(k), is_last, &plan.target_leaf) {
            (Some(l), _, _) => Some(Landing::Pinch(l)),
            (None, true, Some(t)) if plan.finite => Some(Landing::Pinch(t)),
            (None, true, None) if plan.finite => Some(Landing::Angle(&phi)),
            _ => None,
        };
        let mut firsts_in: Vec<Complex64> = Vec::new();
        if k > 0 {
            let x = *pinches.last().unwrap();
            let mut orbit = vec![x];
            for _ in 0..n {
                orbit.push(g_a(a, *orbit.last().unwrap()));
            }
            let s_in = step.entry_angle.as_ref().unwrap();
            let (mut poly, _) = internal_ray(a, s_in, opts)?;
            poly.push(orbit[n as usize]);
            let (q, firsts) = pull_back(a, &poly, n, Anchor::Landing(&orbit))?;
            firsts_in = firsts;
            // entry ray runs from the pinch point toward the center
            for z in q.iter().rev().skip(1) {
                points.push(*z);
                tags.push(tag);
            }
            let pole_ref = if n >= 1 { firsts_in[n as usize - 1] } else { q[0] };
            let pole = if pole_ref.norm() <= (pole_ref + 2.0).norm() {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(-2.0, 0.0)
            };
            let center = if n == 1 {
                pole
            } else {
                preimage_solve(a, n - 1, pole, q[0], &opts.newton)?
            };
            centers.push(center);
            points.push(center);
            tags.push(tag);
        }
        let (Some(target), Some(s_out)) = (exit_target, step.exit_angle.as_ref()) else {
            break;
        };
        let (poly, ts) = internal_ray(a, s_out, opts)?;
        let q = if k == 0 {
            poly
        } else {
            pull_back(a, &poly, n, Anchor::Start(&firsts_in))?.0
        };
        let x = polish_landing(a, alpha, target, &q, &ts, &opts.newton)?;
        let start = if k == 0 { 0 } else { 1 };
        for z in &q[start..] {
            points.push(*z);
            tags.push(tag);
        }
        points.push(x);
        tags.push(tag);
        match target {
            Landing::Pinch(_) if !(is_last && plan.finite) => pinches.push(x),
            _ => landing = Some(x),
        }
    }

    if landing.is_none() && !plan.finite && pinches.len() >= 2 {
        // an infinite ray: try the (pre)periodic point its pinch points approach
        let c = phi.classify();
        let last = pinches[pinches.len() - 1];
        let prev = pinches[pinches.len() - 2];
        if let Ok(z) = g_preperiodic_solve(a, c.preperiod, c.period, last, &opts.newton) {
            if (z - last).norm() <= 2.0 * (last - prev).norm() {
                landing = Some(z);
            }
        }
    }

    Ok(BubbleRay {
        angle: theta.clone(),
        chain: plan.chain.clone(),
        plan,
        trace: RayTrace {
            kind: RayKind::Bubble,
            angle: theta.clone(),
            parameter: Some(a),
            points,
            t: tags,
            landing_estimate: landing,
        },
        pinch_points: pinches,
        centers,
    })
}

/// `h_a(z) = φ₁⁻¹(φ_a(z))` near ∞, where both Böttcher series converge; the
/// conjugacy between `g_a` and `g₁` on `E_∞` normalized by `h_a′(∞) = 1`.
pub fn h_transfer(a: Complex64, z: Complex64, opts: &NewtonOptions) -> Result<Complex64> {
    let phi_a = super::bottcher::bubble_boettcher_inf(a, z)?;
    let one = Complex64::new(1.0, 0.0);
    let target = phi_a.ln();
    let coord = Coordinate::InternalInfinity { a: one };
    let w = solve_node(coord, z, target, opts).ok_or(Error::NoConvergence {
        iterations: opts.max_iter,
        residual: f64::NAN,
    })?;
    // confirm the branch: the image must itself be in the series region
    let check = log_phi(coord, w, target.im)?.value;
    if (check - target).norm() > 1e-9 {
        return Err(Error::Internal(format!("h_a({z}) landed on the wrong branch")));
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{f_basilica, g_a_second, rho, trace_dynamic_ray, SpherePoint};
    use crate::lamination::generate;

    fn a(s: &str) -> Angle {
        s.parse().unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn internal_angles_on_the_main_bubble() {
        assert_eq!(basilica_internal_angle(&a("1/3")).unwrap(), Angle::zero());
        assert_eq!(basilica_internal_angle(&a("2/3")).unwrap(), Angle::zero());
        assert_eq!(basilica_internal_angle(&a("1/6")).unwrap(), a("1/2"));
        assert_eq!(basilica_internal_angle(&a("5/6")).unwrap(), a("1/2"));
        // the two endpoints of a boundary leaf share their internal angle
        assert_eq!(
            basilica_internal_angle(&a("5/24")).unwrap(),
            basilica_internal_angle(&a("7/24")).unwrap()
        );
        assert!(basilica_internal_angle(&a("1/2")).is_err());
        assert!(basilica_internal_angle(&a("0")).is_err());
    }

    /// Oracle: ψ(4φ) = 2ψ(φ) and monotonicity along [2/3, 5/6].
    #[test]
    fn internal_angle_semiconjugacy() {
        let lam = generate(6).unwrap();
        let mut boundary: Vec<(Angle, Angle)> = lam
            .leaves()
            .flat_map(|l| [l.a.clone(), l.b.clone()])
            .filter_map(|t| basilica_internal_angle(&t).ok().map(|s| (t, s)))
            .collect();
        assert!(boundary.len() > 20);
        for (t, s) in &boundary {
            let s4 = basilica_internal_angle(&t.double().double()).unwrap();
            assert_eq!(s4, s.double(), "{t}");
        }
        boundary.retain(|(t, _)| t >= &a("2/3") && t <= &a("5/6"));
        boundary.sort();
        assert!(boundary.windows(2).all(|w| w[0].1 <= w[1].1));
    }

    #[test]
    fn generations() {
        assert_eq!(bubble_generation(&Leaf::major()), 1);
        assert_eq!(bubble_generation(&Leaf::new(a("5/6"), a("1/6"), 0)), 1);
        assert_eq!(bubble_generation(&Leaf::new(a("11/12"), a("1/12"), 1)), 2);
        assert_eq!(bubble_generation(&Leaf::new(a("5/12"), a("7/12"), 1)), 2);
        assert_eq!(bubble_generation(&Leaf::new(a("5/24"), a("7/24"), 2)), 3);
    }

    #[test]
    fn plan_for_one_third_is_the_fixed_internal_ray() {
        let lam = generate(4).unwrap();
        let p = plan_bubble_ray(&a("1/3"), &lam).unwrap();
        assert!(p.chain.is_empty() && p.finite);
        assert_eq!(p.steps.len(), 1);
        assert_eq!(p.steps[0].exit_angle, Some(Angle::zero()));
        assert_eq!(p.target_leaf, Some(Leaf::major()));
    }

    #[test]
    fn plan_for_zero_runs_along_the_axis() {
        let lam = generate(6).unwrap();
        let p = plan_bubble_ray(&Angle::zero(), &lam).unwrap();
        assert!(!p.finite);
        assert_eq!(p.chain.len(), 7);
        assert_eq!(p.steps[0].exit_angle, Some(a("1/2")));
        for s in &p.steps[1..p.steps.len() - 1] {
            assert_eq!(s.entry_angle, Some(Angle::zero()));
            assert_eq!(s.exit_angle, Some(a("1/2")));
        }
    }

    #[test]
    fn alpha_of_g1() {
        let z = alpha_fixed_point(c(1.0, 0.0), &RayOptions::default()).unwrap();
        assert!((z - c((5f64.sqrt() - 1.0) / 2.0, 0.0)).norm() < 1e-12, "{z}");
    }

    #[test]
    fn one_third_lands_at_alpha_and_twins_the_basilica_ray() {
        let lam = generate(4).unwrap();
        let r = trace_bubble_ray(c(1.0, 0.0), &a("1/3"), &lam, 5, &RayOptions::default()).unwrap();
        let z = r.trace.landing_estimate.unwrap();
        assert!((z - c((5f64.sqrt() - 1.0) / 2.0, 0.0)).norm() < 1e-6);
        let f = trace_dynamic_ray(c(-1.0, 0.0), &a("2/3"), &RayOptions::default()).unwrap();
        let pushed = rho(SpherePoint::Finite(z)).finite().unwrap();
        assert!((pushed - f.landing_estimate.unwrap()).norm() < 1e-6);
    }

    #[test]
    fn zero_marches_along_the_real_axis() {
        let lam = generate(8).unwrap();
        let r = trace_bubble_ray(c(1.0, 0.0), &Angle::zero(), &lam, 5, &RayOptions::default()).unwrap();
        assert_eq!(r.pinch_points.len(), 5);
        assert!(r.trace.points.iter().all(|z| z.im.abs() < 1e-9), "left the axis");
        let ext = r.bubble_extents();
        assert!(ext.windows(2).all(|w| w[1] < w[0]), "{ext:?}");
        // pinch points of g₁ are ρ⁻¹ of those of f_B, which sit at −α, …
        let x1 = rho(SpherePoint::Finite(r.pinch_points[0])).finite().unwrap();
        assert!((f_basilica(x1) - c((1.0 - 5f64.sqrt()) / 2.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn non_b_finite_ray() {
        // 1/5 lies on the boundary of a bubble? check consistency either way
        let lam = generate(10).unwrap();
        for th in ["1/7", "2/7", "1/5", "3/10"] {
            let r = trace_bubble_ray(c(1.0, 0.0), &a(th), &lam, 12, &RayOptions::default()).unwrap();
            if let Some(z) = r.trace.landing_estimate {
                let phi = a(th).neg();
                let f = trace_dynamic_ray(c(-1.0, 0.0), &phi, &RayOptions::default()).unwrap();
                let pushed = rho(SpherePoint::Finite(z)).finite().unwrap();
                assert!((pushed - f.landing_estimate.unwrap()).norm() < 1e-6, "{th}");
            }
        }
    }

    #[test]
    fn h_transfer_near_infinity() {
        let opts = NewtonOptions::default();
        let a1 = c(0.3, 0.8);
        let z = c(400.0, 150.0);
        let w = h_transfer(a1, z, &opts).unwrap();
        assert!(((w - z) / z).norm() < 0.05);
        let lhs = h_transfer(a1, g_a_second(a1, z), &opts).unwrap();
        let rhs = g_a_second(c(1.0, 0.0), w);
        assert!(((lhs - rhs) / rhs).norm() < 1e-9);
        // a = 1 is the identity
        let w = h_transfer(c(1.0, 0.0), z, &opts).unwrap();
        assert!((w - z).norm() < 1e-9 * z.norm());
    }
}
