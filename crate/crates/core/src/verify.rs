//! Self-checks with measured values, grouped in four suites.
//!
//! Each check carries the number of the acceptance criterion it belongs to.
//! Failures are report content: a check that errors out is recorded as
//! failed with the error as its measured value.

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::circle::{normalize, Angle};
use crate::combinat::{bounded_side, lavaurs, pinch_pairs, BoundednessRow, WakePair};
use crate::dynamics::{
    f_basilica, g_a, in_m2, rho, trace_bubble_ray, trace_dynamic_ray, trace_parameter_ray, EscapeStatus,
    RayOptions, SpherePoint,
};
use crate::error::{Error, Result};
use crate::lamination::{crosses, generate, Leaf};
use crate::render::{render_lamination_disk, render_m1_overlay, render_m2, with_threads, RenderConfig, Viewport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lamination,
    Combinat,
    Numerics,
    Render,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Lamination, Suite::Combinat, Suite::Numerics, Suite::Render];

    pub fn parse(s: &str) -> Result<Suite> {
        match s {
            "lamination" => Ok(Suite::Lamination),
            "combinat" => Ok(Suite::Combinat),
            "numerics" => Ok(Suite::Numerics),
            "render" => Ok(Suite::Render),
            _ => Err(Error::Config(format!(
                "unknown suite {s:?} (lamination|combinat|numerics|render)"
            ))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Lamination => "lamination",
            Suite::Combinat => "combinat",
            Suite::Numerics => "numerics",
            Suite::Render => "render",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub criterion: u8,
    pub name: String,
    pub passed: bool,
    pub measured: String,
    /// Wall-clock time; kept out of the JSON so reports are reproducible.
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub format_version: u32,
    pub suite: Suite,
    pub checks: Vec<Check>,
    /// Boundedness of every copy, for the combinat suite.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub table: Vec<BoundednessRow>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            let verdict = if c.passed { "PASS" } else { "FAIL" };
            writeln!(
                s,
                "{verdict} [{}] {}: {} ({:.2?})",
                c.criterion, c.name, c.measured, c.elapsed
            )
            .unwrap();
        }
        if !self.table.is_empty() {
            writeln!(s, "period  phi1  phi2  witness_phi1  witness_phi2").unwrap();
            let cell = |w: Option<u32>| w.map_or("none".to_string(), |n| format!("n={n}"));
            for r in &self.table {
                writeln!(
                    s,
                    "{:>6}  {}  {}  {}  {}",
                    r.period,
                    r.phi1,
                    r.phi2,
                    cell(r.witness_phi1),
                    cell(r.witness_phi2)
                )
                .unwrap();
            }
        }
        s
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    /// Used for every trace and landing estimate; loosening its Newton
    /// tolerance is the negative control of the numerics suite.
    pub rays: RayOptions,
    /// The larger thread count for determinism checks.
    pub threads: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            rays: RayOptions::default(),
            threads: std::thread::available_parallelism().map_or(4, |n| n.get()).max(2),
        }
    }
}

struct Checks(Vec<Check>);

impl Checks {
    /// Runs `f`, which returns (passed, measured); `limit` bounds the time.
    fn run(&mut self, criterion: u8, name: &str, limit: Option<Duration>, f: impl FnOnce() -> Result<(bool, String)>) {
        let start = Instant::now();
        let out = f();
        let elapsed = start.elapsed();
        let (mut passed, mut measured) = match out {
            Ok(v) => v,
            Err(e) => (false, format!("error: {e}")),
        };
        if let Some(limit) = limit {
            if elapsed > limit {
                passed = false;
                measured.push_str(&format!("; over the {limit:?} budget"));
            }
        }
        self.0.push(Check {
            criterion,
            name: name.to_string(),
            passed,
            measured,
            elapsed,
        });
    }
}

pub fn verify(suite: Suite, opts: &VerifyOptions) -> Report {
    let mut checks = Checks(Vec::new());
    let mut table = Vec::new();
    match suite {
        Suite::Lamination => lamination_suite(&mut checks),
        Suite::Combinat => table = combinat_suite(&mut checks),
        Suite::Numerics => numerics_suite(&mut checks, opts),
        Suite::Render => render_suite(&mut checks, opts),
    }
    Report {
        format_version: crate::FORMAT_VERSION,
        suite,
        checks: checks.0,
        table,
    }
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn lamination_suite(checks: &mut Checks) {
    checks.run(1, "lamination laws at depth 12", secs(5), || {
        let lam = generate(12)?;
        let count = lam.len();
        let mut problems = Vec::new();
        if count != 1 << 13 {
            problems.push(format!("{count} leaves"));
        }
        let all: HashSet<&Leaf> = lam.leaves().collect();
        for l in lam.leaves() {
            let want_len = if l.is_major() {
                Angle::frac(1, 3)
            } else {
                normalize(1, 3 * (1i64 << l.depth))?
            };
            if l.arc_length() != want_len {
                problems.push(format!("⟨{}, {}⟩ subtends {}", l.a, l.b, l.arc_length()));
            }
            let img = l.image();
            let depth_ok = img.depth == (l.depth - 1).max(-1);
            if !depth_ok || !all.contains(&img) {
                problems.push(format!("image of ⟨{}, {}⟩ is not a leaf", l.a, l.b));
            }
        }
        let shallow: Vec<&Leaf> = lam.leaves().filter(|l| l.depth <= 8).collect();
        let mut crossings = 0usize;
        for (i, l) in shallow.iter().enumerate() {
            crossings += shallow[i + 1..].iter().filter(|m| crosses(l, m)).count();
        }
        if crossings > 0 {
            problems.push(format!("{crossings} crossing pairs at depth ≤ 8"));
        }
        Ok((
            problems.is_empty(),
            format!(
                "{count} leaves, {} pairs checked for crossing, {}",
                shallow.len() * (shallow.len() - 1) / 2,
                if problems.is_empty() {
                    "no violations".to_string()
                } else {
                    problems.into_iter().take(3).collect::<Vec<_>>().join("; ")
                }
            ),
        ))
    });
}

fn combinat_suite(checks: &mut Checks) -> Vec<BoundednessRow> {
    let mut table = Vec::new();
    checks.run(2, "every copy of period ≤ 8 outside the 1/2-limb is bounded", secs(10), || {
        let mut unbounded = Vec::new();
        for pairs in lavaurs(8)? {
            for w in pairs.iter().filter(|w| !w.in_basilica_wake()) {
                let row = BoundednessRow {
                    period: w.period,
                    phi1: w.phi1.clone(),
                    phi2: w.phi2.clone(),
                    witness_phi1: bounded_side(&w.phi1),
                    witness_phi2: bounded_side(&w.phi2),
                };
                if row.witness_phi1.is_none() && row.witness_phi2.is_none() {
                    unbounded.push(format!("({}, {})", w.phi1, w.phi2));
                }
                table.push(row);
            }
        }
        Ok((
            unbounded.is_empty(),
            format!("{} copies, {} without a witness {:?}", table.len(), unbounded.len(), unbounded),
        ))
    });
    let report = |phi1: &str, phi2: &str| -> Result<(Option<u32>, Option<u32>)> {
        let w = WakePair::new(phi1.parse()?, phi2.parse()?)?;
        let r = crate::combinat::boundedness(&w)?;
        Ok((r.witness_phi1, r.witness_phi2))
    };
    checks.run(2, "(3/15, 4/15) reports (none, n=2)", None, || {
        let r = report("3/15", "4/15")?;
        Ok((r == (None, Some(2)), format!("{r:?}")))
    });
    checks.run(2, "satellite (1/7, 2/7) has witnesses on both angles", None, || {
        let r = report("1/7", "2/7")?;
        Ok((r.0.is_some() && r.1.is_some(), format!("{r:?}")))
    });
    checks.run(8, "pinch pairs at depth 6", None, || {
        let lam = generate(6)?;
        let pp = pinch_pairs(&lam);
        let leaves: BTreeSet<(Angle, Angle)> = lam
            .leaves()
            .filter(|l| !l.is_major() && (0..=6).contains(&l.depth))
            .map(|l| (l.a.clone(), l.b.clone()))
            .collect();
        let pairs: BTreeSet<(Angle, Angle)> = pp.pairs.iter().cloned().collect();
        let all_b = pp.pairs.iter().all(|(x, y)| x.is_b_angle() && y.is_b_angle());
        let has = pairs.contains(&(Angle::frac(5, 6), Angle::frac(1, 6)));
        let ok = pp.pairs.len() == 127 && pairs == leaves && all_b && has;
        Ok((
            ok,
            format!(
                "{} pairs, bijective with leaves: {}, all 𝔅-angles: {all_b}, (5/6, 1/6) present: {has}",
                pp.pairs.len(),
                pairs == leaves
            ),
        ))
    });
    table
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn numerics_suite(checks: &mut Checks, opts: &VerifyOptions) {
    checks.run(3, "ρ∘g₁ = f_B∘ρ on 1000 points", secs(1), || {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let (mut abs, mut rel, mut n) = (0f64, 0f64, 0);
        while n < 1000 {
            let z = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            if z.norm() > 2.0 || [0.0, 1.0, 2.0].iter().any(|p| (z + p).norm() <= 1e-3) {
                continue;
            }
            let lhs = rho(g_a(c(1.0, 0.0), z).into()).finite();
            let rhs = rho(z.into()).finite().map(f_basilica);
            let (Some(lhs), Some(rhs)) = (lhs, rhs) else {
                return Err(Error::Internal(format!("∞ at a sample point {z}")));
            };
            abs = abs.max((lhs - rhs).norm());
            rel = rel.max((lhs - rhs).norm() / rhs.norm().max(1.0));
            n += 1;
        }
        Ok((abs < 1e-12, format!("max |residual| {abs:.3e} (relative {rel:.3e})")))
    });
    checks.run(4, "parameter rays 0, 1/3, 1/6, 5/6 land", secs(60), || {
        let targets = [("0", c(0.25, 0.0)), ("1/3", c(-0.75, 0.0)), ("1/6", c(0.0, 1.0)), ("5/6", c(0.0, -1.0))];
        let mut ok = true;
        let mut parts = Vec::new();
        for (th, want) in targets {
            let r = trace_parameter_ray(&th.parse()?, &opts.rays)?;
            match r.landing_estimate {
                Some(z) => {
                    let err = (z - want).norm();
                    ok &= err < 1e-3;
                    parts.push(format!("{th}: {err:.1e}"));
                }
                None => {
                    ok = false;
                    parts.push(format!("{th}: no landing"));
                }
            }
        }
        Ok((ok, parts.join(", ")))
    });
    checks.run(5, "rays of z² with denominator ≤ 63 land on e^{2πiθ}", secs(5), || {
        let mut angles = BTreeSet::new();
        for q in 1..=63i64 {
            for p in 0..q {
                angles.insert(normalize(p, q)?);
            }
        }
        let angles: Vec<Angle> = angles.into_iter().collect();
        let errs = angles
            .par_iter()
            .map(|t| {
                let r = trace_dynamic_ray(c(0.0, 0.0), t, &opts.rays)?;
                Ok(r.landing_estimate
                    .map_or(f64::INFINITY, |z| (z - Complex64::from_polar(1.0, std::f64::consts::TAU * t.to_f64())).norm()))
            })
            .collect::<Result<Vec<f64>>>()?;
        let worst = errs.iter().cloned().fold(0.0, f64::max);
        let bad = errs.iter().filter(|e| !(**e < 1e-8)).count();
        Ok((bad == 0, format!("{} angles, worst error {worst:.1e}, {bad} off", angles.len())))
    });
    checks.run(6, "membership oracles in the V₂ slice", None, || {
        let one = c(1.0, 0.0);
        // g₁(−1) = 1/((−1)(−1+2)) = −1: exact in binary floating point
        let fixed = (g_a(one, c(-1.0, 0.0)) + 1.0).norm();
        let member = in_m2(one, 1000, 1e-6)?.status;
        let neg = in_m2(c(-4.0, 0.0), 1000, 1e-6)?.status;
        let big = in_m2(c(1e6, 0.0), 1000, 1e-6)?.status;
        let ok = fixed == 0.0
            && member == EscapeStatus::Member
            && neg == EscapeStatus::Escaped
            && big == EscapeStatus::Escaped;
        Ok((
            ok,
            format!("|g₁(−1)+1| = {fixed:e}; a=1 {member:?}, a=−4 {neg:?}, a=1e6 {big:?}"),
        ))
    });
    checks.run(7, "bubble ray 1/3 at a = 1 lands at α and twins R^{2/3}", secs(10), || {
        let lam = generate(4)?;
        let b = trace_bubble_ray(c(1.0, 0.0), &Angle::frac(1, 3), &lam, 4, &opts.rays)?;
        let f = trace_dynamic_ray(c(-1.0, 0.0), &Angle::frac(2, 3), &opts.rays)?;
        let (Some(z), Some(w)) = (b.trace.landing_estimate, f.landing_estimate) else {
            return Ok((false, "a ray did not land".into()));
        };
        let alpha = c((5f64.sqrt() - 1.0) / 2.0, 0.0);
        let pushed = rho(SpherePoint::Finite(z))
            .finite()
            .ok_or_else(|| Error::Internal("landing at the pole of ρ".into()))?;
        let (e1, e2) = ((z - alpha).norm(), (pushed - w).norm());
        Ok((e1 < 1e-6 && e2 < 1e-6, format!("|B − α| {e1:.1e}, |ρ(B) − R| {e2:.1e}")))
    });
}

fn render_suite(checks: &mut Checks, opts: &VerifyOptions) {
    checks.run(6, "𝓜₂ member count stable from 500 to 1000 iterations", secs(60), || {
        let mut counts = Vec::new();
        for max_iter in [500, 1000] {
            let cfg = RenderConfig {
                max_iter,
                ..RenderConfig::m2()
            };
            counts.push(render_m2(&cfg)?.member_count() as f64);
        }
        let change = (counts[1] - counts[0]).abs() / counts[0].max(1.0);
        Ok((
            change < 0.02,
            format!("{} vs {} member pixels, change {:.3}%", counts[0], counts[1], 100.0 * change),
        ))
    });
    checks.run(9, "renders and traces are reproducible across runs and thread counts", None, || {
        let artifacts = |threads: usize| -> Result<Vec<Vec<u8>>> {
            with_threads(Some(threads), || -> Result<Vec<Vec<u8>>> {
                let lam = generate(3)?;
                let m2 = render_m2(&RenderConfig {
                    width: 160,
                    height: 160,
                    max_iter: 300,
                    ..RenderConfig::m2()
                })?;
                let m1 = render_m1_overlay(
                    &RenderConfig {
                        width: 200,
                        height: 200,
                        lamination_depth: Some(1),
                        max_iter: 200,
                        ..RenderConfig::m1()
                    },
                    &lam,
                    &opts.rays,
                )?;
                let disk = render_lamination_disk(&lam, 3)?;
                let ray = trace_parameter_ray(&Angle::frac(1, 7), &opts.rays)?;
                let bubble = trace_bubble_ray(c(1.0, 0.0), &Angle::zero(), &lam, 3, &opts.rays)?;
                let overlay = crate::render::render_dynamical_overlay(
                    c(-1.0, 0.0),
                    &RenderConfig {
                        width: 160,
                        height: 120,
                        viewport: Viewport::new(-1.8, 1.8, -1.35, 1.35)?,
                        lamination_depth: Some(1),
                        leaf_height: 0.05,
                        ..RenderConfig::m1()
                    },
                    &lam,
                    &opts.rays,
                )?;
                Ok(vec![
                    m2.to_png_bytes()?,
                    m2.sidecar_json()?.into_bytes(),
                    m1.to_png_bytes()?,
                    overlay.to_png_bytes()?,
                    disk.svg.into_bytes(),
                    ray.to_json()?.into_bytes(),
                    bubble.trace.to_json()?.into_bytes(),
                ])
            })?
        };
        let a = artifacts(1)?;
        let b = artifacts(1)?;
        let n = artifacts(opts.threads)?;
        let same_runs = a == b;
        let same_threads = a == n;
        Ok((
            same_runs && same_threads,
            format!(
                "{} artifacts; identical across runs: {same_runs}, across 1 and {} threads: {same_threads}",
                a.len(),
                opts.threads
            ),
        ))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_parse() {
        for s in Suite::ALL {
            assert_eq!(Suite::parse(s.name()).unwrap(), s);
        }
        assert!(Suite::parse("everything").is_err());
    }

    #[test]
    fn lamination_suite_passes() {
        let r = verify(Suite::Lamination, &VerifyOptions::default());
        assert!(r.passed(), "{}", r.to_text());
        assert!(!r.to_json().unwrap().contains("elapsed"));
    }

    #[test]
    fn combinat_suite_prints_the_table() {
        let r = verify(Suite::Combinat, &VerifyOptions::default());
        assert!(r.passed(), "{}", r.to_text());
        let text = r.to_text();
        assert!(text.contains("1/5  4/15  none  n=2"), "{text}");
        assert!(r.table.iter().all(|row| row.period <= 8));
    }
}
