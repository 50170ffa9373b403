//! Parameter-space combinatorics: Lavaurs ray pairs, renormalization strips,
//! the bounding predicates for Mandelbrot copies, pinch pairs and V₂-twin
//! angle portraits.

use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::circle::Angle;
use crate::error::{Error, Result};
use crate::lamination::Lamination;

pub const MAX_PERIOD: u32 = 20;

/// The two periodic parameter angles landing at the root of a hyperbolic
/// component, `phi1 < phi2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WakePair {
    pub phi1: Angle,
    pub phi2: Angle,
    pub period: u32,
}

impl WakePair {
    /// Builds a pair from two angles, checking both are periodic of the same period.
    pub fn new(phi1: Angle, phi2: Angle) -> Result<WakePair> {
        let (phi1, phi2) = if phi1 < phi2 { (phi1, phi2) } else { (phi2, phi1) };
        let (c1, c2) = (phi1.classify(), phi2.classify());
        if !c1.is_periodic() || !c2.is_periodic() || c1.period != c2.period || phi1 == phi2 {
            return Err(Error::Domain(format!(
                "({phi1}, {phi2}) is not a pair of distinct periodic angles of equal period"
            )));
        }
        Ok(WakePair {
            phi1,
            phi2,
            period: c1.period,
        })
    }

    /// True for pairs inside the 1/2-limb wake, `1/3 ≤ φ₁ < φ₂ ≤ 2/3`.
    pub fn in_basilica_wake(&self) -> bool {
        self.phi1 >= Angle::frac(1, 3) && self.phi2 <= Angle::frac(2, 3)
    }

    /// Both angles lie on one doubling cycle (satellite components).
    pub fn is_satellite(&self) -> bool {
        (1..self.period).any(|k| self.phi1.double_n(k) == self.phi2)
    }
}

/// The four boundary angles of a renormalization strip, in the cyclic order
/// `φ₁ < ψ₁ < ψ₂ < φ₂`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StripAngles {
    pub phi1: Angle,
    pub psi1: Angle,
    pub psi2: Angle,
    pub phi2: Angle,
}

/// Minimal doubling exponents putting φ₁ (resp. φ₂) strictly inside the
/// arc cut off by ⟨5/6,1/6⟩.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundednessReport {
    pub witness_phi1: Option<u32>,
    pub witness_phi2: Option<u32>,
}

fn exact_period_angles(period: u32) -> Vec<Angle> {
    let den = (1i64 << period) - 1;
    (0..den.max(1))
        .map(|k| Angle::frac(k, den.max(1)))
        .filter(|t| {
            let c = t.classify();
            c.preperiod == 0 && c.period == period
        })
        .collect()
}

/// Lavaurs pairing for all periods `1..=max_period`; entry `p - 1` holds period `p`.
///
/// The greedy rule (smallest unpaired `x` takes the first `y > x` whose chord
/// crosses nothing) amounts to pairing consecutive new angles inside each
/// complementary region of the chords drawn so far, which one sweep finds.
pub fn lavaurs(max_period: u32) -> Result<Vec<Vec<WakePair>>> {
    if !(1..=MAX_PERIOD).contains(&max_period) {
        return Err(Error::Config(format!(
            "period {max_period} outside 1..={MAX_PERIOD}"
        )));
    }
    let mut chords: Vec<(Angle, Angle)> = Vec::new();
    let mut out = Vec::new();
    for p in 1..=max_period {
        let mut pts: Vec<(Angle, Option<usize>)> = chords
            .iter()
            .enumerate()
            .flat_map(|(i, (u, v))| [(u.clone(), Some(i)), (v.clone(), Some(i))])
            .chain(exact_period_angles(p).into_iter().map(|t| (t, None)))
            .collect();
        pts.sort_by(|x, y| x.0.cmp(&y.0));

        // region key: innermost enclosing chord, `usize::MAX` for the outside
        let mut stack: Vec<usize> = Vec::new();
        let mut regions: std::collections::BTreeMap<usize, Vec<Angle>> = Default::default();
        for (t, id) in pts {
            match id {
                Some(id) if stack.last() == Some(&id) => {
                    stack.pop();
                }
                Some(id) => stack.push(id),
                None => regions
                    .entry(stack.last().copied().unwrap_or(usize::MAX))
                    .or_default()
                    .push(t),
            }
        }
        let mut pairs = Vec::new();
        for (_, pts) in regions {
            if pts.len() % 2 == 1 && p > 1 {
                return Err(Error::Internal(format!(
                    "odd number of period-{p} angles in a region starting at {}",
                    pts[0]
                )));
            }
            for c in pts.chunks_exact(2) {
                pairs.push(WakePair {
                    phi1: c[0].clone(),
                    phi2: c[1].clone(),
                    period: p,
                });
            }
        }
        pairs.sort_by(|x, y| x.phi1.cmp(&y.phi1));
        chords.extend(pairs.iter().map(|w| (w.phi1.clone(), w.phi2.clone())));
        out.push(pairs);
    }
    Ok(out)
}

/// Lavaurs ray pairs of exact period `period`, sorted by `phi1`.
pub fn pair_periodic_angles(period: u32) -> Result<Vec<WakePair>> {
    let mut all = lavaurs(period)?;
    Ok(all.pop().unwrap_or_default())
}

/// Smallest `n ≥ 0` with `2ⁿφ` in the open arc from 5/6 through 0 to 1/6.
///
/// The orbit is eventually periodic, so searching `n < preperiod + period`
/// decides the question.
pub fn bounded_side(phi: &Angle) -> Option<u32> {
    let c = phi.classify();
    let (lo, hi) = (Angle::frac(5, 6), Angle::frac(1, 6));
    let mut t = phi.clone();
    for n in 0..c.preperiod + c.period {
        if t.in_cyclic_arc(&lo, &hi, true) {
            return Some(n);
        }
        t = t.double();
    }
    None
}

fn reject_basilica_wake(w: &WakePair) -> Result<()> {
    if w.in_basilica_wake() {
        return Err(Error::Domain(format!(
            "wake ({}, {}) lies in the Basilica wake (1/3, 2/3)",
            w.phi1, w.phi2
        )));
    }
    Ok(())
}

pub fn boundedness(w: &WakePair) -> Result<BoundednessReport> {
    reject_basilica_wake(w)?;
    let report = BoundednessReport {
        witness_phi1: bounded_side(&w.phi1),
        witness_phi2: bounded_side(&w.phi2),
    };
    if report.witness_phi1.is_none() && report.witness_phi2.is_none() {
        return Err(Error::Internal(format!(
            "copy ({}, {}) is not bounded from either side",
            w.phi1, w.phi2
        )));
    }
    Ok(report)
}

/// Pulls the arc `[φ₁, φ₂]` back `p` times along the orbit of `anchor`,
/// choosing at each step the inverse branch containing the relevant orbit point.
fn pull_back_arc(start: &Angle, len: &Angle, anchor: &Angle, p: u32) -> Result<(Angle, Angle)> {
    let mut s = start.clone();
    let mut l = len.clone();
    for k in 1..=p {
        let target = anchor.double_n(p - k);
        let half_len = l.scale_down(1);
        let (s0, s1) = s.halves();
        let end0 = s0.add(&half_len);
        let end1 = s1.add(&half_len);
        if target.in_cyclic_arc(&s0, &end0, false) {
            s = s0;
        } else if target.in_cyclic_arc(&s1, &end1, false) {
            s = s1;
        } else {
            return Err(Error::Internal(format!(
                "no preimage arc contains {target} at pullback step {k}"
            )));
        }
        l = half_len;
    }
    let end = s.add(&l);
    Ok((s, end))
}

/// Boundary angles of the renormalization strip of the copy rooted at `w`.
pub fn strip_angles(w: &WakePair) -> Result<StripAngles> {
    reject_basilica_wake(w)?;
    let p = w.period;
    let len = w.phi1.arc_to(&w.phi2);
    let (s1, psi1) = pull_back_arc(&w.phi1, &len, &w.phi1, p)?;
    let (psi2, e2) = pull_back_arc(&w.phi1, &len, &w.phi2, p)?;
    if s1 != w.phi1 || e2 != w.phi2 {
        return Err(Error::Internal(format!(
            "pulled-back arcs [{s1}, {psi1}] and [{psi2}, {e2}] do not abut the wake"
        )));
    }
    let strip = StripAngles {
        phi1: w.phi1.clone(),
        psi1,
        psi2,
        phi2: w.phi2.clone(),
    };
    validate_strip(w, &strip)?;
    Ok(strip)
}

fn validate_strip(w: &WakePair, s: &StripAngles) -> Result<()> {
    let p = w.period;
    let fail = |what: &str| Err(Error::Internal(format!("strip of ({}, {}): {what}", w.phi1, w.phi2)));
    if !(s.psi1.in_cyclic_arc(&s.phi1, &s.phi2, true) && s.psi2.in_cyclic_arc(&s.psi1, &s.phi2, true)) {
        return fail("cyclic order φ₁ < ψ₁ < ψ₂ < φ₂ violated");
    }
    if s.psi1.classify().is_periodic() || s.psi2.classify().is_periodic() {
        return fail("ψ angles must be strictly preperiodic");
    }
    let orbit: Vec<Angle> = (0..p)
        .flat_map(|k| [w.phi1.double_n(k), w.phi2.double_n(k)])
        .collect();
    for psi in [&s.psi1, &s.psi2] {
        if !orbit.contains(&psi.double_n(p)) {
            return fail("2ᵖψ does not land on the orbit of φ₁, φ₂");
        }
    }
    // One of φ₁/2, φ₂/2 is the orbit predecessor, the other sits opposite.
    let (a0, a1) = w.phi1.halves();
    let (b0, b1) = w.phi2.halves();
    let pa = w.phi1.double_n(p - 1);
    let pb = w.phi2.double_n(p - 1);
    let form1 = a0 == pa && b1 == pb;
    let form2 = b0 == pb && a1 == pa;
    if !(form1 || form2) {
        return fail("predecessor angles are not φ/2 and φ/2 + 1/2");
    }
    Ok(())
}

/// Angle pairs identified by the map collapsing the Basilica limb.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinchPairs {
    /// One pair per leaf of depth ≥ 0.
    pub pairs: Vec<(Angle, Angle)>,
    /// ⟨1/3,2/3⟩: the boundary of the collapsed limb.
    pub limb_boundary: (Angle, Angle),
}

pub fn pinch_pairs(lam: &Lamination) -> PinchPairs {
    let major = crate::lamination::Leaf::major();
    PinchPairs {
        pairs: lam
            .leaves()
            .filter(|l| !l.is_major())
            .map(|l| (l.a.clone(), l.b.clone()))
            .collect(),
        limb_boundary: (major.a, major.b),
    }
}

/// A validated V₂ ray portrait: the same angles as the quadratic portrait.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct V2Portrait(pub Vec<Angle>);

pub fn twin_angles(portrait: &[Angle]) -> Result<V2Portrait> {
    if portrait.is_empty() {
        return Err(Error::Domain("empty portrait".into()));
    }
    let (third, two_thirds) = (Angle::frac(1, 3), Angle::frac(2, 3));
    for t in portrait {
        if t.is_b_angle() {
            return Err(Error::Domain(format!(
                "{t} is a 𝔅-angle; V₂-twins exist only for non-𝔅 portraits"
            )));
        }
        if t.in_cyclic_arc(&third, &two_thirds, true) {
            return Err(Error::Domain(format!(
                "{t} lies in the 1/2-limb wake (1/3, 2/3)"
            )));
        }
    }
    let mut v = portrait.to_vec();
    v.sort();
    v.dedup();
    Ok(V2Portrait(v))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundednessRow {
    pub period: u32,
    pub phi1: Angle,
    pub phi2: Angle,
    pub witness_phi1: Option<u32>,
    pub witness_phi2: Option<u32>,
}

/// Boundedness of every Lavaurs pair of period ≤ `max_period` outside the
/// Basilica wake.
pub fn boundedness_table(max_period: u32) -> Result<Vec<BoundednessRow>> {
    let mut rows = Vec::new();
    for pairs in lavaurs(max_period)? {
        for w in pairs.iter().filter(|w| !w.in_basilica_wake()) {
            let r = boundedness(w)?;
            rows.push(BoundednessRow {
                period: w.period,
                phi1: w.phi1.clone(),
                phi2: w.phi2.clone(),
                witness_phi1: r.witness_phi1,
                witness_phi2: r.witness_phi2,
            });
        }
    }
    Ok(rows)
}

fn witness_cell(w: Option<u32>) -> String {
    w.map_or_else(|| "none".to_string(), |n| n.to_string())
}

pub fn write_boundedness_csv<W: Write>(rows: &[BoundednessRow], out: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(["period", "phi1", "phi2", "witness_phi1", "witness_phi2"])?;
    for r in rows {
        wtr.write_record([
            r.period.to_string(),
            r.phi1.to_string(),
            r.phi2.to_string(),
            witness_cell(r.witness_phi1),
            witness_cell(r.witness_phi2),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}
