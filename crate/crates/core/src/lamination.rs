//! The z²-invariant Basilica lamination.
//!
//! Leaves are generated exactly: the root leaves ⟨1/3,2/3⟩ (depth −1) and
//! ⟨5/6,1/6⟩ (depth 0), then each depth-n leaf ⟨a,b⟩ is pulled back by
//! pairing its four preimages {a/2, a/2+1/2, b/2, b/2+1/2} according to the
//! component of S¹∖{1/3, 5/6} they fall in. A depth-n leaf has endpoints of
//! denominator 3·2ⁿ⁺¹ and subtends an arc of length 1/(3·2ⁿ).

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::circle::Angle;
use crate::error::{Error, Result};

pub const MAX_DEPTH: u32 = 30;

/// A chord ⟨a,b⟩ of the closed disk; the counterclockwise arc from `a` to `b`
/// is the short side.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Leaf {
    pub a: Angle,
    pub b: Angle,
    pub depth: i32,
}

impl Leaf {
    /// Orients the pair so that the counterclockwise arc `a → b` is at most 1/2.
    pub fn new(x: Angle, y: Angle, depth: i32) -> Leaf {
        let half = Angle::frac(1, 2);
        if x.arc_to(&y) <= half {
            Leaf { a: x, b: y, depth }
        } else {
            Leaf { a: y, b: x, depth }
        }
    }

    pub fn major() -> Leaf {
        Leaf::new(Angle::frac(1, 3), Angle::frac(2, 3), -1)
    }

    pub fn is_major(&self) -> bool {
        self.depth == -1
    }

    /// Length of the short arc.
    pub fn arc_length(&self) -> Angle {
        self.a.arc_to(&self.b)
    }

    pub fn has_endpoint(&self, t: &Angle) -> bool {
        &self.a == t || &self.b == t
    }

    pub fn partner(&self, t: &Angle) -> Option<&Angle> {
        if &self.a == t {
            Some(&self.b)
        } else if &self.b == t {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Open short arc containment.
    pub fn short_arc_contains(&self, t: &Angle) -> bool {
        t.in_cyclic_arc(&self.a, &self.b, true)
    }

    /// True iff `inner` sits strictly inside this leaf's short arc.
    pub fn strictly_contains(&self, inner: &Leaf) -> bool {
        self != inner
            && inner.a.in_cyclic_arc(&self.a, &self.b, false)
            && inner.b.in_cyclic_arc(&self.a, &self.b, false)
            && inner.arc_length() < self.arc_length()
    }

    /// Image under doubling. ⟨5/6,1/6⟩ and the major leaf both map to the
    /// major leaf.
    pub fn image(&self) -> Leaf {
        if self.depth <= 0 {
            return Leaf::major();
        }
        Leaf::new(self.a.double(), self.b.double(), self.depth - 1)
    }
}

/// `true` iff exactly one endpoint of `l2` lies in the open short arc of `l1`.
pub fn crosses(l1: &Leaf, l2: &Leaf) -> bool {
    l1.short_arc_contains(&l2.a) != l1.short_arc_contains(&l2.b)
}

/// Strictly nested leaves, outermost first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafChain(pub Vec<Leaf>);

impl LeafChain {
    pub fn leaves(&self) -> &[Leaf] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_strictly_nested(&self) -> bool {
        self.0.windows(2).all(|w| w[0].strictly_contains(&w[1]))
    }
}

#[derive(Clone, Debug)]
pub struct Lamination {
    max_depth: u32,
    // levels[0] is depth −1, levels[n + 1] is depth n; each sorted by `a`.
    levels: Vec<Vec<Leaf>>,
    by_endpoint: HashMap<Angle, (usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct LaminationDump {
    format_version: u32,
    max_depth: u32,
    leaves: Vec<Leaf>,
}

fn pairing_component(t: &Angle) -> bool {
    t.in_cyclic_arc(&Angle::frac(1, 3), &Angle::frac(5, 6), true)
}

/// Builds the lamination through `max_depth`.
pub fn generate(max_depth: u32) -> Result<Lamination> {
    if max_depth > MAX_DEPTH {
        return Err(Error::Config(format!(
            "lamination depth {max_depth} outside 0..={MAX_DEPTH}"
        )));
    }
    let mut levels: Vec<Vec<Leaf>> = Vec::with_capacity(max_depth as usize + 2);
    levels.push(vec![Leaf::major()]);
    levels.push(vec![Leaf::new(Angle::frac(5, 6), Angle::frac(1, 6), 0)]);
    for depth in 1..=max_depth as i32 {
        let prev = levels.last().unwrap();
        let mut next = Vec::with_capacity(prev.len() * 2);
        for leaf in prev {
            let (a0, a1) = leaf.a.halves();
            let (b0, b1) = leaf.b.halves();
            let (mut inside, mut outside) = (Vec::new(), Vec::new());
            for t in [a0, a1, b0, b1] {
                if pairing_component(&t) {
                    inside.push(t);
                } else {
                    outside.push(t);
                }
            }
            if inside.len() != 2 || outside.len() != 2 {
                return Err(Error::Internal(format!(
                    "preimages of {leaf:?} do not split 2+2 across S¹∖{{1/3,5/6}}"
                )));
            }
            let x = inside.pop().unwrap();
            let y = inside.pop().unwrap();
            next.push(Leaf::new(x, y, depth));
            let x = outside.pop().unwrap();
            let y = outside.pop().unwrap();
            next.push(Leaf::new(x, y, depth));
        }
        next.sort_by(|l, r| l.a.cmp(&r.a));
        levels.push(next);
    }
    let mut by_endpoint = HashMap::new();
    for (li, level) in levels.iter().enumerate() {
        for (i, leaf) in level.iter().enumerate() {
            by_endpoint.insert(leaf.a.clone(), (li, i));
            by_endpoint.insert(leaf.b.clone(), (li, i));
        }
    }
    let lam = Lamination {
        max_depth,
        levels,
        by_endpoint,
    };
    lam.check_siblings_unlinked()?;
    Ok(lam)
}

impl Lamination {
    pub fn max_depth(&self) -> u32 {
        self.max_depth
    }

    /// Leaves at depth `depth` (−1 for the major leaf), sorted by `a`.
    pub fn leaves_at(&self, depth: i32) -> &[Leaf] {
        let idx = depth + 1;
        if idx < 0 {
            return &[];
        }
        self.levels
            .get(idx as usize)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    /// All leaves sorted by `(depth, a)`.
    pub fn leaves(&self) -> impl Iterator<Item = &Leaf> {
        self.levels.iter().flatten()
    }

    pub fn len(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The unique leaf with endpoint `t`, if `t` is a 𝔅-angle within depth.
    pub fn leaf_of(&self, t: &Angle) -> Option<&Leaf> {
        self.by_endpoint
            .get(t)
            .map(|&(li, i)| &self.levels[li][i])
    }

    /// The `∼_{L_B}` class of `t` on the circle.
    pub fn pinch_class(&self, t: &Angle) -> Vec<Angle> {
        match self.leaf_of(t) {
            Some(l) => {
                let mut v = vec![l.a.clone(), l.b.clone()];
                v.sort();
                v
            }
            None => vec![t.clone()],
        }
    }

    /// Leaves whose open short arc contains `t`, outermost first. At most one
    /// leaf per depth qualifies since same-depth arcs are disjoint.
    pub fn leaves_containing(&self, t: &Angle) -> LeafChain {
        let mut chain = Vec::new();
        for level in &self.levels {
            let idx = level.partition_point(|l| &l.a < t);
            let mut found = None;
            if idx > 0 && level[idx - 1].short_arc_contains(t) {
                found = Some(&level[idx - 1]);
            } else if let Some(last) = level.last() {
                // the leaf straddling angle 0, if any, has the largest `a`
                if last.short_arc_contains(t) {
                    found = Some(last);
                }
            }
            if let Some(l) = found {
                chain.push(l.clone());
            }
        }
        LeafChain(chain)
    }

    /// Leaves separating `t` from the center of the disk.
    ///
    /// 𝔅-angles terminate on a leaf rather than behind one; use
    /// [`Lamination::leaf_of`] for those.
    pub fn separating_chain(&self, t: &Angle) -> Result<LeafChain> {
        if t.is_b_angle() {
            return Err(Error::Domain(format!(
                "{t} is a 𝔅-angle; it is a leaf endpoint, use leaf_of"
            )));
        }
        Ok(self.leaves_containing(t))
    }

    /// The two preimages of a leaf are unlinked; a cheap guard on the pairing rule.
    fn check_siblings_unlinked(&self) -> Result<()> {
        for level in self.levels.iter().skip(1) {
            for w in level.windows(2) {
                if crosses(&w[0], &w[1]) {
                    return Err(Error::Internal(format!(
                        "generated leaves {:?} and {:?} cross",
                        w[0], w[1]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let dump = LaminationDump {
            format_version: crate::FORMAT_VERSION,
            max_depth: self.max_depth,
            leaves: self.leaves().cloned().collect(),
        };
        Ok(serde_json::to_string_pretty(&dump)?)
    }

    /// Reads a dump produced by [`Lamination::to_json`] and regenerates it,
    /// rejecting files whose leaves disagree with the generator.
    pub fn from_json(s: &str) -> Result<Lamination> {
        let dump: LaminationDump = serde_json::from_str(s)?;
        let lam = generate(dump.max_depth)?;
        let ours: Vec<&Leaf> = lam.leaves().collect();
        if ours.len() != dump.leaves.len() || ours.iter().zip(&dump.leaves).any(|(a, b)| *a != b) {
            return Err(Error::Domain("lamination dump does not match generator".into()));
        }
        Ok(lam)
    }
}

/// Hyperbolic geodesic of the unit disk joining `e^{2πia}` and `e^{2πib}`.
///
/// The geodesic is the arc of the circle orthogonal to S¹ through both
/// endpoints: centre `e^{2πim}/cos(πΔ)`, radius `tan(πΔ)`, where `m` is the
/// midpoint of the short arc and `Δ` its length.
pub fn leaf_geometry(leaf: &Leaf, samples: usize) -> Result<Vec<Complex64>> {
    if samples < 2 {
        return Err(Error::Config("leaf_geometry needs at least 2 samples".into()));
    }
    let pa = Complex64::from_polar(1.0, 2.0 * PI * leaf.a.to_f64());
    let pb = Complex64::from_polar(1.0, 2.0 * PI * leaf.b.to_f64());
    let delta = leaf.arc_length().to_f64();
    let half = PI * delta;
    let mut pts = Vec::with_capacity(samples);
    if (0.5 - delta).abs() < 1e-12 {
        for i in 0..samples {
            let s = i as f64 / (samples - 1) as f64;
            pts.push(pa * (1.0 - s) + pb * s);
        }
    } else {
        let mid = leaf.a.to_f64() + delta / 2.0;
        let centre = Complex64::from_polar(1.0 / half.cos(), 2.0 * PI * mid);
        let r = half.tan();
        let t0 = (pa - centre).arg();
        let mut t1 = (pb - centre).arg();
        // The inner arc sweeps less than π around the centre.
        let mut sweep = t1 - t0;
        while sweep > PI {
            sweep -= 2.0 * PI;
        }
        while sweep < -PI {
            sweep += 2.0 * PI;
        }
        t1 = t0 + sweep;
        for i in 0..samples {
            let s = i as f64 / (samples - 1) as f64;
            pts.push(centre + Complex64::from_polar(r, t0 + (t1 - t0) * s));
        }
    }
    pts[0] = pa;
    pts[samples - 1] = pb;
    Ok(pts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Angle {
        s.parse().unwrap()
    }

    fn leaf(x: &str, y: &str, d: i32) -> Leaf {
        Leaf::new(a(x), a(y), d)
    }

    /// Independent pairing oracle: brute-force all 3 pairings of the four
    /// preimages and keep the one whose pairs are same-component.
    fn oracle_children(l: &Leaf) -> Vec<(Angle, Angle)> {
        let (a0, a1) = l.a.halves();
        let (b0, b1) = l.b.halves();
        let pts = [a0, a1, b0, b1];
        let third = 1.0 / 3.0;
        let five_sixths = 5.0 / 6.0;
        let side = |t: &Angle| {
            let x = t.to_f64();
            x > third && x < five_sixths
        };
        for (i, j, k, m) in [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)] {
            if side(&pts[i]) == side(&pts[j]) && side(&pts[k]) == side(&pts[m]) {
                let mut v = vec![
                    ordered(pts[i].clone(), pts[j].clone()),
                    ordered(pts[k].clone(), pts[m].clone()),
                ];
                v.sort();
                return v;
            }
        }
        panic!("no consistent pairing for {l:?}");
    }

    fn ordered(x: Angle, y: Angle) -> (Angle, Angle) {
        let l = Leaf::new(x, y, 0);
        (l.a, l.b)
    }

    fn pairs(leaves: &[Leaf]) -> Vec<(Angle, Angle)> {
        let mut v: Vec<_> = leaves.iter().map(|l| (l.a.clone(), l.b.clone())).collect();
        v.sort();
        v
    }

    #[test]
    fn depth_zero_is_the_two_root_leaves() {
        let lam = generate(0).unwrap();
        assert_eq!(lam.len(), 2);
        assert_eq!(lam.leaves_at(-1), &[leaf("1/3", "2/3", -1)]);
        assert_eq!(lam.leaves_at(0), &[leaf("5/6", "1/6", 0)]);
    }

    #[test]
    fn depth_one_and_two_match_hand_pairing() {
        let lam = generate(2).unwrap();
        assert_eq!(
            pairs(lam.leaves_at(1)),
            vec![(a("5/12"), a("7/12")), (a("11/12"), a("1/12"))]
                .into_iter()
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect::<Vec<_>>()
        );
        let mut want = vec![
            (a("5/24"), a("7/24")),
            (a("17/24"), a("19/24")),
            (a("11/24"), a("13/24")),
            (a("23/24"), a("1/24")),
        ];
        want.sort();
        assert_eq!(pairs(lam.leaves_at(2)), want);
    }

    #[test]
    fn generation_matches_pairing_oracle() {
        let lam = generate(7).unwrap();
        for d in 0..7 {
            let mut expected: Vec<_> = lam.leaves_at(d).iter().flat_map(oracle_children).collect();
            expected.sort();
            assert_eq!(pairs(lam.leaves_at(d + 1)), expected, "depth {}", d + 1);
        }
    }

    #[test]
    fn depth_out_of_range() {
        assert!(matches!(generate(31), Err(Error::Config(_))));
    }

    #[test]
    fn leaf_of_examples() {
        let lam = generate(3).unwrap();
        assert_eq!(lam.leaf_of(&a("5/6")), Some(&leaf("5/6", "1/6", 0)));
        assert_eq!(lam.leaf_of(&a("11/12")), Some(&leaf("11/12", "1/12", 1)));
        assert_eq!(lam.leaf_of(&a("1/5")), None);
        // deeper than generated
        assert_eq!(lam.leaf_of(&a("1/96")), None);
    }

    #[test]
    fn crosses_examples() {
        assert!(!crosses(&leaf("1/3", "2/3", -1), &leaf("5/6", "1/6", 0)));
        assert!(!crosses(&leaf("5/24", "7/24", 2), &leaf("11/24", "13/24", 2)));
        assert!(crosses(&leaf("0", "1/2", 0), &leaf("1/4", "3/4", 0)));
    }

    #[test]
    fn pinch_class_examples() {
        let lam = generate(2).unwrap();
        assert_eq!(lam.pinch_class(&a("1/6")), vec![a("1/6"), a("5/6")]);
        assert_eq!(lam.pinch_class(&a("1/3")), vec![a("1/3"), a("2/3")]);
        assert_eq!(lam.pinch_class(&Angle::zero()), vec![Angle::zero()]);
    }

    /// Oracle: linear scan of every leaf for short-arc containment.
    fn scan_chain(lam: &Lamination, t: &Angle) -> Vec<Leaf> {
        let mut v: Vec<Leaf> = lam
            .leaves()
            .filter(|l| l.short_arc_contains(t))
            .cloned()
            .collect();
        v.sort_by_key(|l| l.depth);
        v
    }

    #[test]
    fn separating_chain_of_one_quarter() {
        let lam = generate(4).unwrap();
        let chain = lam.separating_chain(&a("1/4")).unwrap();
        assert_eq!(
            chain.leaves(),
            &[leaf("5/24", "7/24", 2), leaf("11/48", "13/48", 3), leaf("23/96", "25/96", 4)]
        );
        assert_eq!(chain.leaves(), scan_chain(&lam, &a("1/4")).as_slice());
        assert!(chain.is_strictly_nested());
    }

    #[test]
    fn separating_chain_of_zero_and_one_half_by_scan() {
        // Frozen from the linear-scan oracle at depth 12: the leaves around
        // angle 0 are ⟨5/6,1/6⟩, ⟨11/12,1/12⟩, ⟨23/24,1/24⟩, …; around 1/2 the
        // major leaf comes first.
        let lam = generate(12).unwrap();
        let zero = lam.separating_chain(&Angle::zero()).unwrap();
        assert_eq!(zero.leaves(), scan_chain(&lam, &Angle::zero()).as_slice());
        assert_eq!(zero.len(), 13);
        for (n, l) in zero.leaves().iter().enumerate() {
            let den = 3i64 << (n + 1);
            assert_eq!(l, &Leaf::new(Angle::frac(-1, den), Angle::frac(1, den), n as i32));
        }
        let half = lam.separating_chain(&a("1/2")).unwrap();
        assert_eq!(half.leaves(), scan_chain(&lam, &a("1/2")).as_slice());
        assert_eq!(half.len(), 13);
        assert!(half.leaves()[0].is_major());
        assert_eq!(half.leaves()[1], leaf("5/12", "7/12", 1));
    }

    #[test]
    fn separating_chain_rejects_b_angles() {
        let lam = generate(2).unwrap();
        assert!(matches!(lam.separating_chain(&a("5/6")), Err(Error::Domain(_))));
    }

    #[test]
    fn separating_chain_matches_scan_and_is_prefix_monotone() {
        let lams: Vec<_> = (0..=8).map(|d| generate(d).unwrap()).collect();
        for q in [7i64, 10, 15, 31, 63, 80, 127] {
            for p in 0..q {
                let t = Angle::frac(p, q);
                if t.is_b_angle() {
                    continue;
                }
                for d in 0..8 {
                    let c = lams[d].separating_chain(&t).unwrap();
                    assert_eq!(c.leaves(), scan_chain(&lams[d], &t).as_slice());
                    assert!(c.is_strictly_nested());
                    let next = lams[d + 1].separating_chain(&t).unwrap();
                    assert!(next.leaves().starts_with(c.leaves()));
                }
            }
        }
    }

    #[test]
    fn geodesic_of_a_diameter() {
        let pts = leaf_geometry(&leaf("0", "1/2", 0), 3).unwrap();
        assert!((pts[0] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(pts[1].norm() < 1e-15);
        assert!((pts[2] - Complex64::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn geodesic_of_major_leaf_passes_through_apex() {
        // Orthogonal circle centred at −2 with radius √3; apex at √3 − 2.
        let pts = leaf_geometry(&Leaf::major(), 101).unwrap();
        let apex = pts[50];
        assert!((apex - Complex64::new(3f64.sqrt() - 2.0, 0.0)).norm() < 1e-12);
        for p in &pts {
            assert!(p.norm() <= 1.0 + 1e-12);
            assert!(((p - Complex64::new(-2.0, 0.0)).norm() - 3f64.sqrt()).abs() < 1e-12);
        }
    }

    #[test]
    fn geodesic_endpoints_exact() {
        let lam = generate(4).unwrap();
        for l in lam.leaves() {
            let pts = leaf_geometry(l, 17).unwrap();
            let pa = Complex64::from_polar(1.0, 2.0 * PI * l.a.to_f64());
            let pb = Complex64::from_polar(1.0, 2.0 * PI * l.b.to_f64());
            assert_eq!(pts[0], pa);
            assert_eq!(pts[16], pb);
            assert!(pts.iter().all(|p| p.norm() <= 1.0 + 1e-12));
        }
        assert!(leaf_geometry(&Leaf::major(), 1).is_err());
    }

    #[test]
    fn json_round_trip() {
        let lam = generate(3).unwrap();
        let s = lam.to_json().unwrap();
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["leaves"].as_array().unwrap().len(), 16);
        assert_eq!(v["leaves"][1]["a"], "5/6");
        assert_eq!(v["format_version"], 1);
        let back = Lamination::from_json(&s).unwrap();
        assert_eq!(back.len(), lam.len());
    }
}
