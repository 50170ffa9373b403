use lamin_mate::combinat::{self, WakePair};
use lamin_mate::Angle;

fn crosses(x: &WakePair, y: &WakePair) -> bool {
    let inside = |t: &Angle| &x.phi1 < t && t < &x.phi2;
    inside(&y.phi1) != inside(&y.phi2)
}

#[test]
fn lavaurs_pairs_are_complete_and_non_crossing() {
    let all = combinat::lavaurs(10).unwrap();
    let flat: Vec<&WakePair> = all.iter().flatten().collect();
    for (p, pairs) in all.iter().enumerate() {
        let p = p as u32 + 1;
        let expected = (1..=p)
            .filter(|d| p % d == 0)
            .map(|d| mobius(p / d) * ((1i64 << d) - 1))
            .sum::<i64>();
        let count = if p == 1 { 0 } else { expected as usize / 2 };
        assert_eq!(pairs.len(), count, "period {p}");
        for w in pairs {
            assert_eq!(w.phi1.classify().period, p);
            assert_eq!(w.phi2.classify().period, p);
        }
    }
    for (i, x) in flat.iter().enumerate() {
        for y in &flat[i + 1..] {
            assert!(!crosses(x, y), "{x:?} crosses {y:?}");
        }
    }
}

fn mobius(n: u32) -> i64 {
    let (mut n, mut sign, mut d) = (n, 1, 2);
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

#[test]
fn every_copy_outside_the_basilica_wake_is_bounded() {
    for row in combinat::boundedness_table(10).unwrap() {
        assert!(row.witness_phi1.is_some() || row.witness_phi2.is_some(), "{row:?}");
    }
}

#[test]
fn strips_validate_for_all_pairs() {
    for w in combinat::lavaurs(10).unwrap().iter().flatten() {
        if w.in_basilica_wake() {
            continue;
        }
        let s = combinat::strip_angles(w).unwrap();
        let delta = w.phi1.arc_to(&w.phi2).scale_down(w.period);
        assert_eq!(s.psi1, w.phi1.add(&delta));
        assert_eq!(s.psi2, w.phi2.sub(&delta));
    }
}

#[test]
fn satellite_detection() {
    let w = WakePair::new("1/7".parse().unwrap(), "2/7".parse().unwrap()).unwrap();
    assert!(w.is_satellite());
    let w = WakePair::new("3/15".parse().unwrap(), "4/15".parse().unwrap()).unwrap();
    assert!(!w.is_satellite());
}
