//! Exact arithmetic on the circle ℝ/ℤ.
//!
//! Every combinatorial object in the crate (leaves, wakes, ray angles) is
//! addressed by an [`Angle`]: a reduced fraction `p/q` with `0 ≤ p < q`.
//! Numerators and denominators are arbitrary precision, so deep lamination
//! levels (denominators `3·2ⁿ`) never overflow.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A rational point of the circle, stored in lowest terms in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Angle {
    num: BigUint,
    den: BigUint,
}

/// Preperiod and period of an angle under doubling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitClass {
    pub preperiod: u32,
    pub period: u32,
}

impl OrbitClass {
    pub fn is_periodic(&self) -> bool {
        self.preperiod == 0
    }
}

/// Reduce `num/den` modulo 1.
pub fn normalize(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Angle> {
    let num = num.into();
    let den = den.into();
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let (num, den) = if den.sign() == Sign::Minus {
        (-num, -den)
    } else {
        (num, den)
    };
    let r = num.mod_floor(&den);
    let g = r.gcd(&den);
    let (r, den) = if g.is_zero() {
        (BigInt::zero(), BigInt::one())
    } else {
        (r / &g, den / &g)
    };
    let (num, den) = if r.is_zero() {
        (BigUint::zero(), BigUint::one())
    } else {
        (r.to_biguint().unwrap(), den.to_biguint().unwrap())
    };
    Ok(Angle { num, den })
}

impl Angle {
    pub fn zero() -> Self {
        Angle {
            num: BigUint::zero(),
            den: BigUint::one(),
        }
    }

    /// Convenience constructor for small literals; panics on a zero denominator.
    pub fn frac(num: i64, den: i64) -> Self {
        normalize(num, den).expect("nonzero denominator")
    }

    pub fn numer(&self) -> &BigUint {
        &self.num
    }

    pub fn denom(&self) -> &BigUint {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Lossy conversion, for the render boundary only.
    pub fn to_f64(&self) -> f64 {
        match (self.num.to_f64(), self.den.to_f64()) {
            (Some(n), Some(d)) if d.is_finite() && n.is_finite() => n / d,
            _ => {
                // Shift both down so they fit in a double.
                let shift = self.den.bits().saturating_sub(60);
                let n = (&self.num >> shift).to_f64().unwrap_or(0.0);
                let d = (&self.den >> shift).to_f64().unwrap_or(1.0);
                n / d
            }
        }
    }

    /// `2θ mod 1`.
    pub fn double(&self) -> Angle {
        if self.den.is_even() {
            // 2p/q = p/(q/2); still reduced because p is odd.
            let den: BigUint = &self.den >> 1u32;
            if den.is_one() {
                return Angle::zero();
            }
            let num = self.num.mod_floor(&den);
            Angle { num, den }
        } else {
            let two_num: BigUint = &self.num << 1u32;
            let num = if two_num >= self.den {
                two_num - &self.den
            } else {
                two_num
            };
            Angle {
                num,
                den: self.den.clone(),
            }
        }
    }

    /// `2ⁿθ mod 1`.
    pub fn double_n(&self, n: u32) -> Angle {
        let mut a = self.clone();
        for _ in 0..n {
            a = a.double();
        }
        a
    }

    /// The two preimages under doubling, `(θ/2, θ/2 + 1/2)`.
    pub fn halves(&self) -> (Angle, Angle) {
        let den: BigUint = &self.den << 1u32;
        let lo = reduce(self.num.clone(), den.clone());
        let hi = reduce(&self.num + &self.den, den);
        (lo, hi)
    }

    /// `−θ mod 1`.
    pub fn neg(&self) -> Angle {
        if self.num.is_zero() {
            return self.clone();
        }
        Angle {
            num: &self.den - &self.num,
            den: self.den.clone(),
        }
    }

    /// `θ + other mod 1`.
    pub fn add(&self, other: &Angle) -> Angle {
        let num = &self.num * &other.den + &other.num * &self.den;
        let den = &self.den * &other.den;
        reduce(num.mod_floor(&den), den)
    }

    /// `θ − other mod 1`.
    pub fn sub(&self, other: &Angle) -> Angle {
        self.add(&other.neg())
    }

    /// `θ / 2ᵏ` taken as a real number (not a preimage choice).
    pub fn scale_down(&self, k: u32) -> Angle {
        reduce(self.num.clone(), &self.den << k)
    }

    /// Counterclockwise arc length from `self` to `to`, in `[0, 1)`.
    pub fn arc_to(&self, to: &Angle) -> Angle {
        to.sub(self)
    }

    /// Exact preperiod and period under doubling.
    ///
    /// With `q = 2ˢ·m`, `m` odd, the preperiod is `s` and the period is the
    /// multiplicative order of 2 modulo `m`.
    pub fn classify(&self) -> OrbitClass {
        let s = self.den.trailing_zeros().unwrap_or(0);
        let m: BigUint = &self.den >> s;
        let period = if m.is_one() {
            1
        } else {
            let two = BigUint::from(2u32);
            let mut x = two.mod_floor(&m);
            let mut k = 1u32;
            while !x.is_one() {
                x = (&x << 1u32).mod_floor(&m);
                k += 1;
            }
            k
        };
        OrbitClass {
            preperiod: s as u32,
            period,
        }
    }

    /// `Some(k)` iff the angle has the form `n/(3·2ᵏ)` with `n` coprime to 6.
    pub fn b_angle_level(&self) -> Option<u32> {
        let s = self.den.trailing_zeros().unwrap_or(0);
        let m: BigUint = &self.den >> s;
        (m == BigUint::from(3u32)).then_some(s as u32)
    }

    pub fn is_b_angle(&self) -> bool {
        self.b_angle_level().is_some()
    }

    /// True iff `self` lies on the counterclockwise arc from `a` to `b`.
    /// `open` excludes both endpoints.
    pub fn in_cyclic_arc(&self, a: &Angle, b: &Angle, open: bool) -> bool {
        debug_assert!(a != b, "degenerate arc");
        let len = a.arc_to(b);
        let pos = a.arc_to(self);
        if open {
            !pos.is_zero() && pos < len
        } else {
            pos <= len
        }
    }
}

fn reduce(num: BigUint, den: BigUint) -> Angle {
    if num.is_zero() {
        return Angle::zero();
    }
    let g = num.gcd(&den);
    let num = num / &g;
    let den = den / &g;
    let num = num.mod_floor(&den);
    if num.is_zero() {
        Angle::zero()
    } else {
        Angle { num, den }
    }
}

pub fn double(theta: &Angle) -> Angle {
    theta.double()
}

pub fn halves(theta: &Angle) -> (Angle, Angle) {
    theta.halves()
}

pub fn classify(theta: &Angle) -> OrbitClass {
    theta.classify()
}

pub fn is_b_angle(theta: &Angle) -> Option<u32> {
    theta.b_angle_level()
}

pub fn in_cyclic_arc(theta: &Angle, a: &Angle, b: &Angle, open: bool) -> bool {
    theta.in_cyclic_arc(a, b, open)
}

impl Ord for Angle {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Angle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::AngleParse(s.to_string());
        let t = s.trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        normalize(n, d)
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
