use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EscapeStatus {
    Member,
    Escaped,
    /// Iteration budget ran out before either verdict could be certified.
    /// The escape tests below report `Member` in that case; this variant is
    /// kept for callers that want to distinguish.
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EscapeResult {
    pub status: EscapeStatus,
    pub iterations: u32,
    pub final_modulus: f64,
}

pub fn f_c(c: Complex64, z: Complex64) -> Complex64 {
    z * z + c
}

/// `g_a(z) = a/(z² + 2z)`.
pub fn g_a(a: Complex64, z: Complex64) -> Complex64 {
    a / (z * (z + 2.0))
}

/// The even-step map `g_a²(z) = z²(z+2)²/(2z² + 4z + a)`; finite at 0 and −2.
pub fn g_a_second(a: Complex64, z: Complex64) -> Complex64 {
    let s = z * (z + 2.0);
    s * s / (2.0 * s + a)
}

/// Escape test for the critical orbit of `f_c`.
pub fn in_mandelbrot(c: Complex64, max_iter: u32, radius: f64) -> Result<EscapeResult> {
    if max_iter == 0 || radius.is_nan() || radius < 2.0 {
        return Err(Error::Config(format!(
            "need max_iter ≥ 1 and radius ≥ 2 (got {max_iter}, {radius})"
        )));
    }
    let r2 = radius * radius;
    let mut z = Complex64::new(0.0, 0.0);
    for n in 1..=max_iter {
        z = z * z + c;
        let m = z.norm_sqr();
        if m > r2 {
            return Ok(EscapeResult {
                status: EscapeStatus::Escaped,
                iterations: n,
                final_modulus: m.sqrt(),
            });
        }
    }
    Ok(EscapeResult {
        status: EscapeStatus::Member,
        iterations: max_iter,
        final_modulus: z.norm(),
    })
}

/// Basin test for the free critical point −1 of `g_a`.
///
/// Works with the even-step map `g_a²`, whose orbit through −1 either
/// settles near 0 or near ∞ when −1 lies in the basin of the 2-cycle {0, ∞}.
/// Entry is certified once two consecutive even steps stay below `eps` (or
/// above `1/eps`) while contracting toward 0 (resp. growing toward ∞).
/// `iterations` counts applications of `g_a`.
pub fn in_m2(a: Complex64, max_iter: u32, eps: f64) -> Result<EscapeResult> {
    if a == Complex64::new(0.0, 0.0) {
        return Err(Error::Domain("a = 0 is excluded from the slice".into()));
    }
    if max_iter < 2 || !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Config(format!(
            "need max_iter ≥ 2 and 0 < eps < 1 (got {max_iter}, {eps})"
        )));
    }
    let big = 1.0 / eps;
    let mut z = Complex64::new(-1.0, 0.0);
    let mut streak_small = 0;
    let mut streak_big = 0;
    let mut last = z.norm();
    let mut steps = 0;
    while steps + 2 <= max_iter {
        z = g_a_second(a, z);
        steps += 2;
        let m = z.norm();
        if !m.is_finite() {
            // a pole of g_a²: the orbit hit the preimage of the cycle exactly
            return Ok(EscapeResult {
                status: EscapeStatus::Escaped,
                iterations: steps,
                final_modulus: f64::INFINITY,
            });
        }
        streak_small = if m < eps && m <= last { streak_small + 1 } else { 0 };
        streak_big = if m > big && m >= last { streak_big + 1 } else { 0 };
        if streak_small >= 2 || streak_big >= 2 {
            return Ok(EscapeResult {
                status: EscapeStatus::Escaped,
                iterations: steps,
                final_modulus: m,
            });
        }
        if m > 1e150 {
            // far beyond the certificate; avoid overflow in the next square
            return Ok(EscapeResult {
                status: EscapeStatus::Escaped,
                iterations: steps,
                final_modulus: m,
            });
        }
        last = m;
    }
    Ok(EscapeResult {
        status: EscapeStatus::Member,
        iterations: max_iter,
        final_modulus: z.norm(),
    })
}
