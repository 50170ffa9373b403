//! Newton solvers for landing points: Misiurewicz and parabolic parameters,
//! (pre)periodic points of `f_c`, iterated preimages under `g_a`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NewtonOptions {
    /// Stop once `|F(z)| ≤ tol` (checked before stepping) or the Newton
    /// step is below `tol·max(1, |z|)`.
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            tol: 1e-14,
            max_iter: 100,
        }
    }
}

/// One-dimensional Newton iteration on `f` returning `(F, F′)`.
pub(crate) fn newton(
    mut z: Complex64,
    opts: &NewtonOptions,
    f: impl Fn(Complex64) -> (Complex64, Complex64),
) -> Result<Complex64> {
    let mut residual = f64::INFINITY;
    for _ in 0..opts.max_iter {
        let (v, dv) = f(z);
        residual = v.norm();
        if residual <= opts.tol {
            return Ok(z);
        }
        let step = v / dv;
        if !step.is_finite() {
            break;
        }
        z -= step;
        if step.norm() <= opts.tol * z.norm().max(1.0) {
            return Ok(z);
        }
    }
    Err(Error::NoConvergence {
        iterations: opts.max_iter,
        residual,
    })
}

/// `u_k = f_c^k(c)` for k = l, l+p together with `∂u/∂c`, as `F = u_{l+p} − u_l`.
fn misiurewicz_residual(c: Complex64, preperiod: u32, period: u32) -> (Complex64, Complex64) {
    let (mut u, mut du) = (c, Complex64::new(1.0, 0.0));
    let (mut ul, mut dul) = (u, du);
    for k in 0..preperiod + period {
        if k == preperiod {
            (ul, dul) = (u, du);
        }
        (u, du) = (u * u + c, 2.0 * u * du + 1.0);
    }
    (u - ul, du - dul)
}

/// Newton on `c ↦ f_c^{l+p}(c) − f_c^{l}(c)` with `f_c^0(c) = c`.
///
/// Roots of lower preperiod satisfy the same equation; the seed decides.
pub fn misiurewicz_solve(
    preperiod: u32,
    period: u32,
    seed: Complex64,
    opts: &NewtonOptions,
) -> Result<Complex64> {
    if preperiod < 1 || period < 1 || !seed.is_finite() {
        return Err(Error::Config(format!(
            "need preperiod ≥ 1, period ≥ 1, finite seed (got {preperiod}, {period}, {seed})"
        )));
    }
    newton(seed, opts, |c| misiurewicz_residual(c, preperiod, period))
}

/// A point `z` with `f_c^{l+p}(z) = f_c^l(z)` near `seed`.
pub fn preperiodic_point_solve(
    c: Complex64,
    preperiod: u32,
    period: u32,
    seed: Complex64,
    opts: &NewtonOptions,
) -> Result<Complex64> {
    if period < 1 {
        return Err(Error::Config("period must be ≥ 1".into()));
    }
    newton(seed, opts, |z| {
        let (mut u, mut du) = (z, Complex64::new(1.0, 0.0));
        let (mut ul, mut dul) = (u, du);
        for k in 0..preperiod + period {
            if k == preperiod {
                (ul, dul) = (u, du);
            }
            (u, du) = (u * u + c, 2.0 * u * du);
        }
        (u - ul, du - dul)
    })
}

/// The repelling cycle `x₀ ↦ x₁ ↦ … ↦ x₀` of `f_c` near `seeds`, by Newton on
/// all points at once (multiple shooting).
///
/// Direct Newton on `f_c^p(z) = z` has a basin shrinking like `|λ|⁻¹`; here
/// each unknown only has to be near its own cycle point. The linear step
/// `δ_{k+1} = r_k + f′(x_k)δ_k` is solved backward, where it contracts.
pub fn periodic_cycle_solve(c: Complex64, seeds: &[Complex64], opts: &NewtonOptions) -> Result<Vec<Complex64>> {
    let p = seeds.len();
    if p == 0 {
        return Err(Error::Config("need at least one seed".into()));
    }
    let mut x = seeds.to_vec();
    let mut residual = f64::INFINITY;
    for _ in 0..opts.max_iter {
        let r: Vec<Complex64> = (0..p).map(|k| x[k] * x[k] + c - x[(k + 1) % p]).collect();
        residual = r.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if residual <= opts.tol {
            return Ok(x);
        }
        // δ₀(1 − 1/Λ) = −Σ r_k/(a₀⋯a_k), a_k = 2x_k
        let mut prod = Complex64::new(1.0, 0.0);
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 0..p {
            prod *= 2.0 * x[k];
            sum += r[k] / prod;
        }
        let mut delta = vec![Complex64::new(0.0, 0.0); p + 1];
        delta[0] = -sum / (1.0 - 1.0 / prod);
        delta[p] = delta[0];
        for k in (1..p).rev() {
            delta[k] = (delta[k + 1] - r[k]) / (2.0 * x[k]);
        }
        if delta.iter().any(|d| !d.is_finite()) {
            break;
        }
        let mut biggest: f64 = 0.0;
        for k in 0..p {
            x[k] += delta[k];
            biggest = biggest.max(delta[k].norm() / x[k].norm().max(1.0));
        }
        if biggest <= opts.tol {
            return Ok(x);
        }
    }
    Err(Error::NoConvergence {
        iterations: opts.max_iter,
        residual,
    })
}

/// A point `z` near `seed` with `g_a^m(z) = target`.
pub fn preimage_solve(
    a: Complex64,
    m: u32,
    target: Complex64,
    seed: Complex64,
    opts: &NewtonOptions,
) -> Result<Complex64> {
    newton(seed, opts, |z| {
        let (mut u, mut du) = (z, Complex64::new(1.0, 0.0));
        for _ in 0..m {
            let s = u * (u + 2.0);
            (u, du) = (a / s, -a * (2.0 * u + 2.0) / (s * s) * du);
        }
        (u - target, du)
    })
}

/// A point `z` near `seed` with `g_a^{l+p}(z) = g_a^l(z)`.
pub(crate) fn g_preperiodic_solve(
    a: Complex64,
    preperiod: u32,
    period: u32,
    seed: Complex64,
    opts: &NewtonOptions,
) -> Result<Complex64> {
    newton(seed, opts, |z| {
        let (mut u, mut du) = (z, Complex64::new(1.0, 0.0));
        let (mut ul, mut dul) = (u, du);
        for k in 0..preperiod + period {
            if k == preperiod {
                (ul, dul) = (u, du);
            }
            let s = u * (u + 2.0);
            (u, du) = (a / s, -a * (2.0 * u + 2.0) / (s * s) * du);
        }
        (u - ul, du - dul)
    })
}

/// The fixed points of `g_a` solve `z³ + 2z² − a = 0`; Newton from `seed`.
pub(crate) fn g_fixed_point(a: Complex64, seed: Complex64, opts: &NewtonOptions) -> Result<Complex64> {
    newton(seed, opts, |z| (z * z * (z + 2.0) - a, z * (3.0 * z + 4.0)))
}

/// Root of a hyperbolic component whose parameter rays have exact period
/// `period`, near `seed`.
///
/// For each divisor `q` of the period and each primitive `(period/q)`-th root
/// of unity `λ`, Newton is run on `f_c^q(z) = z, (f_c^q)′(z) = λ` in the two
/// unknowns `(z, c)`; the converged root nearest to the seed wins. `q = period`
/// with `λ = 1` covers primitive roots, the others satellite roots.
pub fn parabolic_solve(period: u32, seed: Complex64, opts: &NewtonOptions) -> Result<Complex64> {
    if period < 1 || !seed.is_finite() {
        return Err(Error::Config(format!("need period ≥ 1 and a finite seed (got {period})")));
    }
    let mut best: Option<(f64, Complex64)> = None;
    for q in (1..=period).filter(|q| period % q == 0) {
        let m = period / q;
        for j in (0..m).filter(|j| num_integer::gcd(*j, m) == 1) {
            let lambda = Complex64::from_polar(1.0, TAU * j as f64 / m as f64);
            let z0 = cycle_seed(seed, q);
            if let Ok((_, c)) = newton2(z0, seed, q, lambda, opts) {
                let d = (c - seed).norm();
                if best.map_or(true, |(bd, _)| d < bd) {
                    best = Some((d, c));
                }
            }
        }
    }
    best.map(|(_, c)| c).ok_or(Error::NoConvergence {
        iterations: opts.max_iter,
        residual: f64::NAN,
    })
}

/// Near a parabolic parameter the critical orbit lingers by the cycle; the
/// orbit point closest to being `q`-periodic seeds `z`.
fn cycle_seed(c: Complex64, q: u32) -> Complex64 {
    let mut z = Complex64::new(0.0, 0.0);
    let mut best = (f64::INFINITY, z);
    for _ in 0..400 * q {
        let mut w = z;
        for _ in 0..q {
            w = w * w + c;
        }
        let d = (w - z).norm();
        if d < best.0 {
            best = (d, z);
        }
        if z.norm() > 4.0 {
            break;
        }
        z = z * z + c;
    }
    best.1
}

fn newton2(
    mut z: Complex64,
    mut c: Complex64,
    q: u32,
    lambda: Complex64,
    opts: &NewtonOptions,
) -> Result<(Complex64, Complex64)> {
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    for _ in 0..opts.max_iter {
        // u = f^k(z), a = ∂u/∂z, b = ∂u/∂c, aa = ∂a/∂z, ab = ∂a/∂c
        let (mut u, mut da, mut db, mut daa, mut dab) = (z, one, zero, zero, zero);
        for _ in 0..q {
            let (nu, na, nb) = (u * u + c, 2.0 * u * da, 2.0 * u * db + 1.0);
            let naa = 2.0 * da * da + 2.0 * u * daa;
            let nab = 2.0 * db * da + 2.0 * u * dab;
            (u, da, db, daa, dab) = (nu, na, nb, naa, nab);
        }
        let f1 = u - z;
        let f2 = da - lambda;
        let (j11, j12, j21, j22) = (da - 1.0, db, daa, dab);
        let det = j11 * j22 - j12 * j21;
        let dz = (f1 * j22 - j12 * f2) / det;
        let dc = (j11 * f2 - j21 * f1) / det;
        if !dz.is_finite() || !dc.is_finite() {
            break;
        }
        z -= dz;
        c -= dc;
        if dz.norm().max(dc.norm()) <= opts.tol * c.norm().max(1.0) {
            return Ok((z, c));
        }
    }
    Err(Error::NoConvergence {
        iterations: opts.max_iter,
        residual: f64::NAN,
    })
}
