use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A point of the Riemann sphere. Only the 2-cycle {0, ∞} of `g_a` and the
/// pole of `ρ` ever need the point at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    pub fn finite(self) -> Option<Complex64> {
        match self {
            SpherePoint::Finite(z) => Some(z),
            SpherePoint::Infinity => None,
        }
    }
}

impl From<Complex64> for SpherePoint {
    fn from(z: Complex64) -> Self {
        SpherePoint::Finite(z)
    }
}

/// `ρ(z) = −1/(z+1)`, conjugating `g₁` to `f_B`: `ρ∘g₁ = f_B∘ρ`.
pub fn rho(z: SpherePoint) -> SpherePoint {
    match z {
        SpherePoint::Infinity => SpherePoint::Finite(Complex64::new(0.0, 0.0)),
        SpherePoint::Finite(z) if z == Complex64::new(-1.0, 0.0) => SpherePoint::Infinity,
        SpherePoint::Finite(z) => SpherePoint::Finite(-1.0 / (z + 1.0)),
    }
}

/// `ρ⁻¹(w) = −1/w − 1`.
pub fn rho_inverse(w: SpherePoint) -> SpherePoint {
    match w {
        SpherePoint::Infinity => SpherePoint::Finite(Complex64::new(-1.0, 0.0)),
        SpherePoint::Finite(w) if w == Complex64::new(0.0, 0.0) => SpherePoint::Infinity,
        SpherePoint::Finite(w) => SpherePoint::Finite(-1.0 / w - 1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::{f_basilica, g_a};
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn special_points() {
        assert_eq!(rho(SpherePoint::Infinity), SpherePoint::Finite(c(0.0, 0.0)));
        assert_eq!(rho(c(-1.0, 0.0).into()), SpherePoint::Infinity);
        assert_eq!(rho(c(0.0, 0.0).into()), SpherePoint::Finite(c(-1.0, 0.0)));
        assert_eq!(rho_inverse(SpherePoint::Infinity), SpherePoint::Finite(c(-1.0, 0.0)));
    }

    #[test]
    fn conjugacy_residual() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let one = c(1.0, 0.0);
        let mut worst: f64 = 0.0;
        let mut n = 0;
        while n < 1000 {
            let z = c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            if z.norm() > 2.0 || (z + 1.0).norm() < 1e-3 || z.norm() < 1e-3 || (z + 2.0).norm() < 1e-3 {
                continue;
            }
            let lhs = rho(g_a(one, z).into()).finite().unwrap();
            let rhs = f_basilica(rho(z.into()).finite().unwrap());
            worst = worst.max((lhs - rhs).norm() / (1.0 + rhs.norm()));
            n += 1;
        }
        assert!(worst < 1e-12, "{worst}");
    }

    #[test]
    fn alpha_correspondence() {
        let z = c((5f64.sqrt() - 1.0) / 2.0, 0.0);
        assert!((g_a(c(1.0, 0.0), z) - z).norm() < 1e-15);
        let w = rho(z.into()).finite().unwrap();
        assert!((w - c((1.0 - 5f64.sqrt()) / 2.0, 0.0)).norm() < 1e-15);
        assert!((f_basilica(w) - w).norm() < 1e-15);
    }
}
