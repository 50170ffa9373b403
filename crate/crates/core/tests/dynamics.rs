use lamin_mate::dynamics::{
    bottcher_value, f_basilica, g_a, in_m2, in_mandelbrot, misiurewicz_solve, parabolic_solve, rho,
    trace_bubble_ray, trace_dynamic_ray, trace_parameter_ray, Complex64, EscapeStatus, NewtonOptions,
    RayOptions, SpherePoint,
};
use lamin_mate::lamination::generate;
use lamin_mate::Angle;
use proptest::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn angle(s: &str) -> Angle {
    s.parse().unwrap()
}

// Landing points of rational parameter rays are roots of polynomial
// equations; Newton on those equations is an oracle independent of the
// ray tracer.
#[test]
fn parameter_rays_land_at_newton_roots() {
    let newton = NewtonOptions::default();
    let opts = RayOptions::default();
    let cases = [
        ("1/6", misiurewicz_solve(1, 2, c(0.0, 1.0), &newton).unwrap()),
        ("5/6", misiurewicz_solve(1, 2, c(0.0, -1.0), &newton).unwrap()),
        ("1/3", parabolic_solve(2, c(-0.75, 0.0), &newton).unwrap()),
        ("0", parabolic_solve(1, c(0.25, 0.0), &newton).unwrap()),
        ("1/7", parabolic_solve(3, c(-0.12, 0.65), &newton).unwrap()),
        ("5/12", misiurewicz_solve(2, 2, c(-1.54, 0.0), &newton).unwrap()),
    ];
    for (t, root) in cases {
        let r = trace_parameter_ray(&angle(t), &opts).unwrap();
        let z = r.landing_estimate.unwrap();
        assert!((z - root).norm() < 1e-3, "R^{t} lands at {z}, root {root}");
    }
}

#[test]
fn basilica_rays_pair_up_on_leaves() {
    let lam = generate(3).unwrap();
    let opts = RayOptions::default();
    for l in lam.leaves().filter(|l| l.depth <= 2) {
        let za = trace_dynamic_ray(c(-1.0, 0.0), &l.a, &opts).unwrap().landing_estimate.unwrap();
        let zb = trace_dynamic_ray(c(-1.0, 0.0), &l.b, &opts).unwrap().landing_estimate.unwrap();
        assert!((za - zb).norm() < 1e-6, "⟨{}, {}⟩: {za} vs {zb}", l.a, l.b);
    }
}

#[test]
fn escape_oracles() {
    assert_eq!(in_mandelbrot(c(-1.0, 0.0), 1000, 2.0).unwrap().status, EscapeStatus::Member);
    assert_eq!(in_mandelbrot(c(0.26, 0.0), 5000, 2.0).unwrap().status, EscapeStatus::Escaped);
    assert_eq!(in_m2(c(1.0, 0.0), 500, 1e-6).unwrap().status, EscapeStatus::Member);
    assert_eq!(in_m2(c(-4.0, 0.0), 500, 1e-6).unwrap().status, EscapeStatus::Escaped);
    assert_eq!(in_m2(c(1e6, 0.0), 500, 1e-6).unwrap().status, EscapeStatus::Escaped);
    assert!(in_m2(c(0.0, 0.0), 500, 1e-6).is_err());
}

#[test]
fn bubble_ray_mirrors_basilica_ray() {
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    let lam = generate(8).unwrap();
    let b = trace_bubble_ray(c(1.0, 0.0), &angle("1/3"), &lam, 4, &RayOptions::default()).unwrap();
    let z = b.trace.landing_estimate.unwrap();
    assert!((z - c(golden, 0.0)).norm() < 1e-6);
    let pushed = rho(SpherePoint::Finite(z)).finite().unwrap();
    let basilica = trace_dynamic_ray(c(-1.0, 0.0), &angle("2/3"), &RayOptions::default())
        .unwrap()
        .landing_estimate
        .unwrap();
    assert!((pushed - basilica).norm() < 1e-6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // ρ conjugates g₁ to the Basilica polynomial, away from the poles
    #[test]
    fn rho_conjugacy(re in -2.0f64..2.0, im in -2.0f64..2.0) {
        let z = c(re, im);
        prop_assume!((z + 1.0).norm() > 0.2 && z.norm() > 1e-3 && (z + 2.0).norm() > 1e-3);
        let lhs = rho(g_a(c(1.0, 0.0), z).into()).finite().unwrap();
        let rhs = f_basilica(rho(z.into()).finite().unwrap());
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
    }

    // B_c(z)² = B_c(z² + c)
    #[test]
    fn bottcher_functional_equation(cr in -2.0f64..0.25, ci in -1.0f64..1.0, r in 4.0f64..50.0, t in 0.0f64..1.0) {
        let cc = c(cr, ci);
        let z = Complex64::from_polar(r, std::f64::consts::TAU * t);
        let b = bottcher_value(cc, z, 64).unwrap().value;
        let b2 = bottcher_value(cc, z * z + cc, 64).unwrap().value;
        prop_assert!((b * b - b2).norm() <= 1e-12 * b2.norm());
    }

    // for c = 0 the Böttcher map is the identity and rays are radial
    #[test]
    fn rays_of_z_squared(n in 0i64..200, d in 1i64..200) {
        let t = Angle::frac(n % d, d);
        let opts = RayOptions { t_end: 1e-4, steps: 8, ..RayOptions::default() };
        let r = trace_dynamic_ray(c(0.0, 0.0), &t, &opts).unwrap();
        let target = Complex64::from_polar(1.0, std::f64::consts::TAU * t.to_f64());
        prop_assert!((r.landing_estimate.unwrap() - target).norm() < 1e-8);
    }
}
