//! Numerics for `f_c(z) = z² + c` and `g_a(z) = a/(z² + 2z)`.
//!
//! Everything here is double precision. Angles enter as exact [`Angle`]s and
//! are converted at the last moment.
//!
//! [`Angle`]: crate::circle::Angle

mod bottcher;
mod bubble;
mod escape;
mod leaf;
mod rays;
mod solve;
mod sphere;

pub use bottcher::{bottcher_value, bubble_boettcher_inf, BottcherValue};
pub use bubble::{
    alpha_fixed_point, basilica_internal_angle, bubble_generation, h_transfer, plan_bubble_ray,
    trace_bubble_ray, BubblePlan, BubbleRay, BubbleStep,
};
pub use escape::{f_c, g_a, g_a_second, in_m2, in_mandelbrot, EscapeResult, EscapeStatus};
pub use leaf::{trace_dynamical_leaf, trace_parameter_leaf, LeafCurve};
pub use rays::{trace_dynamic_ray, trace_parameter_ray, RayKind, RayOptions, RayTrace};
pub use solve::{
    misiurewicz_solve, parabolic_solve, periodic_cycle_solve, preimage_solve, preperiodic_point_solve, NewtonOptions,
};
pub use sphere::{rho, rho_inverse, SpherePoint};

pub use num_complex::Complex64;

/// `f_B(z) = z² − 1`, the Basilica polynomial.
pub fn f_basilica(z: Complex64) -> Complex64 {
    z * z - 1.0
}
