//! Computable "mating with laminations".
//!
//! The crate builds the z²-invariant Basilica lamination exactly, decides
//! combinatorial predicates on Mandelbrot-copy angles, traces external rays
//! and rays in bubbles numerically, classifies parameters of the Mandelbrot
//! set and of the period-two slice `g_a(z) = a/(z² + 2z)`, and renders the
//! correspondence between the two as overlay images.
//!
//! Modules, bottom-up:
//!
//! * [`circle`]: exact angles in ℚ/ℤ under doubling.
//! * [`lamination`]: leaves of the Basilica lamination and their geometry.
//! * [`combinat`]: wakes, renormalization strips, bounding predicates, pinch pairs.
//! * [`dynamics`]: escape tests, Böttcher maps, ray tracing, bubble rays.
//! * [`render`]: PNG/SVG output.
//! * [`verify`]: the acceptance checks, shared by the CLI and the test suite.
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

pub mod circle;
pub mod cli;
pub mod combinat;
pub mod dynamics;
pub mod error;
pub mod lamination;
pub mod render;
pub mod verify;

pub use circle::{Angle, OrbitClass};
pub use error::{Error, Result};
pub use lamination::{Lamination, Leaf, LeafChain};

/// Version tag written into every file this crate produces.
pub const FORMAT_VERSION: u32 = 1;
