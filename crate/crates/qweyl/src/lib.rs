//! Exact symbolic calculus for q-deformed Minkowski space-time.
//!
//! The crate machine-verifies, in exact arithmetic, that q-plane-wave series
//! solve the homogeneous q-d'Alembert and linear q-Weyl gravity equations on
//! the momentum q-cone. Everything is computed over rational functions in the
//! deformation parameter `q` with Gaussian-rational coefficients; there is no
//! floating point anywhere in the core.
//!
//! The main pieces:
//!
//! - [`scalar`]: the exact coefficient field (rational functions in `q` and
//!   optional symbolic units) plus q-integers, q-factorials and `1/Gamma_q`.
//! - [`ncalg`]: the noncommutative quartet algebra shared by the coordinates
//!   `v, x-, x+, vb` and the momenta `kv, k-, k+, kvb`: normal ordering, the
//!   conjugation `omega`, and the momentum q-cone quotient.
//! - [`repspace`]: the representation space the operators act on — sums of
//!   (scalar) x (momentum monomial) x (coordinate exponents) x (z-powers).
//! - [`operators`]: shift/scale/q-difference generators, formal operator
//!   expressions, and the named composites (`qI1`, `qI2`, `qI3`, `qI+-(n)`,
//!   both q-d'Alembert operators, and their classical counterparts).
//! - [`planewave`]: the q-plane-wave components `h_s`, their normalization
//!   `beta_s`, and the admissible phase polynomials.
//! - [`weylsol`]: assembly of the q-Weyl solution components `C+-_s`, the
//!   verification pipeline, and the classical tensor dictionaries.
//! - [`verify`]: batch verification drivers and JSON reports behind the
//!   `qweyl` command-line tool.
//!
//! See the crate `examples/` directory for one runnable walk-through per
//! capability, and `qweyl --help` for the batch CLI.

pub mod latex;
pub mod ncalg;
pub mod operators;
pub mod planewave;
pub mod repspace;
pub mod scalar;
pub mod verify;
pub mod weylsol;

pub use scalar::{GaussRat, QScalar};
