//! Shock formation for the wave model `-d_t^2 Phi + (2 + d_t Phi - 2 d_x Phi) d_x^2 Phi = 0`
//! with `Psi = d_t Phi - 2 d_x Phi` obeying Burgers' equation
//! `(d_t + (2 + Psi) d_x) Psi = 0` and `Psi(0, x) = -arctan x`.
//!
//! The crate evaluates the maximal classical development and the
//! entropy-admissible weak solution past the first singularity, the wave
//! potential each one induces, the acoustic causal structure, and a set of
//! numerical checks comparing them.

pub mod characteristics;
pub mod datum;
pub mod error;
pub mod geometry;
pub mod godunov;
pub mod potential;
pub mod quadrature;
pub mod roots;
pub mod sampling;
pub mod solutions;
pub mod types;
pub mod verification;

pub use error::{Error, Result};
pub use types::{NumericPolicy, Point, SolutionVariant, Vec2};
