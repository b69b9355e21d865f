use crate::error::{Error, Result};
use serde::Serialize;

/// A spacetime point with `t >= 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point {
    pub t: f64,
    pub x: f64,
}

impl Point {
    pub fn new(t: f64, x: f64) -> Result<Self> {
        if !t.is_finite() || !x.is_finite() {
            return Err(Error::Domain(format!("non-finite point ({t}, {x})")));
        }
        if t < 0.0 {
            return Err(Error::Domain(format!("negative time t={t}")));
        }
        Ok(Point { t, x })
    }
}

/// A tangent vector in `(t, x)` components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Vec2 {
    pub t: f64,
    pub x: f64,
}

impl Vec2 {
    pub const fn new(t: f64, x: f64) -> Self {
        Vec2 { t, x }
    }

    pub fn is_zero(&self) -> bool {
        self.t == 0.0 && self.x == 0.0
    }
}

/// Which continuation past the first singularity is being evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SolutionVariant {
    /// Maximal classical development, continued across the shock line.
    Classical,
    /// Entropy-admissible weak solution with a shock along `x = 2t`.
    Weak,
}

/// Tolerances used throughout. The defaults are the ones every test and
/// check relies on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NumericPolicy {
    pub root_tol: f64,
    pub quad_tol: f64,
    pub geom_tol: f64,
    pub max_iter: usize,
    pub cfl: f64,
}

impl Default for NumericPolicy {
    fn default() -> Self {
        NumericPolicy {
            root_tol: 1e-12,
            quad_tol: 1e-10,
            geom_tol: 1e-10,
            max_iter: 200,
            cfl: 0.9,
        }
    }
}
