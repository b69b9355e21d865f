use crate::error::{Error, Result};
use crate::sampling::Halton2;
use crate::solutions::{psi_classical, psi_weak, shock_trace};
use crate::types::{NumericPolicy, Point};
use serde::Serialize;

/// `|s - 1/2 ((2 + Psi-) + (2 + Psi+))|` for the shock at time `t`.
pub fn rh_residual(t: f64, policy: &NumericPolicy) -> Result<f64> {
    let s = shock_trace(t, policy)?;
    Ok((s.speed - 0.5 * ((2.0 + s.left) + (2.0 + s.right))).abs())
}

/// Margins in the Lax inequalities `2 + Psi+ < s < 2 + Psi-`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LaxGaps {
    pub t: f64,
    /// `s - (2 + Psi_C)` on the shock, from the classical side.
    pub lower: f64,
    /// `(2 + Psi-) - s`.
    pub upper: f64,
}

pub fn lax_gaps(t: f64, policy: &NumericPolicy) -> Result<LaxGaps> {
    let s = shock_trace(t, policy)?;
    let right = psi_classical(Point::new(t, s.x)?, policy)?;
    Ok(LaxGaps {
        t,
        lower: s.speed - (2.0 + right),
        upper: (2.0 + s.left) - s.speed,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OleinikReport {
    pub t: f64,
    pub pairs: usize,
    /// Largest `(Psi(x + z) - Psi(x)) / z` over the sampled pairs.
    pub max_quotient: f64,
    /// The one-sided bound `C / t` with `C = 1`.
    pub bound: f64,
}

/// One-sided difference quotients of `Psi_W(t, .)` over `n` Halton pairs in
/// `x_range`. Pairs with an end on the shock are skipped.
pub fn oleinik_scan(
    t: f64,
    x_range: (f64, f64),
    n: usize,
    seed: u64,
    policy: &NumericPolicy,
) -> Result<OleinikReport> {
    let (lo, hi) = x_range;
    if !(t > 0.0 && hi > lo) {
        return Err(Error::Domain(format!("bad Oleinik scan t={t}, range=({lo}, {hi})")));
    }
    let on_shock = |x: f64| t > 1.0 && (x - 2.0 * t).abs() <= policy.geom_tol;
    let mut max_quotient = f64::NEG_INFINITY;
    let mut pairs = 0;
    for (u, w) in Halton2::new(seed) {
        if pairs == n {
            break;
        }
        let x = lo + u * (hi - lo);
        let z = w * (hi - x);
        if z <= 0.0 || on_shock(x) || on_shock(x + z) {
            continue;
        }
        let a = psi_weak(Point::new(t, x)?, policy)?;
        let b = psi_weak(Point::new(t, x + z)?, policy)?;
        max_quotient = max_quotient.max((b - a) / z);
        pairs += 1;
    }
    Ok(OleinikReport {
        t,
        pairs,
        max_quotient,
        bound: 1.0 / t,
    })
}
