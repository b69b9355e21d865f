//! Safeguarded Newton iteration inside a sign-changing bracket.
//!
//! Every Newton step that would leave the current bracket, or fails to
//! shrink it fast enough, is replaced by bisection. Iteration continues
//! until the step is at the level of rounding, not merely until
//! `|f| <= root_tol`: the feet of nearly tangent characteristics have small
//! residuals long before they are accurate.

use crate::error::{Error, Result};
use crate::types::NumericPolicy;

/// Root of `f` in `bracket` using a secant estimate of the derivative.
pub fn find_root<F>(f: F, bracket: (f64, f64), policy: &NumericPolicy) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    solve(|x| (f(x), None), bracket, policy)
}

/// Root of `f` in `bracket` where `fdf` returns `(f(x), f'(x))`.
pub fn find_root_with_derivative<F>(
    fdf: F,
    bracket: (f64, f64),
    policy: &NumericPolicy,
) -> Result<f64>
where
    F: Fn(f64) -> (f64, f64),
{
    solve(
        |x| {
            let (v, d) = fdf(x);
            (v, Some(d))
        },
        bracket,
        policy,
    )
}

fn solve<F>(eval: F, bracket: (f64, f64), policy: &NumericPolicy) -> Result<f64>
where
    F: Fn(f64) -> (f64, Option<f64>),
{
    let (mut lo, mut hi) = if bracket.0 <= bracket.1 {
        bracket
    } else {
        (bracket.1, bracket.0)
    };
    let (flo, _) = eval(lo);
    let (fhi, _) = eval(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if !(flo.is_finite() && fhi.is_finite()) || flo.signum() == fhi.signum() {
        return Err(Error::NoSignChange { lo, hi });
    }
    let lo_negative = flo < 0.0;
    // Absolute floor so roots at or near zero terminate.
    let floor = f64::EPSILON * 1e-3 * (hi - lo);

    // Start from the secant point of the bracket.
    let mut x = lo - flo * (hi - lo) / (fhi - flo);
    if !(x > lo && x < hi) {
        x = 0.5 * (lo + hi);
    }
    let mut prev: Option<(f64, f64)> = None;
    let mut step_old = hi - lo;

    for _ in 0..policy.max_iter {
        let (fx, dfx) = eval(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if (fx < 0.0) == lo_negative {
            lo = x;
        } else {
            hi = x;
        }
        let tol = 2.0 * f64::EPSILON * x.abs() + floor;
        if hi - lo <= tol {
            return Ok(x);
        }

        let slope = match dfx {
            Some(d) => d,
            None => match prev {
                Some((xp, fp)) if xp != x => (fx - fp) / (x - xp),
                _ => f64::NAN,
            },
        };
        prev = Some((x, fx));

        let newton = x - fx / slope;
        let usable = newton.is_finite() && newton > lo && newton < hi;
        let next = if usable && (newton - x).abs() <= 0.5 * step_old {
            newton
        } else {
            0.5 * (lo + hi)
        };
        step_old = (next - x).abs();
        if step_old <= tol {
            return Ok(next);
        }
        x = next;
    }
    Err(Error::MaxIterExceeded(policy.max_iter))
}
