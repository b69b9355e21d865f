//! Straight characteristics of the initial data, their feet, and the
//! distinguished curves that cut the half-plane into regions.
//!
//! The characteristic from `x0` is `x = x0 + t (2 + Psi0(x0))`. Writing
//! `g_t(x0)` for its position at time `t`, `g_t' = 1 - t/(1 + x0^2)`, so for
//! `t > 1` the map has a local maximum at `-s` and a local minimum at `+s`
//! with `s = sqrt(t - 1)`. Every foot search below is restricted to one of
//! the monotone branches so that the root is unique.

use crate::datum::{psi0, psi0_prime};
use crate::error::{Error, Result};
use crate::roots::find_root_with_derivative;
use crate::types::{NumericPolicy, Point};
use serde::Serialize;
use std::f64::consts::FRAC_PI_2;

/// Location of a point relative to the distinguished curves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RegionTag {
    /// Below both `x = 2t` and the Cauchy horizon: classical and weak agree.
    OmegaA,
    /// Between the singular boundary and the shock, `t > 1`.
    Wedge,
    /// Above the Cauchy horizon and left of the singular boundary.
    WeakOnly,
    OnShock,
    OnSingularBoundary,
    OnCauchyHorizon,
    OnCrease,
    InitialSlice,
}

impl RegionTag {
    pub fn name(&self) -> &'static str {
        match self {
            RegionTag::OmegaA => "OmegaA",
            RegionTag::Wedge => "Wedge",
            RegionTag::WeakOnly => "WeakOnly",
            RegionTag::OnShock => "OnShock",
            RegionTag::OnSingularBoundary => "OnSingularBoundary",
            RegionTag::OnCauchyHorizon => "OnCauchyHorizon",
            RegionTag::OnCrease => "OnCrease",
            RegionTag::InitialSlice => "InitialSlice",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BoundaryCurve {
    /// Envelope of the outgoing characteristics with positive feet.
    SingularBoundary,
    /// The ingoing null line `x = 4 - 2t` through the crease.
    CauchyHorizon,
    /// The shock line `x = 2t`.
    Shock,
}

/// The crease where all three curves meet.
pub const CREASE: Point = Point { t: 1.0, x: 2.0 };

/// Position at time `t` of the characteristic from `x0`.
pub fn outgoing_char(x0: f64, t: f64) -> Point {
    Point {
        t,
        x: x0 + t * (2.0 + psi0(x0)),
    }
}

/// Time at which the characteristic from `x0 > 0` reaches the envelope.
pub fn blowup_time(x0: f64) -> Result<f64> {
    if x0.is_nan() || x0 <= 0.0 {
        return Err(Error::Domain(format!("blowup time needs x0 > 0, got {x0}")));
    }
    Ok(1.0 + x0 * x0)
}

/// Time at which the characteristic from `x0 != 0` meets `x = 2t`.
pub fn shock_arrival_time(x0: f64) -> Result<f64> {
    if x0 == 0.0 || !x0.is_finite() {
        return Err(Error::Domain(format!("shock arrival needs x0 != 0, got {x0}")));
    }
    Ok(x0 / x0.atan())
}

/// Time at which the characteristic from `x0 <= 0` meets the Cauchy horizon.
pub fn horizon_arrival_time(x0: f64) -> Result<f64> {
    if x0 > 0.0 || !x0.is_finite() {
        return Err(Error::Domain(format!("horizon arrival needs x0 <= 0, got {x0}")));
    }
    Ok((4.0 - x0) / (4.0 + psi0(x0)))
}

/// Parametrisation of the singular boundary by the foot `z >= 0` of the
/// characteristic that touches it there.
pub fn singular_boundary_point(z: f64) -> Point {
    let t = 1.0 + z * z;
    Point {
        t,
        x: (2.0 - z.atan()) * t + z,
    }
}

/// `x`-coordinate of a boundary curve at time `t >= 1`.
pub fn boundary_x(curve: BoundaryCurve, t: f64) -> Result<f64> {
    if t.is_nan() || t < 1.0 {
        return Err(Error::Domain(format!("boundary curves start at t = 1, got {t}")));
    }
    Ok(match curve {
        BoundaryCurve::SingularBoundary => singular_boundary_point((t - 1.0).sqrt()).x,
        BoundaryCurve::CauchyHorizon => 4.0 - 2.0 * t,
        BoundaryCurve::Shock => 2.0 * t,
    })
}

/// `dx/dt` along a boundary curve at `t > 1`.
pub fn boundary_slope(curve: BoundaryCurve, t: f64) -> Result<f64> {
    match curve {
        BoundaryCurve::SingularBoundary => singular_boundary_slope(t),
        _ if t.is_nan() || t <= 1.0 => Err(Error::Domain(format!("boundary slope needs t > 1, got {t}"))),
        BoundaryCurve::CauchyHorizon => Ok(-2.0),
        BoundaryCurve::Shock => Ok(2.0),
    }
}

/// `dx/dt` along the singular boundary, by the chain rule through `z`.
pub fn singular_boundary_slope(t: f64) -> Result<f64> {
    if t.is_nan() || t <= 1.0 {
        return Err(Error::Domain(format!("slope of the singular boundary needs t > 1, got {t}")));
    }
    let z = (t - 1.0).sqrt();
    let dz = 0.5 / z;
    Ok((2.0 - z.atan()) + (1.0 - t / (1.0 + z * z)) * dz)
}

fn branch_half_width(t: f64) -> f64 {
    (t - 1.0).max(0.0).sqrt()
}

fn char_residual(t: f64, x: f64) -> impl Fn(f64) -> (f64, f64) {
    move |y| (y + t * (2.0 + psi0(y)) - x, 1.0 + t * psi0_prime(y))
}

fn solve_branch(t: f64, x: f64, lo: f64, hi: f64, policy: &NumericPolicy) -> Result<f64> {
    let f = char_residual(t, x);
    if lo >= hi {
        if f(lo).0 == 0.0 {
            return Ok(lo);
        }
        return Err(Error::OutsideDomain { t, x });
    }
    find_root_with_derivative(f, (lo, hi), policy).map_err(|e| match e {
        Error::NoSignChange { .. } => Error::OutsideDomain { t, x },
        other => other,
    })
}

/// Foot on the branch `x0 <= -s`: characteristics from the left of the
/// origin, followed up to their local turning point.
pub(crate) fn foot_left_family(t: f64, x: f64, policy: &NumericPolicy) -> Result<f64> {
    let lo = x - t * (2.0 + FRAC_PI_2);
    let mut hi = x - t * (2.0 - FRAC_PI_2);
    if t > 1.0 {
        hi = hi.min(-branch_half_width(t));
    }
    solve_branch(t, x, lo, hi, policy)
}

/// Foot on the branch `x0 >= s`.
pub(crate) fn foot_right_family(t: f64, x: f64, policy: &NumericPolicy) -> Result<f64> {
    let mut lo = x - t * (2.0 + FRAC_PI_2);
    let hi = x - t * (2.0 - FRAC_PI_2);
    if t > 1.0 {
        lo = lo.max(branch_half_width(t));
    }
    solve_branch(t, x, lo, hi, policy)
}

/// Foot of the characteristic that carries the classical solution to `p`.
pub fn foot_classical(p: Point, policy: &NumericPolicy) -> Result<f64> {
    let (t, x) = (p.t, p.x);
    match classify(p, policy) {
        RegionTag::InitialSlice => Ok(x),
        RegionTag::OnCrease => Ok(0.0),
        RegionTag::OnSingularBoundary => Ok(branch_half_width(t)),
        RegionTag::WeakOnly => Err(Error::OutsideDomain { t, x }),
        RegionTag::OnCauchyHorizon => foot_left_family(t, x, policy),
        RegionTag::Wedge | RegionTag::OnShock => foot_right_family(t, x, policy),
        RegionTag::OmegaA => {
            if t > 1.0 && x < 4.0 - 2.0 * t {
                foot_left_family(t, x, policy)
            } else {
                foot_right_family(t, x, policy)
            }
        }
    }
}

/// Foot of the characteristic carrying the weak solution to `p`; those
/// characteristics terminate on the shock.
pub fn foot_weak(p: Point, policy: &NumericPolicy) -> Result<f64> {
    let (t, x) = (p.t, p.x);
    if t <= policy.geom_tol {
        return Ok(x);
    }
    if t > 1.0 && (x - 2.0 * t).abs() <= policy.geom_tol {
        return Err(Error::OnShock { t, x });
    }
    if x > 2.0 * t {
        foot_right_family(t, x, policy)
    } else if x < 2.0 * t {
        foot_left_family(t, x, policy)
    } else {
        Ok(0.0)
    }
}

/// Feet `(-x0, x0)` of the two characteristics meeting the shock at time
/// `t > 1`; `x0` is the positive root of `x0 = t arctan x0`.
pub fn shock_feet(t: f64, policy: &NumericPolicy) -> Result<(f64, f64)> {
    if t.is_nan() || t <= 1.0 {
        return Err(Error::Domain(format!("the shock exists only for t > 1, got {t}")));
    }
    // Written as (y - arctan y) - (t - 1) arctan y to avoid cancellation
    // when t is close to 1 and the root is small.
    let excess = t - 1.0;
    let x0 = find_root_with_derivative(
        |y| (y_minus_atan(y) - excess * y.atan(), 1.0 - t / (1.0 + y * y)),
        (branch_half_width(t), t * FRAC_PI_2),
        policy,
    )?;
    Ok((-x0, x0))
}

/// `y - arctan y` without cancellation for small `y`.
pub fn y_minus_atan(y: f64) -> f64 {
    if y.abs() < 0.1 {
        let y2 = y * y;
        // Alternating series y^3/3 - y^5/5 + ...; terms beyond y^17 are below
        // rounding for |y| < 0.1.
        let mut term = y * y2;
        let mut sum = 0.0;
        let mut sign = 1.0;
        for k in 1..=8 {
            sum += sign * term / (2 * k + 1) as f64;
            term *= y2;
            sign = -sign;
        }
        sum
    } else {
        y - y.atan()
    }
}

/// Region of `p`, with the curves themselves resolved to `geom_tol`.
pub fn classify(p: Point, policy: &NumericPolicy) -> RegionTag {
    let (t, x) = (p.t, p.x);
    let tol = policy.geom_tol;
    if t <= tol {
        return RegionTag::InitialSlice;
    }
    if (t - 1.0).abs() <= tol && (x - 2.0).abs() <= tol {
        return RegionTag::OnCrease;
    }
    if t > 1.0 {
        let xb = singular_boundary_point((t - 1.0).sqrt()).x;
        if (x - 2.0 * t).abs() <= tol {
            return RegionTag::OnShock;
        }
        if (x - xb).abs() <= tol {
            return RegionTag::OnSingularBoundary;
        }
        if (x - (4.0 - 2.0 * t)).abs() <= tol {
            return RegionTag::OnCauchyHorizon;
        }
        if x < 2.0 * t && x > 4.0 - 2.0 * t {
            return if x > xb {
                RegionTag::Wedge
            } else {
                RegionTag::WeakOnly
            };
        }
    }
    RegionTag::OmegaA
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn p() -> NumericPolicy {
        NumericPolicy::default()
    }

    fn pt(t: f64, x: f64) -> Point {
        Point::new(t, x).unwrap()
    }

    #[test]
    fn curve_timings() {
        assert_eq!(blowup_time(1.0).unwrap(), 2.0);
        assert!(blowup_time(0.0).is_err());
        assert!(blowup_time(-1.0).is_err());
        assert_abs_diff_eq!(shock_arrival_time(1.0).unwrap(), 4.0 / std::f64::consts::PI);
        assert!(shock_arrival_time(0.0).is_err());
        assert!(shock_arrival_time(1e-8).unwrap() - 1.0 < 1e-15);
        assert_eq!(horizon_arrival_time(0.0).unwrap(), 1.0);
    }

    #[test]
    fn crease_is_common_endpoint() {
        assert_eq!(singular_boundary_point(0.0), CREASE);
        for c in [
            BoundaryCurve::SingularBoundary,
            BoundaryCurve::CauchyHorizon,
            BoundaryCurve::Shock,
        ] {
            assert_eq!(boundary_x(c, 1.0).unwrap(), 2.0);
        }
        assert!(boundary_x(BoundaryCurve::Shock, 0.5).is_err());
    }

    #[test]
    fn boundary_slope_matches_difference_quotient() {
        for t in [1.1, 1.5, 2.0, 5.0] {
            let h = 1e-6;
            let fd = (boundary_x(BoundaryCurve::SingularBoundary, t + h).unwrap()
                - boundary_x(BoundaryCurve::SingularBoundary, t - h).unwrap())
                / (2.0 * h);
            assert_abs_diff_eq!(singular_boundary_slope(t).unwrap(), fd, epsilon = 1e-8);
        }
    }

    #[test]
    fn weak_feet_reference_values() {
        // Left of the shock at t = 2 the foot solves y - 2 arctan y = -1.
        let left = foot_weak(pt(2.0, 3.0), &p()).unwrap();
        assert_abs_diff_eq!(left, -3.599_648_605_265_395, epsilon = 1e-12);
        let right = foot_weak(pt(2.0, 5.0), &p()).unwrap();
        assert_abs_diff_eq!(right, 3.599_648_605_265_395, epsilon = 1e-12);
        assert!(matches!(
            foot_weak(pt(2.0, 4.0), &p()),
            Err(Error::OnShock { .. })
        ));
    }

    #[test]
    fn shock_foot_at_two() {
        let (l, r) = shock_feet(2.0, &p()).unwrap();
        assert_abs_diff_eq!(r, 2.331_122_370_414_422, epsilon = 1e-13);
        assert_eq!(l, -r);
        assert!(shock_feet(1.0, &p()).is_err());
    }

    #[test]
    fn series_branch_is_continuous() {
        let y = 0.1 - 1e-12;
        assert!((y_minus_atan(y) - (y - y.atan())).abs() < 1e-17);
    }

    #[test]
    fn shock_foot_near_onset() {
        // High-precision reference for the double nearest 1 + 1e-6.
        let (_, r) = shock_feet(1.0 + 1e-6, &p()).unwrap();
        assert!((r - 0.001_732_051_500_317_836_5).abs() < 1e-14 * r);
    }

    #[test]
    fn classification_examples() {
        let xb = boundary_x(BoundaryCurve::SingularBoundary, 1.27).unwrap();
        assert_abs_diff_eq!(xb, 2.451_010_438_597_827, epsilon = 1e-12);
        assert_eq!(classify(pt(1.27, 2.5), &p()), RegionTag::Wedge);
        assert_eq!(classify(pt(1.5, 1.2), &p()), RegionTag::WeakOnly);
        assert_eq!(classify(pt(0.5, 0.0), &p()), RegionTag::OmegaA);
        assert_eq!(classify(pt(1.0, 2.0), &p()), RegionTag::OnCrease);
        assert_eq!(classify(pt(0.0, 7.0), &p()), RegionTag::InitialSlice);
        assert_eq!(classify(pt(2.0, 4.0), &p()), RegionTag::OnShock);
        assert_eq!(classify(pt(2.0, 0.0), &p()), RegionTag::OnCauchyHorizon);
        assert_eq!(classify(pt(3.0, 8.0), &p()), RegionTag::OmegaA);
        assert_eq!(classify(pt(3.0, -3.0), &p()), RegionTag::OmegaA);
        let on_b = singular_boundary_point(1.0);
        assert_eq!(classify(on_b, &p()), RegionTag::OnSingularBoundary);
    }

    #[test]
    fn classical_foot_branches() {
        // Left of the horizon the foot is negative, right of the shock positive.
        let l = foot_classical(pt(2.0, -1.0), &p()).unwrap();
        assert!(l < -1.0);
        let r = foot_classical(pt(1.27, 2.5), &p()).unwrap();
        assert!(r > 0.27f64.sqrt());
        assert_abs_diff_eq!(outgoing_char(r, 1.27).x, 2.5, epsilon = 1e-13);
        assert!(matches!(
            foot_classical(pt(1.5, 1.2), &p()),
            Err(Error::OutsideDomain { .. })
        ));
    }
}
