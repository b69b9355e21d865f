//! Acoustic metric of the wave model and the causal structure it induces
//! on the classical development.
//!
//! In `(t, x)` coordinates, with `psi` the value of `Psi`,
//! `g = (4 + psi)^-2 [[-8(2 + psi), -2 psi], [-2 psi, 4]]` and
//! `g^-1 = [[-1, -psi/2], [-psi/2, 2(2 + psi)]] = -1/2 (L (x) Lbar + Lbar (x) L)`
//! with `L = (1, 2 + psi)` and `Lbar = (1, -2)`.

use crate::characteristics::{
    boundary_slope, boundary_x, classify, singular_boundary_slope, BoundaryCurve, RegionTag,
};
use crate::datum::psi0;
use crate::error::{Error, Result};
use crate::solutions::{psi_boundary_extension, psi_classical, shock_trace};
use crate::types::{NumericPolicy, Point, Vec2};
use serde::Serialize;

/// Symmetric 2x2 tensor in `(t, x)` components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Metric2 {
    pub tt: f64,
    pub tx: f64,
    pub xx: f64,
}

impl Metric2 {
    pub fn det(&self) -> f64 {
        self.tt * self.xx - self.tx * self.tx
    }

    pub fn apply(&self, u: Vec2, v: Vec2) -> f64 {
        self.tt * u.t * v.t + self.tx * (u.t * v.x + u.x * v.t) + self.xx * u.x * v.x
    }

    pub fn norm2(&self, v: Vec2) -> f64 {
        self.apply(v, v)
    }
}

/// The two null directions at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NullFrame {
    pub l: Vec2,
    pub lbar: Vec2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CausalClass {
    Timelike,
    Null,
    Spacelike,
}

/// Membership query against the past of an apex on the singular boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PastQuery {
    pub apex: Point,
    pub target: Point,
}

fn check_regular(psi: f64) -> Result<()> {
    if !psi.is_finite() || psi == -4.0 || psi == -2.0 {
        return Err(Error::DegenerateMetric(psi));
    }
    Ok(())
}

pub fn metric(psi: f64) -> Result<Metric2> {
    check_regular(psi)?;
    let d = (4.0 + psi) * (4.0 + psi);
    Ok(Metric2 {
        tt: -8.0 * (2.0 + psi) / d,
        tx: -2.0 * psi / d,
        xx: 4.0 / d,
    })
}

pub fn inverse_metric(psi: f64) -> Result<Metric2> {
    check_regular(psi)?;
    Ok(Metric2 {
        tt: -1.0,
        tx: -0.5 * psi,
        xx: 2.0 * (2.0 + psi),
    })
}

pub fn null_frame(psi: f64) -> NullFrame {
    NullFrame {
        l: Vec2::new(1.0, 2.0 + psi),
        lbar: Vec2::new(1.0, -2.0),
    }
}

/// Largest of `|g(L, L)|`, `|g(Lbar, Lbar)|`, the entries of
/// `g^-1 + 1/2 (L (x) Lbar + Lbar (x) L)` and of `g g^-1 - I`.
pub fn frame_residual(psi: f64) -> Result<f64> {
    let g = metric(psi)?;
    let gi = inverse_metric(psi)?;
    let f = null_frame(psi);
    let (l, lb) = (f.l, f.lbar);
    let decomp = [
        gi.tt + l.t * lb.t,
        gi.tx + 0.5 * (l.t * lb.x + lb.t * l.x),
        gi.xx + l.x * lb.x,
    ];
    let product = [
        g.tt * gi.tt + g.tx * gi.tx - 1.0,
        g.tt * gi.tx + g.tx * gi.xx,
        g.tx * gi.tx + g.xx * gi.xx - 1.0,
    ];
    Ok([g.norm2(l), g.norm2(lb)]
        .into_iter()
        .chain(decomp)
        .chain(product)
        .fold(0.0, |m, r: f64| m.max(r.abs())))
}

/// Causal character of `v` at a point where `Psi = psi`; `|g(v, v)|` within
/// `geom_tol * |v|^2` counts as null.
pub fn causal_class(psi: f64, v: Vec2, policy: &NumericPolicy) -> Result<CausalClass> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let q = metric(psi)?.norm2(v);
    let scale = v.t * v.t + v.x * v.x;
    Ok(if q.abs() <= policy.geom_tol * scale {
        CausalClass::Null
    } else if q < 0.0 {
        CausalClass::Timelike
    } else {
        CausalClass::Spacelike
    })
}

/// `|x_B'(t) - (2 + Psi)|` on the singular boundary: the boundary is an
/// integral curve of `L`.
pub fn tangency_residual_b(t: f64) -> Result<f64> {
    let slope = singular_boundary_slope(t)?;
    let (_, psi) = psi_boundary_extension((t - 1.0).sqrt())?;
    Ok((slope - (2.0 + psi)).abs())
}

/// Causal character of the shock tangent `(1, 2)` with respect to the
/// acoustic metric on either side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShockCharacter {
    pub t: f64,
    /// Value of the classical development on the shock line.
    pub psi_classical: f64,
    /// Value the weak solution takes just left of the shock.
    pub psi_weak_left: f64,
    pub g_classical: f64,
    pub g_weak_left: f64,
    pub classical: CausalClass,
    pub weak_left: CausalClass,
}

pub const SHOCK_TANGENT: Vec2 = Vec2::new(1.0, 2.0);

pub fn shock_character(t: f64, policy: &NumericPolicy) -> Result<ShockCharacter> {
    let trace = shock_trace(t, policy)?;
    let psi_c = psi_classical(Point::new(t, 2.0 * t)?, policy)?;
    Ok(ShockCharacter {
        t,
        psi_classical: psi_c,
        psi_weak_left: trace.left,
        g_classical: metric(psi_c)?.norm2(SHOCK_TANGENT),
        g_weak_left: metric(trace.left)?.norm2(SHOCK_TANGENT),
        classical: causal_class(psi_c, SHOCK_TANGENT, policy)?,
        weak_left: causal_class(trace.left, SHOCK_TANGENT, policy)?,
    })
}

/// Foot `z` of the boundary characteristic through `apex`, if it is on the
/// singular boundary.
fn apex_foot(apex: Point, policy: &NumericPolicy) -> Result<f64> {
    if apex.t > 1.0
        && (apex.x - boundary_x(BoundaryCurve::SingularBoundary, apex.t)?).abs() <= policy.geom_tol
    {
        Ok((apex.t - 1.0).sqrt())
    } else {
        Err(Error::ApexNotOnBoundary {
            t: apex.t,
            x: apex.x,
        })
    }
}

/// Right edge of both pasts: the backward `Lbar` line through the apex.
fn right_edge(apex: Point, t: f64) -> f64 {
    apex.x + 2.0 * (apex.t - t)
}

/// Left edge of the causal past: the boundary back to the crease, then the
/// characteristic from the origin.
fn causal_left_edge(t: f64) -> f64 {
    if t > 1.0 {
        boundary_x(BoundaryCurve::SingularBoundary, t).unwrap_or(2.0 * t)
    } else {
        2.0 * t
    }
}

/// Left edge of the timelike past: the characteristic tangent to the
/// boundary at the apex.
fn timelike_left_edge(z: f64, t: f64) -> f64 {
    z + t * (2.0 + psi0(z))
}

/// Whether `q.target` lies in the closed causal past of `q.apex` inside the
/// classical development.
pub fn causal_past_contains(q: &PastQuery, policy: &NumericPolicy) -> Result<bool> {
    apex_foot(q.apex, policy)?;
    let (t, x) = (q.target.t, q.target.x);
    if t > q.apex.t + policy.geom_tol {
        return Ok(false);
    }
    let tol = policy.geom_tol;
    Ok(x >= causal_left_edge(t) - tol && x <= right_edge(q.apex, t) + tol)
}

/// Whether `q.target` lies in the open timelike past of `q.apex`.
pub fn timelike_past_contains(q: &PastQuery, policy: &NumericPolicy) -> Result<bool> {
    let z = apex_foot(q.apex, policy)?;
    let (t, x) = (q.target.t, q.target.x);
    if t >= q.apex.t {
        return Ok(false);
    }
    Ok(x > timelike_left_edge(z, t) && x < right_edge(q.apex, t))
}

/// A point in the causal but not the timelike past of `apex`: halfway in
/// time between the crease and the apex, midway between the boundary and
/// the tangent characteristic.
pub fn bubble_witness(apex: Point, policy: &NumericPolicy) -> Result<Point> {
    let z = apex_foot(apex, policy)?;
    let t = 0.5 * (1.0 + apex.t);
    let xb = boundary_x(BoundaryCurve::SingularBoundary, t)?;
    let xg = timelike_left_edge(z, t);
    Point::new(t, 0.5 * (xb + xg))
}

/// The two past-directed integral curves of `L` from an apex on the
/// boundary, sampled on a common time grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BackwardCurves {
    pub times: Vec<f64>,
    /// Along the singular boundary.
    pub boundary: Vec<f64>,
    /// Along the straight characteristic tangent at the apex.
    pub tangent: Vec<f64>,
    /// Largest `|dx/dt - (2 + Psi)|` along each curve, by differences.
    pub residual_boundary: f64,
    pub residual_tangent: f64,
}

pub fn backward_l_curves(apex: Point, duration: f64, n: usize, policy: &NumericPolicy) -> Result<BackwardCurves> {
    let z = apex_foot(apex, policy)?;
    if !(duration > 0.0 && duration <= apex.t - 1.0) || n < 3 {
        return Err(Error::Domain(format!(
            "duration {duration} must lie in (0, {}] with n >= 3",
            apex.t - 1.0
        )));
    }
    let times: Vec<f64> = (0..n)
        .map(|i| apex.t - duration * i as f64 / (n - 1) as f64)
        .collect();
    let boundary = times
        .iter()
        .map(|&t| boundary_x(BoundaryCurve::SingularBoundary, t.max(1.0)))
        .collect::<Result<Vec<_>>>()?;
    let tangent: Vec<f64> = times.iter().map(|&t| timelike_left_edge(z, t)).collect();

    let mut residual_boundary: f64 = 0.0;
    let mut residual_tangent: f64 = 0.0;
    for i in 1..n - 1 {
        let dt = times[i + 1] - times[i - 1];
        let t = times[i];
        let s = (t - 1.0).max(0.0).sqrt();
        let fd_b = (boundary[i + 1] - boundary[i - 1]) / dt;
        residual_boundary = residual_boundary.max((fd_b - (2.0 + psi0(s))).abs());
        let fd_g = (tangent[i + 1] - tangent[i - 1]) / dt;
        let psi_g = psi_classical(Point::new(t, tangent[i])?, policy)?;
        residual_tangent = residual_tangent.max((fd_g - (2.0 + psi_g)).abs());
    }
    Ok(BackwardCurves {
        times,
        boundary,
        tangent,
        residual_boundary,
        residual_tangent,
    })
}

/// Null check of the Cauchy horizon at time `t > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HorizonCheck {
    pub t: f64,
    pub psi: f64,
    /// Tangent `(1, dx/dt)` of the horizon.
    pub tangent: Vec2,
    pub g_tangent: f64,
}

pub fn horizon_null_check(t: f64, policy: &NumericPolicy) -> Result<HorizonCheck> {
    let x = boundary_x(BoundaryCurve::CauchyHorizon, t)?;
    let tangent = Vec2::new(1.0, boundary_slope(BoundaryCurve::CauchyHorizon, t)?);
    let psi = psi_classical(Point::new(t, x)?, policy)?;
    Ok(HorizonCheck {
        t,
        psi,
        tangent,
        g_tangent: metric(psi)?.norm2(tangent),
    })
}

/// Distance at `t = 1` between the crease and the backward characteristic
/// through the interior point `eta` below the apex. Stays bounded away
/// from zero as `eta -> 0`, which is what makes the boundary an extrinsic
/// rather than intrinsic singularity.
pub fn crease_miss_distance(apex: Point, eta: f64, policy: &NumericPolicy) -> Result<f64> {
    apex_foot(apex, policy)?;
    let p = Point::new(apex.t - eta, apex.x)?;
    if classify(p, policy) != RegionTag::Wedge && classify(p, policy) != RegionTag::OmegaA {
        return Err(Error::OutsideDomain { t: p.t, x: p.x });
    }
    let x0 = crate::characteristics::foot_classical(p, policy)?;
    Ok((x0 + 2.0 + psi0(x0) - 2.0).abs())
}
