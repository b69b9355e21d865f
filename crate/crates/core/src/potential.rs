//! The wave potential `Phi`, recovered from `Psi` by integrating along the
//! ingoing null lines `x + 2t = const`:
//!
//! `Phi(t, x) = 1/2 * int_x^{x+2t} Psi(t + (x - y)/2, y) dy`.
//!
//! Along such a line `d/dy` is `-1/2 Lbar`, and Burgers' equation turns
//! `1/2 d_t Psi` into an exact `y`-derivative. This gives the closed form
//! `d_x Phi = ln((4 + Psi0(x + 2t)) / (4 + Psi(t, x)))` wherever the line is
//! smooth, plus `ln((4 + A)/(4 + B)) - (A - B)/4` when it crosses the shock
//! with upstream state `A` and downstream state `B`.

use crate::characteristics::{classify, RegionTag};
use crate::datum::psi0;
use crate::error::{Error, Result};
use crate::quadrature::integrate;
use crate::solutions::{psi, psi_weak_sided, shock_trace};
use crate::types::{NumericPolicy, Point, SolutionVariant};
use serde::Serialize;

/// Integration interval in `y` for one evaluation of `Phi` and the points
/// where the integrand may be non-smooth.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadPlan {
    pub lower: f64,
    pub upper: f64,
    /// Where the ingoing line meets the shock, when it does so at `t > 1`.
    pub shock_crossing: Option<f64>,
    pub breakpoints: Vec<f64>,
}

impl QuadPlan {
    pub fn new(p: Point) -> Self {
        let lower = p.x;
        let upper = p.x + 2.0 * p.t;
        let mut breakpoints = Vec::new();
        // x = 2 tau on the line: y = t + x/2, at time x/4 + t/2.
        let y_k = p.t + 0.5 * p.x;
        let shock_crossing = (0.25 * p.x + 0.5 * p.t > 1.0 && y_k > lower && y_k < upper)
            .then_some(y_k);
        breakpoints.extend(shock_crossing);
        // Level t = 1, where the line passes closest to the crease.
        if p.t > 1.0 {
            breakpoints.push(p.x + 2.0 * (p.t - 1.0));
        }
        QuadPlan {
            lower,
            upper,
            shock_crossing,
            breakpoints,
        }
    }
}

fn time_on_line(p: Point, y: f64) -> f64 {
    (p.t + 0.5 * (p.x - y)).max(0.0)
}

/// Value of `Psi_v` at the node `y` of the ingoing line through `p`.
fn integrand(p: Point, plan: &QuadPlan, v: SolutionVariant, policy: &NumericPolicy, y: f64) -> Result<f64> {
    let tau = time_on_line(p, y);
    let q = Point { t: tau, x: y };
    match v {
        SolutionVariant::Classical => psi(q, v, policy),
        SolutionVariant::Weak => {
            let upstream = plan.shock_crossing.map_or(y < 2.0 * tau, |yk| y < yk);
            psi_weak_sided(q, upstream, policy)
        }
    }
}

fn check_variant_domain(p: Point, v: SolutionVariant, policy: &NumericPolicy) -> Result<()> {
    if v == SolutionVariant::Classical && classify(p, policy) == RegionTag::WeakOnly {
        return Err(Error::OutsideDomain { t: p.t, x: p.x });
    }
    Ok(())
}

/// Wave potential of variant `v` at `p`.
pub fn phi(p: Point, v: SolutionVariant, policy: &NumericPolicy) -> Result<f64> {
    check_variant_domain(p, v, policy)?;
    if p.t == 0.0 {
        return Ok(0.0);
    }
    let plan = QuadPlan::new(p);
    let mut failure = None;
    let value = integrate(
        |y| match integrand(p, &plan, v, policy, y) {
            Ok(val) => val,
            Err(e) => {
                failure.get_or_insert(e);
                0.0
            }
        },
        plan.lower,
        plan.upper,
        &plan.breakpoints,
        2.0 * policy.quad_tol,
    )?;
    match failure {
        Some(e) => Err(e),
        None => Ok(0.5 * value),
    }
}

/// Closed form of `d_x Phi`.
pub fn dphidx_closed(p: Point, v: SolutionVariant, policy: &NumericPolicy) -> Result<f64> {
    check_variant_domain(p, v, policy)?;
    let at_point = psi(p, v, policy)?;
    let at_foot = psi0(p.x + 2.0 * p.t);
    let mut value = ((4.0 + at_foot) / (4.0 + at_point)).ln();
    let tau_k = 0.25 * p.x + 0.5 * p.t;
    if v == SolutionVariant::Weak && tau_k > 1.0 && p.x < 2.0 * p.t {
        let s = shock_trace(tau_k, policy)?;
        value += ((4.0 + s.left) / (4.0 + s.right)).ln() - 0.25 * (s.left - s.right);
    }
    Ok(value)
}

/// `d_t Phi`, from `Lbar Phi = Psi`.
pub fn dphidt_closed(p: Point, v: SolutionVariant, policy: &NumericPolicy) -> Result<f64> {
    Ok(psi(p, v, policy)? + 2.0 * dphidx_closed(p, v, policy)?)
}

fn fd_step(p: Point) -> f64 {
    1e-5 * 1f64.max(p.t.abs()).max(p.x.abs())
}

fn along_lbar(p: Point, s: f64) -> Point {
    Point {
        t: p.t + s,
        x: p.x - 2.0 * s,
    }
}

/// Centred difference of `Phi` along `Lbar = (1, -2)`; one-sided second
/// order when the centred stencil would leave `t >= 0`.
pub fn lbar_derivative(p: Point, v: SolutionVariant, policy: &NumericPolicy) -> Result<f64> {
    let h = fd_step(p);
    let f = |s: f64| phi(along_lbar(p, s), v, policy);
    if p.t >= h {
        Ok((f(h)? - f(-h)?) / (2.0 * h))
    } else {
        Ok((-3.0 * f(0.0)? + 4.0 * f(h)? - f(2.0 * h)?) / (2.0 * h))
    }
}

/// `d_x Phi_W` just above the Cauchy horizon minus its value on it, at
/// horizontal position `x < 2`.
pub fn horizon_jump_probe(x: f64, eps: f64, policy: &NumericPolicy) -> Result<f64> {
    if !(eps > 0.0 && eps <= 0.05) {
        return Err(Error::Domain(format!("probe offset must lie in (0, 0.05], got {eps}")));
    }
    if x.is_nan() || x >= 2.0 {
        return Err(Error::Domain(format!("the horizon probe needs x < 2, got {x}")));
    }
    let t_c = 2.0 - 0.5 * x;
    let above = dphidx_closed(Point::new(t_c + eps, x)?, SolutionVariant::Weak, policy)?;
    let on = dphidx_closed(Point::new(t_c, x)?, SolutionVariant::Weak, policy)?;
    Ok(above - on)
}

fn interior_classical(q: Point, policy: &NumericPolicy) -> bool {
    matches!(classify(q, policy), RegionTag::OmegaA | RegionTag::Wedge)
}

/// Largest of `|L Psi_C|` and `|Lbar Phi_C - Psi_C|` by centred differences
/// with step `h`.
pub fn pde_residual_classical(p: Point, h: f64, policy: &NumericPolicy) -> Result<f64> {
    if !(h > 0.0) || p.t < h {
        return Err(Error::Domain(format!("stencil of size {h} does not fit at t={}", p.t)));
    }
    let v = SolutionVariant::Classical;
    let center = psi(p, v, policy)?;
    let speed = 2.0 + center;
    let l_pts = [
        Point { t: p.t + h, x: p.x + h * speed },
        Point { t: p.t - h, x: p.x - h * speed },
    ];
    let lb_pts = [along_lbar(p, h), along_lbar(p, -h)];
    for q in std::iter::once(p).chain(l_pts).chain(lb_pts) {
        if !interior_classical(q, policy) {
            return Err(Error::OutsideDomain { t: q.t, x: q.x });
        }
    }
    let l_res = (psi(l_pts[0], v, policy)? - psi(l_pts[1], v, policy)?) / (2.0 * h);
    let lb = (phi(lb_pts[0], v, policy)? - phi(lb_pts[1], v, policy)?) / (2.0 * h);
    Ok(l_res.abs().max((lb - center).abs()))
}
