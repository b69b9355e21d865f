//! Pointwise evaluation of the classical development, the weak solution and
//! their shock and near-singularity structure.

use crate::characteristics::{
    foot_classical, foot_left_family, foot_right_family, foot_weak,
    singular_boundary_point, shock_feet,
};
use crate::datum::{psi0, psi0_prime, psi0_second};
use crate::error::{Error, Result};
use crate::types::{NumericPolicy, Point, SolutionVariant};
use serde::Serialize;

/// Left and right states of the shock at one time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ShockTrace {
    pub t: f64,
    pub x: f64,
    /// Value on the side `x < 2t`, carried from a negative foot.
    pub left: f64,
    /// Value on the side `x > 2t`, carried from a positive foot.
    pub right: f64,
    pub speed: f64,
    pub left_foot: f64,
    pub right_foot: f64,
}

/// Leading term `coefficient * delta^exponent` of a one-sided expansion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExpansionPrediction {
    pub coefficient: f64,
    pub exponent: f64,
}

/// Classical solution on the closure of its domain. Defined on the shock
/// line, the Cauchy horizon and the singular boundary; beyond them the
/// classical development does not exist.
pub fn psi_classical(p: Point, policy: &NumericPolicy) -> Result<f64> {
    foot_classical(p, policy).map(psi0)
}

/// `d Psi_C / dx = Psi0'(x0) / (1 + t Psi0'(x0))`.
pub fn dpsidx_classical(p: Point, policy: &NumericPolicy) -> Result<f64> {
    let x0 = foot_classical(p, policy)?;
    slope_along_foot(p, x0, policy)
}

/// Spatial derivative of the weak solution away from the shock.
pub fn dpsidx_weak(p: Point, policy: &NumericPolicy) -> Result<f64> {
    let x0 = foot_weak(p, policy)?;
    slope_along_foot(p, x0, policy)
}

fn slope_along_foot(p: Point, x0: f64, policy: &NumericPolicy) -> Result<f64> {
    let d = psi0_prime(x0);
    let jac = 1.0 + p.t * d;
    if jac.abs() < policy.geom_tol {
        return Err(Error::NearSingular { t: p.t, x: p.x });
    }
    Ok(d / jac)
}

/// Weak solution; undefined on the shock itself.
pub fn psi_weak(p: Point, policy: &NumericPolicy) -> Result<f64> {
    foot_weak(p, policy).map(psi0)
}

/// Weak solution with the side of the shock chosen by the caller, so that
/// quadrature nodes within `geom_tol` of the shock still get the one-sided
/// limit of the panel they belong to.
pub fn psi_weak_sided(p: Point, left_of_shock: bool, policy: &NumericPolicy) -> Result<f64> {
    match psi_weak(p, policy) {
        Err(Error::OnShock { .. }) => {
            let foot = if left_of_shock {
                foot_left_family(p.t, p.x, policy)?
            } else {
                foot_right_family(p.t, p.x, policy)?
            };
            Ok(psi0(foot))
        }
        other => other,
    }
}

/// Either variant, dispatching on `v`.
pub fn psi(p: Point, v: SolutionVariant, policy: &NumericPolicy) -> Result<f64> {
    match v {
        SolutionVariant::Classical => psi_classical(p, policy),
        SolutionVariant::Weak => psi_weak(p, policy),
    }
}

/// Either variant's spatial derivative.
pub fn dpsidx(p: Point, v: SolutionVariant, policy: &NumericPolicy) -> Result<f64> {
    match v {
        SolutionVariant::Classical => dpsidx_classical(p, policy),
        SolutionVariant::Weak => dpsidx_weak(p, policy),
    }
}

/// Point of the singular boundary with parameter `z >= 0` and the value the
/// classical solution extends to there.
pub fn psi_boundary_extension(z: f64) -> Result<(Point, f64)> {
    if z.is_nan() || z < 0.0 {
        return Err(Error::Domain(format!("boundary parameter must be >= 0, got {z}")));
    }
    Ok((singular_boundary_point(z), psi0(z)))
}

/// Shock states at `t > 1`. The two sides are solved independently along
/// their own characteristic families.
pub fn shock_trace(t: f64, policy: &NumericPolicy) -> Result<ShockTrace> {
    let (_, x0) = shock_feet(t, policy)?;
    let x = 2.0 * t;
    let left_foot = foot_left_family(t, x, policy)?;
    let right_foot = foot_right_family(t, x, policy)?;
    let trace = ShockTrace {
        t,
        x,
        left: psi0(left_foot),
        right: psi0(right_foot),
        speed: 2.0,
        left_foot,
        right_foot,
    };
    let scale = x0.max(1.0);
    if (left_foot + x0).abs() > 1e3 * policy.root_tol * scale
        || (right_foot - x0).abs() > 1e3 * policy.root_tol * scale
    {
        return Err(Error::InvariantViolation(format!(
            "shock feet at t={t} disagree: ({left_foot}, {right_foot}) vs +-{x0}"
        )));
    }
    Ok(trace)
}

/// Leading behaviour of `Psi_C(tb, x_B(tb) + delta) - Psi_C(tb, x_B(tb))`.
pub fn expansion_near_boundary(t_bar: f64) -> Result<ExpansionPrediction> {
    if t_bar.is_nan() || t_bar <= 1.0 {
        return Err(Error::Domain(format!("expansion at the boundary needs t > 1, got {t_bar}")));
    }
    let z = (t_bar - 1.0).sqrt();
    let d1 = psi0_prime(z);
    let d2 = psi0_second(z);
    Ok(ExpansionPrediction {
        coefficient: d1 * (2.0 * d1.abs() / d2).sqrt(),
        exponent: 0.5,
    })
}

/// Leading prediction of `Psi_C(1, 2 + delta) - Psi_C(1, 2)` at the crease.
pub fn expansion_near_crease(delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta <= 0.1) {
        return Err(Error::Domain(format!("crease expansion needs 0 < delta <= 0.1, got {delta}")));
    }
    Ok(-(3.0 * delta).cbrt())
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
    fn reference_values() {
        assert_abs_diff_eq!(psi_classical(pt(1.0, 2.1), &p()).unwrap(), -0.631_659_472_661_204_2, epsilon = 1e-12);
        assert_abs_diff_eq!(psi_weak(pt(2.0, 3.0), &p()).unwrap(), 1.299_824_302_632_697_6, epsilon = 1e-12);
        assert_abs_diff_eq!(psi_weak(pt(2.0, 5.0), &p()).unwrap(), -1.299_824_302_632_697_6, epsilon = 1e-12);
        assert_eq!(psi_classical(pt(0.5, 1.0), &p()).unwrap(), 0.0);
        assert_eq!(psi_weak(pt(0.5, 1.0), &p()).unwrap(), 0.0);
        assert!(matches!(psi_weak(pt(2.0, 4.0), &p()), Err(Error::OnShock { .. })));
        assert!(matches!(psi_classical(pt(1.5, 1.2), &p()), Err(Error::OutsideDomain { .. })));
    }

    #[test]
    fn shock_states_at_two() {
        let s = shock_trace(2.0, &p()).unwrap();
        assert_abs_diff_eq!(s.left, 1.165_561_185_207_211_3, epsilon = 1e-12);
        assert_abs_diff_eq!(s.right, -1.165_561_185_207_211_3, epsilon = 1e-12);
        assert_eq!(s.speed, 2.0);
    }

    #[test]
    fn derivative_blows_up_on_boundary() {
        let b = singular_boundary_point(1.0);
        assert!(matches!(dpsidx_classical(b, &p()), Err(Error::NearSingular { .. })));
        let h = 1e-6;
        let q = pt(0.5, 0.3);
        let fd = (psi_classical(pt(0.5, 0.3 + h), &p()).unwrap()
            - psi_classical(pt(0.5, 0.3 - h), &p()).unwrap())
            / (2.0 * h);
        assert_abs_diff_eq!(dpsidx_classical(q, &p()).unwrap(), fd, epsilon = 1e-8);
    }

    #[test]
    fn boundary_expansion_coefficients() {
        assert_abs_diff_eq!(expansion_near_boundary(2.0).unwrap().coefficient, -(0.5f64.sqrt()), epsilon = 1e-14);
        assert_abs_diff_eq!(expansion_near_boundary(5.0).unwrap().coefficient, -(0.1f64.sqrt()), epsilon = 1e-14);
        assert_abs_diff_eq!(expansion_near_crease(3e-6).unwrap(), -0.020_800_838_230_519_04, epsilon = 1e-15);
        assert!(expansion_near_crease(0.2).is_err());
    }
}
