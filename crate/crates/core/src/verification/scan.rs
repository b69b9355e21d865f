use crate::characteristics::{boundary_x, classify, BoundaryCurve, RegionTag};
use crate::error::Result;
use crate::sampling::Halton2;
use crate::solutions::{psi_classical, psi_weak};
use crate::types::{NumericPolicy, Point};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AgreementReport {
    pub omega_a_points: usize,
    /// Largest `|Psi_W - Psi_C|` in the common region.
    pub max_agreement_error: f64,
    pub wedge_points: usize,
    /// Smallest `Psi_W - Psi_C` in the wedge; positive means strict
    /// disagreement everywhere sampled.
    pub min_wedge_gap: f64,
}

const T_MAX: f64 = 3.0;
const X_RANGE: (f64, f64) = (-8.0, 10.0);

/// `n` Halton points of the wedge `1 < t <= 3`, `x_B(t) < x < 2t`.
pub fn wedge_points(n: usize, seed: u64, policy: &NumericPolicy) -> Result<Vec<Point>> {
    let mut out = Vec::with_capacity(n);
    for (u, w) in Halton2::new(seed) {
        if out.len() == n {
            break;
        }
        let t = 1.0 + u * (T_MAX - 1.0);
        let xb = boundary_x(BoundaryCurve::SingularBoundary, t)?;
        let p = Point::new(t, xb + w * (2.0 * t - xb))?;
        if classify(p, policy) == RegionTag::Wedge {
            out.push(p);
        }
    }
    Ok(out)
}

/// `n` Halton points of the common region with `t <= 3`.
pub fn omega_a_points(n: usize, seed: u64, policy: &NumericPolicy) -> Result<Vec<Point>> {
    let mut out = Vec::with_capacity(n);
    for (u, w) in Halton2::new(seed) {
        if out.len() == n {
            break;
        }
        let p = Point::new(u * T_MAX, X_RANGE.0 + w * (X_RANGE.1 - X_RANGE.0))?;
        if classify(p, policy) == RegionTag::OmegaA {
            out.push(p);
        }
    }
    Ok(out)
}

/// Compare the two variants on `n` points of each region.
pub fn agreement_disagreement_scan(n: usize, seed: u64, policy: &NumericPolicy) -> Result<AgreementReport> {
    let mut max_agreement_error: f64 = 0.0;
    let common = omega_a_points(n, seed, policy)?;
    for p in &common {
        let d = psi_weak(*p, policy)? - psi_classical(*p, policy)?;
        max_agreement_error = max_agreement_error.max(d.abs());
    }
    let mut min_wedge_gap = f64::INFINITY;
    let wedge = wedge_points(n, seed, policy)?;
    for p in &wedge {
        min_wedge_gap = min_wedge_gap.min(psi_weak(*p, policy)? - psi_classical(*p, policy)?);
    }
    Ok(AgreementReport {
        omega_a_points: common.len(),
        max_agreement_error,
        wedge_points: wedge.len(),
        min_wedge_gap,
    })
}

/// `n` Halton points of the open classical region at least `margin` away
/// from the singular boundary, the Cauchy horizon and the crease, with
/// `margin <= t <= 3`.
pub fn classical_interior_points(n: usize, seed: u64, margin: f64, policy: &NumericPolicy) -> Result<Vec<Point>> {
    let mut out = Vec::with_capacity(n);
    for (u, w) in Halton2::new(seed) {
        if out.len() == n {
            break;
        }
        let t = margin + u * (T_MAX - margin);
        let x = X_RANGE.0 + w * (X_RANGE.1 - X_RANGE.0);
        let p = Point::new(t, x)?;
        if !matches!(classify(p, policy), RegionTag::OmegaA | RegionTag::Wedge) {
            continue;
        }
        let near_crease = (t - 1.0).hypot(x - 2.0) < margin;
        let near_curves = t > 1.0
            && ((x - boundary_x(BoundaryCurve::SingularBoundary, t)?).abs() < margin
                || (x - boundary_x(BoundaryCurve::CauchyHorizon, t)?).abs() < margin);
        if !near_crease && !near_curves {
            out.push(p);
        }
    }
    Ok(out)
}
