use crate::characteristics::{boundary_x, BoundaryCurve, CREASE};
use crate::error::{Error, Result};
use crate::potential::horizon_jump_probe;
use crate::solutions::{psi_boundary_extension, psi_classical};
use crate::types::{NumericPolicy, Point};
use serde::Serialize;

/// Least-squares fit of `log y = log c + p log delta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitReport {
    pub exponent: f64,
    pub coefficient: f64,
    pub r_squared: f64,
    pub samples: usize,
}

/// Which one-sided singular behaviour to measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum HolderTarget {
    /// `|Psi_C(1, 2 + delta) - Psi_C(1, 2)|`.
    CreaseSpatial,
    /// `|Psi_C(t, x_B(t) + delta) - Psi_C(t, x_B(t))|`.
    SingularBoundarySpatial { t_bar: f64 },
    /// `|d_x Phi_W|` just above the Cauchy horizon minus on it, at `x`.
    HorizonJump { x: f64 },
}

pub fn fit_power_law(deltas: &[f64], values: &[f64]) -> Result<FitReport> {
    if deltas.len() != values.len() || deltas.len() < 3 {
        return Err(Error::Domain("a power-law fit needs at least 3 paired samples".into()));
    }
    if deltas.iter().chain(values).any(|v| !(*v > 0.0) || !v.is_finite()) {
        return Err(Error::Domain("power-law fit needs positive finite data".into()));
    }
    let xs: Vec<f64> = deltas.iter().map(|d| d.ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| {
            let r = y - (intercept + slope * x);
            r * r
        })
        .sum();
    let r_squared = if syy > 0.0 { 1.0 - ss_res / syy } else { 1.0 };
    Ok(FitReport {
        exponent: slope,
        coefficient: intercept.exp(),
        r_squared,
        samples: xs.len(),
    })
}

/// The quantity fitted by `holder_fit` at one offset.
pub fn holder_sample(target: HolderTarget, delta: f64, policy: &NumericPolicy) -> Result<f64> {
    match target {
        HolderTarget::CreaseSpatial => {
            let base = psi_classical(CREASE, policy)?;
            let v = psi_classical(Point::new(CREASE.t, CREASE.x + delta)?, policy)?;
            Ok((v - base).abs())
        }
        HolderTarget::SingularBoundarySpatial { t_bar } => {
            let xb = boundary_x(BoundaryCurve::SingularBoundary, t_bar)?;
            let (_, base) = psi_boundary_extension((t_bar - 1.0).sqrt())?;
            let v = psi_classical(Point::new(t_bar, xb + delta)?, policy)?;
            Ok((v - base).abs())
        }
        HolderTarget::HorizonJump { x } => horizon_jump_probe(x, delta, policy).map(f64::abs),
    }
}

/// Power-law fit of the target over `offsets`, each in `[1e-8, 5e-2]`.
/// Fails with `PoorFit` when `r^2 < 0.999`.
pub fn holder_fit(target: HolderTarget, offsets: &[f64], policy: &NumericPolicy) -> Result<FitReport> {
    if offsets.iter().any(|d| !(*d >= 1e-8 && *d <= 5e-2)) {
        return Err(Error::Domain("fit offsets must lie in [1e-8, 5e-2]".into()));
    }
    let values = offsets
        .iter()
        .map(|&d| holder_sample(target, d, policy))
        .collect::<Result<Vec<_>>>()?;
    let report = fit_power_law(offsets, &values)?;
    if report.r_squared < 0.999 {
        return Err(Error::PoorFit {
            r_squared: report.r_squared,
        });
    }
    Ok(report)
}
