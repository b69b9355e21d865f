//! Composite adaptive Gauss-Legendre quadrature with caller-supplied
//! breakpoints at known discontinuities.

use crate::error::{Error, Result};
use std::sync::OnceLock;

/// Number of nodes per panel.
pub const PANEL_NODES: usize = 15;

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn panel_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(PANEL_NODES))
}

/// Fixed 15-point rule on `[a, b]`.
pub fn panel<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> f64 {
    let (nodes, weights) = panel_rule();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut sum = 0.0;
    for (z, w) in nodes.iter().zip(weights) {
        sum += w * f(mid + half * z);
    }
    sum * half
}

/// Adaptive integral of `f` over `[a, b]`, split first at every breakpoint
/// strictly inside the interval. `tol` is an absolute tolerance, shared
/// equally between the pieces the breakpoints create.
pub fn integrate<F>(mut f: F, a: f64, b: f64, breakpoints: &[f64], tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if a == b {
        return Ok(0.0);
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|c| *c > lo && *c < hi)
        .collect();
    cuts.sort_by(|p, q| p.total_cmp(q));
    let mut edges = Vec::with_capacity(cuts.len() + 2);
    edges.push(lo);
    edges.extend(cuts);
    edges.push(hi);

    let share = tol / (edges.len() - 1) as f64;
    let mut sum = 0.0;
    for w in edges.windows(2) {
        sum += adapt(&mut f, w[0], w[1], share)?;
    }
    Ok(sign * sum)
}

const MAX_PANELS: usize = 4000;

/// Globally adaptive: keep bisecting the panel with the largest error
/// estimate until the estimates sum to at most `tol`.
fn adapt<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64, budget: f64) -> Result<f64> {
    let whole = panel(f, a, b);
    let mut panels = vec![split(f, a, b, whole)];
    loop {
        let err: f64 = panels.iter().map(|p| p.err).sum();
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let magnitude: f64 = panels.iter().map(|p| p.value.abs()).sum();
        if err <= budget.max(4.0 * f64::EPSILON * magnitude) {
            return Ok(value);
        }
        if panels.len() >= MAX_PANELS {
            return Err(Error::QuadFailure(format!(
                "[{a}, {b}] unresolved with {} panels, error estimate {err:e}",
                panels.len()
            )));
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let p = panels.swap_remove(worst);
        let m = 0.5 * (p.a + p.b);
        panels.push(split(f, p.a, m, p.left));
        panels.push(split(f, m, p.b, p.right));
    }
}

struct Panel {
    a: f64,
    b: f64,
    left: f64,
    right: f64,
    value: f64,
    err: f64,
}

fn split<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64, whole: f64) -> Panel {
    let m = 0.5 * (a + b);
    let left = panel(f, a, m);
    let right = panel(f, m, b);
    let value = left + right;
    Panel {
        a,
        b,
        left,
        right,
        value,
        err: (value - whole).abs(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn rule_integrates_polynomials_exactly() {
        let (z, w) = gauss_legendre(PANEL_NODES);
        assert_abs_diff_eq!(w.iter().sum::<f64>(), 2.0, epsilon = 1e-14);
        // Degree 28 is the highest integrated exactly.
        let s: f64 = z.iter().zip(&w).map(|(z, w)| w * z.powi(28)).sum();
        assert_abs_diff_eq!(s, 2.0 / 29.0, epsilon = 1e-14);
    }

    #[test]
    fn breakpoint_handles_jump() {
        let f = |x: f64| if x < 0.3 { 1.0 } else { -2.0 };
        let v = integrate(f, 0.0, 1.0, &[0.3], 1e-12).unwrap();
        assert_abs_diff_eq!(v, 0.3 - 1.4, epsilon = 1e-14);
    }

    #[test]
    fn adapts_to_cube_root_cusp() {
        let v = integrate(|x: f64| x.cbrt(), 0.0, 1.0, &[], 1e-10).unwrap();
        assert_abs_diff_eq!(v, 0.75, epsilon = 1e-10);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let v = integrate(|x: f64| x.exp(), 1.0, 0.0, &[], 1e-12).unwrap();
        assert_abs_diff_eq!(v, 1.0 - 1f64.exp(), epsilon = 1e-13);
    }
}
