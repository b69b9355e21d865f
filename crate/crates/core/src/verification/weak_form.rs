use crate::characteristics::{foot_left_family, foot_right_family, foot_weak};
use crate::datum::psi0;
use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre;
use crate::solutions::psi;
use crate::types::{NumericPolicy, Point, SolutionVariant};
use serde::Serialize;

/// Tensor-product bump `b((t - tc)/rt) b((x - xc)/rx)` with
/// `b(s) = (1 - s^2)^3` on `|s| < 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TestFunction {
    pub tc: f64,
    pub xc: f64,
    pub rt: f64,
    pub rx: f64,
}

fn bump(s: f64) -> (f64, f64) {
    if s.abs() >= 1.0 {
        return (0.0, 0.0);
    }
    let q = 1.0 - s * s;
    (q * q * q, -6.0 * s * q * q)
}

impl TestFunction {
    pub fn new(tc: f64, xc: f64, rt: f64, rx: f64) -> Result<Self> {
        if !(rt > 0.0 && rx > 0.0) || tc + rt <= 0.0 {
            return Err(Error::Domain(format!(
                "test function ({tc}, {xc}, {rt}, {rx}) has empty support in t >= 0"
            )));
        }
        Ok(TestFunction { tc, xc, rt, rx })
    }

    /// `(phi, d_t phi, d_x phi)` at `(t, x)`.
    pub fn eval(&self, t: f64, x: f64) -> (f64, f64, f64) {
        let (bt, dbt) = bump((t - self.tc) / self.rt);
        let (bx, dbx) = bump((x - self.xc) / self.rx);
        (bt * bx, dbt * bx / self.rt, bt * dbx / self.rx)
    }

    pub fn touches_initial_slice(&self) -> bool {
        self.tc - self.rt < 0.0
    }
}

const PANELS: usize = 12;
const NODES: usize = 15;

/// Composite Gauss-Legendre nodes on `[a, b]` split at `cuts`.
fn nodes_on(a: f64, b: f64, cuts: &[f64], rule: &(Vec<f64>, Vec<f64>)) -> Vec<(f64, f64)> {
    let mut edges = vec![a];
    edges.extend(cuts.iter().copied().filter(|c| *c > a && *c < b));
    edges.push(b);
    let mut out = Vec::new();
    for w in edges.windows(2) {
        let len = (w[1] - w[0]) / PANELS as f64;
        for k in 0..PANELS {
            let lo = w[0] + k as f64 * len;
            for (z, wt) in rule.0.iter().zip(&rule.1) {
                out.push((lo + 0.5 * len * (z + 1.0), 0.5 * len * wt));
            }
        }
    }
    out
}

fn residual_with<F>(tf: &TestFunction, psi_at: F) -> Result<f64>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    let rule = gauss_legendre(NODES);
    let t_lo = (tf.tc - tf.rt).max(0.0);
    let t_hi = tf.tc + tf.rt;
    let (x_lo, x_hi) = (tf.xc - tf.rx, tf.xc + tf.rx);

    let mut interior = 0.0;
    for (t, wt) in nodes_on(t_lo, t_hi, &[1.0], &rule) {
        let cuts: Vec<f64> = if t > 1.0 { vec![2.0 * t] } else { vec![] };
        let mut row = 0.0;
        for (x, wx) in nodes_on(x_lo, x_hi, &cuts, &rule) {
            let (_, pt, px) = tf.eval(t, x);
            let u = psi_at(t, x)?;
            row += wx * (u * pt + 0.5 * (2.0 + u) * (2.0 + u) * px);
        }
        interior += wt * row;
    }

    let mut initial = 0.0;
    if tf.touches_initial_slice() {
        for (x, wx) in nodes_on(x_lo, x_hi, &[], &rule) {
            initial += wx * psi0(x) * tf.eval(0.0, x).0;
        }
    }
    Ok((interior + initial).abs())
}

/// `|int int (Psi phi_t + 1/2 (2 + Psi)^2 phi_x) + int Psi0 phi(0, .)|`.
pub fn weak_form_residual(v: SolutionVariant, tf: &TestFunction, policy: &NumericPolicy) -> Result<f64> {
    residual_with(tf, |t, x| psi(Point { t, x }, v, policy))
}

/// Same functional for the weak solution with its shock moved to
/// `x = 2t + offset`. A nonzero offset breaks the jump condition, so the
/// residual must be visibly nonzero.
pub fn weak_form_residual_displaced(tf: &TestFunction, offset: f64, policy: &NumericPolicy) -> Result<f64> {
    residual_with(tf, |t, x| {
        if t <= 1.0 {
            return foot_weak(Point { t, x }, policy).map(psi0);
        }
        if x < 2.0 * t + offset {
            foot_left_family(t, x, policy).map(psi0)
        } else {
            foot_right_family(t, x, policy).map(psi0)
        }
    })
}
