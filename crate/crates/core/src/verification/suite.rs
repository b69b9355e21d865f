//! Named groups of checks with fixed thresholds, producing a serialisable
//! report. Used by the command line `verify` verb.

use super::*;
use crate::characteristics::{boundary_x, shock_feet, singular_boundary_point, BoundaryCurve, CREASE};
use crate::error::{Error, Result};
use crate::geometry::{
    backward_l_curves, bubble_witness, causal_past_contains, frame_residual, horizon_null_check,
    metric, shock_character, tangency_residual_b, timelike_past_contains, PastQuery,
};
use crate::godunov::{solve, GodunovState};
use crate::potential::{pde_residual_classical, phi};
use crate::sampling::Halton2;
use crate::solutions::{expansion_near_boundary, psi_classical, psi_weak};
use crate::types::{NumericPolicy, Point, SolutionVariant};
use serde::Serialize;
use std::f64::consts::FRAC_PI_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Rh,
    Lax,
    Oleinik,
    Holder,
    Weakform,
    Tangency,
    Nullness,
    Bubble,
    Pde,
    Agreement,
    Godunov,
}

impl Suite {
    pub const ALL: [Suite; 11] = [
        Suite::Rh,
        Suite::Lax,
        Suite::Oleinik,
        Suite::Holder,
        Suite::Weakform,
        Suite::Tangency,
        Suite::Nullness,
        Suite::Bubble,
        Suite::Pde,
        Suite::Agreement,
        Suite::Godunov,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Rh => "rh",
            Suite::Lax => "lax",
            Suite::Oleinik => "oleinik",
            Suite::Holder => "holder",
            Suite::Weakform => "weakform",
            Suite::Tangency => "tangency",
            Suite::Nullness => "nullness",
            Suite::Bubble => "bubble",
            Suite::Pde => "pde",
            Suite::Agreement => "agreement",
            Suite::Godunov => "godunov",
        }
    }

    pub fn parse(s: &str) -> Option<Vec<Suite>> {
        if s == "all" {
            return Some(Suite::ALL.to_vec());
        }
        Suite::ALL.iter().find(|x| x.name() == s).map(|x| vec![*x])
    }
}

/// One measured quantity compared against its threshold.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub threshold: f64,
    /// The mathematical claim the check certifies.
    pub reference: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub policy: NumericPolicy,
    pub suites: Vec<&'static str>,
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

struct Sink {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Sink {
    /// Records `measured <= threshold` (or `>=` when `at_least`).
    fn bound(&mut self, name: impl Into<String>, reference: &'static str, measured: Result<f64>, threshold: f64, at_least: bool) {
        let (measured, error) = match measured {
            Ok(v) => (v, None),
            Err(e) => (f64::NAN, Some(e.to_string())),
        };
        let passed = error.is_none()
            && if at_least {
                measured >= threshold
            } else {
                measured <= threshold
            };
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            passed,
            measured,
            threshold,
            reference,
            error,
        });
    }

    fn at_most(&mut self, name: impl Into<String>, reference: &'static str, measured: Result<f64>, threshold: f64) {
        self.bound(name, reference, measured, threshold, false)
    }

    fn at_least(&mut self, name: impl Into<String>, reference: &'static str, measured: Result<f64>, threshold: f64) {
        self.bound(name, reference, measured, threshold, true)
    }
}

fn max_of(values: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    values
        .into_iter()
        .try_fold(0.0f64, |m, v| v.map(|v| m.max(v.abs())))
}

fn log_spaced(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo * (hi / lo).powf((i + 1) as f64 / n as f64))
        .collect()
}

/// Offsets `base * 2^-k`, `k = 0..=10`.
pub fn dyadic_offsets(base: f64) -> Vec<f64> {
    (0..=10).map(|k| base * 0.5f64.powi(k)).collect()
}

const RH: &str = "Rankine-Hugoniot condition on the shock x = 2t";
const LAX: &str = "Lax entropy inequalities, with gaps equal to arctan of the shock foot";
const OLEINIK: &str = "Oleinik one-sided bound on the weak solution";
const CREASE_REF: &str = "classical solution is C^{1/3} at the crease with coefficient 3^{1/3}";
const BOUNDARY_REF: &str = "classical solution is C^{1/2} at the singular boundary";
const HORIZON_REF: &str = "d_x Phi_W jumps like (6 eps)^{1/2} just above the Cauchy horizon";
const WEAK_REF: &str = "weak solution satisfies the integral identity with initial data";
const CONTROL_REF: &str = "moving the shock off x = 2t breaks the integral identity";
const TANGENCY_REF: &str = "singular boundary is an integral curve of L";
const CREASE_LIMIT_REF: &str = "boundary, horizon and shock all end at the crease (1, 2)";
const NULL_REF: &str = "L and Lbar are null and g^-1 = -1/2 (L Lbar + Lbar L)";
const HORIZON_NULL_REF: &str = "Cauchy horizon is a null line with tangent Lbar";
const SHOCK_CHAR_REF: &str = "shock is spacelike for the classical metric and timelike for the weak one";
const BUBBLE_REF: &str = "causal past of a boundary point strictly contains its timelike past";
const CURVES_REF: &str = "two distinct past-directed L curves leave each boundary point";
const PDE_REF: &str = "L Psi_C = 0 and Lbar Phi_C = Psi_C in the classical region";
const AGREE_REF: &str = "classical and weak solutions agree below the shock and the horizon";
const DISAGREE_REF: &str = "classical and weak solutions differ strictly in the wedge";
const GODUNOV_REF: &str = "weak solution is the limit of a monotone finite-volume scheme";

fn rh(s: &mut Sink, p: &NumericPolicy) {
    let ts = log_spaced(1.001, 100.0, 50);
    s.at_most("max residual over 50 times in (1.001, 100]", RH, max_of(ts.iter().map(|&t| rh_residual(t, p))), 1e-11);
}

fn lax(s: &mut Sink, p: &NumericPolicy) {
    let ts = log_spaced(1.001, 100.0, 50);
    let min_gap = ts.iter().try_fold(f64::INFINITY, |m, &t| {
        lax_gaps(t, p).map(|g| m.min(g.lower).min(g.upper))
    });
    s.at_least("smallest gap", LAX, min_gap, f64::MIN_POSITIVE);
    let mismatch = max_of(ts.iter().map(|&t| -> Result<f64> {
        let g = lax_gaps(t, p)?;
        let a = shock_feet(t, p)?.1.atan();
        Ok((g.lower - a).abs().max((g.upper - a).abs()))
    }));
    s.at_most("gaps minus arctan x0(t)", LAX, mismatch, 1e-10);
    let onset = lax_gaps(1.0 + 1e-6, p).map(|g| g.lower.max(g.upper));
    s.at_most("gaps at t = 1 + 1e-6", LAX, onset, 2e-3);
}

fn oleinik(s: &mut Sink, seed: u64, p: &NumericPolicy) {
    for t in [0.5, 1.0, 2.0, 5.0] {
        let r = oleinik_scan(t, (-10.0, 10.0 + 2.0 * t), 400, seed, p).map(|r| r.max_quotient);
        s.at_most(format!("max forward quotient at t = {t}"), OLEINIK, r, 1e-10);
    }
}

fn holder(s: &mut Sink, p: &NumericPolicy) {
    let crease = holder_fit(HolderTarget::CreaseSpatial, &dyadic_offsets(1e-3), p);
    s.at_most("|crease exponent - 1/3|", CREASE_REF, crease.clone().map(|f| (f.exponent - 1.0 / 3.0).abs()), 0.02);
    s.at_most("|crease coefficient / 3^{1/3} - 1|", CREASE_REF, crease.map(|f| (f.coefficient / 3f64.cbrt() - 1.0).abs()), 0.05);
    for t_bar in [1.5, 2.0, 5.0] {
        let f = holder_fit(HolderTarget::SingularBoundarySpatial { t_bar }, &dyadic_offsets(1e-4), p);
        s.at_most(format!("|boundary exponent - 1/2| at t = {t_bar}"), BOUNDARY_REF, f.clone().map(|f| (f.exponent - 0.5).abs()), 0.02);
        let rel = f.and_then(|f| {
            let c = expansion_near_boundary(t_bar)?.coefficient.abs();
            Ok(f.coefficient / c - 1.0)
        });
        s.at_most(format!("boundary coefficient relative error at t = {t_bar}"), BOUNDARY_REF, rel.map(f64::abs), 0.05);
    }
    for x in [-2.0, 0.0, 1.0] {
        let f = holder_fit(HolderTarget::HorizonJump { x }, &dyadic_offsets(1e-2), p);
        s.at_most(format!("|horizon exponent - 1/2| at x = {x}"), HORIZON_REF, f.clone().map(|f| (f.exponent - 0.5).abs()), 0.02);
        s.at_most(format!("|horizon coefficient / sqrt 6 - 1| at x = {x}"), HORIZON_REF, f.map(|f| (f.coefficient / 6f64.sqrt() - 1.0).abs()), 0.05);
    }
}

/// Test functions for the weak-form check: three across the shock, two
/// touching the initial slice, the rest elsewhere in the plane.
pub fn weak_form_test_functions() -> Vec<TestFunction> {
    [
        (2.0, 4.0, 0.4, 0.8),
        (3.0, 6.0, 0.5, 1.0),
        (1.6, 3.2, 0.3, 0.6),
        (0.1, 1.0, 0.3, 1.0),
        (0.05, -2.0, 0.2, 1.5),
        (0.5, 0.0, 0.3, 1.0),
        (2.0, 0.0, 0.5, 1.0),
        (1.5, 2.6, 0.2, 0.3),
        (3.0, -2.0, 0.5, 1.5),
        (0.8, 5.0, 0.4, 1.0),
    ]
    .into_iter()
    .map(|(tc, xc, rt, rx)| TestFunction { tc, xc, rt, rx })
    .collect()
}

fn weakform(s: &mut Sink, p: &NumericPolicy) {
    let tfs = weak_form_test_functions();
    s.at_most("max residual over 10 test functions", WEAK_REF,
        max_of(tfs.iter().map(|tf| weak_form_residual(SolutionVariant::Weak, tf, p))), 1e-6);
    s.at_least("residual with shock at 2t + 0.05", CONTROL_REF, weak_form_residual_displaced(&tfs[0], 0.05, p), 1e-3);
}

fn tangency(s: &mut Sink, _p: &NumericPolicy) {
    let ts = log_spaced(1.001, 10.0, 50);
    s.at_most("max tangency residual over 50 times", TANGENCY_REF, max_of(ts.iter().map(|&t| tangency_residual_b(t))), 1e-10);
    let near = max_of(
        [BoundaryCurve::SingularBoundary, BoundaryCurve::CauchyHorizon, BoundaryCurve::Shock]
            .into_iter()
            .map(|c| boundary_x(c, 1.0 + 1e-10).map(|x| x - 2.0)),
    );
    s.at_most("curves at t = 1 + 1e-10 minus 2", CREASE_LIMIT_REF, near, 1e-9);
    let s0 = singular_boundary_point(0.0);
    s.at_most("S(0) - (1, 2)", CREASE_LIMIT_REF, Ok((s0.t - CREASE.t).abs().max((s0.x - CREASE.x).abs())), 0.0);
}

fn nullness(s: &mut Sink, seed: u64, p: &NumericPolicy) {
    let psis = Halton2::new(seed).take(10_000).map(|(u, _)| (2.0 * u - 1.0) * FRAC_PI_2 * (1.0 - 1e-12));
    s.at_most("frame residual over 10^4 psi", NULL_REF, max_of(psis.map(frame_residual)), 1e-13);
    let ts = log_spaced(1.001, 10.0, 50);
    let tangent_off = max_of(ts.iter().map(|&t| {
        horizon_null_check(t, p).map(|h| (h.tangent.t - 1.0).abs().max((h.tangent.x + 2.0).abs()))
    }));
    s.at_most("horizon tangent minus (1, -2)", HORIZON_NULL_REF, tangent_off, 0.0);
    s.at_most("horizon g(Lbar, Lbar)", HORIZON_NULL_REF, max_of(ts.iter().map(|&t| horizon_null_check(t, p).map(|h| h.g_tangent))), 1e-13);
    let wrong = ts.iter().try_fold(0.0, |n, &t| {
        shock_character(t, p).map(|c| {
            let ok = c.g_classical > 0.0 && c.g_weak_left < 0.0;
            n + if ok { 0.0 } else { 1.0 }
        })
    });
    s.at_most("times with wrong shock character", SHOCK_CHAR_REF, wrong, 0.0);
    let at = shock_character(4.0 / std::f64::consts::PI, p).and_then(|c| {
        let want_c = metric(-std::f64::consts::FRAC_PI_4)?.norm2(crate::geometry::SHOCK_TANGENT);
        let want_w = metric(std::f64::consts::FRAC_PI_4)?.norm2(crate::geometry::SHOCK_TANGENT);
        Ok((c.g_classical - want_c).abs().max((c.g_weak_left - want_w).abs()))
    });
    s.at_most("g(T, T) at t = 4/pi against psi = -+pi/4", SHOCK_CHAR_REF, at, 1e-3);
}

fn bubble(s: &mut Sink, p: &NumericPolicy) {
    let bad = [0.25, 0.5, 1.0, 2.0, 4.0].into_iter().try_fold(0.0, |n, z| -> Result<f64> {
        let apex = singular_boundary_point(z);
        let w = bubble_witness(apex, p)?;
        let q = PastQuery { apex, target: w };
        let ok = causal_past_contains(&q, p)? && !timelike_past_contains(&q, p)?;
        Ok(n + if ok { 0.0 } else { 1.0 })
    });
    s.at_most("apexes without a bubble witness", BUBBLE_REF, bad, 0.0);
    let ex = (|| -> Result<f64> {
        let apex = Point::new(2.0, 5.0 - FRAC_PI_2)?;
        let q = PastQuery { apex, target: Point::new(1.0, 2.1)? };
        Ok(if causal_past_contains(&q, p)? && !timelike_past_contains(&q, p)? { 0.0 } else { 1.0 })
    })();
    s.at_most("(1, 2.1) against apex (2, 5 - pi/2)", BUBBLE_REF, ex, 0.0);
    let curves = backward_l_curves(singular_boundary_point(1.0), 0.9, 10_000, p);
    s.at_most("backward L curve residual", CURVES_REF, curves.clone().map(|c| c.residual_boundary.max(c.residual_tangent)), 1e-4);
    let sep = curves.and_then(|c| {
        let i = c.times.iter().position(|t| (t - 1.5).abs() < 1e-9)
            .ok_or_else(|| Error::InvariantViolation("t = 1.5 not on the grid".into()))?;
        Ok((c.tangent[i] - c.boundary[i]).abs())
    });
    s.at_least("separation of the two curves at t = 1.5", CURVES_REF, sep, 0.03);
}

fn pde(s: &mut Sink, seed: u64, p: &NumericPolicy) {
    let pts = classical_interior_points(200, seed, 0.25, p);
    s.at_most("max residual over 200 points, h = 1e-4", PDE_REF,
        pts.clone().and_then(|pts| max_of(pts.iter().map(|q| pde_residual_classical(*q, 1e-4, p)))), 1e-6);
    let order = pts.and_then(|pts| {
        pts.iter().take(10).try_fold(f64::INFINITY, |m, q| {
            let a = pde_residual_classical(*q, 2e-2, p)?;
            let b = pde_residual_classical(*q, 1e-2, p)?;
            Ok(m.min((a / b).log2()))
        })
    });
    s.at_least("smallest observed order on 10 points", PDE_REF, order, 1.9);
}

fn agreement(s: &mut Sink, seed: u64, p: &NumericPolicy) {
    let r = agreement_disagreement_scan(1000, seed, p);
    s.at_most("max |Psi_W - Psi_C| over 1000 common points", AGREE_REF, r.clone().map(|r| r.max_agreement_error), 1e-11);
    s.at_least("min Psi_W - Psi_C over 1000 wedge points", DISAGREE_REF, r.map(|r| r.min_wedge_gap), f64::MIN_POSITIVE);
    let d = Point::new(1.27, 2.5).and_then(|q| Ok((phi(q, SolutionVariant::Weak, p)? - phi(q, SolutionVariant::Classical, p)?).abs()));
    s.at_least("|Phi_W - Phi_C| at (1.27, 2.5)", DISAGREE_REF, d, 1e-4);
}

fn godunov(s: &mut Sink, p: &NumericPolicy) {
    let run = |n: usize, t: f64| solve(GodunovState::initial(-10.0, 10.0, n, p.cfl)?, t, p);
    let e4 = run(4000, 2.0).and_then(|st| st.l1_error(p));
    let e8 = run(8000, 2.0).and_then(|st| st.l1_error(p));
    s.at_most("L1 error at t = 2, n = 4000", GODUNOV_REF, e4.clone(), 1e-2);
    s.at_most("L1 error ratio n = 8000 over 4000", GODUNOV_REF, e4.and_then(|a| e8.map(|b| b / a)), 0.75);
    let probe = run(8000, 1.27).and_then(|st| {
        let i = ((2.5 - st.x_lo) / st.cell_width()).floor() as usize;
        let q = Point::new(1.27, st.center(i))?;
        Ok((st.values[i], psi_weak(q, p)?, psi_classical(q, p)?))
    });
    s.at_most("|u - Psi_W| near (1.27, 2.5)", GODUNOV_REF, probe.clone().map(|(u, w, _)| (u - w).abs()), 0.05);
    s.at_least("|u - Psi_C| near (1.27, 2.5)", GODUNOV_REF, probe.map(|(u, _, c)| (u - c).abs()), 0.5);
}

/// Runs `suites` and collects every check.
pub fn run(suites: &[Suite], seed: u64, policy: &NumericPolicy) -> Report {
    let mut checks = Vec::new();
    for suite in suites {
        let mut sink = Sink {
            suite: suite.name(),
            checks: Vec::new(),
        };
        match suite {
            Suite::Rh => rh(&mut sink, policy),
            Suite::Lax => lax(&mut sink, policy),
            Suite::Oleinik => oleinik(&mut sink, seed, policy),
            Suite::Holder => holder(&mut sink, policy),
            Suite::Weakform => weakform(&mut sink, policy),
            Suite::Tangency => tangency(&mut sink, policy),
            Suite::Nullness => nullness(&mut sink, seed, policy),
            Suite::Bubble => bubble(&mut sink, policy),
            Suite::Pde => pde(&mut sink, seed, policy),
            Suite::Agreement => agreement(&mut sink, seed, policy),
            Suite::Godunov => godunov(&mut sink, policy),
        }
        checks.extend(sink.checks);
    }
    let passed = checks.iter().filter(|c| c.passed).count();
    Report {
        seed,
        policy: *policy,
        suites: suites.iter().map(Suite::name).collect(),
        passed,
        failed: checks.len() - passed,
        checks,
    }
}
