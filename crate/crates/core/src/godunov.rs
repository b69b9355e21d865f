//! First-order Godunov scheme for `d_t u + d_x (1/2 (2 + u)^2) = 0`, used as
//! an independent check that the weak solution is the entropy solution.
//! Boundary ghost cells take the exact weak solution, so the interior is
//! untouched by the characteristic formulas.

use crate::datum::psi0_integral;
use crate::error::{Error, Result};
use crate::quadrature::integrate;
use crate::solutions::{psi_weak, psi_weak_sided};
use crate::types::{NumericPolicy, Point};
use serde::Serialize;
use std::f64::consts::FRAC_PI_2;
use std::io::{Read, Write};

pub fn flux(u: f64) -> f64 {
    0.5 * (2.0 + u) * (2.0 + u)
}

/// Exact Riemann flux for the convex flux above, whose minimum sits at
/// `u = -2`.
pub fn godunov_flux(ul: f64, ur: f64) -> f64 {
    if ul <= ur {
        flux((-2.0f64).clamp(ul, ur))
    } else {
        flux(ul).max(flux(ur))
    }
}

/// Cell averages on a uniform grid over `[x_lo, x_hi]` at `time`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GodunovState {
    pub x_lo: f64,
    pub x_hi: f64,
    pub time: f64,
    pub cfl: f64,
    pub values: Vec<f64>,
}

fn total_variation(v: &[f64]) -> f64 {
    v.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
}

impl GodunovState {
    /// Exact cell averages of the initial data.
    pub fn initial(x_lo: f64, x_hi: f64, n: usize, cfl: f64) -> Result<Self> {
        if !(x_hi > x_lo) || n < 2 || !(cfl > 0.0 && cfl <= 1.0) {
            return Err(Error::Domain(format!(
                "grid [{x_lo}, {x_hi}] with {n} cells and cfl {cfl} is invalid"
            )));
        }
        let h = (x_hi - x_lo) / n as f64;
        let values = (0..n)
            .map(|i| {
                let a = x_lo + i as f64 * h;
                (psi0_integral(a + h) - psi0_integral(a)) / h
            })
            .collect();
        Ok(GodunovState {
            x_lo,
            x_hi,
            time: 0.0,
            cfl,
            values,
        })
    }

    pub fn cell_width(&self) -> f64 {
        (self.x_hi - self.x_lo) / self.values.len() as f64
    }

    pub fn center(&self, i: usize) -> f64 {
        self.x_lo + (i as f64 + 0.5) * self.cell_width()
    }

    /// Interior values with the two ghost cells attached.
    fn extended(&self, policy: &NumericPolicy) -> Result<Vec<f64>> {
        let h = self.cell_width();
        let ghost = |x: f64| psi_weak(Point::new(self.time, x)?, policy);
        let mut ext = Vec::with_capacity(self.values.len() + 2);
        ext.push(ghost(self.x_lo - 0.5 * h)?);
        ext.extend_from_slice(&self.values);
        ext.push(ghost(self.x_hi + 0.5 * h)?);
        Ok(ext)
    }

    /// Largest stable time step.
    pub fn stable_dt(&self) -> f64 {
        let speed = self
            .values
            .iter()
            .fold(0.0f64, |m, u| m.max((2.0 + u).abs()));
        self.cfl * self.cell_width() / speed
    }

    /// One step, shortened so as not to pass `t_stop`. Checks that values
    /// stay in `[-pi/2, pi/2]` and that total variation does not exceed
    /// that of the previous state including its ghost cells.
    pub fn step(&self, t_stop: f64, policy: &NumericPolicy) -> Result<GodunovState> {
        let dt = self.stable_dt().min(t_stop - self.time);
        if !(dt > 0.0) {
            return Err(Error::Domain(format!("no time left to step: t={} stop={t_stop}", self.time)));
        }
        let ext = self.extended(policy)?;
        let ratio = dt / self.cell_width();
        let fluxes: Vec<f64> = ext.windows(2).map(|w| godunov_flux(w[0], w[1])).collect();
        let values: Vec<f64> = self
            .values
            .iter()
            .enumerate()
            .map(|(i, u)| u - ratio * (fluxes[i + 1] - fluxes[i]))
            .collect();

        let slack = 1e-12;
        if let Some(u) = values.iter().find(|u| u.abs() > FRAC_PI_2 + slack || !u.is_finite()) {
            return Err(Error::InvariantViolation(format!("value {u} left [-pi/2, pi/2]")));
        }
        let tv_old = total_variation(&ext);
        let tv_new = total_variation(&values);
        if tv_new > tv_old + slack {
            return Err(Error::InvariantViolation(format!(
                "total variation grew from {tv_old} to {tv_new}"
            )));
        }
        Ok(GodunovState {
            time: if dt == t_stop - self.time { t_stop } else { self.time + dt },
            values,
            ..*self
        })
    }

    /// `sum h |u_i - avg_i Psi_W(time)|`, with exact cell averages split at
    /// the shock.
    pub fn l1_error(&self, policy: &NumericPolicy) -> Result<f64> {
        let h = self.cell_width();
        let t = self.time;
        let mut total = 0.0;
        for (i, u) in self.values.iter().enumerate() {
            let a = self.x_lo + i as f64 * h;
            let avg = if t == 0.0 {
                (psi0_integral(a + h) - psi0_integral(a)) / h
            } else {
                let mut failure = None;
                let v = integrate(
                    |x| match psi_weak_sided(Point { t, x }, x < 2.0 * t, policy) {
                        Ok(v) => v,
                        Err(e) => {
                            failure.get_or_insert(e);
                            0.0
                        }
                    },
                    a,
                    a + h,
                    &[2.0 * t],
                    1e-12 * h,
                )?;
                if let Some(e) = failure {
                    return Err(e);
                }
                v / h
            };
            total += h * (u - avg).abs();
        }
        Ok(total)
    }

    /// Rows `x_center,value`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::Format(e.to_string());
        out.write_record(["x_center", "value"]).map_err(io)?;
        for (i, u) in self.values.iter().enumerate() {
            out.write_record([self.center(i).to_string(), u.to_string()])
                .map_err(io)?;
        }
        out.flush().map_err(|e| Error::Format(e.to_string()))
    }

    /// Inverse of `write_csv`; the grid is recovered from the centres, which
    /// must be uniformly spaced.
    pub fn read_csv<R: Read>(r: R, time: f64, cfl: f64) -> Result<Self> {
        let mut rdr = csv::Reader::from_reader(r);
        let mut xs = Vec::new();
        let mut values = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(|e| Error::Format(e.to_string()))?;
            let field = |k: usize| -> Result<f64> {
                rec.get(k)
                    .ok_or_else(|| Error::Format(format!("row has no column {k}")))?
                    .trim()
                    .parse()
                    .map_err(|e| Error::Format(format!("{e}")))
            };
            xs.push(field(0)?);
            values.push(field(1)?);
        }
        if xs.len() < 2 {
            return Err(Error::Format("need at least two cells".into()));
        }
        let h = xs[1] - xs[0];
        if !(h > 0.0) || xs.windows(2).any(|w| ((w[1] - w[0]) - h).abs() > 1e-9 * h.max(1.0)) {
            return Err(Error::Format("cell centres are not uniformly spaced".into()));
        }
        Ok(GodunovState {
            x_lo: xs[0] - 0.5 * h,
            x_hi: xs[xs.len() - 1] + 0.5 * h,
            time,
            cfl,
            values,
        })
    }
}

/// March `state` to `t_end`.
pub fn solve(state: GodunovState, t_end: f64, policy: &NumericPolicy) -> Result<GodunovState> {
    if t_end < state.time {
        return Err(Error::Domain(format!("t_end {t_end} precedes state time {}", state.time)));
    }
    let mut s = state;
    while s.time < t_end {
        s = s.step(t_end, policy)?;
    }
    Ok(s)
}
