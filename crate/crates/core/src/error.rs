use thiserror::Error;

/// Failure modes shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("bracket [{lo}, {hi}] does not change sign")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("root finder exceeded {0} iterations")]
    MaxIterExceeded(usize),
    #[error("argument outside the operation's domain: {0}")]
    Domain(String),
    #[error("point (t={t}, x={x}) lies outside the classical domain")]
    OutsideDomain { t: f64, x: f64 },
    #[error("point (t={t}, x={x}) lies on the shock curve")]
    OnShock { t: f64, x: f64 },
    #[error("characteristic Jacobian vanishes at (t={t}, x={x})")]
    NearSingular { t: f64, x: f64 },
    #[error("adaptive quadrature did not converge: {0}")]
    QuadFailure(String),
    #[error("acoustic metric degenerates at psi={0}")]
    DegenerateMetric(f64),
    #[error("zero vector has no causal character")]
    ZeroVector,
    #[error("apex (t={t}, x={x}) is not on the singular boundary")]
    ApexNotOnBoundary { t: f64, x: f64 },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("power-law fit is poor (r^2 = {r_squared})")]
    PoorFit { r_squared: f64 },
}

impl Error {
    /// True for errors caused by arguments the caller chose, as opposed to
    /// numerical breakdown.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Domain(_)
                | Error::OutsideDomain { .. }
                | Error::OnShock { .. }
                | Error::NearSingular { .. }
                | Error::DegenerateMetric(_)
                | Error::ZeroVector
                | Error::ApexNotOnBoundary { .. }
                | Error::Format(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
