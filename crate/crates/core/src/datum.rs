//! Initial data `Psi0(x) = -arctan x` and its derivatives.

pub fn psi0(x: f64) -> f64 {
    -x.atan()
}

pub fn psi0_prime(x: f64) -> f64 {
    -1.0 / (1.0 + x * x)
}

pub fn psi0_second(x: f64) -> f64 {
    let d = 1.0 + x * x;
    2.0 * x / (d * d)
}

/// Antiderivative of `psi0`, used for exact cell averages.
pub fn psi0_integral(x: f64) -> f64 {
    x.hypot(1.0).ln() - x * x.atan()
}
