//! Deterministic low-discrepancy sampling.

/// Radical inverse of `index` in `base`.
pub fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let inv = 1.0 / base as f64;
    let mut f = inv;
    let mut r = 0.0;
    while index > 0 {
        r += f * (index % base) as f64;
        index /= base;
        f *= inv;
    }
    r
}

/// Two-dimensional Halton sequence in the unit square. `seed` offsets the
/// starting index so different seeds give disjoint, reproducible streams.
#[derive(Debug, Clone)]
pub struct Halton2 {
    next: u64,
}

impl Halton2 {
    pub fn new(seed: u64) -> Self {
        Halton2 {
            next: 1 + seed.wrapping_mul(100_003) % (1 << 40),
        }
    }
}

impl Iterator for Halton2 {
    type Item = (f64, f64);

    fn next(&mut self) -> Option<(f64, f64)> {
        let i = self.next;
        self.next += 1;
        Some((radical_inverse(i, 2), radical_inverse(i, 3)))
    }
}
