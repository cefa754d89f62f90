//! Small deterministic numeric utilities shared across the crate.

use num_complex::Complex64;

/// Neumaier-compensated accumulator for `f64` sums.
///
/// Adds terms in call order with a running error term, so the result is
/// independent of optimization level and far more accurate than a naive sum
/// for long, cancellation-heavy series.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let t = self.sum + value;
        if self.sum.abs() >= value.abs() {
            self.compensation += (self.sum - t) + value;
        } else {
            self.compensation += (value - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Compensated accumulator for complex sums (independent real/imag tracks).
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedComplexSum {
    re: CompensatedSum,
    im: CompensatedSum,
}

impl CompensatedComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: Complex64) {
        self.re.add(value.re);
        self.im.add(value.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

/// SplitMix64: tiny deterministic PRNG used wherever a reproducible start
/// vector or test point is needed. Passes through every 64-bit state exactly
/// once; good enough statistical quality for seeding iterative solvers.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform draw in [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    /// Uniform draw in [-1, 1).
    pub fn next_symmetric(&mut self) -> f64 {
        2.0 * self.next_f64() - 1.0
    }
}

/// Polynomial extrapolation to h = 0 through the points (h_i, y_i), by
/// Lagrange evaluation at zero. Used for Richardson limits of damped
/// quantities sampled on a ladder of regularization parameters.
pub fn extrapolate_to_zero(hs: &[f64], ys: &[f64]) -> f64 {
    debug_assert_eq!(hs.len(), ys.len());
    let n = hs.len();
    let mut acc = 0.0;
    for i in 0..n {
        let mut weight = 1.0;
        for j in 0..n {
            if i != j {
                weight *= hs[j] / (hs[j] - hs[i]);
            }
        }
        acc += weight * ys[i];
    }
    acc
}

/// Cubic Lagrange interpolation on a uniform table.
///
/// `values[i]` holds samples at `origin + i·step`. Interior queries use the
/// centered 4-point stencil; queries in the first or last cell fall back to
/// the one-sided stencil. Callers must keep queries inside the table range.
pub fn cubic_interp(values: &[f64], origin: f64, step: f64, x: f64) -> f64 {
    let n = values.len();
    debug_assert!(n >= 4, "interpolation table needs at least 4 points");
    let t = (x - origin) / step;
    let mut i0 = t.floor() as isize - 1;
    if i0 < 0 {
        i0 = 0;
    }
    if i0 > n as isize - 4 {
        i0 = n as isize - 4;
    }
    let i0 = i0 as usize;
    let u = t - i0 as f64;
    // Lagrange basis on nodes 0,1,2,3 evaluated at u.
    let w0 = -(u - 1.0) * (u - 2.0) * (u - 3.0) / 6.0;
    let w1 = u * (u - 2.0) * (u - 3.0) / 2.0;
    let w2 = -u * (u - 1.0) * (u - 3.0) / 2.0;
    let w3 = u * (u - 1.0) * (u - 2.0) / 6.0;
    w0 * values[i0] + w1 * values[i0 + 1] + w2 * values[i0 + 2] + w3 * values[i0 + 3]
}

/// Greatest common divisor of two non-negative integers.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}
