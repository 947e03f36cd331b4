//! Complex log-gamma, gamma, reciprocal gamma and digamma.
//!
//! Arguments are shifted to `Re w >= 15` with the recurrence and then
//! evaluated with the Stirling series. The recurrence sums principal
//! logarithms, each analytic off `(-inf, -k]`, so the result is the
//! principal branch of `log Gamma` on the plane cut along `(-inf, 0]`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// `B_2, B_4, ..., B_30` as exact fractions.
const BERNOULLI_EVEN: [(f64, f64); 15] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
    (8553103.0, 6.0),
    (-23749461029.0, 870.0),
    (8615841276005.0, 14322.0),
];

/// Even-index Bernoulli number `B_{2k}` for `1 <= k <= 15`.
pub fn bernoulli_even(k: usize) -> f64 {
    let (num, den) = BERNOULLI_EVEN[k - 1];
    num / den
}

pub(crate) const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

const SHIFT_TARGET: f64 = 15.0;
const STIRLING_TERMS: usize = 12;

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

fn shift_count(z: Complex64) -> usize {
    if z.re >= SHIFT_TARGET {
        0
    } else {
        (SHIFT_TARGET - z.re).ceil() as usize
    }
}

/// Principal branch of `log Gamma(z)`.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole {
            function: "log_gamma",
            at: z,
        });
    }
    let n = shift_count(z);
    let mut shift = Complex64::new(0.0, 0.0);
    for k in 0..n {
        shift += (z + k as f64).ln();
    }
    let w = z + n as f64;
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for k in 1..=STIRLING_TERMS {
        let kk = k as f64;
        series += pow * (bernoulli_even(k) / (2.0 * kk * (2.0 * kk - 1.0)));
        pow *= inv2;
    }
    Ok((w - 0.5) * w.ln() - w + LN_SQRT_2PI + series - shift)
}

pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(log_gamma(z)?.exp())
}

/// `1 / Gamma(z)`; entire, zero at the non-positive integers.
pub fn rgamma(z: Complex64) -> Complex64 {
    if is_nonpositive_integer(z) {
        return Complex64::new(0.0, 0.0);
    }
    // log_gamma only fails at the excluded points
    (-log_gamma(z).expect("non-pole argument")).exp()
}

/// Digamma function `psi(z) = Gamma'(z) / Gamma(z)`.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole {
            function: "digamma",
            at: z,
        });
    }
    let n = shift_count(z);
    let mut shift = Complex64::new(0.0, 0.0);
    for k in 0..n {
        shift += (z + k as f64).inv();
    }
    let w = z + n as f64;
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv2;
    for k in 1..=STIRLING_TERMS {
        series += pow * (bernoulli_even(k) / (2.0 * k as f64));
        pow *= inv2;
    }
    Ok(w.ln() - inv * 0.5 - series - shift)
}

/// `sqrt(2 pi)`.
pub fn sqrt_two_pi() -> f64 {
    (2.0 * PI).sqrt()
}
