//! Hurwitz zeta function by Euler-Maclaurin summation.

use num_complex::Complex64;

use super::gamma::bernoulli_even;
use crate::calculus::{richardson_derivative, Derivative};
use crate::context::EvalContext;
use crate::error::{Error, Result};

const EM_TERMS: usize = 15;

fn is_integer(x: f64) -> bool {
    x.fract() == 0.0
}

fn check_args(s: Complex64, a: Complex64) -> Result<()> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::Pole {
            function: "hurwitz_zeta",
            at: s,
        });
    }
    if a.im == 0.0 && a.re <= 0.0 {
        if is_integer(a.re) {
            return Err(Error::Domain {
                function: "hurwitz_zeta",
                at: a,
                reason: "z is a non-positive integer",
            });
        }
        // integer exponents are branch-free, everything else sits on the cut
        if !(s.im == 0.0 && is_integer(s.re)) {
            return Err(Error::Domain {
                function: "hurwitz_zeta",
                at: a,
                reason: "z lies on the branch cut (-inf, 0]",
            });
        }
    }
    Ok(())
}

/// Principal power `w^{-s}`.
#[inline]
pub(crate) fn cpow_neg(w: Complex64, s: Complex64) -> Complex64 {
    (-s * w.ln()).exp()
}

/// Analytic continuation of `sum_{l >= 0} (z + l)^{-s}`.
pub fn hurwitz_zeta(s: Complex64, z: Complex64) -> Result<Complex64> {
    check_args(s, z)?;
    let radius = 10.0 + s.norm();
    let n = if z.re >= radius {
        0
    } else {
        (radius - z.re).ceil() as usize
    };

    let mut head = Complex64::new(0.0, 0.0);
    for k in 0..n {
        head += cpow_neg(z + k as f64, s);
    }

    let w = z + n as f64;
    let w_neg_s = cpow_neg(w, s);
    let inv_w = w.inv();
    let inv_w2 = inv_w * inv_w;
    let mut tail = w_neg_s * w / (s - 1.0) + w_neg_s * 0.5;

    // B_{2j} / (2j)! * s (s+1) ... (s+2j-2) * w^{-s-2j+1}
    let mut rising = s;
    let mut factorial = 2.0;
    let mut pow = w_neg_s * inv_w;
    for j in 1..=EM_TERMS {
        if j > 1 {
            let jj = j as f64;
            rising *= (s + (2.0 * jj - 3.0)) * (s + (2.0 * jj - 2.0));
            factorial *= (2.0 * jj - 1.0) * (2.0 * jj);
            pow *= inv_w2;
        }
        let term = rising * pow * (bernoulli_even(j) / factorial);
        tail += term;
        if term.norm() <= 1e-18 * (head + tail).norm() {
            break;
        }
    }
    Ok(head + tail)
}

/// s-derivative of the Hurwitz zeta function at `s0`, by Richardson-extrapolated
/// central differences with initial step `ctx.derivative_step`.
pub fn hurwitz_zeta_ds(s0: Complex64, z: Complex64, ctx: &EvalContext) -> Result<Derivative> {
    check_args(Complex64::new(0.0, 0.0), z)?;
    if (s0 - 1.0).norm() <= ctx.derivative_step {
        return Err(Error::Pole {
            function: "hurwitz_zeta_ds",
            at: s0,
        });
    }
    richardson_derivative(|s| hurwitz_zeta(s, z), s0, ctx.derivative_step)
}

/// `d/ds zeta_H(s, z)` at `s = 0`, computed numerically from the continuation.
pub fn hurwitz_zeta_ds0(z: Complex64, ctx: &EvalContext) -> Result<Complex64> {
    Ok(hurwitz_zeta_ds(Complex64::new(0.0, 0.0), z, ctx)?.value)
}
