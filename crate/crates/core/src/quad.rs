//! Double-exponential quadrature (tanh-sinh on finite intervals, exp-sinh on
//! half-lines) for complex-valued integrands, plus the two Mellin pieces used
//! by the superzeta integral representations.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;

use crate::context::EvalContext;
use crate::error::Result;

/// Outcome of a quadrature: value, error estimate (difference between the
/// last two refinement levels), node count and the finest level reached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: Complex64,
    pub error: f64,
    pub evaluations: usize,
    pub levels: usize,
}

impl Quadrature {
    pub fn scaled(self, factor: Complex64) -> Quadrature {
        Quadrature {
            value: self.value * factor,
            error: self.error * factor.norm(),
            ..self
        }
    }
}

/// Refinement policy: relative and absolute tolerances and the level cap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeRule {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_level: usize,
}

impl DeRule {
    pub fn from_context(ctx: &EvalContext) -> DeRule {
        let max_level = (ctx.quadrature_nodes as f64).log2().floor().max(3.0) as usize;
        DeRule {
            rel_tol: ctx.target_rel_error,
            abs_tol: ctx.target_rel_error * 1e-3,
            max_level,
        }
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }
}

const T_MAX: f64 = 6.5;
const MIN_LEVEL: usize = 3;

/// A node of a transformed rule: abscissa and Jacobian, or `None` when the
/// node has collapsed onto a singular endpoint or overflowed.
type Node = Option<(f64, f64)>;

fn integrate<T, F>(transform: T, mut f: F, rule: &DeRule) -> Result<Quadrature>
where
    T: Fn(f64) -> Node,
    F: FnMut(f64) -> Result<Complex64>,
{
    let mut evaluations = 0usize;
    // sum of w f over the nodes k h, k odd (or all k at level 0); walks out
    // from t = 0 in both directions until terms stop mattering
    let mut level_sum = |h: f64, step: usize, offset: usize, scale: f64| -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for dir in [1.0, -1.0] {
            let mut small = 0;
            let mut k = offset;
            loop {
                if dir < 0.0 && k == 0 {
                    k += step;
                    continue;
                }
                let t = dir * k as f64 * h;
                if t.abs() > T_MAX {
                    break;
                }
                match transform(t) {
                    Some((x, w)) if w > 0.0 && w.is_finite() => {
                        let term = f(x)? * w;
                        evaluations += 1;
                        acc += term;
                        if term.norm() <= 1e-20 * scale.max((acc).norm()) {
                            small += 1;
                            if small >= 4 {
                                break;
                            }
                        } else {
                            small = 0;
                        }
                    }
                    _ => break,
                }
                k += step;
            }
        }
        Ok(acc)
    };

    let mut h = 1.0;
    let mut total = level_sum(h, 1, 0, 0.0)?;
    let mut estimate = total * h;
    let mut error = f64::INFINITY;
    let mut level = 0;
    while level < rule.max_level {
        level += 1;
        h *= 0.5;
        total += level_sum(h, 2, 1, total.norm())?;
        let next = total * h;
        error = (next - estimate).norm();
        estimate = next;
        if level >= MIN_LEVEL && error <= rule.abs_tol.max(rule.rel_tol * estimate.norm()) {
            break;
        }
    }
    Ok(Quadrature {
        value: estimate,
        error: error.max(1e-16 * estimate.norm()),
        evaluations,
        levels: level,
    })
}

/// Tanh-sinh rule on `[a, b]`. Abscissae are computed as offsets from the
/// nearer endpoint, so integrable endpoint singularities are never sampled.
pub fn tanh_sinh<F>(f: F, a: f64, b: f64, rule: &DeRule) -> Result<Quadrature>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let half = 0.5 * (b - a);
    let transform = move |t: f64| -> Node {
        let u = FRAC_PI_2 * t.sinh();
        let e = (-2.0 * u.abs()).exp();
        // distance from the nearer endpoint: half * (1 - tanh|u|)
        let dist = half * 2.0 * e / (1.0 + e);
        if dist <= 0.0 {
            return None;
        }
        let x = if u < 0.0 { a + dist } else { b - dist };
        let sech = 2.0 * e.sqrt() / (1.0 + e);
        let w = half * FRAC_PI_2 * t.cosh() * sech * sech;
        Some((x, w))
    };
    integrate(transform, f, rule)
}

/// Exp-sinh rule on `[a, inf)` for integrands decaying at infinity.
pub fn exp_sinh<F>(f: F, a: f64, rule: &DeRule) -> Result<Quadrature>
where
    F: FnMut(f64) -> Result<Complex64>,
{
    let transform = move |t: f64| -> Node {
        let e = (FRAC_PI_2 * t.sinh()).exp();
        if !e.is_finite() || e > 1e250 {
            return None;
        }
        Some((a + e, FRAC_PI_2 * t.cosh() * e))
    };
    integrate(transform, f, rule)
}

/// `y^{-s}` for `y > 0` via its logarithm.
#[inline]
fn pow_neg(log_y: f64, s: Complex64) -> Complex64 {
    (-s * log_y).exp()
}

/// `v y^{-s}`, falling back to logarithms when `y^{-s}` alone overflows
/// while `v` has underflowed.
pub(crate) fn weighted(v: Complex64, ln_y: f64, s: Complex64) -> Complex64 {
    if v.re == 0.0 && v.im == 0.0 {
        return v;
    }
    let w = pow_neg(ln_y, s);
    if w.is_finite() {
        v * w
    } else {
        (v.ln() - s * ln_y).exp()
    }
}

/// `int_0^delta g(y) y^{-s} dy`, where `g(y) = O(y^{order})` at the origin.
///
/// When the local exponent `order - Re s` is negative the substitution
/// `y = delta u^p`, `p = 1 / (1 + order - Re s)`, removes the singularity.
pub fn mellin_head<G>(
    mut g: G,
    s: Complex64,
    order: f64,
    delta: f64,
    rule: &DeRule,
) -> Result<Quadrature>
where
    G: FnMut(f64) -> Result<Complex64>,
{
    let local = order - s.re;
    debug_assert!(local > -1.0, "mellin_head: integral diverges at 0");
    let ln_delta = delta.ln();
    if local >= 0.0 {
        return tanh_sinh(|y| Ok(weighted(g(y)?, y.ln(), s)), 0.0, delta, rule);
    }
    let p = 1.0 / (1.0 + local);
    tanh_sinh(
        |u| {
            let ln_u = u.ln();
            let ln_y = ln_delta + p * ln_u;
            let y = ln_y.exp();
            // y^{-s} dy = delta p u^{p-1} y^{-s} du, combined in log space
            let weight = (-s * ln_y + (p - 1.0) * ln_u).exp() * (delta * p);
            Ok(g(y)? * weight)
        },
        0.0,
        1.0,
        rule,
    )
}

/// `int_delta^inf g(y) y^{-s} dy` for `g` decaying fast enough at infinity.
pub fn mellin_tail<G>(mut g: G, s: Complex64, delta: f64, rule: &DeRule) -> Result<Quadrature>
where
    G: FnMut(f64) -> Result<Complex64>,
{
    exp_sinh(|y| Ok(weighted(g(y)?, y.ln(), s)), delta, rule)
}
