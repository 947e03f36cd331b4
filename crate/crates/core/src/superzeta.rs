//! Superzeta functions of zeta-type `f`: direct sums over zeros, the Mellin
//! integral `Z(s, z) = (sin(pi s) / pi) int_0^inf (f'/f)(z + y) y^{-s} dy`,
//! its continuation in `s` by a Taylor split, residues of the bracket and the
//! zeta-regularized determinant.

use num_complex::Complex64;

use crate::calculus::{contour_residue, richardson_derivative, sin_pi_over_pi, sinc, Derivative};
use crate::context::EvalContext;
use crate::divisor::ZeroSequence;
use crate::error::{Error, Result};
use crate::quad::{mellin_head, mellin_tail, DeRule};
use crate::result::{BranchFlags, SuperzetaResult};
use crate::special::gamma::bernoulli_even;
use crate::zeta_type::{
    f_value, log_f_derivative, log_f_derivative_internal, FunctionModel, ModelKind,
    MAX_INTERNAL_ORDER,
};

/// Split point between the Taylor region and the tail.
pub const DEFAULT_SPLIT: f64 = 1.0;

/// Largest number of subtracted Taylor terms, i.e. `mu <= MAX_TAYLOR_TERMS + 1`.
pub const MAX_TAYLOR_TERMS: usize = 10;

/// Extra Taylor terms used to evaluate the remainder close to the origin.
const REMAINDER_TERMS: usize = 30;

/// Stirling terms subtracted from `-psi` for the reciprocal-gamma model.
const STIRLING_TERMS: usize = 6;

/// Beyond this `|z + y|` the Stirling remainder is summed directly.
const STIRLING_SWITCH: f64 = 10.0;

const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };
const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn is_real_integer(s: Complex64) -> bool {
    s.im == 0.0 && s.re.fract() == 0.0
}

/// `sin(pi s) / (pi (j - s))`, continuous through `s = j`.
fn sin_ratio(s: Complex64, j: usize) -> Complex64 {
    let sign = if j % 2 == 0 { -1.0 } else { 1.0 };
    if is_real_integer(s) {
        return if s.re == j as f64 { c(sign) } else { ZERO };
    }
    sinc((s - j as f64) * std::f64::consts::PI) * sign
}

/// Sum `sum ord(rho) (z - rho)^{-s}` over an explicit zero list.
pub fn superzeta_direct(
    zeros: &ZeroSequence,
    s: Complex64,
    z: Complex64,
    ctx: &EvalContext,
) -> Result<SuperzetaResult> {
    ctx.validate()?;
    zeros.check_admissible(z)?;
    let kappa = zeros.convergence_abscissa();
    if s.re <= kappa {
        return Err(Error::ConvergenceDomain {
            what: "superzeta series",
            at: s,
            requirement: format!("Re s > {kappa}"),
        });
    }
    zeros.direct_sum(s, z, ctx)
}

/// The log-derivative `(f'/f)(z + y)` as seen by the Mellin integral. For
/// `1/Gamma`, whose log-derivative grows like `-log y`, the leading Stirling
/// terms `A(w)` are subtracted and their Mellin transforms added back in
/// closed form.
struct Kernel<'a> {
    model: &'a FunctionModel,
    z: Complex64,
    ctx: &'a EvalContext,
    stirling: bool,
}

impl<'a> Kernel<'a> {
    fn new(model: &'a FunctionModel, z: Complex64, ctx: &'a EvalContext) -> Result<Self> {
        ctx.validate()?;
        if !model.is_zeta_type() {
            return Err(Error::invalid(
                "the integral representation needs a zeta-type model (finite sigma)",
            ));
        }
        model.check_half_plane(z)?;
        model.check_admissible(z)?;
        Ok(Kernel {
            model,
            z,
            ctx,
            stirling: matches!(model.kind, ModelKind::ReciprocalGamma),
        })
    }

    /// `A^{(m)}(w)` for `A(w) = -log w + 1/(2w) + sum_k B_2k / (2k w^2k)`.
    fn stirling_part(m: usize, w: Complex64) -> Complex64 {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        let log_term = if m == 0 {
            -w.ln()
        } else {
            w.powi(-(m as i32)) * (sign * factorial(m - 1))
        };
        let power = |coef: f64, a: usize| -> Complex64 {
            let rising: f64 = (0..m).map(|i| (a + i) as f64).product();
            w.powi(-((a + m) as i32)) * (coef * sign * rising)
        };
        let mut total = log_term + power(0.5, 1);
        for k in 1..=STIRLING_TERMS {
            total += power(bernoulli_even(k) / (2 * k) as f64, 2 * k);
        }
        total
    }

    fn g(&self, y: f64) -> Result<Complex64> {
        let w = self.z + y;
        if self.stirling && w.norm() > STIRLING_SWITCH {
            // remaining Stirling terms, free of the cancellation in -psi - A
            let w2 = (w * w).inv();
            let mut p = w2.powi(STIRLING_TERMS as i32);
            let mut acc = ZERO;
            for k in STIRLING_TERMS + 1..=STIRLING_TERMS + 6 {
                p *= w2;
                acc += p * (bernoulli_even(k) / (2 * k) as f64);
            }
            return Ok(acc);
        }
        let value = log_f_derivative_internal(self.model, 1, w, self.ctx)?;
        Ok(if self.stirling {
            value - Self::stirling_part(0, w)
        } else {
            value
        })
    }

    /// `g^{(j-1)}(0)`, the `j`-th derivative of `log f` (minus Stirling terms).
    fn coefficient(&self, j: usize) -> Result<Complex64> {
        let value = log_f_derivative_internal(self.model, j, self.z, self.ctx)?;
        Ok(if self.stirling {
            value - Self::stirling_part(j - 1, self.z)
        } else {
            value
        })
    }

    /// Continued `(sin(pi s)/pi) int_0^inf A(z + y) y^{-s} dy`.
    fn closed(&self, s: Complex64) -> Result<Complex64> {
        if !self.stirling {
            return Ok(ZERO);
        }
        if s == ONE {
            return Err(Error::Pole {
                function: "superzeta",
                at: s,
            });
        }
        let z = self.z;
        let mut total = z.powc(ONE - s) / (s - 1.0) + z.powc(-s) * 0.5;
        for k in 1..=STIRLING_TERMS {
            let a = 2 * k;
            let rising = (0..a - 1).fold(ONE, |acc, i| acc * (s + i as f64));
            total += z.powc(ONE - s - a as f64)
                * rising
                * (bernoulli_even(a / 2) / (a as f64 * factorial(a - 1)));
        }
        Ok(total)
    }

    /// `d/ds` of [`Kernel::closed`] at `s = 0`.
    fn closed_ds0(&self) -> Complex64 {
        if !self.stirling {
            return ZERO;
        }
        let z = self.z;
        let ln_z = z.ln();
        let mut total = z * ln_z - z - ln_z * 0.5;
        for k in 1..=STIRLING_TERMS {
            let a = 2 * k;
            total += z.powi(1 - a as i32) * (bernoulli_even(a / 2) / (a * (a - 1)) as f64);
        }
        total
    }

    /// Lower bound on the Taylor radius of `g` at `y = 0`.
    fn radius(&self) -> f64 {
        self.z.re - self.model.sigma()
    }
}

/// The pieces of the Taylor-split bracket at one `s`.
struct Split {
    /// `sum_{j<=n} L_j / (j-1)! delta^{j-s} / (j-s)`, already multiplied by
    /// `sin(pi s)/pi` when requested.
    taylor: Complex64,
    /// `int_0^delta R_n y^{-s} + int_delta^inf g y^{-s}`.
    integral: Complex64,
    integral_error: f64,
    magnitude: f64,
    flags: BranchFlags,
}

fn split_bracket(
    kernel: &Kernel,
    s: Complex64,
    n: usize,
    with_sine: bool,
    skip_integrals: bool,
) -> Result<Split> {
    let delta = DEFAULT_SPLIT;
    let extra = if n > 0 {
        (n + REMAINDER_TERMS).min(MAX_INTERNAL_ORDER)
    } else {
        0
    };
    let mut coeffs = Vec::with_capacity(extra);
    for j in 1..=extra {
        coeffs.push(kernel.coefficient(j)? / factorial(j - 1));
    }

    let mut taylor = ZERO;
    let mut magnitude = 0.0;
    for j in 1..=n {
        let power = (c(delta.ln()) * (c(j as f64) - s)).exp();
        let factor = if with_sine {
            sin_ratio(s, j)
        } else {
            if is_real_integer(s) && s.re == j as f64 {
                return Err(Error::Pole {
                    function: "I(s, z)",
                    at: s,
                });
            }
            ONE / (c(j as f64) - s)
        };
        let term = coeffs[j - 1] * power * factor;
        magnitude += term.norm();
        taylor += term;
    }

    let mut flags = BranchFlags {
        taylor_terms: Some(n),
        split_point: Some(delta),
        asymptotic_terms: kernel.stirling.then_some(STIRLING_TERMS),
        ..BranchFlags::default()
    };
    if skip_integrals {
        return Ok(Split {
            taylor,
            integral: ZERO,
            integral_error: 0.0,
            magnitude,
            flags,
        });
    }

    let y_t = (delta / 8.0).min(kernel.radius() / 4.0);
    let remainder = |y: f64| -> Result<Complex64> {
        if n > 0 && y < y_t {
            let mut acc = ZERO;
            let mut p = y.powi(n as i32);
            for coef in &coeffs[n..] {
                acc += coef * p;
                p *= y;
            }
            Ok(acc)
        } else {
            let mut acc = kernel.g(y)?;
            let mut p = 1.0;
            for coef in &coeffs[..n] {
                acc -= coef * p;
                p *= y;
            }
            Ok(acc)
        }
    };
    let rule = DeRule::from_context(kernel.ctx);
    let head = mellin_head(remainder, s, n as f64, delta, &rule)?;
    let tail = mellin_tail(|y| kernel.g(y), s, delta, &rule)?;

    // truncation of the remainder series below y_t
    let series_error = if n > 0 {
        let last = coeffs[extra - 1].norm() * y_t.powi(extra as i32 - 1);
        2.0 * last * y_t.powf(1.0 - s.re) / (extra as f64 - s.re)
    } else {
        0.0
    };
    flags.quadrature_levels = Some(head.levels.max(tail.levels));
    flags.quadrature_evaluations = Some(head.evaluations + tail.evaluations);
    Ok(Split {
        taylor,
        integral: head.value + tail.value,
        integral_error: head.error + tail.error + series_error,
        magnitude: magnitude + head.value.norm() + tail.value.norm(),
        flags,
    })
}

fn check_accuracy(
    result: SuperzetaResult,
    ctx: &EvalContext,
    what: &str,
) -> Result<SuperzetaResult> {
    let allowed = 100.0 * ctx.target_rel_error * result.value.norm().max(1.0);
    if !(result.est_error <= allowed) {
        return Err(Error::QuadratureFailure {
            estimate: result.est_error,
            allowed,
            detail: what.to_string(),
        });
    }
    Ok(result)
}

fn continued_with(kernel: &Kernel, s: Complex64, n: usize, what: &str) -> Result<SuperzetaResult> {
    let prefactor = sin_pi_over_pi(s);
    let skip = prefactor == ZERO;
    let split = split_bracket(kernel, s, n, true, skip)?;
    let closed = kernel.closed(s)?;
    let value = split.taylor + prefactor * split.integral + closed;
    let rounding =
        8.0 * f64::EPSILON * (split.magnitude * prefactor.norm().max(1.0) + closed.norm());
    let est = prefactor.norm() * split.integral_error + rounding;
    check_accuracy(
        SuperzetaResult::new(value, est).with_flags(split.flags),
        kernel.ctx,
        what,
    )
}

/// `(sin(pi s)/pi) int_0^inf (f'/f)(z + y) y^{-s} dy` on the strip `Re s < 1`.
pub fn superzeta_integral_rep(
    model: &FunctionModel,
    s: Complex64,
    z: Complex64,
    ctx: &EvalContext,
) -> Result<SuperzetaResult> {
    if s.re >= 1.0 {
        return Err(Error::ConvergenceDomain {
            what: "Mellin integral representation",
            at: s,
            requirement: "Re s < 1".into(),
        });
    }
    let kernel = Kernel::new(model, z, ctx)?;
    continued_with(&kernel, s, 0, "integral representation")
}

fn taylor_order(s: Complex64, mu: f64) -> Result<usize> {
    if !(s.re < mu) {
        return Err(Error::ConvergenceDomain {
            what: "continued superzeta",
            at: s,
            requirement: format!("Re s < mu = {mu}"),
        });
    }
    let n = mu.floor().max(0.0) as usize;
    if n > MAX_TAYLOR_TERMS {
        return Err(Error::IndexRange(format!(
            "mu = {mu} needs more than {MAX_TAYLOR_TERMS} Taylor terms"
        )));
    }
    Ok(n)
}

/// The superzeta continued to `Re s < mu` by subtracting `floor(mu)` Taylor
/// terms of `f'/f` on `[0, delta]`. Entire in `s` for zeta-type `f`.
pub fn superzeta_continued(
    model: &FunctionModel,
    s: Complex64,
    z: Complex64,
    mu: f64,
    ctx: &EvalContext,
) -> Result<SuperzetaResult> {
    let n = taylor_order(s, mu)?;
    let kernel = Kernel::new(model, z, ctx)?;
    continued_with(&kernel, s, n, "continued superzeta")
}

/// [`superzeta_continued`] with `mu = Re s + 1`.
pub fn superzeta_continued_auto(
    model: &FunctionModel,
    s: Complex64,
    z: Complex64,
    ctx: &EvalContext,
) -> Result<SuperzetaResult> {
    superzeta_continued(model, s, z, (s.re + 1.0).max(0.5), ctx)
}

/// The bracket `I(s, z)` itself, meromorphic with simple poles at `s = 1, 2, ...`.
pub fn i_bracket(
    model: &FunctionModel,
    s: Complex64,
    z: Complex64,
    ctx: &EvalContext,
) -> Result<SuperzetaResult> {
    let n = taylor_order(s, (s.re + 1.0).max(0.5))?;
    let kernel = Kernel::new(model, z, ctx)?;
    let split = split_bracket(&kernel, s, n, false, false)?;
    let mut value = split.taylor + split.integral;
    if kernel.stirling {
        let prefactor = sin_pi_over_pi(s);
        if prefactor == ZERO {
            return Err(Error::Pole {
                function: "I(s, z)",
                at: s,
            });
        }
        value += kernel.closed(s)? / prefactor;
    }
    let est = split.integral_error + 8.0 * f64::EPSILON * split.magnitude;
    Ok(SuperzetaResult::new(value, est).with_flags(split.flags))
}

/// Residue of `I(s, z)` at `s = n`: `-(log f)^{(n)}(z) / (n-1)!`.
pub fn i_residue(
    model: &FunctionModel,
    n: usize,
    z: Complex64,
    ctx: &EvalContext,
) -> Result<Complex64> {
    Kernel::new(model, z, ctx)?;
    Ok(-log_f_derivative(model, n, z, ctx)? / factorial(n - 1))
}

/// Residue of `I(s, z)` at `s = n` extracted from a contour integral of the
/// bracket on a circle of radius 1/4.
pub fn i_residue_numeric(
    model: &FunctionModel,
    n: usize,
    z: Complex64,
    ctx: &EvalContext,
) -> Result<Complex64> {
    if n == 0 {
        return Err(Error::IndexRange(
            "residues exist only at s = 1, 2, ...".into(),
        ));
    }
    contour_residue(
        |s| Ok(i_bracket(model, s, z, ctx)?.value),
        c(n as f64),
        0.25,
        32,
    )
}

/// `d/ds Z(s, z)` at `s = 0`, equal to `I(0, z)` (plus the Stirling part for
/// the reciprocal-gamma model).
pub fn superzeta_ds0(
    model: &FunctionModel,
    z: Complex64,
    ctx: &EvalContext,
) -> Result<SuperzetaResult> {
    let kernel = Kernel::new(model, z, ctx)?;
    let split = split_bracket(&kernel, ZERO, 0, false, false)?;
    let closed = kernel.closed_ds0();
    let value = split.integral + closed;
    let est = split.integral_error + 8.0 * f64::EPSILON * (split.magnitude + closed.norm());
    check_accuracy(
        SuperzetaResult::new(value, est).with_flags(split.flags),
        ctx,
        "s-derivative at 0",
    )
}

/// `d/ds Z(s, z)` at `s = 0` by Richardson extrapolation of central differences.
pub fn superzeta_ds0_numeric(
    model: &FunctionModel,
    z: Complex64,
    ctx: &EvalContext,
) -> Result<Derivative> {
    richardson_derivative(
        |s| Ok(superzeta_continued(model, s, z, 1.0, ctx)?.value),
        ZERO,
        ctx.derivative_step,
    )
}

/// `D_f(z) = exp(-d/ds Z(s, z)|_{s=0})` via the analytic shortcut.
pub fn regularized_det(
    model: &FunctionModel,
    z: Complex64,
    ctx: &EvalContext,
) -> Result<Complex64> {
    Ok((-superzeta_ds0(model, z, ctx)?.value).exp())
}

/// `D_f(z)` from the numerical `s`-derivative, with its error estimate.
pub fn regularized_det_numeric(
    model: &FunctionModel,
    z: Complex64,
    ctx: &EvalContext,
) -> Result<SuperzetaResult> {
    let d = superzeta_ds0_numeric(model, z, ctx)?;
    let value = (-d.value).exp();
    Ok(SuperzetaResult::new(value, value.norm() * d.error))
}

/// `|D_f(z) - f(z)| / |f(z)|`, which vanishes for zeta-type `f`.
pub fn determinant_defect(model: &FunctionModel, z: Complex64, ctx: &EvalContext) -> Result<f64> {
    let f = f_value(model, z, ctx)?;
    let d = regularized_det(model, z, ctx)?;
    Ok((d - f).norm() / f.norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::{gamma, hurwitz_zeta, rgamma};
    use std::f64::consts::{LN_2, PI};

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn dp2() -> FunctionModel {
        FunctionModel::dirichlet_polynomial(2.0).unwrap()
    }

    /// `Z(s, z) = -(log 2)^s Li_{1-s}(2^{-z}) / Gamma(s)` for `f = 1 - 2^{-z}`,
    /// from `sum_n 2^{-n z} n^{s-1}` with `Li_{1-s}(u) = sum_n n^{s-1} u^n`.
    fn dp2_oracle(s: Complex64, z: Complex64) -> Complex64 {
        let u = (-z * LN_2).exp();
        let mut li = ZERO;
        let mut un = ONE;
        for k in 1..4000 {
            un *= u;
            li += un * c(k as f64).powc(s - 1.0);
        }
        li * c(LN_2).powc(s) * rgamma(s)
    }

    #[test]
    fn oracle_sanity() {
        // s = 2, z = 1: 2 (log 2)^2
        let v = dp2_oracle(c(2.0), c(1.0));
        assert!((v.re - 2.0 * LN_2 * LN_2).abs() < 1e-14);
    }

    #[test]
    fn direct_examples() {
        let ctx = EvalContext::default();
        let zeros = dp2().zeros.unwrap();
        let v = superzeta_direct(&zeros, c(2.0), c(1.0), &ctx).unwrap();
        assert!((v.value.re - 0.960906027836403).abs() < 1e-9);
        let empty = superzeta_direct(&ZeroSequence::empty(), c(2.0), c(1.0), &ctx).unwrap();
        assert_eq!(empty.value, ZERO);
        let prog = ZeroSequence::progression(ZERO);
        let v = superzeta_direct(&prog, cx(3.0, 1.0), cx(1.5, 0.5), &ctx).unwrap();
        assert!((v.value - hurwitz_zeta(cx(3.0, 1.0), cx(1.5, 0.5)).unwrap()).norm() < 1e-10);
        assert!(matches!(
            superzeta_direct(&zeros, c(1.0), c(1.0), &ctx),
            Err(Error::ConvergenceDomain { .. })
        ));
    }

    #[test]
    fn integral_rep_examples() {
        let ctx = EvalContext::default();
        let v = superzeta_integral_rep(&dp2(), ZERO, c(1.0), &ctx).unwrap();
        assert_eq!(v.value, ZERO);
        for (s, z) in [
            (c(0.5), c(1.0)),
            (cx(-1.3, 0.4), cx(2.0, 1.0)),
            (c(-4.5), c(0.7)),
        ] {
            let v = superzeta_integral_rep(&dp2(), s, z, &ctx).unwrap();
            let oracle = dp2_oracle(s, z);
            assert!(
                (v.value - oracle).norm() < 1e-9 * oracle.norm().max(1.0),
                "{s} {z}"
            );
            let w = superzeta_continued_auto(&dp2(), s, z, &ctx).unwrap();
            assert!((v.value - w.value).norm() < 1e-9);
        }
        let rg = FunctionModel::reciprocal_gamma();
        for (s, z) in [
            (c(0.5), c(2.0)),
            (cx(-1.5, 0.3), c(1.5)),
            (c(-3.0), cx(2.0, 1.0)),
        ] {
            let v = superzeta_integral_rep(&rg, s, z, &ctx).unwrap();
            let h = hurwitz_zeta(s, z).unwrap();
            assert!(
                (v.value - h).norm() < 1e-9 * h.norm().max(1.0),
                "{s} {z} {} {h}",
                v.value
            );
        }
        assert!(superzeta_integral_rep(&dp2(), c(1.0), c(1.0), &ctx).is_err());
    }

    #[test]
    fn continuation_matches_series_oracle() {
        let ctx = EvalContext::default();
        for (s, z) in [
            (c(2.0), c(1.0)),
            (c(1.0), c(2.0)),
            (cx(2.5, 0.7), cx(1.0, 1.0)),
            (c(3.25), c(0.6)),
            (cx(5.5, -1.0), c(2.0)),
        ] {
            let v = superzeta_continued_auto(&dp2(), s, z, &ctx).unwrap();
            let oracle = dp2_oracle(s, z);
            assert!(
                (v.value - oracle).norm() < 1e-8 * oracle.norm().max(1.0),
                "{s} {z}: {} vs {oracle}",
                v.value
            );
            assert!(v.est_error < 1e-8);
        }
        // L'Hopital limit at s = 1: (log 2)/3 at z = 2
        let v = superzeta_continued(&dp2(), c(1.0), c(2.0), 2.0, &ctx).unwrap();
        assert!((v.value.re - LN_2 / 3.0).abs() < 1e-14);
        let v = superzeta_continued(&dp2(), c(0.0), c(1.0), 2.0, &ctx).unwrap();
        assert_eq!(v.value, ZERO);
    }

    #[test]
    fn entire_through_integers() {
        let ctx = EvalContext::default();
        let z = c(1.5);
        for n in 1..=3 {
            let at = superzeta_continued(&dp2(), c(n as f64), z, n as f64 + 1.0, &ctx)
                .unwrap()
                .value;
            for eps in [1e-9, 1e-6, 1e-3, 0.05] {
                for sign in [-1.0, 1.0] {
                    let s = c(n as f64 + sign * eps);
                    let v = superzeta_continued(&dp2(), s, z, n as f64 + 1.0, &ctx)
                        .unwrap()
                        .value;
                    assert!((v - at).norm() < 5.0 * eps + 1e-12, "n={n} eps={eps}");
                    assert!((v - dp2_oracle(s, z)).norm() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn mu_choice_is_immaterial() {
        let ctx = EvalContext::default();
        let s = cx(0.4, 0.3);
        let z = cx(1.2, -0.5);
        let a = superzeta_continued(&dp2(), s, z, 1.0, &ctx).unwrap().value;
        for mu in [2.0, 3.5, 6.0] {
            let b = superzeta_continued(&dp2(), s, z, mu, &ctx).unwrap().value;
            assert!((a - b).norm() < 1e-10, "mu={mu}");
        }
        assert!(superzeta_continued(&dp2(), c(2.0), z, 2.0, &ctx).is_err());
    }

    #[test]
    fn residues() {
        let ctx = EvalContext::default();
        let r = i_residue(&dp2(), 1, c(2.0), &ctx).unwrap();
        assert!((r.re + LN_2 / 3.0).abs() < 1e-15);
        let r = i_residue(&dp2(), 2, c(1.0), &ctx).unwrap();
        assert!((r.re - 2.0 * LN_2 * LN_2).abs() < 1e-14);
        for n in 1..=3 {
            let closed = i_residue(&dp2(), n, c(2.0), &ctx).unwrap();
            let numeric = i_residue_numeric(&dp2(), n, c(2.0), &ctx).unwrap();
            assert!((closed - numeric).norm() < 1e-8, "n={n}");
        }
        assert!(i_residue(&dp2(), 9, c(2.0), &ctx).is_err());
    }

    #[test]
    fn determinants() {
        let ctx = EvalContext::default();
        let d = regularized_det(&dp2(), c(2.0), &ctx).unwrap();
        assert!((d - c(0.75)).norm() < 1e-12);
        let d = regularized_det(&dp2(), c(10.0), &ctx).unwrap();
        assert!((d - c(0.9990234375)).norm() < 1e-12);
        let d = regularized_det(&dp2(), c(60.0), &ctx).unwrap();
        assert!((d - ONE).norm() < 1e-15);
        for z in [c(3.0), cx(5.0, 2.0), cx(0.4, 1.0)] {
            assert!(determinant_defect(&dp2(), z, &ctx).unwrap() < 1e-10);
            let numeric = regularized_det_numeric(&dp2(), z, &ctx).unwrap();
            let analytic = regularized_det(&dp2(), z, &ctx).unwrap();
            assert!((numeric.value - analytic).norm() < 1e-8 * analytic.norm());
        }
        // 1/Gamma: D = sqrt(2 pi) / Gamma(z)
        let rg = FunctionModel::reciprocal_gamma();
        for z in [c(1.0), c(2.5), cx(2.0, 1.0)] {
            let d = regularized_det(&rg, z, &ctx).unwrap();
            let expected = c((2.0 * PI).sqrt()) / gamma(z).unwrap();
            assert!((d - expected).norm() < 1e-10 * expected.norm());
        }
    }

    #[test]
    fn errors() {
        let ctx = EvalContext::default();
        let sine = FunctionModel::sine_quotient();
        assert!(superzeta_integral_rep(&sine, c(0.5), c(0.5), &ctx).is_err());
        assert!(matches!(
            superzeta_continued_auto(&dp2(), c(0.5), c(-1.0), &ctx),
            Err(Error::ConvergenceDomain { .. })
        ));
        let rg = FunctionModel::reciprocal_gamma();
        assert!(matches!(
            superzeta_continued_auto(&rg, c(1.0), c(2.0), &ctx),
            Err(Error::Pole { .. })
        ));
    }
}
