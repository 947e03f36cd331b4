//! Superzetas over the non-trivial zeros of Selberg-type zeta functions on
//! cusped hyperbolic manifolds, their residues and regularized products, and
//! the determinant constants for Kleinian groups with one cusp.
//!
//! The manifold enters only through divisor data (`SelbergSpecOdd`,
//! `SelbergSpecEven`); the zeta function itself is any zeta-type
//! [`FunctionModel`] standing in for it.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::calculus::{richardson_derivative, Derivative};
use crate::context::EvalContext;
use crate::divisor::{DivisorFamily, DivisorPoint, WeightKind, ZeroSequence};
use crate::error::{Error, Result};
use crate::result::SuperzetaResult;
use crate::special::gamma::{log_gamma, LN_SQRT_2PI};
use crate::special::hurwitz::cpow_neg;
use crate::special::multiple::log_multiple_gamma;
use crate::special::{binomial, hurwitz_zeta, multiple_hurwitz_zeta, p_poly};
use crate::superzeta::{superzeta_continued, superzeta_continued_auto};
use crate::zeta_type::FunctionModel;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn sign(j: usize) -> f64 {
    if j % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn check_point(z: Complex64, rho: Complex64) -> Result<()> {
    let w = z - rho;
    if w.im == 0.0 && w.re <= 0.0 {
        return Err(Error::NotAdmissible { z, point: rho });
    }
    Ok(())
}

/// `coeff w^{-s}`, zero when `coeff` is, whatever `w`.
fn term(coeff: f64, w: Complex64, s: Complex64) -> Complex64 {
    if coeff == 0.0 {
        Complex64::zero()
    } else {
        cpow_neg(w, s) * coeff
    }
}

/// `coeff log w`, zero when `coeff` is.
fn log_term(coeff: f64, w: Complex64) -> Complex64 {
    if coeff == 0.0 {
        Complex64::zero()
    } else {
        w.ln() * coeff
    }
}

fn closed(value: Complex64) -> SuperzetaResult {
    SuperzetaResult::closed_form(value)
}

/// Pole `q` of the scattering determinant with its order `b`.
/// JSON form: `[re, im, b]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "(f64, f64, u32)", into = "(f64, f64, u32)")]
pub struct ScatteringPole {
    pub q: Complex64,
    pub b: u32,
}

impl From<(f64, f64, u32)> for ScatteringPole {
    fn from((re, im, b): (f64, f64, u32)) -> Self {
        ScatteringPole {
            q: Complex64::new(re, im),
            b,
        }
    }
}

impl From<ScatteringPole> for (f64, f64, u32) {
    fn from(p: ScatteringPole) -> Self {
        (p.q.re, p.q.im, p.b)
    }
}

fn check_poles(poles: &[ScatteringPole], n: usize) -> Result<()> {
    for p in poles {
        if p.b == 0 {
            return Err(Error::invalid("scattering pole with order 0"));
        }
        if !(p.q.re > 0.0 && p.q.re < n as f64) {
            return Err(Error::invalid(format!(
                "scattering pole q = {} must satisfy 0 < Re q < n = {n}",
                p.q
            )));
        }
    }
    Ok(())
}

/// Divisor data in odd dimension `d = 2n + 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelbergSpecOdd {
    pub n: usize,
    pub k: usize,
    pub d_c_chi: u64,
    pub d_sigma_k: u64,
    pub e_dk: u64,
    /// The pole at `s = n` has order `d_sigma_k * a_k / 2`.
    pub a_k: f64,
    #[serde(default)]
    pub scattering_poles: Vec<ScatteringPole>,
}

impl SelbergSpecOdd {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::invalid("odd case needs n >= 1"));
        }
        if self.k > self.n {
            return Err(Error::invalid(format!(
                "k = {} exceeds n = {}",
                self.k, self.n
            )));
        }
        if self.d_sigma_k == 0 {
            return Err(Error::invalid("d_sigma_k must be at least 1"));
        }
        if !self.a_k.is_finite() {
            return Err(Error::invalid("a_k must be finite"));
        }
        check_poles(&self.scattering_poles, self.n)
    }

    pub fn delta_kn(&self) -> bool {
        self.k == self.n
    }

    fn beta(&self) -> i64 {
        let mult = if self.delta_kn() { 2 } else { 1 };
        mult * (self.d_c_chi * self.d_sigma_k) as i64
    }

    fn alpha(&self) -> i64 {
        let correction = if self.delta_kn() {
            0
        } else {
            self.d_sigma_k as i64
        };
        self.d_c_chi as i64 * (self.e_dk as i64 - correction)
    }

    fn half_order_at_n(&self) -> f64 {
        0.5 * self.d_sigma_k as f64 * self.a_k
    }

    /// Admissibility against every point of non-zero order; `hurwitz_start`
    /// is the first point of the progression carried by `beta`.
    fn check_z(&self, z: Complex64, hurwitz_start: f64) -> Result<()> {
        if self.alpha() != 0 {
            check_point(z, c(self.k as f64))?;
        }
        if self.half_order_at_n() != 0.0 {
            check_point(z, c(self.n as f64))?;
        }
        for p in &self.scattering_poles {
            check_point(z, self.n as f64 - p.q)?;
        }
        if self.beta() != 0 {
            check_point(z, c(hurwitz_start))?;
        }
        Ok(())
    }
}

/// `(alpha, beta)`: the exponent of `(z - k)` in the regularized product
/// and the residue at `s = 1`.
pub fn odd_coefficients(spec: &SelbergSpecOdd) -> (f64, f64) {
    (spec.alpha() as f64, spec.beta() as f64)
}

fn scattering_sum(
    poles: &[ScatteringPole],
    d_sigma: u64,
    shift: f64,
    s: Complex64,
    z: Complex64,
) -> Complex64 {
    poles
        .iter()
        .map(|p| cpow_neg(z - (shift - p.q), s) * (d_sigma as f64 * p.b as f64))
        .sum()
}

/// Poles of the odd-dimensional zeta function as a divisor with positive
/// orders. Fails when the order at `s = n` is not an integer.
pub fn odd_pole_divisor(spec: &SelbergSpecOdd) -> Result<ZeroSequence> {
    spec.validate()?;
    let at_n = spec.half_order_at_n();
    if at_n.fract() != 0.0 {
        return Err(Error::invalid(format!(
            "order {at_n} at s = n is not an integer"
        )));
    }
    let correction = if spec.delta_kn() {
        0
    } else {
        (spec.d_c_chi * spec.d_sigma_k) as i64
    };
    let mut points = Vec::new();
    let mut push = |loc: Complex64, order: i64| {
        if order != 0 {
            points.push(DivisorPoint {
                location: loc,
                order,
            });
        }
    };
    push(
        c(spec.k as f64),
        (spec.d_c_chi * spec.e_dk) as i64 - correction,
    );
    push(c(spec.n as f64), at_n as i64);
    for p in &spec.scattering_poles {
        push(
            spec.n as f64 - p.q,
            (spec.d_sigma_k * u64::from(p.b)) as i64,
        );
    }
    let mut families = vec![DivisorFamily::Finite(points)];
    if spec.beta() != 0 {
        families.push(DivisorFamily::Progression {
            start: c(spec.n as f64 - 1.0),
            order: spec.beta(),
            weight: WeightKind::Constant,
        });
    }
    Ok(ZeroSequence::new(families))
}

/// Superzeta over the poles: the finite terms plus `beta zeta_H(s, z - n + 1)`.
pub fn odd_pole_superzeta(
    spec: &SelbergSpecOdd,
    s: Complex64,
    z: Complex64,
) -> Result<SuperzetaResult> {
    spec.validate()?;
    spec.check_z(z, spec.n as f64 - 1.0)?;
    let n = spec.n as f64;
    let correction = if spec.delta_kn() {
        0.0
    } else {
        (spec.d_c_chi * spec.d_sigma_k) as f64
    };
    let mut value = term(
        (spec.d_c_chi * spec.e_dk) as f64 - correction,
        z - spec.k as f64,
        s,
    ) + term(spec.half_order_at_n(), z - n, s)
        + scattering_sum(&spec.scattering_poles, spec.d_sigma_k, n, s, z);
    if spec.beta() != 0 {
        value += hurwitz_zeta(s, z - n + 1.0)? * spec.beta() as f64;
    }
    Ok(closed(value))
}

fn integral_block(
    model: &FunctionModel,
    s: Complex64,
    z: Complex64,
    mu: Option<f64>,
    ctx: &EvalContext,
) -> Result<SuperzetaResult> {
    match mu {
        Some(mu) => superzeta_continued(model, s, z, mu, ctx),
        None => superzeta_continued_auto(model, s, z, ctx),
    }
}

fn odd_nontrivial_with(
    spec: &SelbergSpecOdd,
    model: &FunctionModel,
    s: Complex64,
    z: Complex64,
    mu: Option<f64>,
    ctx: &EvalContext,
) -> Result<SuperzetaResult> {
    spec.validate()?;
    spec.check_z(z, spec.n as f64)?;
    let n = spec.n as f64;
    let beta = spec.beta() as f64;
    let mut value = term(spec.alpha() as f64, z - spec.k as f64, s)
        + term(spec.half_order_at_n() - beta, z - n, s)
        + scattering_sum(&spec.scattering_poles, spec.d_sigma_k, n, s, z);
    if beta != 0.0 {
        value += hurwitz_zeta(s, z - n)? * beta;
    }
    Ok(closed(value).plus(&integral_block(model, s, z, mu, ctx)?))
}

/// `Z^NT(s, z)` in odd dimension: the explicit divisor terms with
/// `beta zeta_H(s, z - n)` plus the continued superzeta of `model`.
/// Meromorphic in `s` with a single simple pole at `s = 1`.
pub fn odd_nontrivial_superzeta(
    spec: &SelbergSpecOdd,
    model: &FunctionModel,
    s: Complex64,
    z: Complex64,
    ctx: &EvalContext,
) -> Result<SuperzetaResult> {
    odd_nontrivial_with(spec, model, s, z, None, ctx)
}

/// `Z^NT = Z_f + Z^P` assembled from [`odd_pole_superzeta`], i.e. with the
/// Hurwitz term at `z - n + 1`.
pub fn odd_nontrivial_from_poles(
    spec: &SelbergSpecOdd,
    model: &FunctionModel,
    s: Complex64,
    z: Complex64,
    ctx: &EvalContext,
) -> Result<SuperzetaResult> {
    let poles = odd_pole_superzeta(spec, s, z)?;
    Ok(poles.plus(&superzeta_continued_auto(model, s, z, ctx)?))
}

fn derivative_step(ctx: &EvalContext) -> f64 {
    ctx.derivative_step.min(0.25)
}

/// `d/ds Z^NT(s, z)` at `s = 0`, numerically.
pub fn odd_nontrivial_ds0(
    spec: &SelbergSpecOdd,
    model: &FunctionModel,
    z: Complex64,
    ctx: &EvalContext,
) -> Result<Derivative> {
    richardson_derivative(
        |s| Ok(odd_nontrivial_with(spec, model, s, z, Some(1.0), ctx)?.value),
        c(0.0),
        derivative_step(ctx),
    )
}

/// Right-hand side of the odd regularized product:
/// `(z-k)^alpha (z-n)^{d a_k / 2} prod (z-n+q_j)^{d b_j}
/// (Gamma(z-n+1)/sqrt(2 pi))^{-beta} f(z)`.
pub fn odd_regularized_product(
    spec: &SelbergSpecOdd,
    f_value: Complex64,
    z: Complex64,
) -> Result<Complex64> {
    spec.validate()?;
    spec.check_z(z, spec.n as f64 - 1.0)?;
    let n = spec.n as f64;
    let (alpha, beta) = odd_coefficients(spec);
    let mut log = log_term(alpha, z - spec.k as f64) + log_term(spec.half_order_at_n(), z - n);
    for p in &spec.scattering_poles {
        log += (z - (n - p.q)).ln() * (spec.d_sigma_k as f64 * p.b as f64);
    }
    if beta != 0.0 {
        log -= (log_gamma(z - n + 1.0)? - LN_SQRT_2PI) * beta;
    }
    Ok(log.exp() * f_value)
}

/// Divisor data in even dimension `d = 2n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelbergSpecEven {
    pub n: usize,
    pub k: usize,
    pub d_c_chi: u64,
    pub d_sigma_k: u64,
    pub d_dk: u64,
    pub dim_v_chi: u64,
    pub euler_char: i64,
    #[serde(default)]
    pub scattering_poles: Vec<ScatteringPole>,
}

impl SelbergSpecEven {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::invalid("even case needs n >= 1"));
        }
        if self.k >= self.n {
            return Err(Error::invalid(format!(
                "k = {} must be below n = {}",
                self.k, self.n
            )));
        }
        if self.dim_v_chi == 0 {
            return Err(Error::invalid("dim_v_chi must be at least 1"));
        }
        check_poles(&self.scattering_poles, self.n)
    }

    fn dim_euler(&self) -> f64 {
        self.dim_v_chi as f64 * self.euler_char as f64
    }

    fn cusp_order(&self) -> f64 {
        (self.d_c_chi * self.d_sigma_k) as f64
    }

    /// `gamma = d_c d(d,k) + (-1)^{k+1} (1 - dim V E)`.
    pub fn gamma_coefficient(&self) -> f64 {
        (self.d_c_chi * self.d_dk) as f64 - sign(self.k) * (1.0 - self.dim_euler())
    }

    /// Signed weights `(-1)^j C(2n, k - j)` of the blocks
    /// `zeta_2n(s, z - j) + zeta_2n(s, z + j + 1)`, `j = 0..=k`.
    pub fn block_weights(&self) -> Vec<f64> {
        block_weights(self.n, self.k)
    }

    fn check_z(&self, z: Complex64) -> Result<()> {
        let n = self.n as f64;
        if self.gamma_coefficient() != 0.0 || self.dim_euler() != 0.0 {
            check_point(z, c(self.k as f64))?;
        }
        for p in &self.scattering_poles {
            check_point(z, n - 0.5 - p.q)?;
        }
        if self.cusp_order() != 0.0 {
            check_point(z, c(n - 1.5))?;
        }
        Ok(())
    }
}

fn block_weights(n: usize, k: usize) -> Vec<f64> {
    (0..=k)
        .map(|j| {
            let b = binomial(2 * n as i64, (k - j) as i64);
            sign(j) * b.to_f64().unwrap_or(f64::NAN)
        })
        .collect()
}

/// Residue of the even `Z^NT` at `s = r`, `1 <= r <= 2n`.
pub fn even_residue(spec: &SelbergSpecEven, r: usize, z: Complex64) -> Result<Complex64> {
    spec.validate()?;
    let m = 2 * spec.n;
    if r == 0 || r > m {
        return Err(Error::IndexRange(format!(
            "even-case residues exist at r = 1..={m}, got {r}"
        )));
    }
    let mut acc = Complex64::zero();
    for (j, w) in spec.block_weights().into_iter().enumerate() {
        let j = j as f64;
        acc += (p_poly(m, r - 1, z - j)? + p_poly(m, r - 1, z + j + 1.0)?) * w;
    }
    acc *= spec.dim_euler();
    if r == 1 {
        acc += spec.cusp_order();
    }
    Ok(acc)
}

/// `sum_j (-1)^j C(2n, k-j) (zeta_2n(s, z-j) + zeta_2n(s, z+j+1)) + (-1)^{k+1} (z-k)^{-s}`.
pub fn even_block_series(n: usize, k: usize, s: Complex64, z: Complex64) -> Result<Complex64> {
    check_point(z, c(k as f64))?;
    let m = 2 * n;
    let mut acc = -cpow_neg(z - k as f64, s) * sign(k);
    for (j, w) in block_weights(n, k).into_iter().enumerate() {
        let j = j as f64;
        acc +=
            (multiple_hurwitz_zeta(m, s, z - j)? + multiple_hurwitz_zeta(m, s, z + j + 1.0)?) * w;
    }
    Ok(acc)
}

/// Exact weight of `(z + l)^{-s}` in the trivial-zero series:
/// `C(2n+l-1, l+k) C(l+k-1, k) + C(2n+l-1, k) C(2n+l-k-2, l-1)`.
pub fn even_raw_weight(n: usize, k: usize, l: usize) -> BigInt {
    let (n, k, l) = (n as i64, k as i64, l as i64);
    binomial(2 * n + l - 1, l + k) * binomial(l + k - 1, k)
        + binomial(2 * n + l - 1, k) * binomial(2 * n + l - k - 2, l - 1)
}

const RAW_BASE_TERMS: usize = 2000;
const RAW_LEVELS: usize = 5;

/// `sum_{l >= 1} w_l (z + l)^{-s}` for `Re s > 2n`, by partial sums at
/// `L, 2L, ..., 16L` terms and Richardson elimination of the tail powers
/// `L^{2n - s - i}`.
pub fn even_raw_series(n: usize, k: usize, s: Complex64, z: Complex64) -> Result<SuperzetaResult> {
    let m = 2 * n;
    if !(s.re > m as f64) {
        return Err(Error::ConvergenceDomain {
            what: "trivial-zero series",
            at: s,
            requirement: format!("Re s > {m}"),
        });
    }
    check_point(z, c(-1.0))?;
    let mut sums = Vec::with_capacity(RAW_LEVELS);
    let mut acc = Complex64::zero();
    let mut magnitude = 0.0;
    let mut l = 1;
    for level in 0..RAW_LEVELS {
        let upto = RAW_BASE_TERMS << level;
        while l <= upto {
            let w = even_raw_weight(n, k, l).to_f64().unwrap_or(f64::INFINITY);
            let t = cpow_neg(z + l as f64, s) * w;
            magnitude += t.norm();
            acc += t;
            l += 1;
        }
        sums.push(acc);
    }
    // column i removes the tail power with exponent (s - 2n) + i
    let mut col = sums;
    let mut last_diff = f64::INFINITY;
    for i in 0..RAW_LEVELS - 1 {
        let r = (-(s - m as f64 + i as f64) * 2f64.ln()).exp();
        let next: Vec<Complex64> = col
            .windows(2)
            .map(|p| (p[1] - p[0] * r) / (1.0 - r))
            .collect();
        if !next.is_empty() {
            last_diff = (next[next.len() - 1] - col[col.len() - 1]).norm();
        }
        col = next;
    }
    let est = last_diff + 8.0 * f64::EPSILON * magnitude;
    Ok(SuperzetaResult::new(col[0], est))
}

fn even_nontrivial_with(
    spec: &SelbergSpecEven,
    model: &FunctionModel,
    s: Complex64,
    z: Complex64,
    mu: Option<f64>,
    ctx: &EvalContext,
) -> Result<SuperzetaResult> {
    spec.validate()?;
    spec.check_z(z)?;
    let n = spec.n as f64;
    let m = 2 * spec.n;
    let coefficient =
        sign(spec.k + 1) * (spec.dim_euler() - 1.0) - (spec.d_c_chi * spec.d_dk) as f64;
    let mut value = scattering_sum(&spec.scattering_poles, spec.d_sigma_k, n - 0.5, s, z)
        + term(coefficient, z - spec.k as f64, s);
    if spec.cusp_order() != 0.0 {
        value += hurwitz_zeta(s, z - n + 1.5)? * spec.cusp_order();
    }
    if spec.dim_euler() != 0.0 {
        let mut blocks = Complex64::zero();
        for (j, w) in spec.block_weights().into_iter().enumerate() {
            let j = j as f64;
            blocks += (multiple_hurwitz_zeta(m, s, z - j)?
                + multiple_hurwitz_zeta(m, s, z + j + 1.0)?)
                * w;
        }
        value += blocks * spec.dim_euler();
    }
    Ok(closed(value).plus(&integral_block(model, s, z, mu, ctx)?))
}

/// `Z^NT(s, z)` in even dimension: scattering terms, the cusp Hurwitz term
/// `zeta_H(s, z - n + 3/2)`, the `zeta_2n` blocks, the `(z - k)^{-s}` term
/// and the continued superzeta of `model`. Simple poles at `s = 1..=2n`.
pub fn even_nontrivial_superzeta(
    spec: &SelbergSpecEven,
    model: &FunctionModel,
    s: Complex64,
    z: Complex64,
    ctx: &EvalContext,
) -> Result<SuperzetaResult> {
    even_nontrivial_with(spec, model, s, z, None, ctx)
}

/// `d/ds Z^NT(s, z)` at `s = 0`, numerically.
pub fn even_nontrivial_ds0(
    spec: &SelbergSpecEven,
    model: &FunctionModel,
    z: Complex64,
    ctx: &EvalContext,
) -> Result<Derivative> {
    richardson_derivative(
        |s| Ok(even_nontrivial_with(spec, model, s, z, Some(1.0), ctx)?.value),
        c(0.0),
        derivative_step(ctx),
    )
}

/// Right-hand side of the even regularized product:
/// `f(z) (z-k)^{-gamma} prod (z-n+1/2+q_j)^{d b_j} (Gamma(z-n+3/2)/sqrt(2 pi))^{-d_c d}
/// prod_j (Gamma_2n(z-j) Gamma_2n(z+j+1))^{-(-1)^j C(2n,k-j) dim V E}`.
pub fn even_regularized_product(
    spec: &SelbergSpecEven,
    f_value: Complex64,
    z: Complex64,
    ctx: &EvalContext,
) -> Result<Complex64> {
    spec.validate()?;
    spec.check_z(z)?;
    let n = spec.n as f64;
    let m = 2 * spec.n;
    let mut log = log_term(-spec.gamma_coefficient(), z - spec.k as f64);
    for p in &spec.scattering_poles {
        log += (z - (n - 0.5 - p.q)).ln() * (spec.d_sigma_k as f64 * p.b as f64);
    }
    if spec.cusp_order() != 0.0 {
        log -= (log_gamma(z - n + 1.5)? - LN_SQRT_2PI) * spec.cusp_order();
    }
    if spec.dim_euler() != 0.0 {
        for (j, w) in spec.block_weights().into_iter().enumerate() {
            let j = j as f64;
            let pair =
                log_multiple_gamma(m, z - j, ctx)? + log_multiple_gamma(m, z + j + 1.0, ctx)?;
            log -= pair * (w * spec.dim_euler());
        }
    }
    Ok(log.exp() * f_value)
}

/// Exact check of the three binomial transformation identities behind the
/// even-case rewriting. Identity 1 is checked for `m < k` and identities 2
/// and 3 for `m >= 1`; outside those ranges the entry is vacuously `true`.
pub fn binomial_identity_check(n: usize, k: usize, m: usize) -> (bool, bool, bool) {
    let (n, k, m) = (n as i64, k as i64, m as i64);
    let signed = |j: i64, v: BigInt| if j % 2 == 0 { v } else { -v };

    let first = m >= k || {
        let sum: BigInt = (0..=k - m)
            .map(|j| signed(j, binomial(2 * n, k - m - j) * binomial(2 * n + j - 1, j)))
            .sum();
        sum.is_zero()
    };

    let second = m < 1 || {
        let lhs: BigInt = (0..=k)
            .map(|j| {
                signed(
                    j,
                    binomial(2 * n, k - j) * binomial(2 * n + m + j - 1, m + j),
                )
            })
            .sum();
        lhs == binomial(2 * n + m - 1, m + k) * binomial(m + k - 1, k)
    };

    let third = m < 1 || {
        let lhs: BigInt = (0..=k.min(m - 1))
            .map(|j| {
                signed(
                    j,
                    binomial(2 * n, k - j) * binomial(2 * n + m - j - 2, m - j - 1),
                )
            })
            .sum();
        lhs == binomial(2 * n + m - 1, k) * binomial(2 * n + m - k - 2, m - 1)
    };

    (first, second, third)
}

/// Kleinian group data: the index `[Gamma_inf : Gamma_inf']` (1 or 2), the
/// minimal modulus `|c_0|`, its multiplicity `m(c_0)` and the co-area `|P|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KleinianParams {
    pub index_case: u8,
    pub c0_abs: f64,
    pub m_c0: u64,
    pub lattice_coarea: f64,
}

impl KleinianParams {
    pub fn validate(&self) -> Result<()> {
        if !matches!(self.index_case, 1 | 2) {
            return Err(Error::invalid(format!(
                "index_case must be 1 or 2, got {}",
                self.index_case
            )));
        }
        if !(self.c0_abs > 0.0 && self.c0_abs.is_finite()) {
            return Err(Error::invalid("c0_abs must be positive"));
        }
        if self.m_c0 == 0 {
            return Err(Error::invalid("m_c0 must be at least 1"));
        }
        if !(self.lattice_coarea > 0.0 && self.lattice_coarea.is_finite()) {
            return Err(Error::invalid("lattice_coarea must be positive"));
        }
        Ok(())
    }
}

/// Prefactors `D_{Z^+}/Z^+`, `D_{Z^-}/Z^-` and the factor turning
/// `D_{Z^-}/D_{Z^+}` into the scattering determinant `phi(s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KleinianConstants {
    pub det_prefactor_plus: Complex64,
    pub det_prefactor_minus: Complex64,
    pub phi_quotient_prefactor: Complex64,
}

fn real_pow(base: f64, e: Complex64) -> Complex64 {
    (e * base.ln()).exp()
}

pub fn kleinian_constants(p: &KleinianParams, s: Complex64) -> Result<KleinianConstants> {
    p.validate()?;
    let m = p.m_c0 as f64;
    // |c0|^{2s+2} |P|^s
    let scale = real_pow(p.c0_abs, 2.0 * s + 2.0) * real_pow(p.lattice_coarea, s);
    let (plus, minus_extra, phi_denominator) = match p.index_case {
        1 => {
            let plus = c((2.0 * PI).sqrt());
            (plus, plus, 1.0)
        }
        _ => {
            let root_pi = PI.sqrt();
            let plus = real_pow(2.0, (3.0 - s) / 2.0) * root_pi;
            let minus = real_pow(2.0, (5.0 - s) / 2.0) * root_pi;
            (plus, minus, 2.0)
        }
    };
    Ok(KleinianConstants {
        det_prefactor_plus: plus,
        det_prefactor_minus: scale / (PI * m) * minus_extra,
        phi_quotient_prefactor: c(PI * m / phi_denominator) / scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::contour_residue;
    use crate::superzeta::superzeta_direct;
    use crate::voros::{voros_det, AsymptoticExpansion};
    use crate::zeta_type::f_value;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn odd_fixture() -> SelbergSpecOdd {
        SelbergSpecOdd {
            n: 1,
            k: 0,
            d_c_chi: 2,
            d_sigma_k: 1,
            e_dk: 3,
            a_k: 2.0,
            scattering_poles: vec![ScatteringPole { q: c(0.5), b: 2 }],
        }
    }

    fn even_fixture(n: usize, k: usize) -> SelbergSpecEven {
        SelbergSpecEven {
            n,
            k,
            d_c_chi: 1,
            d_sigma_k: 2,
            d_dk: 1,
            dim_v_chi: 1,
            euler_char: 2,
            scattering_poles: vec![ScatteringPole { q: c(0.25), b: 1 }],
        }
    }

    fn dp2() -> FunctionModel {
        FunctionModel::dirichlet_polynomial(2.0).unwrap()
    }

    #[test]
    fn odd_coefficient_examples() {
        let mut spec = odd_fixture();
        spec.n = 2;
        spec.k = 2;
        spec.d_c_chi = 1;
        spec.d_sigma_k = 1;
        spec.e_dk = 1;
        spec.scattering_poles.clear();
        assert_eq!(odd_coefficients(&spec), (1.0, 2.0));
        spec.d_c_chi = 0;
        assert_eq!(odd_coefficients(&spec), (0.0, 0.0));
        spec.k = 1;
        spec.d_c_chi = 2;
        spec.d_sigma_k = 3;
        spec.e_dk = 5;
        assert_eq!(odd_coefficients(&spec), (4.0, 6.0));
    }

    #[test]
    fn odd_pole_superzeta_degenerate_and_single_pole() {
        let spec = SelbergSpecOdd {
            n: 1,
            k: 0,
            d_c_chi: 0,
            d_sigma_k: 3,
            e_dk: 0,
            a_k: 0.0,
            scattering_poles: vec![],
        };
        let s = cx(0.7, 0.3);
        let z = cx(2.5, 1.0);
        assert_eq!(
            odd_pole_superzeta(&spec, s, z).unwrap().value,
            Complex64::zero()
        );
        let with_pole = SelbergSpecOdd {
            scattering_poles: vec![ScatteringPole { q: c(0.5), b: 2 }],
            ..spec
        };
        let expected = cpow_neg(z - 0.5, s) * 6.0;
        let got = odd_pole_superzeta(&with_pole, s, z).unwrap().value;
        assert!((got - expected).norm() < 1e-14);
    }

    #[test]
    fn odd_forms_agree_and_match_direct_sums() {
        let spec = odd_fixture();
        let model = dp2();
        let ctx = EvalContext::default();
        let z = cx(2.5, 0.5);
        for &s in &[cx(-0.7, 0.2), cx(0.4, 0.0), cx(2.5, 0.3)] {
            let a = odd_nontrivial_superzeta(&spec, &model, s, z, &ctx).unwrap();
            let b = odd_nontrivial_from_poles(&spec, &model, s, z, &ctx).unwrap();
            assert!(
                (a.value - b.value).norm() < 1e-9 * a.value.norm().max(1.0),
                "s = {s}"
            );
        }
        // Z^NT = Z_f + Z^P with both pieces summed directly
        let s = cx(2.5, 0.0);
        let ctx = ctx.with_truncation(100_000);
        let zeros = model.zeros.clone().unwrap();
        let direct = superzeta_direct(&zeros, s, z, &ctx).unwrap().value
            + odd_pole_divisor(&spec)
                .unwrap()
                .direct_sum(s, z, &ctx)
                .unwrap()
                .value;
        let got = odd_nontrivial_superzeta(&spec, &model, s, z, &ctx)
            .unwrap()
            .value;
        assert!(
            (got - direct).norm() < 1e-8 * direct.norm(),
            "{got} vs {direct}"
        );
    }

    #[test]
    fn odd_residue_is_beta() {
        let spec = odd_fixture();
        let model = dp2();
        let ctx = EvalContext::default();
        let z = cx(2.5, 0.5);
        let res = contour_residue(
            |s| Ok(odd_nontrivial_superzeta(&spec, &model, s, z, &ctx)?.value),
            c(1.0),
            0.25,
            32,
        )
        .unwrap();
        assert!((res - odd_coefficients(&spec).1).norm() < 1e-6, "{res}");
        // no other pole: the contour around s = 2 encloses nothing
        let res2 = contour_residue(
            |s| Ok(odd_nontrivial_superzeta(&spec, &model, s, z, &ctx)?.value),
            c(2.0),
            0.25,
            32,
        )
        .unwrap();
        assert!(res2.norm() < 1e-6);
    }

    #[test]
    fn odd_product_examples_and_duality() {
        let mut spec = odd_fixture();
        spec.d_c_chi = 0;
        spec.a_k = 0.0;
        spec.scattering_poles.clear();
        let f = cx(0.3, -1.2);
        assert_eq!(odd_regularized_product(&spec, f, cx(3.0, 1.0)).unwrap(), f);

        // alpha = 0, beta = 1, z - n + 1 = 1/2
        let spec = SelbergSpecOdd {
            n: 1,
            k: 0,
            d_c_chi: 1,
            d_sigma_k: 1,
            e_dk: 1,
            a_k: 0.0,
            scattering_poles: vec![],
        };
        let got = odd_regularized_product(&spec, f, c(0.5)).unwrap();
        assert!((got - f * 2f64.sqrt()).norm() < 1e-14 * f.norm());

        let spec = odd_fixture();
        let model = dp2();
        let ctx = EvalContext::default();
        for &z in &[cx(2.5, 0.5), cx(3.0, 0.0), cx(4.0, -1.0)] {
            let d = odd_nontrivial_ds0(&spec, &model, z, &ctx).unwrap();
            let lhs = (-d.value).exp();
            let rhs = odd_regularized_product(&spec, f_value(&model, z, &ctx).unwrap(), z).unwrap();
            assert!(
                (lhs - rhs).norm() < 1e-5 * rhs.norm(),
                "z = {z}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn even_residue_examples() {
        let spec = SelbergSpecEven {
            n: 1,
            k: 0,
            d_c_chi: 0,
            d_sigma_k: 1,
            d_dk: 0,
            dim_v_chi: 1,
            euler_char: 1,
            scattering_poles: vec![],
        };
        let z = cx(1.3, 0.4);
        assert!((even_residue(&spec, 2, z).unwrap() - 2.0).norm() < 1e-14);
        let zero = SelbergSpecEven {
            euler_char: 0,
            ..spec.clone()
        };
        assert_eq!(even_residue(&zero, 1, z).unwrap(), Complex64::zero());
        assert!(even_residue(&spec, 3, z).is_err());
        let with_cusp = SelbergSpecEven {
            d_c_chi: 2,
            d_sigma_k: 3,
            ..spec.clone()
        };
        let diff = even_residue(&with_cusp, 1, z).unwrap() - even_residue(&spec, 1, z).unwrap();
        assert!((diff - 6.0).norm() < 1e-14);
        assert_eq!(
            even_residue(&with_cusp, 2, z).unwrap(),
            even_residue(&spec, 2, z).unwrap()
        );
    }

    #[test]
    fn even_gamma_example() {
        let spec = SelbergSpecEven {
            n: 1,
            k: 0,
            d_c_chi: 1,
            d_sigma_k: 1,
            d_dk: 1,
            dim_v_chi: 1,
            euler_char: 1,
            scattering_poles: vec![],
        };
        assert_eq!(spec.gamma_coefficient(), 1.0);
    }

    #[test]
    fn even_rewriting_matches_raw_series() {
        for n in 1..=2 {
            for k in 0..n {
                for &z in &[cx(1.5, 0.0), cx(2.2, 1.3)] {
                    let s = cx(2.0 * n as f64 + 1.5, 0.4);
                    let raw = even_raw_series(n, k, s, z).unwrap();
                    let blocks = even_block_series(n, k, s, z).unwrap();
                    let scale = raw.value.norm().max(1.0);
                    assert!(raw.est_error < 1e-10 * scale);
                    assert!(
                        (raw.value - blocks).norm() < 1e-8 * scale,
                        "n={n} k={k} z={z}: {} vs {blocks}",
                        raw.value
                    );
                }
            }
        }
    }

    #[test]
    fn even_residues_match_contour() {
        let model = dp2();
        let ctx = EvalContext::default();
        let z = cx(3.2, 0.4);
        for n in 1..=2 {
            let spec = even_fixture(n, n - 1);
            for r in 1..=2 * n {
                let numeric = contour_residue(
                    |s| Ok(even_nontrivial_superzeta(&spec, &model, s, z, &ctx)?.value),
                    c(r as f64),
                    0.25,
                    32,
                )
                .unwrap();
                let exact = even_residue(&spec, r, z).unwrap();
                assert!(
                    (numeric - exact).norm() < 1e-6 * exact.norm().max(1.0),
                    "n={n} r={r}: {numeric} vs {exact}"
                );
            }
        }
    }

    #[test]
    fn even_degenerate_reduces_to_model() {
        let spec = SelbergSpecEven {
            n: 1,
            k: 0,
            d_c_chi: 0,
            d_sigma_k: 1,
            d_dk: 0,
            dim_v_chi: 1,
            euler_char: 0,
            scattering_poles: vec![],
        };
        // coefficient (-1)^{k+1}(dim V E - 1) = 1 at (z - k)^{-s} remains
        let model = dp2();
        let ctx = EvalContext::default();
        let s = cx(-0.4, 0.3);
        let z = cx(2.0, 1.0);
        let got = even_nontrivial_superzeta(&spec, &model, s, z, &ctx)
            .unwrap()
            .value;
        let expected = superzeta_continued_auto(&model, s, z, &ctx).unwrap().value + cpow_neg(z, s);
        assert!((got - expected).norm() < 1e-13);
        assert_eq!(
            even_regularized_product(&spec, c(1.0), z, &ctx).unwrap(),
            c(1.0) * z
        );
    }

    #[test]
    fn even_product_duality() {
        let model = dp2();
        let ctx = EvalContext::default();
        for n in 1..=2 {
            let spec = even_fixture(n, n - 1);
            let z = cx(3.2, 0.4);
            let d = even_nontrivial_ds0(&spec, &model, z, &ctx).unwrap();
            let lhs = (-d.value).exp();
            let rhs = even_regularized_product(&spec, f_value(&model, z, &ctx).unwrap(), z, &ctx)
                .unwrap();
            assert!(
                (lhs - rhs).norm() < 1e-4 * rhs.norm(),
                "n={n}: {lhs} vs {rhs}"
            );
        }
    }

    #[test]
    fn binomial_identities_exhaustive() {
        for n in 1..=8 {
            for k in 0..=n.min(8) {
                for m in 0..=12 {
                    assert_eq!(binomial_identity_check(n, k, m), (true, true, true));
                }
            }
        }
        // first identity, n = 1, k = 1, m = 0: 2 - 2 = 0
        assert!(binomial_identity_check(1, 1, 0).0);
    }

    #[test]
    fn binomial_identities_detect_a_wrong_sign() {
        // the same sums with the alternating sign dropped must fail somewhere
        let (n, k, m) = (2i64, 1i64, 2i64);
        let lhs: BigInt = (0..=k)
            .map(|j| binomial(2 * n, k - j) * binomial(2 * n + m + j - 1, m + j))
            .sum();
        assert_ne!(lhs, binomial(2 * n + m - 1, m + k) * binomial(m + k - 1, k));
    }

    #[test]
    fn kleinian_unit_parameters() {
        let unit = |case| KleinianParams {
            index_case: case,
            c0_abs: 1.0,
            m_c0: 1,
            lattice_coarea: 1.0,
        };
        for &s in &[c(0.0), cx(0.5, 2.0), c(-3.0)] {
            let one = kleinian_constants(&unit(1), s).unwrap();
            assert_eq!(one.det_prefactor_plus, c((2.0 * PI).sqrt()));
            assert_eq!(one.phi_quotient_prefactor, c(PI));
            let two = kleinian_constants(&unit(2), s).unwrap();
            assert_eq!(two.phi_quotient_prefactor, c(PI / 2.0));
        }
        assert!(kleinian_constants(&unit(3), c(0.0)).is_err());
    }

    #[test]
    fn kleinian_quotient_is_consistent() {
        for case in 1..=2 {
            let p = KleinianParams {
                index_case: case,
                c0_abs: 0.7,
                m_c0: 3,
                lattice_coarea: 2.3,
            };
            let s = cx(0.8, -1.1);
            let k = kleinian_constants(&p, s).unwrap();
            let product = k.det_prefactor_minus / k.det_prefactor_plus * k.phi_quotient_prefactor;
            assert!((product - 1.0).norm() < 1e-14, "case {case}: {product}");
        }
    }

    #[test]
    fn kleinian_plus_prefactors_from_expansions() {
        // log Z_1^+ ~ (1/2) log s - s (log s - 1) - (1/2) log 2 pi
        let one = AsymptoticExpansion::new(
            1,
            vec![c(0.5), c(-1.0)],
            vec![c(-LN_SQRT_2PI), c(0.0)],
            vec![],
            PI / 2.0,
        )
        .unwrap();
        // log Z_2^+ ~ 2 log s - (1/2) s (log s - 1) + (log 2 / 2) s - (1/2) log 2 pi - log 2
        let ln2 = 2f64.ln();
        let two = AsymptoticExpansion::new(
            1,
            vec![c(2.0), c(-0.5)],
            vec![c(-LN_SQRT_2PI - ln2), c(ln2 / 2.0)],
            vec![],
            PI / 2.0,
        )
        .unwrap();
        let p = |case| KleinianParams {
            index_case: case,
            c0_abs: 1.3,
            m_c0: 2,
            lattice_coarea: 0.9,
        };
        for &s in &[cx(2.0, 0.0), cx(3.5, -1.0)] {
            let k1 = kleinian_constants(&p(1), s).unwrap();
            let k2 = kleinian_constants(&p(2), s).unwrap();
            assert!((voros_det(&one, c(1.0), s) - k1.det_prefactor_plus).norm() < 1e-13);
            assert!((voros_det(&two, c(1.0), s) - k2.det_prefactor_plus).norm() < 1e-13);
        }
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = odd_fixture();
        let text = serde_json::to_string(&spec).unwrap();
        assert!(text.contains("\"scattering_poles\":[[0.5,0.0,2]]"));
        let back: SelbergSpecOdd = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
        let even = even_fixture(2, 1);
        let back: SelbergSpecEven =
            serde_json::from_str(&serde_json::to_string(&even).unwrap()).unwrap();
        assert_eq!(back, even);
        assert!(serde_json::from_str::<KleinianParams>(
            r#"{"index_case":1,"c0_abs":1,"m_c0":1,"lattice_coarea":1,"extra":0}"#
        )
        .is_err());
    }
}
