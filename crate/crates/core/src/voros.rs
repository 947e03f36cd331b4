//! Continuation of the superzeta from an asymptotic expansion of the
//! Hadamard product `log Delta_f`, and the determinant formula
//! `D_f(z) = exp(-sum_j b_j z^j) Delta_f(z)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::calculus::{richardson_derivative, Derivative};
use crate::context::EvalContext;
use crate::divisor::{divisor_superzeta, ZeroSequence};
use crate::error::{Error, Result};
use crate::quad::{exp_sinh, mellin_head, tanh_sinh, weighted, DeRule, Quadrature};
use crate::result::{BranchFlags, SuperzetaResult};
use crate::special::gamma::bernoulli_even;
use crate::special::{gamma, rgamma};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// `|z + Y|` beyond which the remainder `h` is replaced by the unsubtracted
/// power terms of the expansion.
const ASYMPTOTIC_RADIUS: f64 = 20.0;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// `H_j = 1 + 1/2 + ... + 1/j`, `H_0 = 0`.
pub fn harmonic(j: usize) -> f64 {
    (1..=j).map(|l| 1.0 / l as f64).sum()
}

/// `log Delta_f(z) ~ sum_j a~_j z^j (log z - H_j) + sum_j b_j z^j + sum_k a_k z^{mu_k}`
/// in the sector `|arg z| < theta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ExpansionJson", into = "ExpansionJson")]
pub struct AsymptoticExpansion {
    m: usize,
    a_tilde: Vec<Complex64>,
    b: Vec<Complex64>,
    power_terms: Vec<(Complex64, f64)>,
    sector_theta: f64,
}

impl AsymptoticExpansion {
    pub fn new(
        m: usize,
        a_tilde: Vec<Complex64>,
        b: Vec<Complex64>,
        power_terms: Vec<(Complex64, f64)>,
        sector_theta: f64,
    ) -> Result<Self> {
        if a_tilde.len() != m + 1 || b.len() != m + 1 {
            return Err(Error::invalid(format!(
                "expansion of genus {m} needs {} coefficients a~_j and b_j",
                m + 1
            )));
        }
        if power_terms.first().is_some_and(|t| !(t.1 < 1.0)) {
            return Err(Error::invalid("power exponents must satisfy mu_1 < 1"));
        }
        if power_terms.windows(2).any(|w| !(w[1].1 < w[0].1)) {
            return Err(Error::invalid(
                "power exponents mu_k must decrease strictly",
            ));
        }
        if !(sector_theta > 0.0 && sector_theta < std::f64::consts::PI) {
            return Err(Error::invalid("sector angle must lie in (0, pi)"));
        }
        Ok(AsymptoticExpansion {
            m,
            a_tilde,
            b,
            power_terms,
            sector_theta,
        })
    }

    /// Stirling's series of `-log Gamma`: the expansion of `log(1/Gamma)`
    /// with `terms` power corrections.
    pub fn reciprocal_gamma(terms: usize) -> Result<Self> {
        if terms > 15 {
            return Err(Error::IndexRange(format!(
                "{terms} Stirling terms (at most 15)"
            )));
        }
        let power_terms = (1..=terms)
            .map(|k| {
                let a = -bernoulli_even(k) / ((2 * k) * (2 * k - 1)) as f64;
                (c(a), 1.0 - (2 * k) as f64)
            })
            .collect();
        let half_log_2pi = 0.5 * (2.0 * std::f64::consts::PI).ln();
        AsymptoticExpansion::new(
            1,
            vec![c(0.5), c(-1.0)],
            vec![c(-half_log_2pi), ZERO],
            power_terms,
            std::f64::consts::PI - 0.1,
        )
    }

    pub fn genus(&self) -> usize {
        self.m
    }

    pub fn a_tilde(&self) -> &[Complex64] {
        &self.a_tilde
    }

    pub fn b(&self) -> &[Complex64] {
        &self.b
    }

    pub fn power_terms(&self) -> &[(Complex64, f64)] {
        &self.power_terms
    }

    pub fn sector_theta(&self) -> f64 {
        self.sector_theta
    }

    /// The polynomial `sum_j b_j z^j`.
    pub fn b_polynomial(&self, z: Complex64) -> Complex64 {
        self.b.iter().rev().fold(ZERO, |acc, b| acc * z + b)
    }

    fn check_sector(&self, z: Complex64) -> Result<()> {
        if z.norm() > 0.0 && z.arg().abs() < self.sector_theta {
            Ok(())
        } else {
            Err(Error::Domain {
                function: "Voros continuation",
                at: z,
                reason: "z outside the sector of the asymptotic expansion",
            })
        }
    }

    /// `(m+1)`-th derivative of the `a~` block at `w`.
    fn log_block_derivative(&self, w: Complex64) -> Complex64 {
        let m = self.m;
        self.a_tilde
            .iter()
            .enumerate()
            .map(|(j, a)| {
                let sign = if (m - j) % 2 == 0 { 1.0 } else { -1.0 };
                a * (sign * factorial(j) * factorial(m - j)) * w.powi(-((m + 1 - j) as i32))
            })
            .sum()
    }

    /// `(m+1)`-th derivative of the power term `a z^mu` at `w`.
    fn power_derivative(&self, k: usize, w: Complex64) -> Complex64 {
        let (a, mu) = self.power_terms[k];
        let falling: f64 = (0..=self.m).map(|i| mu - i as f64).product();
        a * falling * w.powc(c(mu - (self.m + 1) as f64))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExpansionJson {
    m: usize,
    a_tilde: Vec<[f64; 2]>,
    b: Vec<[f64; 2]>,
    #[serde(default)]
    power_terms: Vec<[f64; 3]>,
    sector_theta: f64,
}

impl TryFrom<ExpansionJson> for AsymptoticExpansion {
    type Error = Error;

    fn try_from(j: ExpansionJson) -> Result<Self> {
        let pair = |v: &[[f64; 2]]| v.iter().map(|p| Complex64::new(p[0], p[1])).collect();
        AsymptoticExpansion::new(
            j.m,
            pair(&j.a_tilde),
            pair(&j.b),
            j.power_terms
                .iter()
                .map(|t| (Complex64::new(t[0], t[1]), t[2]))
                .collect(),
            j.sector_theta,
        )
    }
}

impl From<AsymptoticExpansion> for ExpansionJson {
    fn from(e: AsymptoticExpansion) -> Self {
        let pair = |v: &[Complex64]| v.iter().map(|z| [z.re, z.im]).collect();
        ExpansionJson {
            m: e.m,
            a_tilde: pair(&e.a_tilde),
            b: pair(&e.b),
            power_terms: e
                .power_terms
                .iter()
                .map(|(a, mu)| [a.re, a.im, *mu])
                .collect(),
            sector_theta: e.sector_theta,
        }
    }
}

/// Zeros of the Hadamard product: `r` zeros at the origin plus a zero list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HadamardData {
    pub zeros: ZeroSequence,
    #[serde(default)]
    pub origin_order: u32,
    pub genus: usize,
}

impl HadamardData {
    /// Zeros of `1/Gamma`: `0, -1, -2, ...`, genus 1.
    pub fn reciprocal_gamma() -> Self {
        HadamardData {
            zeros: ZeroSequence::progression(ZERO),
            origin_order: 0,
            genus: 1,
        }
    }

    fn check_admissible(&self, z: Complex64) -> Result<()> {
        if self.origin_order > 0 && z.im == 0.0 && z.re <= 0.0 {
            return Err(Error::NotAdmissible { z, point: ZERO });
        }
        self.zeros.check_admissible(z)
    }
}

/// `Gamma(s - j) / Gamma(s) = prod_{i=1}^{j} (s - i)^{-1}`.
pub fn gamma_ratio(s: Complex64, j: usize) -> Result<Complex64> {
    let mut acc = c(1.0);
    for i in 1..=j {
        let d = s - i as f64;
        if d == ZERO {
            return Err(Error::Pole {
                function: "Gamma(s - j) / Gamma(s)",
                at: s,
            });
        }
        acc /= d;
    }
    Ok(acc)
}

/// `(log Delta_f)^{(m+1)}(z) = (-1)^m m! (sum_k (z - y_k)^{-(m+1)} + r z^{-(m+1)})`.
pub fn hadamard_log_derivative(
    data: &HadamardData,
    order: usize,
    z: Complex64,
    ctx: &EvalContext,
) -> Result<Complex64> {
    if order != data.genus + 1 {
        return Err(Error::IndexRange(format!(
            "log-derivative order {order} must equal genus + 1 = {}",
            data.genus + 1
        )));
    }
    data.check_admissible(z)?;
    let m = data.genus;
    let s = c(order as f64);
    let mut sum = if data.zeros.is_empty() {
        ZERO
    } else {
        divisor_superzeta(&data.zeros, s, z, ctx)?.value
    };
    if data.origin_order > 0 {
        sum += z.powi(-(order as i32)) * data.origin_order as f64;
    }
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sum * (sign * factorial(m)))
}

/// `Gamma(s - mu) / (Gamma(s) Gamma(-mu))`, a polynomial in `s` when `mu` is
/// a negative integer.
fn power_block_factor(s: Complex64, mu: f64) -> Result<Complex64> {
    if mu < 0.0 && mu.fract() == 0.0 {
        let p = (-mu) as usize;
        let rising = (0..p).fold(c(1.0), |acc, i| acc * (s + i as f64));
        return Ok(rising / factorial(p - 1));
    }
    Ok(gamma(s - mu)? * rgamma(s) * rgamma(c(-mu)))
}

/// First index `k0` (1-based) with `mu_{k0} < Re s - 1`, or one past the end.
fn default_k0(exp: &AsymptoticExpansion, s: Complex64) -> usize {
    exp.power_terms
        .iter()
        .position(|t| t.1 < s.re - 1.0)
        .map_or(exp.power_terms.len() + 1, |i| i + 1)
}

/// `Z_f(s, z)` continued to `Re s < m + 1` from the asymptotic expansion.
///
/// Power terms `k < k0` are subtracted in closed form; the remainder
/// `h_{k0}^{(m+1)}` enters a Mellin integral. `k0` defaults to the first
/// index with `mu_{k0} < Re s - 1`.
pub fn voros_superzeta(
    exp: &AsymptoticExpansion,
    data: &HadamardData,
    s: Complex64,
    z: Complex64,
    k0: Option<usize>,
    ctx: &EvalContext,
) -> Result<SuperzetaResult> {
    ctx.validate()?;
    let m = exp.m;
    if data.genus != m {
        return Err(Error::invalid(format!(
            "Hadamard genus {} differs from expansion genus {m}",
            data.genus
        )));
    }
    if !(s.re < (m + 1) as f64) {
        return Err(Error::ConvergenceDomain {
            what: "Voros continuation",
            at: s,
            requirement: format!("Re s < m + 1 = {}", m + 1),
        });
    }
    exp.check_sector(z)?;
    data.check_admissible(z)?;
    let k0 = k0.unwrap_or_else(|| default_k0(exp, s));
    if k0 == 0 || k0 > exp.power_terms.len() + 1 {
        return Err(Error::IndexRange(format!("k0 = {k0}")));
    }
    if let Some(&(_, mu)) = exp.power_terms.get(k0 - 1) {
        if !(mu < s.re) {
            return Err(Error::ConvergenceDomain {
                what: "Voros remainder integral",
                at: s,
                requirement: format!("mu_k0 = {mu} < Re s"),
            });
        }
    }

    // block (i)
    let mut block_i = ZERO;
    for (j, a) in exp.a_tilde.iter().enumerate() {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        block_i += a * (sign * factorial(j)) * gamma_ratio(s, j)? * z.powc(c(j as f64) - s);
    }

    // block (ii)
    let mut block_ii = ZERO;
    for &(a, mu) in &exp.power_terms[..k0 - 1] {
        block_ii -= a * power_block_factor(s, mu)? * z.powc(c(mu) - s);
    }

    // block (iii)
    let prefactor = rgamma(c((m + 1) as f64) - s) * rgamma(s) * if m % 2 == 0 { 1.0 } else { -1.0 };
    let mut flags = BranchFlags {
        k0: Some(k0),
        ..BranchFlags::default()
    };
    let (block_iii, err_iii) = if prefactor == ZERO {
        (ZERO, 0.0)
    } else {
        let remainder = |w: Complex64| -> Result<Complex64> {
            let mut h = hadamard_log_derivative(data, m + 1, w, ctx)? - exp.log_block_derivative(w);
            for k in 0..k0 - 1 {
                h -= exp.power_derivative(k, w);
            }
            Ok(h)
        };
        let asymptotic = |w: Complex64| -> Complex64 {
            (k0 - 1..exp.power_terms.len())
                .map(|k| exp.power_derivative(k, w))
                .sum()
        };
        let rule = DeRule::from_context(ctx);
        let y_max = (ASYMPTOTIC_RADIUS - z.re).max(1.0);
        let weight_s = s - m as f64;
        let head = mellin_head(|y| remainder(z + y), weight_s, 0.0, 1.0, &rule)?;
        let middle = if y_max > 1.0 {
            tanh_sinh(
                |y| Ok(weighted(remainder(z + y)?, y.ln(), weight_s)),
                1.0,
                y_max,
                &rule,
            )?
        } else {
            Quadrature {
                value: ZERO,
                error: 0.0,
                evaluations: 0,
                levels: 0,
            }
        };
        let tail = exp_sinh(
            |y| Ok(weighted(asymptotic(z + y), y.ln(), weight_s)),
            y_max,
            &rule,
        )?;
        // the first unused power term bounds the asymptotic truncation
        let w_max = z + y_max;
        let trunc = match exp.power_terms.len() {
            0 => remainder(w_max)?.norm(),
            n if n >= k0 => exp.power_derivative(n - 1, w_max).norm(),
            _ => remainder(w_max)?.norm(),
        };
        let exponent = exp.power_terms.last().map_or(-1.0, |t| t.1);
        let trunc_err =
            trunc * y_max.powf(m as f64 + 1.0 - s.re) / (s.re - exponent).abs().max(1.0);
        flags.y_max = Some(y_max);
        flags.quadrature_levels = Some(head.levels.max(middle.levels).max(tail.levels));
        flags.quadrature_evaluations =
            Some(head.evaluations + middle.evaluations + tail.evaluations);
        let integral = head.value + middle.value + tail.value;
        (
            integral * prefactor,
            (head.error + middle.error + tail.error + trunc_err) * prefactor.norm(),
        )
    };

    let value = block_i + block_ii + block_iii;
    let rounding = 8.0 * f64::EPSILON * (block_i.norm() + block_ii.norm() + block_iii.norm());
    Ok(SuperzetaResult::new(value, err_iii + rounding).with_flags(flags))
}

/// `d/ds Z_f(s, z)` at `s = 0` from [`voros_superzeta`] by Richardson extrapolation.
pub fn voros_superzeta_ds0(
    exp: &AsymptoticExpansion,
    data: &HadamardData,
    z: Complex64,
    ctx: &EvalContext,
) -> Result<Derivative> {
    let step = ctx.derivative_step.min(0.25);
    richardson_derivative(
        |s| Ok(voros_superzeta(exp, data, s, z, None, ctx)?.value),
        ZERO,
        step,
    )
}

/// `D_f(z) = exp(-sum_j b_j z^j) Delta_f(z)`.
pub fn voros_det(exp: &AsymptoticExpansion, delta_f: Complex64, z: Complex64) -> Complex64 {
    (-exp.b_polynomial(z)).exp() * delta_f
}
