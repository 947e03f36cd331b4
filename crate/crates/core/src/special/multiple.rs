//! Multiple Hurwitz zeta function and multiple gamma function through the
//! reduction `zeta_m(s, z) = sum_j p_{m,j}(z) zeta_H(s - j, z)`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::combinatorics::{binomial, factorial, StirlingTable};
use super::hurwitz::{hurwitz_zeta, hurwitz_zeta_ds};
use crate::context::EvalContext;
use crate::error::{Error, Result};

fn check_order(m: usize) -> Result<()> {
    if m == 0 || m > StirlingTable::shared().max_order() {
        return Err(Error::IndexRange(format!(
            "multiple zeta order m = {m} must be in 1..={}",
            StirlingTable::shared().max_order()
        )));
    }
    Ok(())
}

/// Exact numerators of `p_{m,j}`: coefficient of `z^{l-j}` for `l = j..m-1`,
/// all to be divided by `(m-1)!`.
pub fn p_poly_numerators(m: usize, j: usize) -> Result<Vec<BigInt>> {
    check_order(m)?;
    if j >= m {
        return Err(Error::IndexRange(format!(
            "p_{{m,j}} needs j < m (m = {m}, j = {j})"
        )));
    }
    let table = StirlingTable::shared();
    let sign = if (m + 1 - j) % 2 == 0 { 1 } else { -1 };
    (j..m)
        .map(|l| {
            let s = table.get(m, l + 1)?;
            Ok(binomial(l as i64, j as i64) * s * BigInt::from(sign))
        })
        .collect()
}

/// Coefficients (ascending powers of `z`) of the polynomial `p_{m,j}`.
pub fn p_poly_coefficients(m: usize, j: usize) -> Result<Vec<f64>> {
    let numerators = p_poly_numerators(m, j)?;
    let denom = factorial(m as u64 - 1).to_f64().unwrap_or(f64::INFINITY);
    Ok(numerators
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN) / denom)
        .collect())
}

/// Value of `p_{m,j}(z)`.
pub fn p_poly(m: usize, j: usize, z: Complex64) -> Result<Complex64> {
    let coeffs = p_poly_coefficients(m, j)?;
    Ok(coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c))
}

/// Continuation of `sum_l C(m+l-1, l) (z+l)^{-s}`; simple poles at `s = 1..m`.
pub fn multiple_hurwitz_zeta(m: usize, s: Complex64, z: Complex64) -> Result<Complex64> {
    check_order(m)?;
    if s.im == 0.0 && s.re.fract() == 0.0 && s.re >= 1.0 && s.re <= m as f64 {
        return Err(Error::Pole {
            function: "multiple_hurwitz_zeta",
            at: s,
        });
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..m {
        acc += p_poly(m, j, z)? * hurwitz_zeta(s - j as f64, z)?;
    }
    Ok(acc)
}

/// `log Gamma_m(z) = d/ds zeta_m(s, z)` at `s = 0`, differentiating each
/// Hurwitz term of the reduction numerically.
pub fn log_multiple_gamma(m: usize, z: Complex64, ctx: &EvalContext) -> Result<Complex64> {
    check_order(m)?;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..m {
        let d = hurwitz_zeta_ds(Complex64::new(-(j as f64), 0.0), z, ctx)?;
        acc += p_poly(m, j, z)? * d.value;
    }
    Ok(acc)
}

/// Multiple gamma function `Gamma_m(z) = exp(d/ds zeta_m(s, z)|_{s=0})`.
pub fn multiple_gamma(m: usize, z: Complex64, ctx: &EvalContext) -> Result<Complex64> {
    Ok(log_multiple_gamma(m, z, ctx)?.exp())
}
