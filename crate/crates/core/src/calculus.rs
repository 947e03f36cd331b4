//! Small numerical-calculus helpers: Richardson-extrapolated derivatives,
//! residues from contour integrals and a cancellation-free `sin(x)/x`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::Result;

/// Derivative estimate together with its extrapolation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivative {
    pub value: Complex64,
    pub error: f64,
}

/// First derivative of `f` at `x0` along the real direction, by central
/// differences refined with Ridders' Richardson tableau.
///
/// `h` is the initial step; the tableau shrinks it by a factor 1.4 per column
/// and stops once the error estimate starts growing.
pub fn richardson_derivative<F>(f: F, x0: Complex64, h: f64) -> Result<Derivative>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    const SHRINK: f64 = 1.4;
    const SHRINK2: f64 = SHRINK * SHRINK;
    const NTAB: usize = 10;
    const SAFE: f64 = 2.0;

    let mut table = [[Complex64::new(0.0, 0.0); NTAB]; NTAB];
    let mut step = h;
    let central = |step: f64| -> Result<Complex64> {
        let d = Complex64::new(step, 0.0);
        Ok((f(x0 + d)? - f(x0 - d)?) / (2.0 * step))
    };
    table[0][0] = central(step)?;
    let mut best = Derivative {
        value: table[0][0],
        error: f64::INFINITY,
    };
    for i in 1..NTAB {
        step /= SHRINK;
        table[0][i] = central(step)?;
        let mut fac = SHRINK2;
        for j in 1..=i {
            table[j][i] = (table[j - 1][i] * fac - table[j - 1][i - 1]) / (fac - 1.0);
            fac *= SHRINK2;
            let errt = (table[j][i] - table[j - 1][i])
                .norm()
                .max((table[j][i] - table[j - 1][i - 1]).norm());
            if errt <= best.error {
                best = Derivative {
                    value: table[j][i],
                    error: errt,
                };
            }
        }
        if (table[i][i] - table[i - 1][i - 1]).norm() >= SAFE * best.error {
            break;
        }
    }
    Ok(best)
}

/// Residue of `f` at `center`, i.e. `(1 / 2 pi i)` times the integral of `f`
/// over the circle of the given radius, using the periodic trapezoid rule.
///
/// The circle must enclose no other singularity.
pub fn contour_residue<F>(f: F, center: Complex64, radius: f64, points: usize) -> Result<Complex64>
where
    F: Fn(Complex64) -> Result<Complex64>,
{
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..points {
        let theta = 2.0 * PI * (k as f64 + 0.5) / points as f64;
        let offset = Complex64::from_polar(radius, theta);
        acc += f(center + offset)? * offset;
    }
    Ok(acc / points as f64)
}

/// `sin(x) / x`, equal to 1 at the origin.
pub fn sinc(x: Complex64) -> Complex64 {
    if x.norm() < 1e-4 {
        let x2 = x * x;
        Complex64::new(1.0, 0.0) - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// `sin(pi s) / pi`, exactly zero at integer `s` on the real axis.
pub fn sin_pi_over_pi(s: Complex64) -> Complex64 {
    if s.im == 0.0 && s.re.fract() == 0.0 {
        return Complex64::new(0.0, 0.0);
    }
    (s * PI).sin() / PI
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn derivative_of_exp() {
        let d = richardson_derivative(|x| Ok(x.exp()), c(0.3, 0.2), 0.1).unwrap();
        assert!((d.value - c(0.3, 0.2).exp()).norm() < 1e-12);
        assert!(d.error < 1e-10);
    }

    #[test]
    fn residue_of_simple_pole() {
        let r = contour_residue(
            |s| Ok(c(3.0, -1.0) / (s - 2.0) + s * s),
            c(2.0, 0.0),
            0.3,
            32,
        )
        .unwrap();
        assert!((r - c(3.0, -1.0)).norm() < 1e-13);
    }

    #[test]
    fn sinc_is_smooth_at_zero() {
        assert_eq!(sinc(c(0.0, 0.0)), c(1.0, 0.0));
        let x = c(1e-4, 0.0);
        assert!((sinc(x) - x.sin() / x).norm() < 1e-15);
        assert!((sinc(c(9.9e-5, 0.0)) - sinc(c(1.01e-4, 0.0))).norm() < 1e-9);
    }

    #[test]
    fn sin_pi_vanishes_exactly_at_integers() {
        assert_eq!(sin_pi_over_pi(c(0.0, 0.0)), c(0.0, 0.0));
        assert_eq!(sin_pi_over_pi(c(-3.0, 0.0)), c(0.0, 0.0));
        assert!((sin_pi_over_pi(c(0.5, 0.0)) - c(1.0 / PI, 0.0)).norm() < 1e-16);
    }
}
