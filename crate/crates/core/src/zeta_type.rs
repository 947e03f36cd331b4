//! Zeta-type functions: `log f` given by a generalized Dirichlet series, plus
//! three builtin models with closed-form logarithmic derivatives.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::context::EvalContext;
use crate::divisor::ZeroSequence;
use crate::error::{Error, Result};
use crate::special::{digamma, hurwitz_zeta, log_gamma};

/// Largest derivative order accepted by [`log_f_derivative`].
pub const MAX_DERIVATIVE_ORDER: usize = 8;

/// Largest order available internally (Taylor remainders of the continuation).
pub(crate) const MAX_INTERNAL_ORDER: usize = 40;

/// `log f(z) = sum_n c_n q_n^{-z}` with `1 < q_1 < q_2 < ...`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DirichletJson", into = "DirichletJson")]
pub struct DirichletLogSeries {
    terms: Vec<(Complex64, f64)>,
    kappa: f64,
    sigma: f64,
}

impl DirichletLogSeries {
    pub fn new(terms: Vec<(Complex64, f64)>, kappa: f64, sigma: f64) -> Result<Self> {
        if terms.first().is_some_and(|t| !(t.1 > 1.0)) {
            return Err(Error::invalid("Dirichlet series requires q_1 > 1"));
        }
        if terms.windows(2).any(|w| !(w[1].1 > w[0].1)) {
            return Err(Error::invalid(
                "Dirichlet series frequencies q_n must increase strictly",
            ));
        }
        if terms
            .iter()
            .any(|t| !t.0.re.is_finite() || !t.0.im.is_finite())
        {
            return Err(Error::invalid("Dirichlet coefficients must be finite"));
        }
        if !(kappa >= 1.0) || !kappa.is_finite() {
            return Err(Error::invalid("order kappa must be a finite real >= 1"));
        }
        if !sigma.is_finite() {
            return Err(Error::invalid("abscissa sigma must be finite"));
        }
        Ok(DirichletLogSeries {
            terms,
            kappa,
            sigma,
        })
    }

    pub fn terms(&self) -> &[(Complex64, f64)] {
        &self.terms
    }

    /// `sum_{n > N} |c_n| (log q_n)^j q_n^{-x}` for every `N`, from the back.
    fn tails(&self, j: usize, x: f64) -> Vec<f64> {
        let mut tails = vec![0.0; self.terms.len() + 1];
        for (n, (c, q)) in self.terms.iter().enumerate().rev() {
            tails[n] = tails[n + 1] + c.norm() * q.ln().powi(j as i32) * q.powf(-x);
        }
        tails
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DirichletJson {
    terms: Vec<[f64; 3]>,
    kappa: f64,
    sigma: f64,
}

impl TryFrom<DirichletJson> for DirichletLogSeries {
    type Error = Error;

    fn try_from(json: DirichletJson) -> Result<Self> {
        let terms = json
            .terms
            .iter()
            .map(|&[re, im, q]| (Complex64::new(re, im), q))
            .collect();
        DirichletLogSeries::new(terms, json.kappa, json.sigma)
    }
}

impl From<DirichletLogSeries> for DirichletJson {
    fn from(d: DirichletLogSeries) -> Self {
        DirichletJson {
            terms: d.terms.iter().map(|(c, q)| [c.re, c.im, *q]).collect(),
            kappa: d.kappa,
            sigma: d.sigma,
        }
    }
}

/// The analytic content of a model.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModelKind {
    Dirichlet(DirichletLogSeries),
    /// `f(z) = 1 / Gamma(z)`.
    ReciprocalGamma,
    /// `f(z) = 1 - a^{-z}`, `a > 1`.
    DirichletPolynomial {
        a: f64,
    },
    /// `f(z) = sin(pi z) / pi`.
    SineQuotient,
}

/// A function model with an optional list of its zeros and poles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionModel {
    pub kind: ModelKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeros: Option<ZeroSequence>,
}

impl FunctionModel {
    pub fn dirichlet(series: DirichletLogSeries) -> Self {
        FunctionModel {
            kind: ModelKind::Dirichlet(series),
            zeros: None,
        }
    }

    /// `1 / Gamma`, with its zeros at the non-positive integers attached.
    pub fn reciprocal_gamma() -> Self {
        FunctionModel {
            kind: ModelKind::ReciprocalGamma,
            zeros: Some(ZeroSequence::progression(Complex64::new(0.0, 0.0))),
        }
    }

    /// `1 - a^{-z}`, with its zeros `2 pi i k / log a` attached.
    pub fn dirichlet_polynomial(a: f64) -> Result<Self> {
        if !(a > 1.0) || !a.is_finite() {
            return Err(Error::invalid("dirichlet-polynomial requires a > 1"));
        }
        let spacing = 2.0 * std::f64::consts::PI / a.ln();
        Ok(FunctionModel {
            kind: ModelKind::DirichletPolynomial { a },
            zeros: Some(ZeroSequence::lattice(Complex64::new(0.0, 0.0), spacing)),
        })
    }

    pub fn sine_quotient() -> Self {
        FunctionModel {
            kind: ModelKind::SineQuotient,
            zeros: None,
        }
    }

    /// Attaches the known zeros of the built-in models when none are given.
    pub fn with_default_zeros(self) -> Result<Self> {
        if self.zeros.is_some() {
            return Ok(self);
        }
        match self.kind {
            ModelKind::ReciprocalGamma => Ok(FunctionModel::reciprocal_gamma()),
            ModelKind::DirichletPolynomial { a } => FunctionModel::dirichlet_polynomial(a),
            _ => Ok(self),
        }
    }

    pub fn with_zeros(mut self, zeros: ZeroSequence) -> Self {
        self.zeros = Some(zeros);
        self
    }

    /// Order of growth of `f`.
    pub fn kappa(&self) -> f64 {
        match &self.kind {
            ModelKind::Dirichlet(d) => d.kappa,
            _ => 1.0,
        }
    }

    /// Abscissa right of which `log f` is given by its Dirichlet series. The
    /// sine quotient has zeros on both sides and no such half-plane.
    pub fn sigma(&self) -> f64 {
        match &self.kind {
            ModelKind::Dirichlet(d) => d.sigma,
            ModelKind::ReciprocalGamma | ModelKind::DirichletPolynomial { .. } => 0.0,
            ModelKind::SineQuotient => f64::INFINITY,
        }
    }

    /// Whether `f` is of zeta type, so that the integral representation applies.
    pub fn is_zeta_type(&self) -> bool {
        self.sigma().is_finite()
    }

    /// `Re z > sigma`, otherwise a convergence-domain error.
    pub fn check_half_plane(&self, z: Complex64) -> Result<()> {
        let sigma = self.sigma();
        if z.re > sigma {
            Ok(())
        } else {
            Err(Error::ConvergenceDomain {
                what: "log f",
                at: z,
                requirement: format!("Re z > {sigma}"),
            })
        }
    }

    /// Admissibility of `z`: the attached zero list if present, otherwise the
    /// half-plane `Re z > sigma` (zeros and poles of zeta-type `f` lie left of it).
    pub fn check_admissible(&self, z: Complex64) -> Result<()> {
        match &self.zeros {
            Some(zeros) => zeros.check_admissible(z),
            None => self.check_half_plane(z),
        }
    }

    fn check_domain(&self, z: Complex64) -> Result<()> {
        match &self.kind {
            ModelKind::Dirichlet(_) | ModelKind::DirichletPolynomial { .. } => {
                self.check_half_plane(z)
            }
            ModelKind::ReciprocalGamma => {
                if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 {
                    Err(Error::Pole {
                        function: "log(1/Gamma)",
                        at: z,
                    })
                } else {
                    Ok(())
                }
            }
            ModelKind::SineQuotient => {
                if z.im == 0.0 && z.re.fract() == 0.0 {
                    Err(Error::Pole {
                        function: "log(sin(pi z)/pi)",
                        at: z,
                    })
                } else {
                    Ok(())
                }
            }
        }
    }
}

/// Eulerian numbers `A(k, i)`, `i < k`, as floats.
fn eulerian_row(k: usize) -> Vec<f64> {
    let mut row = vec![1.0];
    for n in 2..=k {
        let mut next = vec![0.0; n];
        for (i, slot) in next.iter_mut().enumerate() {
            let left = if i >= 1 {
                row[i - 1] * (n - i) as f64
            } else {
                0.0
            };
            let right = if i < row.len() {
                row[i] * (i + 1) as f64
            } else {
                0.0
            };
            *slot = left + right;
        }
        row = next;
    }
    row
}

/// `Li_{-k}(u) = u A_k(u) / (1 - u)^{k+1}`.
fn polylog_neg(k: usize, u: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    if k == 0 {
        return u / (one - u);
    }
    let coeffs = eulerian_row(k);
    let poly = coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &a| acc * u + a);
    u * poly / (one - u).powi(k as i32 + 1)
}

fn factorial_f64(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// `log f(z)`, truncated so the neglected tail is below the context target.
pub fn log_f(model: &FunctionModel, z: Complex64, ctx: &EvalContext) -> Result<Complex64> {
    model.check_domain(z)?;
    match &model.kind {
        ModelKind::Dirichlet(d) => {
            let n = dirichlet_depth(d, 0, z.re, tail_target(ctx))?;
            Ok(d.terms[..n]
                .iter()
                .map(|(c, q)| c * (-z * q.ln()).exp())
                .sum())
        }
        ModelKind::ReciprocalGamma => Ok(-log_gamma(z)?),
        ModelKind::DirichletPolynomial { a } => {
            let u = (-z * a.ln()).exp();
            Ok((Complex64::new(1.0, 0.0) - u).ln())
        }
        ModelKind::SineQuotient => {
            let pi = std::f64::consts::PI;
            Ok(((z * pi).sin() / pi).ln())
        }
    }
}

/// `f(z)` itself.
pub fn f_value(model: &FunctionModel, z: Complex64, ctx: &EvalContext) -> Result<Complex64> {
    model.check_domain(z)?;
    match &model.kind {
        ModelKind::DirichletPolynomial { a } => Ok(Complex64::new(1.0, 0.0) - (-z * a.ln()).exp()),
        ModelKind::SineQuotient => {
            let pi = std::f64::consts::PI;
            Ok((z * pi).sin() / pi)
        }
        _ => Ok(log_f(model, z, ctx)?.exp()),
    }
}

/// `(log f)^{(j)}(z)` for `1 <= j <= MAX_DERIVATIVE_ORDER`.
pub fn log_f_derivative(
    model: &FunctionModel,
    j: usize,
    z: Complex64,
    ctx: &EvalContext,
) -> Result<Complex64> {
    if j == 0 || j > MAX_DERIVATIVE_ORDER {
        return Err(Error::IndexRange(format!(
            "derivative order {j} outside 1..={MAX_DERIVATIVE_ORDER}"
        )));
    }
    log_f_derivative_internal(model, j, z, ctx)
}

/// `f'/f` at `z`.
pub fn log_derivative(model: &FunctionModel, z: Complex64, ctx: &EvalContext) -> Result<Complex64> {
    log_f_derivative_internal(model, 1, z, ctx)
}

pub(crate) fn log_f_derivative_internal(
    model: &FunctionModel,
    j: usize,
    z: Complex64,
    ctx: &EvalContext,
) -> Result<Complex64> {
    if j == 0 {
        return log_f(model, z, ctx);
    }
    if j > MAX_INTERNAL_ORDER {
        return Err(Error::IndexRange(format!(
            "derivative order {j} above internal limit {MAX_INTERNAL_ORDER}"
        )));
    }
    model.check_domain(z)?;
    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
    match &model.kind {
        ModelKind::Dirichlet(d) => {
            let n = dirichlet_depth(d, j, z.re, tail_target(ctx))?;
            Ok(d.terms[..n]
                .iter()
                .map(|(c, q)| {
                    let l = q.ln();
                    c * (-l).powi(j as i32) * (-z * l).exp()
                })
                .sum())
        }
        ModelKind::DirichletPolynomial { a } => {
            let l = a.ln();
            let u = (-z * l).exp();
            Ok(-polylog_neg(j - 1, u) * (-l).powi(j as i32))
        }
        ModelKind::ReciprocalGamma => {
            if j == 1 {
                Ok(-digamma(z)?)
            } else {
                Ok(
                    -hurwitz_zeta(Complex64::new(j as f64, 0.0), z)?
                        * (sign * factorial_f64(j - 1)),
                )
            }
        }
        ModelKind::SineQuotient => {
            let pi = std::f64::consts::PI;
            if j == 1 {
                let w = z * pi;
                Ok(w.cos() / w.sin() * pi)
            } else {
                let s = Complex64::new(j as f64, 0.0);
                let one = Complex64::new(1.0, 0.0);
                let sum = hurwitz_zeta(s, z)? + hurwitz_zeta(s, one - z)? * sign;
                Ok(sum * (-sign * factorial_f64(j - 1)))
            }
        }
    }
}

fn tail_target(ctx: &EvalContext) -> f64 {
    ctx.target_rel_error * 1e-3
}

fn dirichlet_depth(d: &DirichletLogSeries, j: usize, x: f64, target: f64) -> Result<usize> {
    if x <= d.sigma {
        return Err(Error::ConvergenceDomain {
            what: "Dirichlet series",
            at: Complex64::new(x, 0.0),
            requirement: format!("Re z > {}", d.sigma),
        });
    }
    let tails = d.tails(j, x);
    let n = tails
        .iter()
        .position(|&t| t <= target)
        .unwrap_or(d.terms.len());
    Ok(n.max(1).min(d.terms.len()))
}

/// Smallest number of Dirichlet terms whose neglected tail at `Re z = x` is
/// below `target`. Builtins use the geometric bound of their series; gamma
/// and sine models are evaluated in closed form and report depth 1.
pub fn truncation_depth(model: &FunctionModel, x: f64, target: f64) -> Result<usize> {
    if !(target > 0.0) {
        return Err(Error::invalid("truncation target must be positive"));
    }
    match &model.kind {
        ModelKind::Dirichlet(d) => dirichlet_depth(d, 0, x, target),
        ModelKind::DirichletPolynomial { a } => {
            model.check_half_plane(Complex64::new(x, 0.0))?;
            // |sum_{n>N} a^{-nx}/n| <= a^{-(N+1)x} / (1 - a^{-x})
            let r = a.powf(-x);
            let bound = |n: usize| r.powi(n as i32 + 1) / (1.0 - r);
            let mut n = 1;
            while bound(n) > target {
                n += 1;
            }
            Ok(n)
        }
        ModelKind::ReciprocalGamma | ModelKind::SineQuotient => Ok(1),
    }
}
