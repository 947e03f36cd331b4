//! Signed zero/pole configurations, admissibility, labelled splittings and
//! closed-form superzetas for arithmetic-progression families.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::context::EvalContext;
use crate::error::{Error, Result};
use crate::quad::{exp_sinh, DeRule};
use crate::result::{BranchFlags, SuperzetaResult};
use crate::special::hurwitz::cpow_neg;
use crate::special::{hurwitz_zeta, multiple_hurwitz_zeta};

/// A single zero (`order > 0`) or pole (`order < 0`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivisorPoint {
    pub location: Complex64,
    pub order: i64,
}

impl DivisorPoint {
    pub fn new(location: Complex64, order: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::invalid("divisor point with order 0"));
        }
        Ok(DivisorPoint { location, order })
    }
}

/// Weight attached to the `l`-th point of a progression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightKind {
    /// Every point carries the progression order.
    Constant,
    /// Point `l` carries `C(m + l - 1, l)` times the progression order.
    Multiple(usize),
}

impl WeightKind {
    /// Logarithm of the weight of point `l`, continued to real `t > -1`.
    fn log_weight(&self, t: f64) -> f64 {
        match *self {
            WeightKind::Constant => 0.0,
            WeightKind::Multiple(m) => (1..m).map(|i| ((t + i as f64) / i as f64).ln()).sum(),
        }
    }

    /// Abscissa of absolute convergence of the weighted sum.
    fn abscissa(&self) -> f64 {
        match *self {
            WeightKind::Constant => 1.0,
            WeightKind::Multiple(m) => m as f64,
        }
    }
}

/// A family of zeros or poles.
#[derive(Debug, Clone, PartialEq)]
pub enum DivisorFamily {
    Finite(Vec<DivisorPoint>),
    /// Points `start - l`, `l = 0, 1, 2, ...`.
    Progression {
        start: Complex64,
        order: i64,
        weight: WeightKind,
    },
    /// Points `base + i k spacing`, `k` ranging over all integers.
    Lattice {
        base: Complex64,
        spacing: f64,
        order: i64,
    },
}

fn on_cut(w: Complex64) -> bool {
    w.im == 0.0 && w.re <= 0.0
}

impl DivisorFamily {
    /// Abscissa beyond which the superzeta of this family converges absolutely.
    pub fn convergence_abscissa(&self) -> f64 {
        match self {
            DivisorFamily::Finite(_) => f64::NEG_INFINITY,
            DivisorFamily::Progression { weight, .. } => weight.abscissa(),
            DivisorFamily::Lattice { .. } => 1.0,
        }
    }

    /// First member `rho` of the family with `z - rho` on `(-inf, 0]`.
    pub fn offending_point(&self, z: Complex64) -> Option<Complex64> {
        match self {
            DivisorFamily::Finite(points) => points
                .iter()
                .map(|p| p.location)
                .find(|&rho| on_cut(z - rho)),
            DivisorFamily::Progression { start, .. } => on_cut(z - start).then_some(*start),
            DivisorFamily::Lattice { base, spacing, .. } => {
                let w = z - base;
                if w.re > 0.0 {
                    return None;
                }
                let k = (w.im / spacing).round();
                let rho = base + Complex64::new(0.0, k * spacing);
                on_cut(z - rho).then_some(rho)
            }
        }
    }

    pub fn check_admissible(&self, z: Complex64) -> Result<()> {
        match self.offending_point(z) {
            Some(point) => Err(Error::NotAdmissible { z, point }),
            None => Ok(()),
        }
    }

    fn is_empty(&self) -> bool {
        match self {
            DivisorFamily::Finite(points) => points.is_empty(),
            DivisorFamily::Progression { order, .. } | DivisorFamily::Lattice { order, .. } => {
                *order == 0
            }
        }
    }

    /// The same family with every order negated.
    pub fn negated(&self) -> DivisorFamily {
        match self.clone() {
            DivisorFamily::Finite(points) => DivisorFamily::Finite(
                points
                    .into_iter()
                    .map(|p| DivisorPoint {
                        location: p.location,
                        order: -p.order,
                    })
                    .collect(),
            ),
            DivisorFamily::Progression {
                start,
                order,
                weight,
            } => DivisorFamily::Progression {
                start,
                order: -order,
                weight,
            },
            DivisorFamily::Lattice {
                base,
                spacing,
                order,
            } => DivisorFamily::Lattice {
                base,
                spacing,
                order: -order,
            },
        }
    }

    /// `sum ord(rho) (z - rho)^{-s}` by explicit summation with a midpoint
    /// tail integral. Requires `Re s` beyond the convergence abscissa.
    pub fn direct_sum(
        &self,
        s: Complex64,
        z: Complex64,
        ctx: &EvalContext,
    ) -> Result<SuperzetaResult> {
        self.check_admissible(z)?;
        let abscissa = self.convergence_abscissa();
        if s.re <= abscissa {
            return Err(Error::ConvergenceDomain {
                what: "direct superzeta sum",
                at: s,
                requirement: format!("Re s > {abscissa}"),
            });
        }
        match self {
            DivisorFamily::Finite(points) => {
                let mut value = Complex64::new(0.0, 0.0);
                let mut magnitude = 0.0;
                for p in points {
                    let term = cpow_neg(z - p.location, s) * p.order as f64;
                    magnitude += term.norm();
                    value += term;
                }
                let mut r = SuperzetaResult::new(value, 4.0 * f64::EPSILON * magnitude);
                r.branch_flags.series_terms = Some(points.len());
                Ok(r)
            }
            DivisorFamily::Progression {
                start,
                order,
                weight,
            } => {
                let w0 = z - start;
                let n = ctx.series_truncation;
                let term = |t: f64| (weight.log_weight(t) - s * (w0 + t).ln()).exp();
                let (partial, magnitude) = accumulate(n, |l| term(l as f64));
                let rule = DeRule::from_context(ctx);
                let edge = n as f64 - 0.5;
                let tail = exp_sinh(|t| Ok(term(t)), edge, &rule)?;
                // midpoint rule on [N - 1/2, inf): error ~ |f'(N - 1/2)| / 24
                let slope = (term(edge + 0.5) - term(edge - 0.5)).norm();
                let err = slope / 24.0 + tail.error + rounding(magnitude, n);
                let flags = BranchFlags {
                    series_terms: Some(n),
                    quadrature_levels: Some(tail.levels),
                    quadrature_evaluations: Some(tail.evaluations),
                    ..BranchFlags::default()
                };
                let scale = *order as f64;
                Ok(
                    SuperzetaResult::new((partial + tail.value) * scale, err * scale.abs())
                        .with_flags(flags),
                )
            }
            DivisorFamily::Lattice {
                base,
                spacing,
                order,
            } => {
                let w0 = z - base;
                let h = *spacing;
                let n = ctx.series_truncation;
                let pair = |t: f64| {
                    let shift = Complex64::new(0.0, t * h);
                    cpow_neg(w0 - shift, s) + cpow_neg(w0 + shift, s)
                };
                let (partial, magnitude) = accumulate(n, |k| pair((k + 1) as f64));
                let centre = cpow_neg(w0, s);
                // closed-form antiderivative of the pair on [T, inf)
                let edge = n as f64 + 0.5;
                let one_minus = Complex64::new(1.0, 0.0) - s;
                let ih = Complex64::new(0.0, h);
                let up = w0 - Complex64::new(0.0, edge * h);
                let down = w0 + Complex64::new(0.0, edge * h);
                let tail =
                    (cpow_neg(up, -one_minus) - cpow_neg(down, -one_minus)) / (one_minus * ih);
                let slope = (pair(edge + 0.5) - pair(edge - 0.5)).norm();
                let err = slope / 24.0 + rounding(magnitude, n);
                let flags = BranchFlags {
                    series_terms: Some(2 * n + 1),
                    ..BranchFlags::default()
                };
                let scale = *order as f64;
                Ok(
                    SuperzetaResult::new((centre + partial + tail) * scale, err * scale.abs())
                        .with_flags(flags),
                )
            }
        }
    }

    /// Closed form where one exists; lattices fall back to the direct sum.
    pub fn superzeta(
        &self,
        s: Complex64,
        z: Complex64,
        ctx: &EvalContext,
    ) -> Result<SuperzetaResult> {
        self.check_admissible(z)?;
        match self {
            DivisorFamily::Finite(_) => self.direct_sum(s, z, ctx),
            DivisorFamily::Progression {
                start,
                order,
                weight,
            } => {
                let w = z - start;
                let value = match weight {
                    WeightKind::Constant => hurwitz_zeta(s, w)?,
                    WeightKind::Multiple(m) => multiple_hurwitz_zeta(*m, s, w)?,
                };
                Ok(SuperzetaResult::closed_form(value * *order as f64))
            }
            DivisorFamily::Lattice { .. } => {
                if s.re <= self.convergence_abscissa() {
                    return Err(Error::NoClosedForm(format!(
                        "lattice family superzeta at s = {s} (requires Re s > 1)"
                    )));
                }
                self.direct_sum(s, z, ctx)
            }
        }
    }
}

fn accumulate<F: Fn(usize) -> Complex64>(n: usize, term: F) -> (Complex64, f64) {
    let mut value = Complex64::new(0.0, 0.0);
    let mut magnitude = 0.0;
    for l in 0..n {
        let t = term(l);
        magnitude += t.norm();
        value += t;
    }
    (value, magnitude)
}

fn rounding(magnitude: f64, n: usize) -> f64 {
    magnitude * f64::EPSILON * (n.max(1) as f64).sqrt()
}

/// A list of divisor families: the zeros (and, with negative orders, poles)
/// entering a superzeta.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DivisorJson", into = "DivisorJson")]
pub struct ZeroSequence {
    pub families: Vec<DivisorFamily>,
}

impl ZeroSequence {
    pub fn new(families: Vec<DivisorFamily>) -> Self {
        ZeroSequence { families }
    }

    pub fn empty() -> Self {
        ZeroSequence::default()
    }

    /// Zeros `start, start - 1, ...` each of order one.
    pub fn progression(start: Complex64) -> Self {
        ZeroSequence::new(vec![DivisorFamily::Progression {
            start,
            order: 1,
            weight: WeightKind::Constant,
        }])
    }

    /// Zeros `base + i k spacing`, `k` in the integers, each of order one.
    pub fn lattice(base: Complex64, spacing: f64) -> Self {
        ZeroSequence::new(vec![DivisorFamily::Lattice {
            base,
            spacing,
            order: 1,
        }])
    }

    pub fn is_empty(&self) -> bool {
        self.families.iter().all(DivisorFamily::is_empty)
    }

    /// Largest convergence abscissa of the families (`-inf` if all are finite).
    pub fn convergence_abscissa(&self) -> f64 {
        self.families
            .iter()
            .map(DivisorFamily::convergence_abscissa)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn check_admissible(&self, z: Complex64) -> Result<()> {
        self.families.iter().try_for_each(|f| f.check_admissible(z))
    }

    pub fn admissible(&self, z: Complex64) -> bool {
        self.check_admissible(z).is_ok()
    }

    pub fn negated(&self) -> ZeroSequence {
        ZeroSequence::new(self.families.iter().map(DivisorFamily::negated).collect())
    }

    /// Concatenate two sequences, merging coincident finite points and
    /// identical progressions/lattices by adding orders.
    pub fn merge(&self, other: &ZeroSequence) -> ZeroSequence {
        let mut points: Vec<DivisorPoint> = Vec::new();
        let mut others: Vec<DivisorFamily> = Vec::new();
        for family in self.families.iter().chain(other.families.iter()) {
            match family {
                DivisorFamily::Finite(list) => {
                    for p in list {
                        match points.iter_mut().find(|q| q.location == p.location) {
                            Some(q) => q.order += p.order,
                            None => points.push(*p),
                        }
                    }
                }
                DivisorFamily::Progression {
                    start,
                    order,
                    weight,
                } => {
                    let found = others.iter_mut().find_map(|f| match f {
                        DivisorFamily::Progression {
                            start: s2,
                            order: o2,
                            weight: w2,
                        } if s2 == start && w2 == weight => Some(o2),
                        _ => None,
                    });
                    match found {
                        Some(o) => *o += order,
                        None => others.push(family.clone()),
                    }
                }
                DivisorFamily::Lattice {
                    base,
                    spacing,
                    order,
                } => {
                    let found = others.iter_mut().find_map(|f| match f {
                        DivisorFamily::Lattice {
                            base: b2,
                            spacing: h2,
                            order: o2,
                        } if b2 == base && h2 == spacing => Some(o2),
                        _ => None,
                    });
                    match found {
                        Some(o) => *o += order,
                        None => others.push(family.clone()),
                    }
                }
            }
        }
        points.retain(|p| p.order != 0);
        others.retain(|f| !f.is_empty());
        let mut families = Vec::with_capacity(others.len() + 1);
        if !points.is_empty() {
            families.push(DivisorFamily::Finite(points));
        }
        families.extend(others);
        ZeroSequence::new(families)
    }

    /// Direct summation over every family.
    pub fn direct_sum(
        &self,
        s: Complex64,
        z: Complex64,
        ctx: &EvalContext,
    ) -> Result<SuperzetaResult> {
        self.families
            .iter()
            .try_fold(SuperzetaResult::zero(), |acc, f| {
                Ok(acc.plus(&f.direct_sum(s, z, ctx)?))
            })
    }
}

/// Sum of the family superzetas, using closed forms for progressions.
pub fn divisor_superzeta(
    d: &ZeroSequence,
    s: Complex64,
    z: Complex64,
    ctx: &EvalContext,
) -> Result<SuperzetaResult> {
    d.check_admissible(z)?;
    d.families
        .iter()
        .try_fold(SuperzetaResult::zero(), |acc, f| {
            Ok(acc.plus(&f.superzeta(s, z, ctx)?))
        })
}

/// A divisor split into non-trivial zeros, trivial zeros and poles. Pole
/// orders are stored as positive multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabeledDivisor {
    #[serde(default)]
    pub nontrivial: ZeroSequence,
    #[serde(default)]
    pub trivial: ZeroSequence,
    #[serde(default)]
    pub poles: ZeroSequence,
}

impl LabeledDivisor {
    /// The signed divisor: zeros with their orders, poles negated.
    pub fn flatten(&self) -> ZeroSequence {
        let mut families = self.nontrivial.families.clone();
        families.extend(self.trivial.families.iter().cloned());
        families.extend(self.poles.negated().families);
        ZeroSequence::new(families)
    }

    /// `Z = Z^NT + Z^T - Z^P`, each piece by [`divisor_superzeta`].
    pub fn superzeta(
        &self,
        s: Complex64,
        z: Complex64,
        ctx: &EvalContext,
    ) -> Result<SuperzetaResult> {
        let nt = divisor_superzeta(&self.nontrivial, s, z, ctx)?;
        let t = divisor_superzeta(&self.trivial, s, z, ctx)?;
        let p = divisor_superzeta(&self.poles, s, z, ctx)?;
        Ok(nt.plus(&t).plus(&p.scaled(Complex64::new(-1.0, 0.0))))
    }
}

pub fn admissible(d: &LabeledDivisor, z: Complex64) -> bool {
    d.nontrivial.admissible(z) && d.trivial.admissible(z) && d.poles.admissible(z)
}

pub fn merge(d1: &LabeledDivisor, d2: &LabeledDivisor) -> LabeledDivisor {
    LabeledDivisor {
        nontrivial: d1.nontrivial.merge(&d2.nontrivial),
        trivial: d1.trivial.merge(&d2.trivial),
        poles: d1.poles.merge(&d2.poles),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProgressionJson {
    start: [f64; 2],
    order: i64,
    weight: WeightKind,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LatticeJson {
    base: [f64; 2],
    spacing: f64,
    order: i64,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DivisorJson {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    finite: Vec<[f64; 3]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    progressions: Vec<ProgressionJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    lattices: Vec<LatticeJson>,
}

impl TryFrom<DivisorJson> for ZeroSequence {
    type Error = Error;

    fn try_from(json: DivisorJson) -> Result<Self> {
        let mut families = Vec::new();
        if !json.finite.is_empty() {
            let points = json
                .finite
                .iter()
                .map(|&[re, im, order]| {
                    if order.fract() != 0.0 || !order.is_finite() {
                        return Err(Error::invalid(format!("non-integer divisor order {order}")));
                    }
                    DivisorPoint::new(Complex64::new(re, im), order as i64)
                })
                .collect::<Result<Vec<_>>>()?;
            families.push(DivisorFamily::Finite(points));
        }
        for p in json.progressions {
            if p.weight == WeightKind::Multiple(0) {
                return Err(Error::invalid("multiple(0) progression weight"));
            }
            families.push(DivisorFamily::Progression {
                start: Complex64::new(p.start[0], p.start[1]),
                order: p.order,
                weight: p.weight,
            });
        }
        for l in json.lattices {
            if !(l.spacing > 0.0) {
                return Err(Error::invalid("lattice spacing must be positive"));
            }
            families.push(DivisorFamily::Lattice {
                base: Complex64::new(l.base[0], l.base[1]),
                spacing: l.spacing,
                order: l.order,
            });
        }
        Ok(ZeroSequence::new(families))
    }
}

impl From<ZeroSequence> for DivisorJson {
    fn from(seq: ZeroSequence) -> Self {
        let mut json = DivisorJson::default();
        for family in seq.families {
            match family {
                DivisorFamily::Finite(points) => json.finite.extend(
                    points
                        .iter()
                        .map(|p| [p.location.re, p.location.im, p.order as f64]),
                ),
                DivisorFamily::Progression {
                    start,
                    order,
                    weight,
                } => json.progressions.push(ProgressionJson {
                    start: [start.re, start.im],
                    order,
                    weight,
                }),
                DivisorFamily::Lattice {
                    base,
                    spacing,
                    order,
                } => json.lattices.push(LatticeJson {
                    base: [base.re, base.im],
                    spacing,
                    order,
                }),
            }
        }
        json
    }
}
