use num_complex::Complex64;
use serde::Serialize;

/// Truncation depths and quadrature splits used to produce a value.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct BranchFlags {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series_terms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dirichlet_terms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub taylor_terms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split_point: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrature_levels: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quadrature_evaluations: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub asymptotic_terms: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k0: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_forms: Option<usize>,
}

fn max_opt<T: PartialOrd + Copy>(a: Option<T>, b: Option<T>) -> Option<T> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if y > x { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

fn sum_opt(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x + y),
        (x, None) => x,
        (None, y) => y,
    }
}

impl BranchFlags {
    /// Combine the flags of two contributions: counts add, depths take the max.
    pub fn merge(&self, other: &BranchFlags) -> BranchFlags {
        BranchFlags {
            series_terms: max_opt(self.series_terms, other.series_terms),
            dirichlet_terms: max_opt(self.dirichlet_terms, other.dirichlet_terms),
            taylor_terms: max_opt(self.taylor_terms, other.taylor_terms),
            split_point: self.split_point.or(other.split_point),
            quadrature_levels: max_opt(self.quadrature_levels, other.quadrature_levels),
            quadrature_evaluations: sum_opt(
                self.quadrature_evaluations,
                other.quadrature_evaluations,
            ),
            asymptotic_terms: max_opt(self.asymptotic_terms, other.asymptotic_terms),
            k0: self.k0.or(other.k0),
            y_max: max_opt(self.y_max, other.y_max),
            closed_forms: sum_opt(self.closed_forms, other.closed_forms),
        }
    }
}

/// A superzeta (or related) value with an honest absolute error estimate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuperzetaResult {
    pub value: Complex64,
    pub est_error: f64,
    pub branch_flags: BranchFlags,
}

impl SuperzetaResult {
    pub fn new(value: Complex64, est_error: f64) -> Self {
        SuperzetaResult {
            value,
            est_error,
            branch_flags: BranchFlags::default(),
        }
    }

    /// A value from a closed form, carrying only rounding error.
    pub fn closed_form(value: Complex64) -> Self {
        let mut r = SuperzetaResult::new(value, 4.0 * f64::EPSILON * value.norm());
        r.branch_flags.closed_forms = Some(1);
        r
    }

    pub fn zero() -> Self {
        SuperzetaResult::new(Complex64::new(0.0, 0.0), 0.0)
    }

    pub fn with_flags(mut self, flags: BranchFlags) -> Self {
        self.branch_flags = flags;
        self
    }

    pub fn plus(&self, other: &SuperzetaResult) -> SuperzetaResult {
        SuperzetaResult {
            value: self.value + other.value,
            est_error: self.est_error + other.est_error,
            branch_flags: self.branch_flags.merge(&other.branch_flags),
        }
    }

    pub fn scaled(&self, factor: Complex64) -> SuperzetaResult {
        SuperzetaResult {
            value: self.value * factor,
            est_error: self.est_error * factor.norm(),
            branch_flags: self.branch_flags.clone(),
        }
    }

    /// Relative error estimate, guarded against tiny values.
    pub fn rel_error(&self) -> f64 {
        self.est_error / self.value.norm().max(1.0)
    }
}
