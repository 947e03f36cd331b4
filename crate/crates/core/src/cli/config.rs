//! Job configuration files (JSON or TOML) and their evaluation grids.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use crate::context::EvalContext;

/// Failure to read or decode an input file.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn read_value(path: &Path) -> Result<Value, ParseError> {
    let text = fs::read_to_string(path)
        .map_err(|e| ParseError(format!("cannot read {}: {e}", path.display())))?;
    let is_toml = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("toml"));
    if is_toml {
        toml::from_str::<Value>(&text)
            .map_err(|e| ParseError(format!("{}: {}", path.display(), e.message())))
    } else {
        serde_json::from_str(&text).map_err(|e| ParseError(format!("{}: {e}", path.display())))
    }
}

/// How `eval-superzeta` evaluates the sum.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Continued Mellin representation for zeta-type models, direct sum otherwise.
    #[default]
    Auto,
    Continued,
    Integral,
    Direct,
    /// Closed forms over a labelled divisor.
    Divisor,
}

/// What the Selberg subcommands tabulate.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quantity {
    #[default]
    Superzeta,
    /// Regularized product right-hand side at each `z` (`s` ignored).
    Product,
    /// Residue at each integer `s` from the closed formula.
    Residue,
}

/// Evaluation points, either listed or as the product of an `s` list and a
/// `z` list (`s` varies slowest).
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Grid {
    Points { points: Vec<[f64; 4]> },
    Product { s: Vec<[f64; 2]>, z: Vec<[f64; 2]> },
}

impl Grid {
    pub fn pairs(&self) -> Vec<(Complex64, Complex64)> {
        match self {
            Grid::Points { points } => points
                .iter()
                .map(|p| (Complex64::new(p[0], p[1]), Complex64::new(p[2], p[3])))
                .collect(),
            Grid::Product { s, z } => s
                .iter()
                .flat_map(|a| {
                    z.iter()
                        .map(move |b| (Complex64::new(a[0], a[1]), Complex64::new(b[0], b[1])))
                })
                .collect(),
        }
    }
}

/// Raw job file. Object-valued sections may instead be a path (relative to
/// the job file) of a JSON or TOML file holding the section.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawJob {
    model: Option<Value>,
    divisor: Option<Value>,
    expansion: Option<Value>,
    hadamard: Option<Value>,
    spec: Option<Value>,
    kleinian: Option<Value>,
    grid: Option<Value>,
    context: Option<Value>,
    #[serde(default)]
    method: Method,
    #[serde(default)]
    quantity: Quantity,
    k0: Option<usize>,
}

#[derive(Debug, Clone, Default)]
pub struct JobConfig {
    base: PathBuf,
    raw: RawJob,
}

impl JobConfig {
    pub fn load(path: &Path) -> Result<Self, ParseError> {
        let value = read_value(path)?;
        let raw: RawJob = serde_json::from_value(value)
            .map_err(|e| ParseError(format!("{}: {e}", path.display())))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok(JobConfig { base, raw })
    }

    pub fn method(&self) -> Method {
        self.raw.method
    }

    pub fn quantity(&self) -> Quantity {
        self.raw.quantity
    }

    pub fn k0(&self) -> Option<usize> {
        self.raw.k0
    }

    fn section<T: DeserializeOwned>(
        &self,
        name: &str,
        value: &Option<Value>,
    ) -> Result<Option<T>, ParseError> {
        let value = match value {
            None => return Ok(None),
            Some(Value::String(rel)) => read_value(&self.base.join(rel))?,
            Some(v) => v.clone(),
        };
        serde_json::from_value(value)
            .map(Some)
            .map_err(|e| ParseError(format!("section `{name}`: {e}")))
    }

    fn required<T: DeserializeOwned>(
        &self,
        name: &str,
        value: &Option<Value>,
    ) -> Result<T, ParseError> {
        self.section(name, value)?
            .ok_or_else(|| ParseError(format!("missing section `{name}`")))
    }

    pub fn model<T: DeserializeOwned>(&self) -> Result<T, ParseError> {
        self.required("model", &self.raw.model)
    }

    pub fn divisor<T: DeserializeOwned>(&self) -> Result<T, ParseError> {
        self.required("divisor", &self.raw.divisor)
    }

    pub fn expansion<T: DeserializeOwned>(&self) -> Result<T, ParseError> {
        self.required("expansion", &self.raw.expansion)
    }

    pub fn hadamard<T: DeserializeOwned>(&self) -> Result<T, ParseError> {
        self.required("hadamard", &self.raw.hadamard)
    }

    pub fn spec<T: DeserializeOwned>(&self) -> Result<T, ParseError> {
        self.required("spec", &self.raw.spec)
    }

    pub fn kleinian<T: DeserializeOwned>(&self) -> Result<T, ParseError> {
        self.required("kleinian", &self.raw.kleinian)
    }

    pub fn grid(&self) -> Result<Grid, ParseError> {
        let grid: Grid = self.required("grid", &self.raw.grid)?;
        if grid.pairs().is_empty() {
            return Err(ParseError("grid has no points".into()));
        }
        Ok(grid)
    }

    pub fn context(&self) -> Result<EvalContext, ParseError> {
        Ok(self
            .section::<EvalContext>("context", &self.raw.context)?
            .unwrap_or_default())
    }
}
