//! Superzeta functions over zeros and poles of entire and meromorphic
//! functions, their continuation in `s`, and zeta-regularized determinants.

pub mod calculus;
pub mod cli;
pub mod context;
pub mod divisor;
pub mod error;
pub mod quad;
pub mod result;
pub mod selberg;
pub mod special;
pub mod superzeta;
pub mod voros;
pub mod zeta_type;

pub use context::EvalContext;
pub use error::{Error, Result};
pub use result::{BranchFlags, SuperzetaResult};
