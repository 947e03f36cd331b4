//! Classical and multiple zeta/gamma functions and exact combinatorics.

pub mod combinatorics;
pub mod gamma;
pub mod hurwitz;
pub mod multiple;

pub use combinatorics::{binomial, StirlingTable};
pub use gamma::{digamma, gamma, log_gamma, rgamma};
pub use hurwitz::{hurwitz_zeta, hurwitz_zeta_ds, hurwitz_zeta_ds0};
pub use multiple::{log_multiple_gamma, multiple_gamma, multiple_hurwitz_zeta, p_poly};
