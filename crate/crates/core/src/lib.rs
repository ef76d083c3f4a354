//! Cauchy principal value integrals
//!
//! ```text
//!   PV ∫_a^b f(x) / (x − τ) dx,   a < τ < b
//! ```
//!
//! computed by splitting the integral into a logarithmic term plus two
//! nonsingular integrals, each handled by an adaptive Gauss–Kronrod
//! (G7/K15) integrator. Every result carries an error budget that accounts
//! for quadrature error, roundoff in the difference quotients, and the
//! sensitivity of the integral to rounding of τ itself.
//!
//! The evaluation methods are interchangeable strategies registered by name
//! in a [`StrategyRegistry`]; `open` is the production method.

// `!(x > 0.0)` is used on purpose so that NaN fails validation, and rule and
// reference constants keep all the digits they were published with.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod bench;
pub mod cpv;
mod error;
pub mod error_model;
pub mod expr;
mod integrand;
pub mod observation;
pub mod quad;

pub use cpv::strategy::{builtin_registry, CpvStrategy, StrategyRegistry};
pub use cpv::{cpv_general, cpv_standard, CpvProblem, CpvResult};
pub use error::CpvError;
pub use error_model::{ErrorBudget, EPS};
pub use integrand::Integrand;
pub use quad::{adaptive_integrate, AdaptiveResult, Limits};
