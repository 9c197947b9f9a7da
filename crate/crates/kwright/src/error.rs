//! Error types shared across the crate.

use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the special-function evaluators, operator maps and
/// quadrature routines.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// A gamma-type function was requested at (or within tolerance of) a pole.
    #[error("gamma pole at z = {z} ({context})")]
    Pole { z: Complex64, context: String },

    /// An intermediate or final value left the representable double range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// The requested point lies outside the region an evaluator serves.
    #[error("domain: {0}")]
    Domain(String),

    /// A series or quadrature failed to meet the tolerance within its budget.
    #[error("no convergence after {count} {unit}: {context}")]
    NonConvergence {
        count: usize,
        unit: &'static str,
        context: String,
    },

    /// A stated hypothesis of an operator rule is violated; the message names
    /// the inequality.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The parameter bundle falls outside the convergence regime required by
    /// a transform rule.
    #[error("series not convergent: {0}")]
    Convergence(String),

    /// The finite-difference stencil reached its step floor without meeting
    /// the tolerance.
    #[error("step collapse: finite-difference stencil stalled at h = {h:.3e} (est = {est:.3e})")]
    StepCollapse { h: f64, est: f64 },

    /// A differential operator needed an exact derivative the integrand does
    /// not provide.
    #[error("integrand carries no exact derivative handle")]
    MissingDerivative,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn pole(z: Complex64, context: impl Into<String>) -> Self {
        Error::Pole {
            z,
            context: context.into(),
        }
    }
}
