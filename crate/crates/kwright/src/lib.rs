//! Numerics for the generalized K-Wright function and the
//! Marichev-Saigo-Maeda (MSM) family of fractional integral and differential
//! operators.
//!
//! The crate has two halves that check each other:
//!
//! * closed-form machinery — k-gamma primitives ([`gamma`]), Gauss and Appell
//!   kernels ([`hypergeometric`]), the K-Wright series ([`wright`]) and the
//!   operator parameter maps that send a series of order (p, q) to one of
//!   order (p+3, q+3) ([`operator`]);
//! * an independent quadrature oracle ([`oracle`]) that evaluates the
//!   operators from their defining kernel integrals and is used to validate
//!   every closed-form image.
//!
//! [`verification`] bundles seeded random parameter draws and the
//! closed-form-vs-oracle comparison runs used by the test suite and the CLI.

pub mod error;
pub mod gamma;
pub mod hypergeometric;
pub mod operator;
pub mod oracle;
pub mod quad;
pub mod verification;
pub mod wright;

pub use error::{Error, Result};
pub use num_complex::Complex64;
