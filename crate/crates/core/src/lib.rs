//! Exact decisions for sampling bandlimited functions on unions of shifted
//! lattices.
//!
//! Given a band `E` (a finite union of half-open rational boxes) and sample
//! sets `{A_j z + β_j}`, the [`criteria`] module decides whether the samples
//! are tight on `E` and whether two sampling transforms have orthogonal
//! ranges, returning a certificate or a concrete, re-checkable witness. The
//! [`oracle`] module checks those verdicts independently by sampling
//! functions with piecewise-constant spectra that can be evaluated in closed
//! form.

pub mod criteria;
pub mod cyclotomic;
pub mod error;
pub mod geometry;
pub mod lattice;
pub mod lp;
pub mod oracle;
pub mod parallel;
pub mod rational;

pub use error::{Error, Result};
