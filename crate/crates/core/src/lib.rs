//! Spectral toolkit for almost Mathieu (Harper) type operators.
//!
//! The doubly infinite eigenproblem is traded for singly infinite monic
//! three-term recurrences; for rational frequencies the essential spectrum
//! is the band set `{t : |x(t)| <= 2}` of the period discriminant `x`.

pub mod error;
pub mod exactpoly;
pub mod genmathieu;
pub mod bands;
pub mod oracle;
pub mod qseries;
pub mod recurrence;

pub use error::{Error, Result};
