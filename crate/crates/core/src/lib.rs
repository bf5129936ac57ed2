//! Minimal Saito numbers of plane curve equisingularity classes.
//!
//! The crate is organised bottom-up:
//!
//! * [`algebra`]: exact rationals, truncated series, bivariate polynomials
//!   and 1-forms with pullbacks along Puiseux parametrizations.
//! * [`blowup`]: blow-up processes, dual graphs and the curve families.
//! * [`saito_min`]: the colored-graph multiplicity, the exhaustive
//!   coloration search for the minimal Saito number, closed forms and
//!   family maxima.
//! * [`cs_solver`]: realizability of numbered colored graphs and rational
//!   Camacho-Sad index certificates.
//! * [`semimodule`]: value semigroups, the Lambda semimodule of a branch,
//!   t-values, divisorial valuations, an explicit curve family realizing
//!   every Saito number, basis checks and a dicriticality test.
//! * [`io`] and [`cli`]: JSON schemas and the command-line front end.

pub mod algebra;
pub mod blowup;
pub mod cli;
pub mod cs_solver;
pub mod error;
pub mod io;
pub mod saito_min;
pub mod semimodule;
pub mod verify;

pub use error::{Error, Result};
