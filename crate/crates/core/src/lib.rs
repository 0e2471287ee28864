//! Goodness checks for nilpotent orbits of the classical Lie algebras.
//!
//! For a nilpotent `e` with sl2-triple `(e, h, f)`, the fundamental invariants
//! `q_1..q_l` of `g` are restricted to the Slodowy slice `e + g^f`. Their
//! lowest-degree components are invariants of the centralizer `g^e`. The
//! orbit is good exactly when some homogeneous generating sequence has
//! algebraically independent initial components, which happens exactly when
//! their degrees add up to `(dim g^e + l)/2`.

pub mod budget;
pub mod cache;
pub mod cli;
pub mod criterion;
pub mod error;
pub mod invariants;
pub mod lie;
pub mod linalg;
pub mod multipoly;
pub mod nilpotent;
pub mod pipeline;
pub mod report;
pub mod slodowy;

pub use error::{Error, Result};
pub use pipeline::{check_orbit, CheckOptions, GoodnessReport, Verdict};
