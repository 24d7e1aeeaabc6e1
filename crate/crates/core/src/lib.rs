//! Exact computation of sl(N) link homology from link diagrams.
//!
//! The pipeline: a link diagram resolves into a cube of planar trivalent
//! graphs; each graph gets a free module built from decorated foams via the
//! evaluation pairing; edge foams assemble the bigraded chain complex whose
//! homology is the invariant. On top of that sit basepoint operators, the
//! reduced complex, and a differential operator defined when the coefficient
//! characteristic divides N.

pub mod error;
pub mod foam;
pub mod rings;
pub mod rweval;
pub mod statespace;
pub mod sympoly;

pub use error::{Error, Result};
