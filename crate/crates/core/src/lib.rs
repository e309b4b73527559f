//! SU(2) representation tools for knot groups: trace-free witnesses for
//! Montesinos knots, trace-free censuses of two-bridge knots, exact L-space
//! certificates for splices of torus knot exteriors, and a numerical
//! representation solver for finite presentations.

pub mod algebra;
pub mod census;
pub mod cli;
pub mod construct;
pub mod error;
pub mod groups;
pub mod slopes;
pub mod solver;

pub use error::{Error, Result};
