//! Co-rotating and travelling doubly connected patch solutions of the
//! generalized surface quasi-geostrophic family `0 <= α < 2`.
//!
//! Layers, bottom up: exact special functions, periodic quadrature, the
//! contour-dynamics residual, the `ε = 0` linear theory, the Newton solver,
//! independent oracles and the command-line front end.

pub mod error;
pub mod specialfn;
pub mod quadrature;
pub mod contour;
pub mod spectral;
pub mod solver;
pub mod oracle;
pub mod cli;

pub use contour::{FourierPair, Mode, PatchConfig};
pub use error::{Error, Result};
pub use solver::{newton_solve, Solution, SolveOptions};
