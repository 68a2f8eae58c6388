//! Einstein-Hilbert functionals on Sasaki cones over polarized toric
//! manifolds: equivariant index-character pole coefficients, vertical
//! (CR-Yamabe) minimization, toric test configurations with their
//! Donaldson-Futaki invariants, and Reeb-cone optimization.
//!
//! The algebraic kernel is exact: rational polytopes, cones, index
//! coefficients and Donaldson-Futaki invariants are computed in
//! arbitrary-precision rational arithmetic. Floating point appears only
//! in quadrature, finite differences and the optimizers.

pub mod coneindex;
pub mod error;
pub mod rat;
pub mod oracle;
pub mod ratgeom;
pub mod torickahler;

pub use error::{Error, Result};
