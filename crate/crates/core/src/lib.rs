//! Numerical laboratory for few-photon two-mode interferometry.
//!
//! Exact sparse Fock-state algebra, linear-optical mode transforms, first-
//! and second-order coherence metrics, and named scenarios in which quantum
//! photon statistics suppress single-detector interference while two-photon
//! coincidences keep perfect fringe contrast.

pub mod coherence;
pub mod error;
pub mod fock;
pub mod optics;
pub mod report;
pub mod scenarios;

pub use error::{CoreError, Result};
pub use fock::{FockState, OccupationVector, OperatorPolynomial, PolyTerm};
pub use optics::{CircuitSpec, CoherentField, ModeTransform};
