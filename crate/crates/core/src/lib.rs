//! Mixed-dimension (qubit ⊗ qudit) state-vector simulation of generalized
//! Toffoli networks that use a single qudit ancilla as a catalyst.
//!
//! Modules:
//!
//! - [`hilbert`]: mixed-radix layouts, state vectors, dense operators, the
//!   generalized Pauli / Fourier / phase gates and (controlled) gate
//!   application.
//! - [`networks`]: builders, runtimes and oracle-based verifiers for the
//!   coherent (2n−1 two-body gates) and measurement-based (n two-body gates)
//!   `C^{n-1}(U)` networks.
//! - [`circuit_text`]: the line-oriented circuit file format.
//! - [`physics`]: spin and Fock operators, the `a†a S_z` interaction, the
//!   generalized Jaynes-Cummings Hamiltonian and its dispersive expansion,
//!   and the collective-spin construction from qubits.
//! - [`sweep`]: CSV output for physics parameter sweeps.

pub mod circuit_text;
mod error;
pub mod hilbert;
pub mod networks;
pub mod physics;
pub mod sweep;

pub use error::{Error, Result};

/// Tolerance for single-operator construction checks (unitarity, hermiticity).
pub const CONSTRUCTION_TOL: f64 = 1e-12;
/// Tolerance for end-to-end circuit comparisons.
pub const CIRCUIT_TOL: f64 = 1e-10;
/// Outcomes with probability below this are treated as impossible.
pub const ZERO_PROBABILITY: f64 = 1e-14;
