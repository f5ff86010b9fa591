//! Ancilla-catalysed `C^{n-1}(U)` networks on `n` qubits plus one dim-`n`
//! qudit ancilla (always the last subsystem).
//!
//! The ancilla is a counter: each control qubit in `|1⟩` shifts it by one,
//! so starting from `|k+1⟩` it reads `k` exactly when all `n−1` controls are
//! set, and `C(U)` fires.
//!
//! - Coherent network ([`build_network_a`]): the counter is unwound with
//!   `C(X_n^{-1})` gates. Repeating `C(X_n)` would leave the ancilla at
//!   `k+1+2Σ`, which is not factorized for `n > 2`.
//! - Measured network ([`build_network_b`]): the ancilla is read in the
//!   Fourier basis. Outcome `a` leaves the phase `ω^{a(k+1+Σ)}`; applying
//!   `P^{-a} = diag(1, ω^{-a})` to every control qubit removes the
//!   `Σ`-dependent part, leaving the global phase `ω^{a(k+1)}` (`ω^{2a}` for
//!   the default `k = 1`).

mod build;
mod circuit;
mod run;
mod verify;

pub use build::{build_network, build_network_a, build_network_b, build_network_b_zvariant, direct_controlled_gate};
pub use circuit::{AncillaPrep, Circuit, Correction, CorrectionSign, Instruction, NetworkKind, Program};
pub use run::{oracle_output, run_coherent, run_measured, OutcomeMode, RunRecord};
pub use verify::{verify, verify_program, verify_with, VerificationReport, VerifyOptions};

use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::hilbert::{pauli_x, pauli_z, random_unitary, Operator};
use crate::{Error, Result};

/// Target-gate selector: `x`, `z`, or `random:SEED` (seeded Haar unitary).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TargetGate {
    X,
    Z,
    Random(u64),
}

impl TargetGate {
    pub fn operator(self) -> Operator {
        match self {
            TargetGate::X => pauli_x(2).expect("dim 2"),
            TargetGate::Z => pauli_z(2).expect("dim 2"),
            TargetGate::Random(seed) => random_unitary(2, &mut ChaCha8Rng::seed_from_u64(seed)),
        }
    }
}

impl FromStr for TargetGate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" => Ok(TargetGate::X),
            "z" => Ok(TargetGate::Z),
            other => other
                .strip_prefix("random:")
                .and_then(|seed| seed.parse().ok())
                .map(TargetGate::Random)
                .ok_or_else(|| Error::domain(format!("unknown target gate '{other}'"))),
        }
    }
}

impl std::fmt::Display for TargetGate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TargetGate::X => f.write_str("x"),
            TargetGate::Z => f.write_str("z"),
            TargetGate::Random(seed) => write!(f, "random:{seed}"),
        }
    }
}
