//! Physical model behind the conditional clock gate: spin-s and truncated
//! Fock operators, the `χ a†a S_z` interaction and the conditional `Z_n` it
//! generates, the generalized Jaynes-Cummings Hamiltonian with its
//! dispersive (second-order) form, and the collective spin of `n−1` qubits.
//!
//! All frequencies are angular frequencies with ħ = 1. Composite operators
//! act on `photon ⊗ spin` with the photon most significant.

mod collective;
mod dispersive;
mod expm;
mod fock;
mod hamiltonian;
mod spin;

pub use collective::{collective_spin_from_qubits, CollectiveSpin};
pub use dispersive::{
    confirm_series, dispersive_residual, dispersive_residual_at, dressing_transform, fit_log_slope,
    low_photon_block, second_order_hamiltonian, transformed_hamiltonian, DispersiveReport, SeriesCheck,
};
pub use expm::{evolve, exp_anti_hermitian, HERMITIAN_TOL};
pub use fock::FockOps;
pub use hamiltonian::{
    excitation_number, extract_conditional_unitary, gate_fidelity_vs_ideal, generalized_jc_hamiltonian,
    ideal_controlled_clock, ideal_photon_block, interaction_hamiltonian, jc_hamiltonian_from, ConditionalUnitary,
    GateFidelity, HamiltonianSpec,
};
pub use spin::{spin_operators, Spin, SpinOps};

use crate::hilbert::{GateOp, Operator};
use crate::networks::{Circuit, Instruction, Program};
use crate::Result;

/// Qubit-qudit gate produced by evolving the interaction for `χt = 2π/n`,
/// restricted to photon numbers {0, 1}, and the single-qubit phase that
/// turns it into `C(Z_n)`.
#[derive(Clone, Debug)]
pub struct PhysicalClockGate {
    /// `2n × 2n` unitary on `qubit ⊗ qudit`.
    pub two_body: Operator,
    /// `diag(1, (−ω^{1/2})^{-1})`, applied to the qubit afterwards.
    pub qubit_correction: Operator,
}

pub fn physical_clock_gate(n: usize, chi: f64) -> Result<PhysicalClockGate> {
    let spec = HamiltonianSpec {
        chi,
        spin: Spin::from_dim(n)?,
        ..HamiltonianSpec::default()
    };
    let cu = extract_conditional_unitary(&spec)?;
    let u = evolve(&interaction_hamiltonian(&spec)?, cu.time)?;
    let idx: Vec<usize> = (0..2 * n).collect();
    let fid = gate_fidelity_vs_ideal(&spec, 1.0)?;
    Ok(PhysicalClockGate {
        two_body: u.restrict(&idx),
        qubit_correction: Operator::diagonal(&[crate::hilbert::C64::new(1.0, 0.0), fid.photon_phase.conj()]),
    })
}

/// Compiles `circuit` with every abstract `C(Z_n)` replaced by the evolved
/// interaction unitary followed by its qubit phase correction.
pub fn with_physical_clock_gates(circuit: &Circuit, chi: f64) -> Result<Program> {
    let mut program = circuit.compile()?;
    let gate = physical_clock_gate(circuit.ancilla_dim(), chi)?;
    let mut ops = Vec::with_capacity(program.ops.len());
    for (ins, op) in circuit.instructions.iter().zip(program.ops) {
        match *ins {
            Instruction::ClockAncilla { control, ancilla } => {
                ops.push(GateOp::new(gate.two_body.clone(), vec![control, ancilla], None)?);
                ops.push(GateOp::single(gate.qubit_correction.clone(), control)?);
            }
            _ => ops.push(op),
        }
    }
    program.ops = ops;
    Ok(program)
}
