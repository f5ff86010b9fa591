use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::build::direct_controlled_gate;
use super::circuit::{Circuit, Program};
use crate::hilbert::{apply, GateOp, StateVector, C64};
use crate::{Error, Result, CIRCUIT_TOL, ZERO_PROBABILITY};

/// Which measurement branches [`run_measured`] follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutcomeMode {
    Fixed(usize),
    /// Sample one outcome from the Born distribution with a seeded PRNG.
    Seeded(u64),
    EnumerateAll,
}

/// One branch of a run.
#[derive(Clone, Debug)]
pub struct RunRecord {
    /// Measured ancilla value; `None` for coherent runs.
    pub outcome: Option<usize>,
    pub probability: f64,
    /// Qubit state right after the ancilla has been read and removed.
    pub pre_correction_state: StateVector,
    pub post_correction_state: StateVector,
    /// `⟨reference|post⟩ / |⟨reference|post⟩|`.
    pub global_phase: C64,
    /// `|⟨reference|post⟩|`.
    pub overlap: f64,
    /// `max |post − global_phase · reference|`.
    pub deviation: f64,
}

fn compare(reference: &StateVector, state: &StateVector) -> (C64, f64, f64) {
    let ip = reference.inner(state);
    let overlap = ip.norm();
    let phase = if overlap > ZERO_PROBABILITY {
        ip / overlap
    } else {
        C64::new(1.0, 0.0)
    };
    let deviation = state.max_abs_diff(&reference.scaled(phase));
    (phase, overlap, deviation)
}

impl Program {
    /// Appends the prepared ancilla to a qubit register.
    fn prepare(&self, qubits: &StateVector) -> Result<StateVector> {
        let expected = self.layout.without(self.ancilla)?;
        if qubits.layout() != &expected || self.ancilla != self.layout.len() - 1 {
            return Err(Error::domain(format!(
                "input layout {:?} does not match circuit register {:?}",
                qubits.layout().dims(),
                expected.dims()
            )));
        }
        qubits.tensor(&self.ancilla_state)
    }

    fn propagate(&self, mut state: StateVector) -> Result<StateVector> {
        for g in &self.ops {
            state = apply(g, &state)?;
        }
        Ok(state)
    }

    /// Runs every gate and returns the full register including the ancilla.
    pub fn evolve(&self, qubits: &StateVector) -> Result<StateVector> {
        self.propagate(self.prepare(qubits)?)
    }

    /// Contracts the ancilla against its prepared state.
    ///
    /// Returns the qubit part and `‖ψ − φ ⊗ anc‖`.
    fn factor_ancilla(&self, state: &StateVector) -> Result<(StateVector, f64)> {
        let layout = state.layout();
        let rest_layout = layout.without(self.ancilla)?;
        let anc = self.ancilla_state.amplitudes();
        let d = anc.len();
        let amps = state.amplitudes();
        let rest: Vec<C64> = (0..rest_layout.total_dim())
            .map(|r| (0..d).map(|j| anc[j].conj() * amps[r * d + j]).sum())
            .collect();
        let mut residual_sqr = 0.0;
        for (r, phi) in rest.iter().enumerate() {
            for j in 0..d {
                residual_sqr += (amps[r * d + j] - phi * anc[j]).norm_sqr();
            }
        }
        let residual = residual_sqr.sqrt();
        let rest = StateVector::from_unnormalized(rest_layout, rest)
            .map_err(|_| Error::integrity("ancilla is orthogonal to its prepared state"))?;
        Ok((rest, residual))
    }

    /// Qubit part of the coherent output and the ancilla factorization
    /// residual, without judging the residual.
    pub fn coherent_output(&self, qubits: &StateVector) -> Result<(StateVector, f64)> {
        if self.measurement_basis.is_some() {
            return Err(Error::domain("program has a measurement stage"));
        }
        let out = self.evolve(qubits)?;
        self.factor_ancilla(&out)
    }

    /// Runs a measurement-free program and strips the ancilla, which must
    /// come back in its prepared state.
    pub fn run_coherent(&self, qubits: &StateVector) -> Result<StateVector> {
        let (rest, residual) = self.coherent_output(qubits)?;
        if residual >= CIRCUIT_TOL {
            return Err(Error::integrity(format!(
                "ancilla did not return to its initial state (residual {residual:e})"
            )));
        }
        Ok(rest)
    }

    /// Outcome distribution of the ancilla readout (after the basis change).
    pub fn outcome_distribution(&self, qubits: &StateVector) -> Result<Vec<f64>> {
        self.pre_measurement(qubits)?.marginal(self.ancilla)
    }

    fn pre_measurement(&self, qubits: &StateVector) -> Result<StateVector> {
        let basis = self
            .measurement_basis
            .as_ref()
            .ok_or_else(|| Error::domain("program has no measurement stage"))?;
        let state = self.evolve(qubits)?;
        apply(&GateOp::single(basis.clone(), self.ancilla)?, &state)
    }

    /// Propagates, reads the ancilla, applies the feed-forward corrections
    /// for each followed outcome, and compares against `reference`.
    pub fn run_measured(
        &self,
        qubits: &StateVector,
        mode: OutcomeMode,
        reference: &StateVector,
    ) -> Result<Vec<RunRecord>> {
        let state = self.pre_measurement(qubits)?;
        let probs = state.marginal(self.ancilla)?;
        let outcomes: Vec<usize> = match mode {
            OutcomeMode::Fixed(a) => {
                if a >= probs.len() {
                    return Err(Error::domain(format!("outcome {a} out of range")));
                }
                vec![a]
            }
            OutcomeMode::Seeded(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let x: f64 = rng.random();
                let mut acc = 0.0;
                let pick = probs
                    .iter()
                    .position(|p| {
                        acc += p;
                        x < acc
                    })
                    .unwrap_or_else(|| probs.iter().rposition(|&p| p >= ZERO_PROBABILITY).unwrap_or(0));
                vec![pick]
            }
            OutcomeMode::EnumerateAll => (0..probs.len()).filter(|&a| probs[a] >= ZERO_PROBABILITY).collect(),
        };

        outcomes
            .into_iter()
            .map(|a| {
                let (probability, pre) = state.project_out(self.ancilla, a)?;
                let mut post = pre.clone();
                for g in self.corrections.get(a).map(Vec::as_slice).unwrap_or(&[]) {
                    post = apply(&shift_below(g, self.ancilla)?, &post)?;
                }
                let (global_phase, overlap, deviation) = compare(reference, &post);
                Ok(RunRecord {
                    outcome: Some(a),
                    probability,
                    pre_correction_state: pre,
                    post_correction_state: post,
                    global_phase,
                    overlap,
                    deviation,
                })
            })
            .collect()
    }
}

/// Re-indexes a gate for the register with `removed` taken out.
fn shift_below(g: &GateOp, removed: usize) -> Result<GateOp> {
    let fix = |s: usize| -> Result<usize> {
        match s.cmp(&removed) {
            std::cmp::Ordering::Less => Ok(s),
            std::cmp::Ordering::Greater => Ok(s - 1),
            std::cmp::Ordering::Equal => Err(Error::domain("correction acts on the measured ancilla")),
        }
    };
    let targets = g.targets.iter().map(|&t| fix(t)).collect::<Result<Vec<_>>>()?;
    let control = g
        .control
        .map(|c| {
            fix(c.subsystem).map(|subsystem| crate::hilbert::Control {
                subsystem,
                value: c.value,
            })
        })
        .transpose()?;
    GateOp::new(g.unitary.clone(), targets, control)
}

/// `C^{n-1}(U)` applied to `qubits`, for the circuit's own `U`.
pub fn oracle_output(circuit: &Circuit, qubits: &StateVector) -> Result<StateVector> {
    let oracle = direct_controlled_gate(circuit.qubit_count(), &circuit.unitary)?;
    if qubits.layout().total_dim() != oracle.dim() {
        return Err(Error::domain("input register does not match the circuit"));
    }
    StateVector::new(
        qubits.layout().clone(),
        oracle.apply_to(qubits.amplitudes()).iter().copied().collect(),
    )
}

/// Runs a measurement-free circuit; see [`Program::run_coherent`].
pub fn run_coherent(circuit: &Circuit, qubits: &StateVector) -> Result<StateVector> {
    circuit.compile()?.run_coherent(qubits)
}

/// Runs a measured circuit, comparing every branch with the direct oracle.
pub fn run_measured(circuit: &Circuit, qubits: &StateVector, mode: OutcomeMode) -> Result<Vec<RunRecord>> {
    let reference = oracle_output(circuit, qubits)?;
    circuit.compile()?.run_measured(qubits, mode, &reference)
}
