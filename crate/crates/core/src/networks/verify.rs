use std::collections::BTreeMap;
use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::build::build_network;
use super::circuit::{Circuit, NetworkKind, Program};
use super::run::{oracle_output, OutcomeMode};
use crate::hilbert::{omega_pow, Operator, StateVector, SubsystemLayout};
use crate::{Result, CIRCUIT_TOL};

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Ancilla value that fires `U`.
    pub control_value: usize,
    /// Random input states checked on top of the full computational basis.
    pub random_states: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            control_value: 1,
            random_states: 16,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub n: usize,
    pub network: NetworkKind,
    pub control_value: usize,
    pub seed: u64,
    pub gate_count: usize,
    /// Number of input states checked.
    pub cases: usize,
    /// Worst of every deviation below; `passed` is exactly `max_deviation < 1e-10`.
    pub max_deviation: f64,
    /// Measured networks: worst `max |post − ω^{a(k+1)}·oracle|` per outcome.
    pub per_outcome_deviation: BTreeMap<usize, f64>,
    pub max_phase_error: f64,
    pub min_overlap: f64,
    pub max_probability_error: f64,
    pub max_ancilla_residual: f64,
    pub passed: bool,
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "network {} n={} control_value={} seed={}", self.network, self.n, self.control_value, self.seed)?;
        writeln!(f, "  two-body gates      {}", self.gate_count)?;
        writeln!(f, "  input states        {}", self.cases)?;
        writeln!(f, "  max deviation       {:.3e}", self.max_deviation)?;
        if self.network == NetworkKind::Coherent {
            writeln!(f, "  ancilla residual    {:.3e}", self.max_ancilla_residual)?;
        } else {
            writeln!(f, "  min overlap         {:.15}", self.min_overlap)?;
            writeln!(f, "  max phase error     {:.3e}", self.max_phase_error)?;
            writeln!(f, "  probability error   {:.3e}", self.max_probability_error)?;
            for (a, d) in &self.per_outcome_deviation {
                writeln!(f, "  outcome {a:<3}         {d:.3e}")?;
            }
        }
        write!(f, "  result              {}", if self.passed { "PASS" } else { "FAIL" })
    }
}

/// [`verify_with`] using default options.
pub fn verify(n: usize, u: &Operator, network: NetworkKind) -> Result<VerificationReport> {
    verify_with(n, u, network, &VerifyOptions::default())
}

/// Builds the requested network and checks its induced map on the qubit
/// register against the direct `C^{n-1}(U)` oracle, over the full
/// computational basis plus seeded random states. For measured networks
/// every outcome branch is checked. Failures are reported, not returned.
pub fn verify_with(n: usize, u: &Operator, network: NetworkKind, opts: &VerifyOptions) -> Result<VerificationReport> {
    let circuit = build_network(network, n, u, opts.control_value)?;
    let program = circuit.compile()?;
    verify_program(&circuit, &program, network, opts)
}

/// Verifies `program` (typically `circuit.compile()`, possibly with gates
/// substituted) against the oracle for `circuit`'s width and `U`.
pub fn verify_program(
    circuit: &Circuit,
    program: &Program,
    network: NetworkKind,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let n = circuit.qubit_count();
    let register = SubsystemLayout::qubits(n)?;
    let mut inputs: Vec<StateVector> = (0..register.total_dim())
        .map(|i| StateVector::basis_index(register.clone(), i))
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    inputs.extend((0..opts.random_states).map(|_| StateVector::random(register.clone(), &mut rng)));

    let mut report = VerificationReport {
        n,
        network,
        control_value: opts.control_value,
        seed: opts.seed,
        gate_count: program.two_body_count(),
        cases: inputs.len(),
        max_deviation: 0.0,
        per_outcome_deviation: BTreeMap::new(),
        max_phase_error: 0.0,
        min_overlap: 1.0,
        max_probability_error: 0.0,
        max_ancilla_residual: 0.0,
        passed: false,
    };

    let d = circuit.ancilla_dim();
    for input in &inputs {
        let reference = oracle_output(circuit, input)?;
        if program.measurement_basis.is_none() {
            let (out, residual) = program.coherent_output(input)?;
            let deviation = out.max_abs_diff(&reference);
            report.max_ancilla_residual = report.max_ancilla_residual.max(residual);
            report.min_overlap = report.min_overlap.min(reference.inner(&out).norm());
            report.max_deviation = report.max_deviation.max(deviation).max(residual);
            continue;
        }
        let total: f64 = program.outcome_distribution(input)?.iter().sum();
        report.max_probability_error = report.max_probability_error.max((total - 1.0).abs());
        for record in program.run_measured(input, OutcomeMode::EnumerateAll, &reference)? {
            let a = record.outcome.expect("measured run records an outcome");
            let expected = omega_pow(d, (a * circuit.ancilla_init) as i64);
            let deviation = record
                .post_correction_state
                .max_abs_diff(&reference.scaled(expected));
            let phase_error = (record.global_phase - expected).norm();
            let entry = report.per_outcome_deviation.entry(a).or_insert(0.0);
            *entry = entry.max(deviation);
            report.max_phase_error = report.max_phase_error.max(phase_error);
            report.min_overlap = report.min_overlap.min(record.overlap);
            report.max_deviation = report
                .max_deviation
                .max(deviation)
                .max(phase_error)
                .max(1.0 - record.overlap);
        }
    }
    report.max_deviation = report.max_deviation.max(report.max_probability_error);
    report.passed = report.max_deviation < CIRCUIT_TOL;
    Ok(report)
}
