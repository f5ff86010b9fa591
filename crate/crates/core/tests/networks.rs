use qudit_toffoli::hilbert::{apply, fourier, omega_pow, pauli_x, pauli_z, random_unitary, Operator, StateVector, SubsystemLayout, C64};
use qudit_toffoli::networks::*;
use qudit_toffoli::{Error, CIRCUIT_TOL};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn x() -> Operator {
    pauli_x(2).unwrap()
}

fn qubits(bits: &[usize]) -> StateVector {
    StateVector::basis(SubsystemLayout::qubits(bits.len()).unwrap(), bits).unwrap()
}

/// Ancilla digit after each gate of `circuit` for a basis input.
fn ancilla_trace(circuit: &Circuit, bits: &[usize]) -> Vec<usize> {
    let program = circuit.compile().unwrap();
    let mut state = qubits(bits).tensor(&program.ancilla_state).unwrap();
    let mut trace = Vec::new();
    for g in &program.ops {
        state = apply(g, &state).unwrap();
        let marginal = state.marginal(program.ancilla).unwrap();
        let digit = marginal.iter().position(|&p| (p - 1.0).abs() < 1e-12).expect("ancilla in a basis state");
        trace.push(digit);
    }
    trace
}

#[test]
fn all_ones_input_fires_target() {
    for n in 2..=6 {
        let c = build_network_a(n, &x(), 1).unwrap();
        let trace = ancilla_trace(&c, &vec![1; n]);
        assert_eq!(trace[n - 2], 1, "n={n}: counter must read 1 before C(U)");
        assert_eq!(*trace.last().unwrap(), 2 % n);
    }
}

#[test]
fn single_control_input_leaves_target_and_ancilla() {
    let n = 4;
    let c = build_network_a(n, &x(), 1).unwrap();
    let mut bits = vec![0; n];
    bits[0] = 1;
    assert_eq!(*ancilla_trace(&c, &bits).last().unwrap(), 2);
    let out = run_coherent(&c, &qubits(&bits)).unwrap();
    assert!(out.max_abs_diff(&qubits(&bits)) < 1e-15);
}

#[test]
fn counter_property_on_every_basis_input() {
    for n in 2..=5 {
        for k in 0..n {
            for kind in [NetworkKind::Coherent, NetworkKind::Measured] {
                let c = build_network(kind, n, &x(), k).unwrap();
                for idx in 0..(1usize << n) {
                    let bits: Vec<usize> = (0..n).map(|q| (idx >> (n - 1 - q)) & 1).collect();
                    let trace = ancilla_trace(&c, &bits);
                    let mut sum = 0;
                    for j in 0..n - 1 {
                        sum += bits[j];
                        assert_eq!(trace[j], (k + 1 + sum) % n, "n={n} k={k} bits={bits:?} step {j}");
                    }
                }
            }
        }
    }
}

#[test]
fn coherent_toffoli_examples() {
    let c = build_network_a(3, &x(), 1).unwrap();
    let out = run_coherent(&c, &qubits(&[1, 1, 0])).unwrap();
    assert!(out.max_abs_diff(&qubits(&[1, 1, 1])) < CIRCUIT_TOL);
    let out = run_coherent(&c, &qubits(&[0, 0, 0])).unwrap();
    assert!(out.max_abs_diff(&qubits(&[0, 0, 0])) < CIRCUIT_TOL);

    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let psi = StateVector::random(SubsystemLayout::qubits(3).unwrap(), &mut rng);
    let oracle = direct_controlled_gate(3, &x()).unwrap();
    let expected: Vec<C64> = oracle.apply_to(psi.amplitudes()).iter().copied().collect();
    let out = run_coherent(&c, &psi).unwrap();
    let expected = StateVector::new(psi.layout().clone(), expected).unwrap();
    assert!(out.max_abs_diff(&expected) < CIRCUIT_TOL);
}

#[test]
fn repeated_shift_would_not_disentangle() {
    // Unwinding with C(X_n) instead of C(X_n^{-1}) leaves the ancilla entangled.
    let mut c = build_network_a(3, &x(), 1).unwrap();
    for ins in c.instructions.iter_mut() {
        if let Instruction::UnshiftAncilla { control, ancilla } = *ins {
            *ins = Instruction::ShiftAncilla { control, ancilla };
        }
    }
    let psi = qubits(&[1, 0, 0]);
    assert!(matches!(run_coherent(&c, &psi), Err(Error::Integrity(_))));
}

#[test]
fn coherent_run_rejects_measured_circuit() {
    let c = build_network_b(3, &x(), 1).unwrap();
    assert!(run_coherent(&c, &qubits(&[0, 0, 0])).is_err());
    let a = build_network_a(3, &x(), 1).unwrap();
    assert!(run_measured(&a, &qubits(&[0, 0, 0]), OutcomeMode::EnumerateAll).is_err());
    assert!(run_coherent(&a, &qubits(&[0, 0])).is_err());
}

#[test]
fn measured_branches_carry_omega_two_a() {
    let n = 3;
    let c = build_network_b(n, &x(), 1).unwrap();
    let records = run_measured(&c, &qubits(&[1, 1, 1]), OutcomeMode::EnumerateAll).unwrap();
    assert_eq!(records.len(), n);
    let total: f64 = records.iter().map(|r| r.probability).sum();
    assert!((total - 1.0).abs() < 1e-12);
    for r in &records {
        let a = r.outcome.unwrap();
        assert!((r.probability - 1.0 / n as f64).abs() < 1e-12);
        assert!((r.global_phase - omega_pow(n, 2 * a as i64)).norm() < CIRCUIT_TOL);
        assert!(r.deviation < CIRCUIT_TOL);
        assert!(r.post_correction_state.max_abs_diff(&qubits(&[1, 1, 0]).scaled(r.global_phase)) < CIRCUIT_TOL);
    }
}

#[test]
fn outcome_zero_needs_no_correction() {
    let c = build_network_b(3, &x(), 1).unwrap();
    let r = &run_measured(&c, &qubits(&[1, 0, 1]), OutcomeMode::Fixed(0)).unwrap()[0];
    assert_eq!(r.pre_correction_state, r.post_correction_state);
}

#[test]
fn random_inputs_probabilities_complete() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 2..=5 {
        let u = random_unitary(2, &mut rng);
        let c = build_network_b(n, &u, 1).unwrap();
        let psi = StateVector::random(SubsystemLayout::qubits(n).unwrap(), &mut rng);
        let records = run_measured(&c, &psi, OutcomeMode::EnumerateAll).unwrap();
        let total: f64 = records.iter().map(|r| r.probability).sum();
        assert!((total - 1.0).abs() < 1e-12);
        for r in records {
            assert!(r.overlap > 1.0 - CIRCUIT_TOL);
            assert!((r.global_phase.norm() - 1.0).abs() < 1e-12);
        }
    }
}

#[test]
fn seeded_outcome_is_reproducible() {
    let c = build_network_b(4, &x(), 1).unwrap();
    let psi = qubits(&[1, 1, 1, 0]);
    let a = run_measured(&c, &psi, OutcomeMode::Seeded(7)).unwrap();
    let b = run_measured(&c, &psi, OutcomeMode::Seeded(7)).unwrap();
    assert_eq!(a.len(), 1);
    assert_eq!(a[0].outcome, b[0].outcome);
    assert!(a[0].deviation < CIRCUIT_TOL);
    let seen: std::collections::BTreeSet<_> = (0..40)
        .map(|s| run_measured(&c, &psi, OutcomeMode::Seeded(s)).unwrap()[0].outcome.unwrap())
        .collect();
    assert!(seen.len() > 1);
}

#[test]
fn fixed_outcome_with_zero_probability_errors() {
    let c = build_network_b(2, &Operator::identity(2), 1).unwrap();
    let mut program = c.compile().unwrap();
    // ancilla prepared so that the Fourier readout is deterministic
    let f = fourier(2).unwrap();
    program.ops.clear();
    program.ancilla_state = apply(
        &qudit_toffoli::hilbert::GateOp::single(f.adjoint(), 0).unwrap(),
        &StateVector::basis(SubsystemLayout::new(vec![2]).unwrap(), &[0]).unwrap(),
    )
    .unwrap();
    let psi = qubits(&[0, 0]);
    let err = program.run_measured(&psi, OutcomeMode::Fixed(1), &psi).unwrap_err();
    assert!(matches!(err, Error::ZeroProbabilityBranch { outcome: 1, .. }));
    let all = program.run_measured(&psi, OutcomeMode::EnumerateAll, &psi).unwrap();
    assert_eq!(all.len(), 1);
    assert!(program.run_measured(&psi, OutcomeMode::Fixed(5), &psi).is_err());
}

#[test]
fn verify_examples() {
    let a = verify(3, &x(), NetworkKind::Coherent).unwrap();
    assert!(a.passed, "{a}");
    assert_eq!(a.gate_count, 5);
    assert_eq!(a.cases, 8 + 16);

    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let u = random_unitary(2, &mut rng);
    let b = verify(4, &u, NetworkKind::Measured).unwrap();
    assert!(b.passed, "{b}");
    assert_eq!(b.gate_count, 4);
    assert_eq!(b.per_outcome_deviation.len(), 4);
}

#[test]
fn control_value_generality() {
    for n in 2..=5 {
        for k in 0..n {
            let opts = VerifyOptions {
                control_value: k,
                random_states: 4,
                seed: k as u64,
            };
            for kind in [NetworkKind::Coherent, NetworkKind::Measured, NetworkKind::MeasuredClock] {
                let r = verify_with(n, &x(), kind, &opts).unwrap();
                assert!(r.passed, "n={n} k={k} {kind}: {r}");
            }
        }
    }
}

#[test]
fn clock_variant_matches_shift_variant_branchwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in 2..=5 {
        let u = random_unitary(2, &mut rng);
        let b = build_network_b(n, &u, 1).unwrap();
        let z = build_network_b_zvariant(n, &u, 1).unwrap();
        let psi = StateVector::random(SubsystemLayout::qubits(n).unwrap(), &mut rng);
        let rb = run_measured(&b, &psi, OutcomeMode::EnumerateAll).unwrap();
        let rz = run_measured(&z, &psi, OutcomeMode::EnumerateAll).unwrap();
        assert_eq!(rb.len(), rz.len());
        for (x, y) in rb.iter().zip(&rz) {
            assert_eq!(x.outcome, y.outcome);
            assert!((x.probability - y.probability).abs() < CIRCUIT_TOL);
            assert!(x.post_correction_state.max_abs_diff(&y.post_correction_state) < CIRCUIT_TOL);
        }
    }
}

#[test]
fn single_clock_gate_phases_by_ancilla_digit() {
    let layout = SubsystemLayout::new(vec![2, 3]).unwrap();
    let cz = qudit_toffoli::hilbert::GateOp::controlled(pauli_z(3).unwrap(), 1, 0, 1).unwrap();
    for m in 0..3 {
        let input = StateVector::basis(layout.clone(), &[1, m]).unwrap();
        let out = apply(&cz, &input).unwrap();
        assert!(out.max_abs_diff(&input.scaled(omega_pow(3, m as i64))) < 1e-15);
    }
}

#[test]
fn cnot_from_hadamard_conjugated_cz() {
    // n = 2: F = H, so (1⊗H)·CZ·(1⊗H) = CNOT
    let layout = SubsystemLayout::qubits(2).unwrap();
    let h = fourier(2).unwrap();
    let cz = qudit_toffoli::hilbert::GateOp::controlled(pauli_z(2).unwrap(), 1, 0, 1).unwrap();
    let hg = qudit_toffoli::hilbert::GateOp::single(h, 1).unwrap();
    let cnot = direct_controlled_gate(2, &x()).unwrap();
    for i in 0..4 {
        let mut s = StateVector::basis_index(layout.clone(), i).unwrap();
        for g in [&hg, &cz, &hg] {
            s = apply(g, &s).unwrap();
        }
        let col: Vec<C64> = (0..4).map(|r| cnot.get(r, i)).collect();
        let expected = StateVector::new(layout.clone(), col).unwrap();
        assert!(s.max_abs_diff(&expected) < 1e-15);
    }
}
