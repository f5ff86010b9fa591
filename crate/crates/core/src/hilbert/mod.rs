//! Mixed-radix Hilbert spaces and dense gate application.
//!
//! Flat indices are mixed-radix numbers with **subsystem 0 as the most
//! significant digit**, so `|i_1 … i_n⟩|anc⟩` over dims `(2, …, 2, d)` maps
//! to `((i_1·2 + i_2)·2 + …)·d + anc`.

mod gates;
mod layout;
mod operator;
mod state;

pub use gates::{fourier, omega_pow, pauli_x, pauli_z, phase_p, random_unitary, sqrt_omega};
pub use layout::SubsystemLayout;
pub use operator::{Operator, C64};
pub use state::{ancilla_overlap, AncillaOverlap, StateVector};

use crate::{Error, Result};

/// Basis value that a control subsystem must hold for the gate to act.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Control {
    pub subsystem: usize,
    pub value: usize,
}

/// A unitary on one or more target subsystems, optionally conditioned on a
/// single control subsystem holding a given basis value.
#[derive(Clone, Debug, PartialEq)]
pub struct GateOp {
    pub unitary: Operator,
    pub targets: Vec<usize>,
    pub control: Option<Control>,
}

impl GateOp {
    pub fn new(unitary: Operator, targets: Vec<usize>, control: Option<Control>) -> Result<Self> {
        if targets.is_empty() {
            return Err(Error::domain("gate needs at least one target"));
        }
        for (i, t) in targets.iter().enumerate() {
            if targets[..i].contains(t) {
                return Err(Error::domain(format!("target {t} listed twice")));
            }
        }
        if let Some(c) = control {
            if targets.contains(&c.subsystem) {
                return Err(Error::domain(format!(
                    "control subsystem {} is also a target",
                    c.subsystem
                )));
            }
        }
        Ok(GateOp {
            unitary,
            targets,
            control,
        })
    }

    pub fn single(unitary: Operator, target: usize) -> Result<Self> {
        Self::new(unitary, vec![target], None)
    }

    pub fn controlled(unitary: Operator, target: usize, control: usize, value: usize) -> Result<Self> {
        Self::new(
            unitary,
            vec![target],
            Some(Control {
                subsystem: control,
                value,
            }),
        )
    }

    /// A gate is two-body when it couples exactly two subsystems.
    pub fn is_two_body(&self) -> bool {
        self.targets.len() + usize::from(self.control.is_some()) == 2
    }

    /// Every subsystem this gate touches, control first.
    pub fn subsystems(&self) -> Vec<usize> {
        self.control
            .iter()
            .map(|c| c.subsystem)
            .chain(self.targets.iter().copied())
            .collect()
    }

    pub fn validate(&self, layout: &SubsystemLayout) -> Result<()> {
        let dims = layout.dims();
        for &t in &self.targets {
            if t >= dims.len() {
                return Err(Error::domain(format!(
                    "target {t} out of range for {} subsystems",
                    dims.len()
                )));
            }
        }
        let target_dim: usize = self.targets.iter().map(|&t| dims[t]).product();
        if target_dim != self.unitary.dim() {
            return Err(Error::domain(format!(
                "unitary has dim {} but targets span dim {target_dim}",
                self.unitary.dim()
            )));
        }
        if let Some(c) = self.control {
            if c.subsystem >= dims.len() {
                return Err(Error::domain(format!(
                    "control {} out of range for {} subsystems",
                    c.subsystem,
                    dims.len()
                )));
            }
            if c.value >= dims[c.subsystem] {
                return Err(Error::domain(format!(
                    "control value {} out of range for dim {}",
                    c.value, dims[c.subsystem]
                )));
            }
        }
        Ok(())
    }
}

/// Applies `gate` to `state`, returning the new state.
///
/// For a controlled gate, amplitudes whose control digit differs from the
/// control value are copied through untouched.
pub fn apply(gate: &GateOp, state: &StateVector) -> Result<StateVector> {
    let layout = state.layout();
    gate.validate(layout)?;
    let dims = layout.dims();

    // flat offsets of every target-digit combination, first target most significant
    let mut offsets = vec![0usize];
    for &t in &gate.targets {
        let stride = layout.stride(t);
        offsets = offsets
            .iter()
            .flat_map(|&o| (0..dims[t]).map(move |d| o + d * stride))
            .collect();
    }

    let src = state.amplitudes();
    let mut out = src.clone();
    let mut block = vec![C64::new(0.0, 0.0); offsets.len()];
    let u = gate.unitary.matrix();
    for base in 0..layout.total_dim() {
        if gate.targets.iter().any(|&t| layout.digit(base, t) != 0) {
            continue;
        }
        if let Some(c) = gate.control {
            if layout.digit(base, c.subsystem) != c.value {
                continue;
            }
        }
        for (b, &o) in block.iter_mut().zip(&offsets) {
            *b = src[base + o];
        }
        for (row, &o) in offsets.iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for (col, b) in block.iter().enumerate() {
                acc += u[(row, col)] * b;
            }
            out[base + o] = acc;
        }
    }
    Ok(StateVector::from_parts(layout.clone(), out))
}

/// Dense matrix of `gate` on the full space of `layout`.
pub fn gate_matrix(gate: &GateOp, layout: &SubsystemLayout) -> Result<Operator> {
    gate.validate(layout)?;
    let dim = layout.total_dim();
    let mut cols = Vec::with_capacity(dim);
    for i in 0..dim {
        let out = apply(gate, &StateVector::basis_index(layout.clone(), i)?)?;
        cols.push(out.amplitudes().clone());
    }
    Ok(Operator::from_fn(dim, |r, c| cols[c][r]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn identity_gate_leaves_state_unchanged() {
        let layout = SubsystemLayout::new(vec![2, 3]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let psi = StateVector::random(layout, &mut rng);
        let g = GateOp::single(Operator::identity(3), 1).unwrap();
        let out = apply(&g, &psi).unwrap();
        assert_eq!(out.amplitudes(), psi.amplitudes());
    }

    #[test]
    fn shift_three_times_is_identity() {
        let layout = SubsystemLayout::new(vec![2, 3]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let psi = StateVector::random(layout, &mut rng);
        let g = GateOp::single(pauli_x(3).unwrap(), 1).unwrap();
        let mut out = psi.clone();
        for _ in 0..3 {
            out = apply(&g, &out).unwrap();
        }
        assert!(out.max_abs_diff(&psi) < 1e-12);
    }

    #[test]
    fn controlled_gate_fires_only_on_control_value() {
        // qubit target 0, qutrit control 1 with value 1
        let layout = SubsystemLayout::new(vec![2, 3]).unwrap();
        let g = GateOp::controlled(pauli_x(2).unwrap(), 0, 1, 1).unwrap();
        for j in 0..3 {
            let input = StateVector::basis(layout.clone(), &[0, j]).unwrap();
            let out = apply(&g, &input).unwrap();
            let expected_target = if j == 1 { 1 } else { 0 };
            let expected = StateVector::basis(layout.clone(), &[expected_target, j]).unwrap();
            assert_eq!(out.amplitudes(), expected.amplitudes(), "ancilla {j}");
        }
    }

    #[test]
    fn two_target_gate_matches_kron() {
        let layout = SubsystemLayout::new(vec![2, 3, 2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let u = random_unitary(6, &mut rng);
        // acting on subsystems (2, 1): first target most significant
        let g = GateOp::new(u.clone(), vec![2, 1], None).unwrap();
        let full = gate_matrix(&g, &layout).unwrap();
        for i in 0..12 {
            for j in 0..12 {
                let di = layout.digits_of(i).unwrap();
                let dj = layout.digits_of(j).unwrap();
                let expected = if di[0] == dj[0] {
                    u.get(di[2] * 3 + di[1], dj[2] * 3 + dj[1])
                } else {
                    c(0.0, 0.0)
                };
                assert!((full.get(i, j) - expected).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn rejects_mismatched_and_invalid_gates() {
        let layout = SubsystemLayout::new(vec![2, 3]).unwrap();
        let psi = StateVector::basis(layout, &[0, 0]).unwrap();
        let wrong_dim = GateOp::single(pauli_x(2).unwrap(), 1).unwrap();
        assert!(matches!(apply(&wrong_dim, &psi), Err(Error::Domain(_))));
        let bad_value = GateOp::controlled(pauli_x(2).unwrap(), 0, 1, 3).unwrap();
        assert!(apply(&bad_value, &psi).is_err());
        let out_of_range = GateOp::single(pauli_x(2).unwrap(), 4).unwrap();
        assert!(apply(&out_of_range, &psi).is_err());
        assert!(GateOp::controlled(pauli_x(2).unwrap(), 0, 0, 1).is_err());
        assert!(GateOp::new(Operator::identity(4), vec![0, 0], None).is_err());
    }

    #[test]
    fn two_body_classification() {
        let cx = GateOp::controlled(pauli_x(2).unwrap(), 0, 1, 1).unwrap();
        assert!(cx.is_two_body());
        let single = GateOp::single(pauli_x(2).unwrap(), 0).unwrap();
        assert!(!single.is_two_body());
        let joint = GateOp::new(Operator::identity(6), vec![0, 1], None).unwrap();
        assert!(joint.is_two_body());
    }
}
