use super::circuit::{AncillaPrep, Circuit, Correction, CorrectionSign, Instruction};
use crate::hilbert::{Operator, SubsystemLayout, C64};
use crate::{Error, Result, CONSTRUCTION_TOL};

fn check_target_unitary(u: &Operator) -> Result<()> {
    if u.dim() != 2 {
        return Err(Error::domain(format!("target unitary must be 2x2, got dim {}", u.dim())));
    }
    let defect = u.unitarity_defect();
    if defect >= CONSTRUCTION_TOL {
        return Err(Error::domain(format!("target gate is not unitary (defect {defect:e})")));
    }
    Ok(())
}

fn check_width(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::domain(format!("need n >= 2 qubits, got {n}")));
    }
    Ok(())
}

/// `C^{n-1}(U)` on `n` qubits built entry by entry: identity except on the
/// pair `|1…1 0⟩, |1…1 1⟩`, where `U` acts on the last qubit.
pub fn direct_controlled_gate(n: usize, u: &Operator) -> Result<Operator> {
    check_width(n)?;
    check_target_unitary(u)?;
    let dim = 1usize << n;
    let all_controls = dim - 2; // |1…1 0⟩
    Ok(Operator::from_fn(dim, |r, c| {
        let (rc, cc) = (r >> 1, c >> 1);
        if rc != cc {
            C64::new(0.0, 0.0)
        } else if 2 * rc == all_controls {
            u.get(r & 1, c & 1)
        } else if r == c {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    }))
}

fn layout_for(n: usize) -> Result<SubsystemLayout> {
    SubsystemLayout::qubits(n)?.with(n)
}

/// Entangling stage shared by every network: each control qubit shifts the
/// counter ancilla by its value.
fn counter_stage(n: usize, clock: bool) -> impl Iterator<Item = Instruction> {
    (0..n - 1).map(move |control| {
        if clock {
            Instruction::ClockAncilla { control, ancilla: n }
        } else {
            Instruction::ShiftAncilla { control, ancilla: n }
        }
    })
}

fn check_control_value(n: usize, k: usize) -> Result<()> {
    if k >= n {
        return Err(Error::domain(format!("control value {k} out of range for ancilla dim {n}")));
    }
    Ok(())
}

/// Coherent network: `n−1` counter shifts, `C(U)` from the ancilla when it
/// reads `k`, then `n−1` inverse shifts returning the ancilla to `|k+1⟩`.
pub fn build_network_a(n: usize, u: &Operator, control_value: usize) -> Result<Circuit> {
    check_width(n)?;
    check_target_unitary(u)?;
    check_control_value(n, control_value)?;
    let mut instructions: Vec<_> = counter_stage(n, false).collect();
    instructions.push(Instruction::ControlledTarget {
        ancilla: n,
        target: n - 1,
        value: control_value,
    });
    instructions.extend((0..n - 1).map(|control| Instruction::UnshiftAncilla { control, ancilla: n }));
    Ok(Circuit {
        layout: layout_for(n)?,
        ancilla_init: (control_value + 1) % n,
        ancilla_prep: AncillaPrep::Basis,
        unitary: u.clone(),
        instructions,
        measure_fourier: false,
        correction: None,
    })
}

/// Measurement-based network: `n−1` counter shifts and `C(U)`, then the
/// ancilla is read in the Fourier basis and outcome `a` applies `P^{-a}` to
/// every control qubit.
pub fn build_network_b(n: usize, u: &Operator, control_value: usize) -> Result<Circuit> {
    check_width(n)?;
    check_target_unitary(u)?;
    check_control_value(n, control_value)?;
    let mut instructions: Vec<_> = counter_stage(n, false).collect();
    instructions.push(Instruction::ControlledTarget {
        ancilla: n,
        target: n - 1,
        value: control_value,
    });
    Ok(Circuit {
        layout: layout_for(n)?,
        ancilla_init: (control_value + 1) % n,
        ancilla_prep: AncillaPrep::Basis,
        unitary: u.clone(),
        instructions,
        measure_fourier: true,
        correction: Some(Correction {
            sign: CorrectionSign::Negative,
            qubits: (0..n - 1).collect(),
        }),
    })
}

/// [`build_network_b`] with `C(X_n) = (1⊗F^{-1}) C(Z_n) (1⊗F)`. The leading
/// `F` is absorbed into the ancilla preparation (`F|k+1⟩`), the `F^{-1}` /
/// `F` pairs between consecutive clock gates cancel, and one `F^{-1}` is left
/// before `C(U)`.
pub fn build_network_b_zvariant(n: usize, u: &Operator, control_value: usize) -> Result<Circuit> {
    let mut c = build_network_b(n, u, control_value)?;
    let mut instructions: Vec<_> = counter_stage(n, true).collect();
    instructions.push(Instruction::AncillaInverseFourier { ancilla: n });
    instructions.push(Instruction::ControlledTarget {
        ancilla: n,
        target: n - 1,
        value: control_value,
    });
    c.instructions = instructions;
    c.ancilla_prep = AncillaPrep::Fourier;
    Ok(c)
}

/// Dispatches on `kind`.
pub fn build_network(kind: super::NetworkKind, n: usize, u: &Operator, control_value: usize) -> Result<Circuit> {
    match kind {
        super::NetworkKind::Coherent => build_network_a(n, u, control_value),
        super::NetworkKind::Measured => build_network_b(n, u, control_value),
        super::NetworkKind::MeasuredClock => build_network_b_zvariant(n, u, control_value),
    }
}
