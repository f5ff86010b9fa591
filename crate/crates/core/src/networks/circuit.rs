use std::fmt;

use crate::hilbert::{fourier, pauli_x, pauli_z, phase_p, Control, GateOp, Operator, StateVector, SubsystemLayout};
use crate::{Error, Result, CONSTRUCTION_TOL};

/// Which of the catalysed networks a circuit realizes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NetworkKind {
    /// Coherent network: entangle, fire, disentangle (2n−1 two-body gates).
    Coherent,
    /// Measurement-based network with feed-forward phase corrections (n two-body gates).
    Measured,
    /// The measurement-based network with every shift rewritten as
    /// `F^{-1} C(Z_n) F`.
    MeasuredClock,
}

impl NetworkKind {
    pub fn label(self) -> &'static str {
        match self {
            NetworkKind::Coherent => "a",
            NetworkKind::Measured => "b",
            NetworkKind::MeasuredClock => "b-z",
        }
    }
}

impl fmt::Display for NetworkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for NetworkKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(NetworkKind::Coherent),
            "b" => Ok(NetworkKind::Measured),
            "b-z" => Ok(NetworkKind::MeasuredClock),
            other => Err(Error::domain(format!("unknown network '{other}'"))),
        }
    }
}

/// One symbolic circuit step. Subsystem indices refer to the circuit layout.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Instruction {
    /// `C(X_d)`: qubit `control` in |1⟩ adds one to the ancilla.
    ShiftAncilla { control: usize, ancilla: usize },
    /// `C(X_d^{-1})`: qubit `control` in |1⟩ subtracts one from the ancilla.
    UnshiftAncilla { control: usize, ancilla: usize },
    /// `C(Z_d)`: qubit `control` in |1⟩ applies the clock operator to the ancilla.
    ClockAncilla { control: usize, ancilla: usize },
    /// `C(U)`: ancilla in |value⟩ applies the target unitary to `target`.
    ControlledTarget { ancilla: usize, target: usize, value: usize },
    AncillaFourier { ancilla: usize },
    AncillaInverseFourier { ancilla: usize },
}

impl Instruction {
    pub fn is_two_body(&self) -> bool {
        !matches!(
            self,
            Instruction::AncillaFourier { .. } | Instruction::AncillaInverseFourier { .. }
        )
    }

    pub fn subsystems(&self) -> Vec<usize> {
        match *self {
            Instruction::ShiftAncilla { control, ancilla }
            | Instruction::UnshiftAncilla { control, ancilla }
            | Instruction::ClockAncilla { control, ancilla } => vec![control, ancilla],
            Instruction::ControlledTarget { ancilla, target, .. } => vec![ancilla, target],
            Instruction::AncillaFourier { ancilla } | Instruction::AncillaInverseFourier { ancilla } => {
                vec![ancilla]
            }
        }
    }
}

/// How the ancilla is prepared from its declared initial digit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AncillaPrep {
    /// `|init⟩`.
    Basis,
    /// `F|init⟩`.
    Fourier,
}

/// Sign of the feed-forward exponent: outcome `a` applies `P^{sign·a}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CorrectionSign {
    Positive,
    Negative,
}

/// Feed-forward stage: after reading outcome `a`, apply the same phase gate
/// `P^{±a}` to every listed qubit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correction {
    pub sign: CorrectionSign,
    pub qubits: Vec<usize>,
}

/// Ordered gate list over `n` qubits plus one ancilla (always the last
/// subsystem), with an optional Fourier-basis ancilla measurement and
/// feed-forward correction.
#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    pub layout: SubsystemLayout,
    pub ancilla_init: usize,
    pub ancilla_prep: AncillaPrep,
    /// 2×2 unitary fired on the target qubit.
    pub unitary: Operator,
    pub instructions: Vec<Instruction>,
    /// Measure the ancilla after a Fourier basis change.
    pub measure_fourier: bool,
    pub correction: Option<Correction>,
}

impl Circuit {
    pub fn ancilla(&self) -> usize {
        self.layout.len() - 1
    }

    pub fn ancilla_dim(&self) -> usize {
        self.layout.dims()[self.ancilla()]
    }

    /// Number of computational qubits.
    pub fn qubit_count(&self) -> usize {
        self.layout.len() - 1
    }

    pub fn two_body_count(&self) -> usize {
        self.instructions.iter().filter(|i| i.is_two_body()).count()
    }

    pub fn has_measurement(&self) -> bool {
        self.measure_fourier
    }

    /// Checks subsystem indices and dimensions against the layout.
    pub fn validate(&self) -> Result<()> {
        let anc = self.ancilla();
        if self.layout.len() < 2 {
            return Err(Error::domain("circuit needs at least one qubit and an ancilla"));
        }
        if self.layout.dims()[..anc].iter().any(|&d| d != 2) {
            return Err(Error::domain("all subsystems but the last must be qubits"));
        }
        if self.ancilla_init >= self.ancilla_dim() {
            return Err(Error::domain(format!(
                "ancilla init {} out of range for dim {}",
                self.ancilla_init,
                self.ancilla_dim()
            )));
        }
        if self.unitary.dim() != 2 || !self.unitary.is_unitary(CONSTRUCTION_TOL) {
            return Err(Error::domain("target gate must be a 2x2 unitary"));
        }
        for ins in &self.instructions {
            let subs = ins.subsystems();
            if subs.iter().any(|&s| s >= self.layout.len()) {
                return Err(Error::domain(format!("{ins:?} references a missing subsystem")));
            }
            match *ins {
                Instruction::ShiftAncilla { control, ancilla }
                | Instruction::UnshiftAncilla { control, ancilla }
                | Instruction::ClockAncilla { control, ancilla } => {
                    if ancilla != anc || control == anc {
                        return Err(Error::domain(format!("{ins:?} must target the ancilla from a qubit")));
                    }
                }
                Instruction::ControlledTarget { ancilla, target, value } => {
                    if ancilla != anc || target == anc || value >= self.ancilla_dim() {
                        return Err(Error::domain(format!("{ins:?} must be controlled by the ancilla")));
                    }
                }
                Instruction::AncillaFourier { ancilla } | Instruction::AncillaInverseFourier { ancilla } => {
                    if ancilla != anc {
                        return Err(Error::domain(format!("{ins:?} must act on the ancilla")));
                    }
                }
            }
        }
        if let Some(c) = &self.correction {
            if !self.measure_fourier {
                return Err(Error::domain("corrections need a measurement stage"));
            }
            if c.qubits.iter().any(|&q| q >= anc) {
                return Err(Error::domain("corrections must act on qubits"));
            }
        }
        Ok(())
    }

    /// Lowers the instruction list to concrete gates.
    pub fn gate_ops(&self) -> Result<Vec<GateOp>> {
        let d = self.ancilla_dim();
        let shift = pauli_x(d)?;
        let unshift = shift.adjoint();
        let clock = pauli_z(d)?;
        let f = fourier(d)?;
        let controlled = |u: &Operator, target: usize, control: usize, value: usize| {
            GateOp::new(
                u.clone(),
                vec![target],
                Some(Control {
                    subsystem: control,
                    value,
                }),
            )
        };
        self.instructions
            .iter()
            .map(|ins| match *ins {
                Instruction::ShiftAncilla { control, ancilla } => controlled(&shift, ancilla, control, 1),
                Instruction::UnshiftAncilla { control, ancilla } => controlled(&unshift, ancilla, control, 1),
                Instruction::ClockAncilla { control, ancilla } => controlled(&clock, ancilla, control, 1),
                Instruction::ControlledTarget { ancilla, target, value } => {
                    controlled(&self.unitary, target, ancilla, value)
                }
                Instruction::AncillaFourier { ancilla } => GateOp::single(f.clone(), ancilla),
                Instruction::AncillaInverseFourier { ancilla } => GateOp::single(f.adjoint(), ancilla),
            })
            .collect()
    }

    /// The prepared single-subsystem ancilla state.
    pub fn ancilla_state(&self) -> Result<StateVector> {
        let d = self.ancilla_dim();
        let basis = StateVector::basis(SubsystemLayout::new(vec![d])?, &[self.ancilla_init])?;
        match self.ancilla_prep {
            AncillaPrep::Basis => Ok(basis),
            AncillaPrep::Fourier => {
                crate::hilbert::apply(&GateOp::single(fourier(d)?, 0)?, &basis)
            }
        }
    }

    /// Basis change applied to the ancilla right before it is read out.
    pub fn measurement_basis_change(&self) -> Result<Option<Operator>> {
        if self.measure_fourier {
            Ok(Some(fourier(self.ancilla_dim())?))
        } else {
            Ok(None)
        }
    }

    /// Correction gates for measurement outcome `a`.
    pub fn corrections_for(&self, outcome: usize) -> Result<Vec<(usize, Operator)>> {
        let d = self.ancilla_dim();
        let Some(c) = &self.correction else {
            return Ok(Vec::new());
        };
        let exponent = match c.sign {
            CorrectionSign::Positive => outcome % d,
            CorrectionSign::Negative => (d - outcome % d) % d,
        };
        let p = phase_p(d, exponent)?;
        Ok(c.qubits.iter().map(|&q| (q, p.clone())).collect())
    }

    /// Gate list, ancilla preparation, measurement and corrections, ready to run.
    pub fn compile(&self) -> Result<Program> {
        self.validate()?;
        let d = self.ancilla_dim();
        let mut corrections = Vec::new();
        if self.measure_fourier {
            for a in 0..d {
                corrections.push(
                    self.corrections_for(a)?
                        .into_iter()
                        .map(|(q, u)| GateOp::single(u, q))
                        .collect::<Result<Vec<_>>>()?,
                );
            }
        }
        Ok(Program {
            layout: self.layout.clone(),
            ancilla: self.ancilla(),
            ancilla_state: self.ancilla_state()?,
            ops: self.gate_ops()?,
            measurement_basis: self.measurement_basis_change()?,
            corrections,
        })
    }
}

/// A circuit lowered to concrete gates. Fields are public so individual
/// gates can be swapped (e.g. for physically evolved unitaries) before
/// running.
#[derive(Clone, Debug)]
pub struct Program {
    pub layout: SubsystemLayout,
    pub ancilla: usize,
    pub ancilla_state: StateVector,
    pub ops: Vec<GateOp>,
    pub measurement_basis: Option<Operator>,
    /// `corrections[a]` runs after outcome `a`; empty for coherent programs.
    pub corrections: Vec<Vec<GateOp>>,
}

impl Program {
    pub fn two_body_count(&self) -> usize {
        self.ops.iter().filter(|g| g.is_two_body()).count()
    }
}
