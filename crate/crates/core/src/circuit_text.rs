//! Line-oriented text format for [`Circuit`]s.
//!
//! One statement per line, tokens separated by whitespace. Blank lines and
//! lines starting with `#` are ignored when parsing and never emitted.
//!
//! ```text
//! LAYOUT <dim>...                 required, first; last subsystem is the ancilla
//! ANCILLA_INIT <digit>            required
//! ANCILLA_PREP F                  optional; ancilla starts in F|digit⟩
//! UNITARY <re> <im> x4            required; 2x2 target gate, row-major
//! CX_N <qubit> <ancilla>          C(X_d), fires when the qubit is |1⟩
//! CXINV_N <qubit> <ancilla>       C(X_d^{-1})
//! CZ_N <qubit> <ancilla>          C(Z_d)
//! CU <ancilla> <target> <k>       U on target when the ancilla reads k
//! F_N <ancilla>                   Fourier transform on the ancilla
//! FINV_N <ancilla>                inverse Fourier transform on the ancilla
//! MEASURE_F <ancilla>             read the ancilla in the Fourier basis
//! CORRECT P^a <qubit>...          outcome a applies diag(1, ω^a) to each qubit
//! CORRECT P^-a <qubit>...         outcome a applies diag(1, ω^-a) to each qubit
//! ```
//!
//! Header lines come before gate lines; `MEASURE_F` follows the gates and
//! `CORRECT` follows `MEASURE_F`. Floats are written in Rust's shortest
//! round-trip form, so `emit(parse(emit(c)))` is byte-identical to `emit(c)`.

use std::fmt::Write as _;

use crate::hilbert::{Operator, SubsystemLayout, C64};
use crate::networks::{AncillaPrep, Circuit, Correction, CorrectionSign, Instruction};
use crate::{Error, Result};

pub fn emit(circuit: &Circuit) -> String {
    let mut out = String::new();
    let dims: Vec<String> = circuit.layout.dims().iter().map(ToString::to_string).collect();
    writeln!(out, "LAYOUT {}", dims.join(" ")).unwrap();
    writeln!(out, "ANCILLA_INIT {}", circuit.ancilla_init).unwrap();
    if circuit.ancilla_prep == AncillaPrep::Fourier {
        writeln!(out, "ANCILLA_PREP F").unwrap();
    }
    out.push_str("UNITARY");
    for r in 0..2 {
        for c in 0..2 {
            let z = circuit.unitary.get(r, c);
            write!(out, " {:?} {:?}", z.re, z.im).unwrap();
        }
    }
    out.push('\n');
    for ins in &circuit.instructions {
        let line = match *ins {
            Instruction::ShiftAncilla { control, ancilla } => format!("CX_N {control} {ancilla}"),
            Instruction::UnshiftAncilla { control, ancilla } => format!("CXINV_N {control} {ancilla}"),
            Instruction::ClockAncilla { control, ancilla } => format!("CZ_N {control} {ancilla}"),
            Instruction::ControlledTarget { ancilla, target, value } => format!("CU {ancilla} {target} {value}"),
            Instruction::AncillaFourier { ancilla } => format!("F_N {ancilla}"),
            Instruction::AncillaInverseFourier { ancilla } => format!("FINV_N {ancilla}"),
        };
        writeln!(out, "{line}").unwrap();
    }
    if circuit.measure_fourier {
        writeln!(out, "MEASURE_F {}", circuit.ancilla()).unwrap();
    }
    if let Some(c) = &circuit.correction {
        let sign = match c.sign {
            CorrectionSign::Positive => "P^a",
            CorrectionSign::Negative => "P^-a",
        };
        let qubits: Vec<String> = c.qubits.iter().map(ToString::to_string).collect();
        writeln!(out, "CORRECT {sign} {}", qubits.join(" ")).unwrap();
    }
    out
}

#[derive(PartialEq, PartialOrd)]
enum Section {
    Header,
    Gates,
    Measured,
    Corrected,
}

struct Line<'a> {
    number: usize,
    keyword: &'a str,
    args: Vec<&'a str>,
}

impl Line<'_> {
    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            message: message.into(),
        }
    }

    fn arity(&self, n: usize) -> Result<()> {
        if self.args.len() != n {
            return Err(self.err(format!("{} takes {n} arguments, got {}", self.keyword, self.args.len())));
        }
        Ok(())
    }

    fn int(&self, i: usize) -> Result<usize> {
        self.args[i]
            .parse()
            .map_err(|_| self.err(format!("'{}' is not a non-negative integer", self.args[i])))
    }

    fn float(&self, i: usize) -> Result<f64> {
        self.args[i]
            .parse()
            .map_err(|_| self.err(format!("'{}' is not a number", self.args[i])))
    }

    fn pair(&self) -> Result<(usize, usize)> {
        self.arity(2)?;
        Ok((self.int(0)?, self.int(1)?))
    }
}

pub fn parse(text: &str) -> Result<Circuit> {
    let mut layout: Option<SubsystemLayout> = None;
    let mut ancilla_init = None;
    let mut ancilla_prep = AncillaPrep::Basis;
    let mut unitary = None;
    let mut instructions = Vec::new();
    let mut measure_fourier = false;
    let mut correction = None;
    let mut section = Section::Header;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        last_line = idx + 1;
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let line = Line {
            number: idx + 1,
            keyword: tokens.next().expect("non-empty line"),
            args: tokens.collect(),
        };
        if layout.is_none() && line.keyword != "LAYOUT" {
            return Err(line.err("first statement must be LAYOUT"));
        }
        let next_section = match line.keyword {
            "LAYOUT" | "ANCILLA_INIT" | "ANCILLA_PREP" | "UNITARY" => Section::Header,
            "CX_N" | "CXINV_N" | "CZ_N" | "CU" | "F_N" | "FINV_N" => Section::Gates,
            "MEASURE_F" => Section::Measured,
            "CORRECT" => Section::Corrected,
            other => return Err(line.err(format!("unknown statement '{other}'"))),
        };
        if next_section < section {
            return Err(line.err(format!("{} is out of order", line.keyword)));
        }
        section = next_section;

        match line.keyword {
            "LAYOUT" => {
                if layout.is_some() {
                    return Err(line.err("duplicate LAYOUT"));
                }
                let dims = (0..line.args.len()).map(|i| line.int(i)).collect::<Result<Vec<_>>>()?;
                layout = Some(SubsystemLayout::new(dims).map_err(|e| line.err(e.to_string()))?);
            }
            "ANCILLA_INIT" => {
                line.arity(1)?;
                if ancilla_init.replace(line.int(0)?).is_some() {
                    return Err(line.err("duplicate ANCILLA_INIT"));
                }
            }
            "ANCILLA_PREP" => {
                line.arity(1)?;
                if line.args[0] != "F" {
                    return Err(line.err(format!("unknown ancilla preparation '{}'", line.args[0])));
                }
                ancilla_prep = AncillaPrep::Fourier;
            }
            "UNITARY" => {
                line.arity(8)?;
                let v = (0..8).map(|i| line.float(i)).collect::<Result<Vec<_>>>()?;
                let entries: Vec<C64> = v.chunks(2).map(|p| C64::new(p[0], p[1])).collect();
                if unitary.replace(Operator::from_rows(2, &entries)?).is_some() {
                    return Err(line.err("duplicate UNITARY"));
                }
            }
            "CX_N" => {
                let (control, ancilla) = line.pair()?;
                instructions.push(Instruction::ShiftAncilla { control, ancilla });
            }
            "CXINV_N" => {
                let (control, ancilla) = line.pair()?;
                instructions.push(Instruction::UnshiftAncilla { control, ancilla });
            }
            "CZ_N" => {
                let (control, ancilla) = line.pair()?;
                instructions.push(Instruction::ClockAncilla { control, ancilla });
            }
            "CU" => {
                line.arity(3)?;
                instructions.push(Instruction::ControlledTarget {
                    ancilla: line.int(0)?,
                    target: line.int(1)?,
                    value: line.int(2)?,
                });
            }
            "F_N" => {
                line.arity(1)?;
                instructions.push(Instruction::AncillaFourier { ancilla: line.int(0)? });
            }
            "FINV_N" => {
                line.arity(1)?;
                instructions.push(Instruction::AncillaInverseFourier { ancilla: line.int(0)? });
            }
            "MEASURE_F" => {
                line.arity(1)?;
                if measure_fourier {
                    return Err(line.err("duplicate MEASURE_F"));
                }
                let anc = layout.as_ref().expect("layout parsed").len() - 1;
                if line.int(0)? != anc {
                    return Err(line.err(format!("MEASURE_F must name the ancilla (subsystem {anc})")));
                }
                measure_fourier = true;
            }
            "CORRECT" => {
                if correction.is_some() {
                    return Err(line.err("duplicate CORRECT"));
                }
                if line.args.is_empty() {
                    return Err(line.err("CORRECT needs a phase token"));
                }
                let sign = match line.args[0] {
                    "P^a" => CorrectionSign::Positive,
                    "P^-a" => CorrectionSign::Negative,
                    other => return Err(line.err(format!("unknown correction '{other}'"))),
                };
                let qubits = (1..line.args.len()).map(|i| line.int(i)).collect::<Result<Vec<_>>>()?;
                correction = Some(Correction { sign, qubits });
            }
            _ => unreachable!("keyword checked above"),
        }
    }

    let missing = |what: &str| Error::Parse {
        line: last_line,
        message: format!("missing {what}"),
    };
    let circuit = Circuit {
        layout: layout.ok_or_else(|| missing("LAYOUT"))?,
        ancilla_init: ancilla_init.ok_or_else(|| missing("ANCILLA_INIT"))?,
        ancilla_prep,
        unitary: unitary.ok_or_else(|| missing("UNITARY"))?,
        instructions,
        measure_fourier,
        correction,
    };
    circuit.validate()?;
    Ok(circuit)
}
