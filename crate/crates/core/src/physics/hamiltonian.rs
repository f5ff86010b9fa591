use std::f64::consts::PI;

use super::expm::evolve;
use super::fock::FockOps;
use super::spin::{spin_operators, Spin, SpinOps};
use crate::hilbert::{pauli_z, sqrt_omega, Operator, C64};
use crate::{Error, Result, CIRCUIT_TOL};

/// Parameters of the cavity + spin model, in units with ħ = 1. Operators
/// act on `photon ⊗ spin`, photon most significant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HamiltonianSpec {
    /// Cavity frequency ω.
    pub cavity_freq: f64,
    /// Spin frequency Ω.
    pub spin_freq: f64,
    /// Jaynes-Cummings coupling g.
    pub coupling: f64,
    /// Coefficient χ of the `a†a S_z` interaction.
    pub chi: f64,
    pub spin: Spin,
    /// Highest photon number kept.
    pub cutoff: usize,
}

impl Default for HamiltonianSpec {
    fn default() -> Self {
        HamiltonianSpec {
            cavity_freq: 5.0,
            spin_freq: 6.0,
            coupling: 0.01,
            chi: 1.0,
            spin: Spin::from_twice(1),
            cutoff: 8,
        }
    }
}

impl HamiltonianSpec {
    /// Δ = Ω − ω.
    pub fn detuning(&self) -> f64 {
        self.spin_freq - self.cavity_freq
    }

    /// Qudit dimension `n = 2s + 1`.
    pub fn qudit_dim(&self) -> usize {
        self.spin.dim()
    }

    pub fn validate(&self) -> Result<()> {
        if self.cutoff < 2 {
            return Err(Error::domain(format!("photon cutoff {} < 2", self.cutoff)));
        }
        let finite = [self.cavity_freq, self.spin_freq, self.coupling, self.chi];
        if finite.iter().any(|x| !x.is_finite()) {
            return Err(Error::domain("Hamiltonian parameters must be finite"));
        }
        Ok(())
    }

    pub(crate) fn validate_dispersive(&self) -> Result<()> {
        self.validate()?;
        if self.detuning() == 0.0 {
            return Err(Error::domain("detuning Ω − ω is zero"));
        }
        Ok(())
    }

    pub fn fock(&self) -> Result<FockOps> {
        FockOps::new(self.cutoff)
    }

    pub fn spin_ops(&self) -> SpinOps {
        spin_operators(self.spin)
    }

    pub fn total_dim(&self) -> usize {
        (self.cutoff + 1) * self.spin.dim()
    }
}

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// `H_I = χ a†a ⊗ S_z`.
pub fn interaction_hamiltonian(spec: &HamiltonianSpec) -> Result<Operator> {
    spec.validate()?;
    let fock = spec.fock()?;
    Ok(fock.number.kron(&spec.spin_ops().sz).scale(real(spec.chi)))
}

/// `ω a†a + Ω S_z + 2g (a† S− + a S+)` for an arbitrary spin realization
/// given by `sz` and `splus` (with `S− = S+†`).
pub fn jc_hamiltonian_from(spec: &HamiltonianSpec, sz: &Operator, splus: &Operator) -> Result<Operator> {
    spec.validate()?;
    let fock = spec.fock()?;
    let sminus = splus.adjoint();
    let spin_id = Operator::identity(sz.dim());
    let field = fock.number.kron(&spin_id).scale(real(spec.cavity_freq));
    let spin = Operator::identity(fock.dim()).kron(sz).scale(real(spec.spin_freq));
    let exchange = &fock.adag.kron(&sminus) + &fock.a.kron(splus);
    Ok(&(&field + &spin) + &exchange.scale(real(2.0 * spec.coupling)))
}

/// Generalized Jaynes-Cummings Hamiltonian for the spin in `spec`.
pub fn generalized_jc_hamiltonian(spec: &HamiltonianSpec) -> Result<Operator> {
    let ops = spec.spin_ops();
    jc_hamiltonian_from(spec, &ops.sz, &ops.splus)
}

/// Total excitation number `a†a ⊗ 1 + 1 ⊗ (S_z + s)`.
pub fn excitation_number(spec: &HamiltonianSpec) -> Result<Operator> {
    let fock = spec.fock()?;
    let ops = spec.spin_ops();
    let shifted = &ops.sz + &Operator::identity(ops.dim()).scale(real(spec.spin.value()));
    Ok(&fock.number.kron(&Operator::identity(ops.dim())) + &Operator::identity(fock.dim()).kron(&shifted))
}

/// Per-photon-number blocks of `e^{-iH_I t}` at `χt = 2π/n`.
#[derive(Clone, Debug)]
pub struct ConditionalUnitary {
    pub n: usize,
    pub time: f64,
    /// `blocks[k]` is the qudit unitary `Ũ^k` for photon number `k = 0, 1`.
    pub blocks: Vec<Operator>,
    /// Largest entry of `U(t)` coupling different photon numbers.
    pub off_block: f64,
    /// `‖Ũ^0 − 1‖_max`.
    pub vacuum_deviation: f64,
    /// `‖Ũ^1 − (−ω^{1/2} Z_n)‖_max` with `ω^{1/2} = e^{iπ/n}`.
    pub deviation: f64,
}

fn photon_block(u: &Operator, k: usize, d: usize) -> Operator {
    let idx: Vec<usize> = (k * d..(k + 1) * d).collect();
    u.restrict(&idx)
}

fn off_block_norm(u: &Operator, d: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for r in 0..u.dim() {
        for c in 0..u.dim() {
            if r / d != c / d {
                worst = worst.max(u.get(r, c).norm());
            }
        }
    }
    worst
}

/// `−ω^{1/2} Z_n`.
pub fn ideal_photon_block(n: usize) -> Result<Operator> {
    Ok(pauli_z(n)?.scale(-sqrt_omega(n)))
}

/// Evolves `H_I` for `χt = 2π/n`, checks that photon numbers are not mixed,
/// and compares the one-photon block with `−ω^{1/2} Z_n`.
pub fn extract_conditional_unitary(spec: &HamiltonianSpec) -> Result<ConditionalUnitary> {
    if spec.chi == 0.0 {
        return Err(Error::domain("χ must be nonzero"));
    }
    let n = spec.qudit_dim();
    if n < 2 {
        return Err(Error::domain("qudit dimension must be at least 2"));
    }
    let time = 2.0 * PI / (spec.chi * n as f64);
    let u = evolve(&interaction_hamiltonian(spec)?, time)?;
    let off_block = off_block_norm(&u, n);
    if off_block > CIRCUIT_TOL {
        return Err(Error::integrity(format!("evolution mixes photon numbers ({off_block:e})")));
    }
    let blocks: Vec<Operator> = (0..2).map(|k| photon_block(&u, k, n)).collect();
    let vacuum_deviation = blocks[0].max_abs_diff(&Operator::identity(n));
    let deviation = blocks[1].max_abs_diff(&ideal_photon_block(n)?);
    Ok(ConditionalUnitary {
        n,
        time,
        blocks,
        off_block,
        vacuum_deviation,
        deviation,
    })
}

/// How closely the evolved interaction realizes a qubit-controlled `Z_n`.
#[derive(Clone, Debug)]
pub struct GateFidelity {
    pub n: usize,
    /// `χt` actually used.
    pub chi_t: f64,
    /// Photon-qubit phase `diag(1, φ)` stripped before comparing; `φ = −ω^{1/2}`.
    pub photon_phase: C64,
    /// `‖(diag(1, φ̄) ⊗ 1)·U_{01} − C(Z_n)‖_max` on the photon {0,1} ⊗ qudit block.
    pub deviation: f64,
    /// `|Tr(C(Z_n)† · corrected)|² / (2n)²`.
    pub process_fidelity: f64,
}

/// Two-body `C(Z_n)` on `qubit ⊗ qudit`, qubit most significant.
pub fn ideal_controlled_clock(n: usize) -> Result<Operator> {
    let z = pauli_z(n)?;
    Ok(Operator::from_fn(2 * n, |r, c| {
        if r / n != c / n {
            C64::new(0.0, 0.0)
        } else if r / n == 0 {
            if r == c { real(1.0) } else { real(0.0) }
        } else {
            z.get(r % n, c % n)
        }
    }))
}

/// Evolves `H_I` for `χt = time_scale · 2π/n` and compares the photon
/// {0,1} ⊗ qudit block with the ideal two-body `C(Z_n)`, after removing the
/// photon-qubit phase `diag(1, −ω^{1/2})`.
pub fn gate_fidelity_vs_ideal(spec: &HamiltonianSpec, time_scale: f64) -> Result<GateFidelity> {
    spec.validate()?;
    if spec.chi == 0.0 {
        return Err(Error::domain("χ must be nonzero"));
    }
    let n = spec.qudit_dim();
    let chi_t = time_scale * 2.0 * PI / n as f64;
    let u = evolve(&interaction_hamiltonian(spec)?, chi_t / spec.chi)?;
    let idx: Vec<usize> = (0..2 * n).collect();
    let block = u.restrict(&idx);
    let photon_phase = -sqrt_omega(n);
    let undo = Operator::diagonal(&[real(1.0), photon_phase.conj()]).kron(&Operator::identity(n));
    let corrected = &undo * &block;
    let ideal = ideal_controlled_clock(n)?;
    let overlap = (&ideal.adjoint() * &corrected).matrix().trace();
    Ok(GateFidelity {
        n,
        chi_t,
        photon_phase,
        deviation: corrected.max_abs_diff(&ideal),
        process_fidelity: overlap.norm_sqr() / ((2 * n) as f64).powi(2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(twice: u32) -> HamiltonianSpec {
        HamiltonianSpec {
            spin: Spin::from_twice(twice),
            ..HamiltonianSpec::default()
        }
    }

    #[test]
    fn interaction_is_diagonal_and_hermitian() {
        let s = HamiltonianSpec { chi: 0.7, ..spec(2) };
        let h = interaction_hamiltonian(&s).unwrap();
        assert!(h.hermiticity_defect() < 1e-12);
        for k in 0..=s.cutoff {
            for i in 0..3 {
                let idx = k * 3 + i;
                let expected = 0.7 * k as f64 * (1.0 - i as f64);
                assert!((h.get(idx, idx) - real(expected)).norm() < 1e-14);
            }
        }
        let number = s.fock().unwrap().number.kron(&Operator::identity(3));
        assert!(Operator::commutator(&h, &number).max_abs() < 1e-12);
        let zero = interaction_hamiltonian(&HamiltonianSpec { chi: 0.0, ..s }).unwrap();
        assert_eq!(zero.max_abs(), 0.0);
    }

    #[test]
    fn qubit_conditional_gate_closed_form() {
        // n = 2, χt = π: Ũ = diag(e^{−iπ/2}, e^{iπ/2})
        let cu = extract_conditional_unitary(&spec(1)).unwrap();
        let closed = Operator::diagonal(&[C64::new(0.0, -1.0), C64::new(0.0, 1.0)]);
        assert!(cu.blocks[1].max_abs_diff(&closed) < 1e-12);
        assert!(cu.deviation < 1e-12);
        assert!(cu.vacuum_deviation < 1e-12);
    }

    #[test]
    fn qutrit_conditional_gate() {
        let cu = extract_conditional_unitary(&HamiltonianSpec { chi: 2.3, ..spec(2) }).unwrap();
        assert!(cu.deviation < 1e-10);
        assert!(cu.off_block < 1e-12);
    }

    #[test]
    fn conditional_gate_needs_coupling() {
        assert!(matches!(
            extract_conditional_unitary(&HamiltonianSpec { chi: 0.0, ..spec(1) }),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn jc_without_coupling_is_diagonal() {
        let s = HamiltonianSpec { coupling: 0.0, ..spec(2) };
        let h = generalized_jc_hamiltonian(&s).unwrap();
        for r in 0..h.dim() {
            for c in 0..h.dim() {
                let expected = if r == c {
                    s.cavity_freq * (r / 3) as f64 + s.spin_freq * (1.0 - (r % 3) as f64)
                } else {
                    0.0
                };
                assert!((h.get(r, c) - real(expected)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn jc_exchange_element_spin_half() {
        let s = HamiltonianSpec { coupling: 0.3, ..spec(1) };
        let h = generalized_jc_hamiltonian(&s).unwrap();
        // |photon, spin⟩ with spin index 0 = ↑, 1 = ↓
        let one_down = 2 + 1;
        let zero_up = 0;
        assert!((h.get(one_down, zero_up) - real(2.0 * 0.3)).norm() < 1e-15);
        assert!(h.hermiticity_defect() < 1e-12);
    }

    #[test]
    fn jc_conserves_excitations() {
        let s = HamiltonianSpec { coupling: 0.4, cutoff: 6, ..spec(2) };
        let h = generalized_jc_hamiltonian(&s).unwrap();
        let n = excitation_number(&s).unwrap();
        let comm = Operator::commutator(&h, &n);
        assert!(comm.leading_block(5 * 3).max_abs() < 1e-10);
    }

    #[test]
    fn fidelity_examples() {
        let exact = gate_fidelity_vs_ideal(&spec(2), 1.0).unwrap();
        assert!(exact.deviation < 1e-10);
        assert!((exact.process_fidelity - 1.0).abs() < 1e-12);
        let off = gate_fidelity_vs_ideal(&spec(2), 1.01).unwrap();
        assert!(off.deviation > 1e-4);
        let further = gate_fidelity_vs_ideal(&spec(2), 1.02).unwrap();
        assert!(further.deviation > off.deviation);

        // n = 2: CZ up to the photon phase diag(1, −i)
        let cz = gate_fidelity_vs_ideal(&spec(1), 1.0).unwrap();
        assert!(cz.deviation < 1e-10);
        assert!((cz.photon_phase - C64::new(0.0, -1.0)).norm() < 1e-15);
    }
}
