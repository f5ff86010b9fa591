use nalgebra::DMatrix;

use super::expm::evolve;
use super::hamiltonian::{jc_hamiltonian_from, HamiltonianSpec};
use super::spin::{commutation_defect, spin_operators, Spin};
use crate::hilbert::{Operator, C64};
use crate::{Error, Result};

/// Collective spin of `m` qubits, `S_z = ½Σσ_z`, `S± = ½Σσ±` with
/// `σ± = σ_x ± iσ_y`, together with the Dicke isometry onto the symmetric
/// subspace.
///
/// Qubit basis index 0 is `|↑⟩` (`σ_z = +1`); qubit 0 is the most significant.
#[derive(Clone, Debug)]
pub struct CollectiveSpin {
    pub qubits: usize,
    pub sz: Operator,
    pub splus: Operator,
    pub sminus: Operator,
    /// `2^m × (m+1)` isometry; column `j` is the normalized symmetric state
    /// with `j` spins down.
    pub isometry: DMatrix<C64>,
}

fn embed(single: &Operator, site: usize, m: usize) -> Operator {
    (0..m).fold(None::<Operator>, |acc, j| {
        let factor = if j == site { single.clone() } else { Operator::identity(2) };
        Some(match acc {
            None => factor,
            Some(a) => a.kron(&factor),
        })
    })
    .expect("m >= 1")
}

fn binomial(m: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (m - i) as f64 / (i + 1) as f64)
}

pub fn collective_spin_from_qubits(m: usize) -> Result<CollectiveSpin> {
    if m == 0 {
        return Err(Error::domain("need at least one qubit"));
    }
    let z = C64::new(0.0, 0.0);
    let sigma_z = Operator::real_diagonal(&[1.0, -1.0]);
    let sigma_plus = Operator::from_rows(2, &[z, C64::new(2.0, 0.0), z, z])?;
    let sigma_minus = sigma_plus.adjoint();
    let dim = 1usize << m;
    let half = C64::new(0.5, 0.0);
    let sum = |single: &Operator| {
        (0..m)
            .map(|j| embed(single, j, m))
            .fold(Operator::zeros(dim), |acc, op| &acc + &op)
            .scale(half)
    };
    let mut isometry = DMatrix::zeros(dim, m + 1);
    for basis in 0..dim {
        let downs = basis.count_ones() as usize;
        isometry[(basis, downs)] = C64::new(1.0 / binomial(m, downs).sqrt(), 0.0);
    }
    Ok(CollectiveSpin {
        qubits: m,
        sz: sum(&sigma_z),
        splus: sum(&sigma_plus),
        sminus: sum(&sigma_minus),
        isometry,
    })
}

impl CollectiveSpin {
    pub fn spin(&self) -> Spin {
        Spin::from_twice(self.qubits as u32)
    }

    fn compress(&self, op: &Operator) -> Operator {
        let w = &self.isometry;
        Operator::from_matrix(w.adjoint() * op.matrix() * w).expect("square")
    }

    /// `(W†S_zW, W†S+W, W†S−W)`.
    pub fn compressed(&self) -> (Operator, Operator, Operator) {
        (self.compress(&self.sz), self.compress(&self.splus), self.compress(&self.sminus))
    }

    /// Largest entrywise difference between the compressed collective
    /// operators and `spin_operators(m/2)`.
    pub fn equivalence_error(&self) -> f64 {
        let reference = spin_operators(self.spin());
        let (sz, sp, sm) = self.compressed();
        sz.max_abs_diff(&reference.sz)
            .max(sp.max_abs_diff(&reference.splus))
            .max(sm.max_abs_diff(&reference.sminus))
    }

    /// Commutation defect of the full `2^m`-dimensional collective operators.
    pub fn commutation_defect(&self) -> f64 {
        commutation_defect(&self.sz, &self.splus, &self.sminus)
    }

    /// `‖W†W − 1‖_max`.
    pub fn isometry_defect(&self) -> f64 {
        let wtw = self.isometry.adjoint() * &self.isometry;
        Operator::from_matrix(wtw)
            .expect("square")
            .max_abs_diff(&Operator::identity(self.qubits + 1))
    }

    /// Frobenius norm of `(1 − P_sym) e^{-iHt} (1 ⊗ W)` for the
    /// Jaynes-Cummings `H` built from these collective operators.
    pub fn symmetric_leakage(&self, spec: &HamiltonianSpec, t: f64) -> Result<f64> {
        let h = jc_hamiltonian_from(spec, &self.sz, &self.splus)?;
        let u = evolve(&h, t)?;
        let photon_id = DMatrix::<C64>::identity(spec.cutoff + 1, spec.cutoff + 1);
        let lift = photon_id.kronecker(&self.isometry);
        let image = u.matrix() * &lift;
        let leaked = &image - &lift * (lift.adjoint() * &image);
        Ok(leaked.norm())
    }
}
