//! Exponentials of Hermitian and anti-Hermitian matrices via Hermitian
//! eigendecomposition: `e^{-iHt} = Q diag(e^{-iλt}) Q†`.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::hilbert::{Operator, C64};
use crate::{Error, Result};

/// Maximum `‖H − H†‖_max` accepted by [`evolve`].
pub const HERMITIAN_TOL: f64 = 1e-10;

/// `e^{-iHt}` for Hermitian `H`.
pub fn evolve(h: &Operator, t: f64) -> Result<Operator> {
    let defect = h.hermiticity_defect();
    if defect >= HERMITIAN_TOL {
        return Err(Error::domain(format!("operator is not Hermitian (defect {defect:e})")));
    }
    let half = C64::new(0.5, 0.0);
    let sym: DMatrix<C64> = (h.matrix() + h.matrix().adjoint()) * half;
    let eig = SymmetricEigen::new(sym);
    let q = &eig.eigenvectors;
    let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|e| C64::from_polar(1.0, -e * t)));
    Operator::from_matrix(q * phases * q.adjoint())
}

/// `e^{A}` for anti-Hermitian `A`, through the Hermitian `K = iA`.
pub fn exp_anti_hermitian(a: &Operator) -> Result<Operator> {
    let k = a.scale(C64::new(0.0, 1.0));
    evolve(&k, 1.0)
}
