use std::f64::consts::PI;

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{Operator, C64};
use crate::{Error, Result};

fn check_dim(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::domain(format!("dimension {n} < 2")));
    }
    Ok(())
}

/// `ω^k` with `ω = e^{2πi/n}`; the exponent is reduced mod `n` first.
pub fn omega_pow(n: usize, k: i64) -> C64 {
    let r = k.rem_euclid(n as i64);
    C64::from_polar(1.0, 2.0 * PI * r as f64 / n as f64)
}

/// Principal branch `ω^{1/2} = e^{iπ/n}`.
pub fn sqrt_omega(n: usize) -> C64 {
    C64::from_polar(1.0, PI / n as f64)
}

/// Cyclic shift `X_n|k⟩ = |k+1 mod n⟩`.
pub fn pauli_x(n: usize) -> Result<Operator> {
    check_dim(n)?;
    Ok(Operator::from_fn(n, |r, c| {
        if r == (c + 1) % n {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    }))
}

/// Clock `Z_n = diag(1, ω, …, ω^{n-1})`.
pub fn pauli_z(n: usize) -> Result<Operator> {
    check_dim(n)?;
    let diag: Vec<C64> = (0..n as i64).map(|k| omega_pow(n, k)).collect();
    Ok(Operator::diagonal(&diag))
}

/// Qudit Fourier transform `F|k⟩ = n^{-1/2} Σ_j ω^{kj}|j⟩`.
pub fn fourier(n: usize) -> Result<Operator> {
    check_dim(n)?;
    let norm = 1.0 / (n as f64).sqrt();
    Ok(Operator::from_fn(n, |j, k| omega_pow(n, (j * k) as i64) * norm))
}

/// Qubit phase gate `P^a = diag(1, ω^a)` with `ω = e^{2πi/n}`.
pub fn phase_p(n: usize, a: usize) -> Result<Operator> {
    check_dim(n)?;
    Ok(Operator::diagonal(&[
        C64::new(1.0, 0.0),
        omega_pow(n, a as i64),
    ]))
}

/// Haar-distributed unitary from the QR decomposition of a complex Gaussian
/// matrix, with the phases of `R`'s diagonal folded back into `Q`.
pub fn random_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Operator {
    let g = DMatrix::from_fn(dim, dim, |_, _| {
        C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    Operator::from_matrix(q).expect("QR of a square matrix is square")
}
