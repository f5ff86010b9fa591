use super::expm::exp_anti_hermitian;
use super::hamiltonian::{generalized_jc_hamiltonian, HamiltonianSpec};
use crate::hilbert::{Operator, C64};
use crate::{Error, Result};

fn real(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// `V = exp[2g(a S+ − a† S−)/Δ]`.
pub fn dressing_transform(spec: &HamiltonianSpec) -> Result<Operator> {
    spec.validate_dispersive()?;
    let fock = spec.fock()?;
    let ops = spec.spin_ops();
    let generator = &fock.a.kron(&ops.splus) - &fock.adag.kron(&ops.sminus);
    exp_anti_hermitian(&generator.scale(real(2.0 * spec.coupling / spec.detuning())))
}

/// `V H V†` for the generalized Jaynes-Cummings `H`.
pub fn transformed_hamiltonian(spec: &HamiltonianSpec) -> Result<Operator> {
    let v = dressing_transform(spec)?;
    let h = generalized_jc_hamiltonian(spec)?;
    Ok(&(&v * &h) * &v.adjoint())
}

/// `ω a†a + Ω S_z + (4g²/Δ)(S+ S− + 2 a†a S_z)`.
pub fn second_order_hamiltonian(spec: &HamiltonianSpec) -> Result<Operator> {
    spec.validate_dispersive()?;
    let fock = spec.fock()?;
    let ops = spec.spin_ops();
    let spin_id = Operator::identity(ops.dim());
    let bare = &fock.number.kron(&spin_id).scale(real(spec.cavity_freq))
        + &Operator::identity(fock.dim()).kron(&ops.sz).scale(real(spec.spin_freq));
    let shift = &Operator::identity(fock.dim()).kron(&(&ops.splus * &ops.sminus))
        + &fock.number.kron(&ops.sz).scale(real(2.0));
    let g = spec.coupling;
    Ok(&bare + &shift.scale(real(4.0 * g * g / spec.detuning())))
}

/// Size of the `photon ≤ cutoff/2` block used for all dispersive comparisons.
pub fn low_photon_block(spec: &HamiltonianSpec) -> usize {
    (spec.cutoff / 2 + 1) * spec.spin.dim()
}

/// Spectral norm of `V H V† − H₂` on the low-photon block, at `spec.coupling`.
pub fn dispersive_residual_at(spec: &HamiltonianSpec) -> Result<f64> {
    let diff = &transformed_hamiltonian(spec)? - &second_order_hamiltonian(spec)?;
    Ok(diff.leading_block(low_photon_block(spec)).spectral_norm())
}

/// Least-squares slope of `ln y` against `ln x`; `None` with fewer than two
/// points or non-positive data.
pub fn fit_log_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 || xs.iter().chain(ys).any(|&v| v <= 0.0 || !v.is_finite()) {
        return None;
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    Some(sxy / sxx)
}

/// Residual sweep over `g` with a fitted scaling exponent.
#[derive(Clone, Debug)]
pub struct DispersiveReport {
    /// `(g, residual)` in input order.
    pub residuals: Vec<(f64, f64)>,
    /// Slope of log-residual vs log-g, when at least two points exist.
    pub slope: Option<f64>,
}

/// Evaluates [`dispersive_residual_at`] for each coupling in `g_values`.
pub fn dispersive_residual(spec: &HamiltonianSpec, g_values: &[f64]) -> Result<DispersiveReport> {
    spec.validate_dispersive()?;
    if g_values.iter().any(|&g| !g.is_finite() || g <= 0.0) {
        return Err(Error::domain("coupling values must be positive"));
    }
    let residuals = g_values
        .iter()
        .map(|&g| {
            let at = HamiltonianSpec { coupling: g, ..*spec };
            dispersive_residual_at(&at).map(|r| (g, r))
        })
        .collect::<Result<Vec<_>>>()?;
    let (gs, rs): (Vec<f64>, Vec<f64>) = residuals.iter().copied().unzip();
    Ok(DispersiveReport {
        slope: fit_log_slope(&gs, &rs),
        residuals,
    })
}

/// Finite-difference check of the expansion of `V H V†` in `g` around zero,
/// restricted to the low-photon block.
#[derive(Clone, Copy, Debug)]
pub struct SeriesCheck {
    /// `max |(H'(h) − H'(−h)) / 2h|`: the first-order term, which must vanish.
    pub first_order: f64,
    /// `max |(H'(h) + H'(−h) − 2H₀)/h² − (8/Δ)(S+S− + 2a†aS_z)|`.
    pub second_order: f64,
    /// Largest entry of the closed-form second-order coefficient.
    pub second_order_scale: f64,
}

/// Numerically confirms the first two orders of the dispersive expansion by
/// central differences with step `h` in `g`.
pub fn confirm_series(spec: &HamiltonianSpec, h: f64) -> Result<SeriesCheck> {
    spec.validate_dispersive()?;
    let at = |g: f64| transformed_hamiltonian(&HamiltonianSpec { coupling: g, ..*spec });
    let block = low_photon_block(spec);
    let plus = at(h)?.leading_block(block);
    let minus = at(-h)?.leading_block(block);
    let bare = at(0.0)?.leading_block(block);
    let first = (&plus - &minus).scale(real(1.0 / (2.0 * h)));
    let second = (&(&plus + &minus) - &bare.scale(real(2.0))).scale(real(1.0 / (h * h)));

    // d²/dg² of (4g²/Δ)·K is (8/Δ)·K
    let unit = HamiltonianSpec { coupling: 1.0, ..*spec };
    let closed = (&second_order_hamiltonian(&unit)? - &second_order_hamiltonian(&HamiltonianSpec { coupling: 0.0, ..*spec })?)
        .leading_block(block)
        .scale(real(2.0));
    Ok(SeriesCheck {
        first_order: first.max_abs(),
        second_order: second.max_abs_diff(&closed),
        second_order_scale: closed.max_abs(),
    })
}
