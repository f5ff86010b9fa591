use nalgebra::DVector;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{SubsystemLayout, C64};
use crate::{Error, Result, CONSTRUCTION_TOL, ZERO_PROBABILITY};

/// Normalized amplitude vector over a [`SubsystemLayout`].
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    layout: SubsystemLayout,
    amps: DVector<C64>,
}

impl StateVector {
    /// Rejects amplitude vectors of the wrong length or with `|Σ|a|² − 1| ≥ 1e-12`.
    pub fn new(layout: SubsystemLayout, amps: Vec<C64>) -> Result<Self> {
        let state = Self::checked_len(layout, amps)?;
        let norm_sqr = state.amps.norm_squared();
        if (norm_sqr - 1.0).abs() >= CONSTRUCTION_TOL {
            return Err(Error::domain(format!("state has squared norm {norm_sqr}")));
        }
        Ok(state)
    }

    pub fn from_unnormalized(layout: SubsystemLayout, amps: Vec<C64>) -> Result<Self> {
        let mut state = Self::checked_len(layout, amps)?;
        let norm = state.amps.norm();
        if norm < ZERO_PROBABILITY {
            return Err(Error::domain("cannot normalize the zero vector"));
        }
        state.amps /= C64::new(norm, 0.0);
        Ok(state)
    }

    fn checked_len(layout: SubsystemLayout, amps: Vec<C64>) -> Result<Self> {
        if amps.len() != layout.total_dim() {
            return Err(Error::domain(format!(
                "expected {} amplitudes, got {}",
                layout.total_dim(),
                amps.len()
            )));
        }
        Ok(StateVector {
            layout,
            amps: DVector::from_vec(amps),
        })
    }

    pub(crate) fn from_parts(layout: SubsystemLayout, amps: DVector<C64>) -> Self {
        debug_assert_eq!(layout.total_dim(), amps.len());
        StateVector { layout, amps }
    }

    pub fn basis(layout: SubsystemLayout, digits: &[usize]) -> Result<Self> {
        let idx = layout.basis_index(digits)?;
        Self::basis_index(layout, idx)
    }

    pub fn basis_index(layout: SubsystemLayout, index: usize) -> Result<Self> {
        if index >= layout.total_dim() {
            return Err(Error::domain(format!("basis index {index} out of range")));
        }
        let mut amps = DVector::zeros(layout.total_dim());
        amps[index] = C64::new(1.0, 0.0);
        Ok(StateVector { layout, amps })
    }

    /// Uniformly random pure state (normalized complex Gaussian vector).
    pub fn random<R: Rng + ?Sized>(layout: SubsystemLayout, rng: &mut R) -> Self {
        let amps: Vec<C64> = (0..layout.total_dim())
            .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        Self::from_unnormalized(layout, amps).expect("gaussian vector is nonzero")
    }

    pub fn layout(&self) -> &SubsystemLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amps.dotc(&other.amps)
    }

    pub fn max_abs_diff(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Multiplies every amplitude by `factor` (meant for unit-modulus phases).
    pub fn scaled(&self, factor: C64) -> Self {
        StateVector {
            layout: self.layout.clone(),
            amps: &self.amps * factor,
        }
    }

    /// `self ⊗ other`, with `other`'s subsystems appended after ours.
    pub fn tensor(&self, other: &StateVector) -> Result<Self> {
        let mut dims = self.layout.dims().to_vec();
        dims.extend_from_slice(other.layout.dims());
        let layout = SubsystemLayout::new(dims)?;
        let amps = self.amps.kronecker(&other.amps);
        Ok(StateVector { layout, amps })
    }

    /// Projects `subsystem` onto `digit` and removes it.
    ///
    /// Returns the outcome probability and the renormalized state on the
    /// remaining subsystems.
    pub fn project_out(&self, subsystem: usize, digit: usize) -> Result<(f64, StateVector)> {
        if subsystem >= self.layout.len() {
            return Err(Error::domain(format!("no subsystem {subsystem}")));
        }
        if digit >= self.layout.dims()[subsystem] {
            return Err(Error::domain(format!(
                "digit {digit} out of range for subsystem {subsystem}"
            )));
        }
        let rest = self.layout.without(subsystem)?;
        let kept: Vec<C64> = (0..self.layout.total_dim())
            .filter(|&i| self.layout.digit(i, subsystem) == digit)
            .map(|i| self.amps[i])
            .collect();
        let probability: f64 = kept.iter().map(|a| a.norm_sqr()).sum();
        if probability < ZERO_PROBABILITY {
            return Err(Error::ZeroProbabilityBranch {
                outcome: digit,
                probability,
            });
        }
        let scale = C64::new(1.0 / probability.sqrt(), 0.0);
        let amps = DVector::from_iterator(kept.len(), kept.into_iter().map(|a| a * scale));
        Ok((probability, StateVector { layout: rest, amps }))
    }

    /// Probability of reading each value of `subsystem`.
    pub fn marginal(&self, subsystem: usize) -> Result<Vec<f64>> {
        if subsystem >= self.layout.len() {
            return Err(Error::domain(format!("no subsystem {subsystem}")));
        }
        let mut probs = vec![0.0; self.layout.dims()[subsystem]];
        for (i, a) in self.amps.iter().enumerate() {
            probs[self.layout.digit(i, subsystem)] += a.norm_sqr();
        }
        Ok(probs)
    }
}

/// Outcome of [`ancilla_overlap`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AncillaOverlap {
    /// Probability of reading the target digit.
    pub probability: f64,
    /// Norm of all amplitude with the ancilla digit ≠ target; zero when the
    /// state factors as `|φ⟩ ⊗ |target⟩`.
    pub residual: f64,
}

pub fn ancilla_overlap(state: &StateVector, ancilla: usize, target_digit: usize) -> Result<AncillaOverlap> {
    let layout = state.layout();
    if ancilla >= layout.len() {
        return Err(Error::domain(format!("no subsystem {ancilla}")));
    }
    if target_digit >= layout.dims()[ancilla] {
        return Err(Error::domain(format!("digit {target_digit} out of range")));
    }
    let (mut hit, mut miss) = (0.0, 0.0);
    for (i, a) in state.amplitudes().iter().enumerate() {
        if layout.digit(i, ancilla) == target_digit {
            hit += a.norm_sqr();
        } else {
            miss += a.norm_sqr();
        }
    }
    Ok(AncillaOverlap {
        probability: hit,
        residual: miss.sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rejects_unnormalized_and_wrong_length() {
        let layout = SubsystemLayout::new(vec![2]).unwrap();
        let one = C64::new(1.0, 0.0);
        assert!(StateVector::new(layout.clone(), vec![one, one]).is_err());
        assert!(StateVector::new(layout.clone(), vec![one]).is_err());
        let s = StateVector::from_unnormalized(layout, vec![one, one]).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn product_state_factorizes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let psi = StateVector::random(SubsystemLayout::qubits(2).unwrap(), &mut rng);
        let anc = StateVector::basis(SubsystemLayout::new(vec![3]).unwrap(), &[2]).unwrap();
        let joint = psi.tensor(&anc).unwrap();
        let ov = ancilla_overlap(&joint, 2, 2).unwrap();
        assert!((ov.probability - 1.0).abs() < 1e-12);
        assert_eq!(ov.residual, 0.0);
        let (p, back) = joint.project_out(2, 2).unwrap();
        assert!((p - 1.0).abs() < 1e-12);
        assert!(back.max_abs_diff(&psi) < 1e-15);
    }

    #[test]
    fn bell_like_qubit_qutrit_overlap() {
        let layout = SubsystemLayout::new(vec![2, 3]).unwrap();
        let mut amps = vec![C64::new(0.0, 0.0); 6];
        let h = 1.0 / 2f64.sqrt();
        amps[layout.basis_index(&[0, 0]).unwrap()] = C64::new(h, 0.0);
        amps[layout.basis_index(&[1, 1]).unwrap()] = C64::new(h, 0.0);
        let state = StateVector::new(layout, amps).unwrap();
        let ov = ancilla_overlap(&state, 1, 0).unwrap();
        assert!((ov.probability - 0.5).abs() < 1e-15);
        assert!((ov.residual - h).abs() < 1e-15);
    }

    #[test]
    fn zero_probability_projection_errors() {
        let layout = SubsystemLayout::new(vec![2, 3]).unwrap();
        let s = StateVector::basis(layout, &[1, 0]).unwrap();
        assert!(matches!(
            s.project_out(1, 2),
            Err(Error::ZeroProbabilityBranch { outcome: 2, .. })
        ));
    }

    #[test]
    fn marginal_sums_to_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let s = StateVector::random(SubsystemLayout::new(vec![2, 3, 4]).unwrap(), &mut rng);
        let total: f64 = s.marginal(2).unwrap().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }
}
