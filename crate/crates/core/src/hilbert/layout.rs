use crate::{Error, Result};

/// Ordered subsystem dimensions defining a mixed-radix index space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubsystemLayout {
    dims: Vec<usize>,
    strides: Vec<usize>,
    total_dim: usize,
}

impl SubsystemLayout {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::domain("layout needs at least one subsystem"));
        }
        if let Some(d) = dims.iter().find(|&&d| d < 2) {
            return Err(Error::domain(format!("subsystem dimension {d} < 2")));
        }
        let mut strides = vec![1usize; dims.len()];
        for i in (0..dims.len() - 1).rev() {
            strides[i] = strides[i + 1]
                .checked_mul(dims[i + 1])
                .ok_or_else(|| Error::domain("layout too large"))?;
        }
        let total_dim = strides[0]
            .checked_mul(dims[0])
            .ok_or_else(|| Error::domain("layout too large"))?;
        Ok(SubsystemLayout {
            dims,
            strides,
            total_dim,
        })
    }

    /// `n` qubits.
    pub fn qubits(n: usize) -> Result<Self> {
        Self::new(vec![2; n])
    }

    /// This layout with one more subsystem of dimension `dim` appended.
    pub fn with(&self, dim: usize) -> Result<Self> {
        let mut dims = self.dims.clone();
        dims.push(dim);
        Self::new(dims)
    }

    /// This layout with `subsystem` removed.
    pub fn without(&self, subsystem: usize) -> Result<Self> {
        if subsystem >= self.dims.len() {
            return Err(Error::domain(format!("no subsystem {subsystem}")));
        }
        let mut dims = self.dims.clone();
        dims.remove(subsystem);
        Self::new(dims)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    /// Flat-index weight of one unit in `subsystem`.
    pub fn stride(&self, subsystem: usize) -> usize {
        self.strides[subsystem]
    }

    /// Digit of `subsystem` in flat index `index`. No range checks.
    pub fn digit(&self, index: usize, subsystem: usize) -> usize {
        (index / self.strides[subsystem]) % self.dims[subsystem]
    }

    pub fn basis_index(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.dims.len() {
            return Err(Error::domain(format!(
                "expected {} digits, got {}",
                self.dims.len(),
                digits.len()
            )));
        }
        digits
            .iter()
            .zip(&self.dims)
            .enumerate()
            .try_fold(0usize, |acc, (i, (&d, &dim))| {
                if d >= dim {
                    Err(Error::domain(format!(
                        "digit {d} out of range for subsystem {i} of dim {dim}"
                    )))
                } else {
                    Ok(acc * dim + d)
                }
            })
    }

    pub fn digits_of(&self, index: usize) -> Result<Vec<usize>> {
        if index >= self.total_dim {
            return Err(Error::domain(format!(
                "index {index} out of range for dim {}",
                self.total_dim
            )));
        }
        Ok((0..self.dims.len()).map(|s| self.digit(index, s)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn encodes_most_significant_first() {
        let layout = SubsystemLayout::new(vec![2, 2, 3]).unwrap();
        assert_eq!(layout.total_dim(), 12);
        assert_eq!(layout.basis_index(&[0, 0, 0]).unwrap(), 0);
        assert_eq!(layout.basis_index(&[1, 1, 2]).unwrap(), 11);
        assert_eq!(layout.digits_of(11).unwrap(), vec![1, 1, 2]);
    }

    #[test]
    fn round_trips_small_layout() {
        let layout = SubsystemLayout::new(vec![2, 3]).unwrap();
        for a in 0..2 {
            for b in 0..3 {
                let idx = layout.basis_index(&[a, b]).unwrap();
                assert_eq!(layout.digits_of(idx).unwrap(), vec![a, b]);
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(SubsystemLayout::new(vec![2, 1]).is_err());
        assert!(SubsystemLayout::new(vec![]).is_err());
        let layout = SubsystemLayout::new(vec![2, 3]).unwrap();
        assert!(matches!(layout.basis_index(&[0, 3]), Err(Error::Domain(_))));
        assert!(layout.basis_index(&[0]).is_err());
        assert!(layout.digits_of(6).is_err());
    }

    #[test]
    fn without_drops_subsystem() {
        let layout = SubsystemLayout::new(vec![2, 2, 3]).unwrap();
        assert_eq!(layout.without(2).unwrap().dims(), &[2, 2]);
        assert_eq!(layout.with(5).unwrap().dims(), &[2, 2, 3, 5]);
    }

    proptest! {
        #[test]
        fn digits_bijection(dims in proptest::collection::vec(2usize..5, 1..5), seed in any::<u64>()) {
            let layout = SubsystemLayout::new(dims).unwrap();
            let idx = (seed as usize) % layout.total_dim();
            let digits = layout.digits_of(idx).unwrap();
            prop_assert_eq!(layout.basis_index(&digits).unwrap(), idx);
        }
    }
}
