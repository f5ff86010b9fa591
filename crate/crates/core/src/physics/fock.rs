use crate::hilbert::{Operator, C64};
use crate::{Error, Result};

/// Truncated single-mode ladder operators on photon numbers `0..=cutoff`.
///
/// `[a, a†] = 1` holds on every level below the cutoff; on the top level it
/// evaluates to `−cutoff` instead.
#[derive(Clone, Debug)]
pub struct FockOps {
    pub cutoff: usize,
    pub a: Operator,
    pub adag: Operator,
    pub number: Operator,
}

impl FockOps {
    pub fn new(cutoff: usize) -> Result<Self> {
        if cutoff < 1 {
            return Err(Error::domain("photon cutoff must be at least 1"));
        }
        let dim = cutoff + 1;
        let a = Operator::from_fn(dim, |r, c| {
            if c == r + 1 {
                C64::new((c as f64).sqrt(), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let adag = a.adjoint();
        let number = &adag * &a;
        Ok(FockOps {
            cutoff,
            a,
            adag,
            number,
        })
    }

    pub fn dim(&self) -> usize {
        self.cutoff + 1
    }
}
