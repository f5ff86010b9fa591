use std::fmt;

use crate::hilbert::{Operator, C64};
use crate::{Error, Result, CONSTRUCTION_TOL};

/// Spin quantum number stored as `2s`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Spin {
    twice: u32,
}

impl Spin {
    pub fn new(s: f64) -> Result<Self> {
        let twice = 2.0 * s;
        if !twice.is_finite() || twice < 0.0 || (twice - twice.round()).abs() > 1e-9 {
            return Err(Error::domain(format!("spin {s} is not a non-negative half-integer")));
        }
        Ok(Spin {
            twice: twice.round() as u32,
        })
    }

    pub fn from_twice(twice: u32) -> Self {
        Spin { twice }
    }

    /// Spin whose multiplet has dimension `dim = 2s + 1`.
    pub fn from_dim(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::domain("spin multiplet dimension must be positive"));
        }
        Ok(Spin {
            twice: (dim - 1) as u32,
        })
    }

    pub fn value(self) -> f64 {
        f64::from(self.twice) / 2.0
    }

    pub fn twice(self) -> u32 {
        self.twice
    }

    pub fn dim(self) -> usize {
        self.twice as usize + 1
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice.is_multiple_of(2) {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

/// Spin-`s` operators in the basis `m = s, s−1, …, −s` (index 0 is `m = s`).
#[derive(Clone, Debug)]
pub struct SpinOps {
    pub spin: Spin,
    pub sz: Operator,
    pub splus: Operator,
    pub sminus: Operator,
}

impl SpinOps {
    pub fn dim(&self) -> usize {
        self.spin.dim()
    }

    /// `max(‖[S+,S−] − 2Sz‖, ‖[Sz,S+] − S+‖, ‖[Sz,S−] + S−‖)`, entrywise.
    pub fn commutation_defect(&self) -> f64 {
        commutation_defect(&self.sz, &self.splus, &self.sminus)
    }
}

pub(crate) fn commutation_defect(sz: &Operator, splus: &Operator, sminus: &Operator) -> f64 {
    let two = C64::new(2.0, 0.0);
    let ladder = Operator::commutator(splus, sminus).max_abs_diff(&sz.scale(two));
    let raise = Operator::commutator(sz, splus).max_abs_diff(splus);
    let lower = Operator::commutator(sz, sminus).max_abs_diff(&sminus.scale(C64::new(-1.0, 0.0)));
    ladder.max(raise).max(lower)
}

pub fn spin_operators(spin: Spin) -> SpinOps {
    let s = spin.value();
    let dim = spin.dim();
    let m = |i: usize| s - i as f64;
    let sz = Operator::real_diagonal(&(0..dim).map(m).collect::<Vec<_>>());
    // ⟨m+1|S+|m⟩ = sqrt(s(s+1) − m(m+1)); row i−1, column i
    let splus = Operator::from_fn(dim, |r, c| {
        if c == r + 1 {
            let mc = m(c);
            C64::new((s * (s + 1.0) - mc * (mc + 1.0)).sqrt(), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let sminus = splus.adjoint();
    let ops = SpinOps {
        spin,
        sz,
        splus,
        sminus,
    };
    debug_assert!(ops.commutation_defect() < CONSTRUCTION_TOL * (1.0 + s * s));
    ops
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin_half() {
        let ops = spin_operators(Spin::new(0.5).unwrap());
        assert_eq!(ops.sz, Operator::real_diagonal(&[0.5, -0.5]));
        assert_eq!(ops.splus.get(0, 1), C64::new(1.0, 0.0));
        assert_eq!(ops.splus.get(1, 0), C64::new(0.0, 0.0));
    }

    #[test]
    fn spin_one() {
        let ops = spin_operators(Spin::new(1.0).unwrap());
        assert_eq!(ops.sz, Operator::real_diagonal(&[1.0, 0.0, -1.0]));
        let r2 = 2f64.sqrt();
        assert!((ops.splus.get(0, 1) - C64::new(r2, 0.0)).norm() < 1e-15);
        assert!((ops.splus.get(1, 2) - C64::new(r2, 0.0)).norm() < 1e-15);
        assert_eq!(ops.splus.get(0, 2), C64::new(0.0, 0.0));
    }

    #[test]
    fn commutation_relations() {
        for twice in 1..=7 {
            let ops = spin_operators(Spin::from_twice(twice));
            assert!(ops.commutation_defect() < 1e-12, "2s={twice}");
            assert_eq!(ops.sminus, ops.splus.adjoint());
        }
    }

    #[test]
    fn rejects_non_half_integers() {
        assert!(matches!(Spin::new(0.3), Err(Error::Domain(_))));
        assert!(Spin::new(-0.5).is_err());
        assert!(Spin::new(f64::NAN).is_err());
        assert_eq!(Spin::new(1.5).unwrap().dim(), 4);
        assert_eq!(Spin::from_dim(3).unwrap(), Spin::new(1.0).unwrap());
        assert_eq!(Spin::new(2.5).unwrap().to_string(), "5/2");
    }
}
