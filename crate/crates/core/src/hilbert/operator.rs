use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::{Error, Result};

pub type C64 = Complex64;

/// Dense square complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    entries: DMatrix<C64>,
}

impl Operator {
    pub fn from_matrix(entries: DMatrix<C64>) -> Result<Self> {
        if entries.nrows() != entries.ncols() || entries.nrows() == 0 {
            return Err(Error::domain(format!(
                "operator must be square and non-empty, got {}x{}",
                entries.nrows(),
                entries.ncols()
            )));
        }
        Ok(Operator { entries })
    }

    pub fn from_fn(dim: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        Operator {
            entries: DMatrix::from_fn(dim, dim, f),
        }
    }

    /// Row-major entries.
    pub fn from_rows(dim: usize, rows: &[C64]) -> Result<Self> {
        if rows.len() != dim * dim {
            return Err(Error::domain(format!(
                "expected {} entries, got {}",
                dim * dim,
                rows.len()
            )));
        }
        Self::from_matrix(DMatrix::from_row_slice(dim, dim, rows))
    }

    pub fn identity(dim: usize) -> Self {
        Operator {
            entries: DMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Operator {
            entries: DMatrix::zeros(dim, dim),
        }
    }

    pub fn diagonal(diag: &[C64]) -> Self {
        Operator {
            entries: DMatrix::from_diagonal(&DVector::from_column_slice(diag)),
        }
    }

    pub fn real_diagonal(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self::diagonal(&d)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.entries[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Operator {
            entries: self.entries.adjoint(),
        }
    }

    /// Tensor product `self ⊗ other`, `self` on the more significant factor.
    pub fn kron(&self, other: &Operator) -> Self {
        Operator {
            entries: self.entries.kronecker(&other.entries),
        }
    }

    pub fn scale(&self, factor: C64) -> Self {
        Operator {
            entries: &self.entries * factor,
        }
    }

    pub fn pow(&self, exponent: u32) -> Self {
        (0..exponent).fold(Self::identity(self.dim()), |acc, _| &acc * self)
    }

    pub fn apply_to(&self, v: &DVector<C64>) -> DVector<C64> {
        &self.entries * v
    }

    /// `[a, b] = ab − ba`.
    pub fn commutator(a: &Operator, b: &Operator) -> Self {
        &(a * b) - &(b * a)
    }

    /// Largest entry modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest singular value.
    pub fn spectral_norm(&self) -> f64 {
        self.entries
            .clone()
            .singular_values()
            .iter()
            .copied()
            .fold(0.0, f64::max)
    }

    /// `‖U†U − 1‖_max`.
    pub fn unitarity_defect(&self) -> f64 {
        (&self.adjoint() * self).max_abs_diff(&Self::identity(self.dim()))
    }

    /// `‖H − H†‖_max`.
    pub fn hermiticity_defect(&self) -> f64 {
        self.max_abs_diff(&self.adjoint())
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() < tol
    }

    /// Square sub-block on rows/cols `[0, len)`.
    pub fn leading_block(&self, len: usize) -> Self {
        Operator {
            entries: self.entries.view((0, 0), (len, len)).into_owned(),
        }
    }

    /// Sub-matrix on an arbitrary set of basis indices.
    pub fn restrict(&self, indices: &[usize]) -> Self {
        Self::from_fn(indices.len(), |r, c| self.entries[(indices[r], indices[c])])
    }
}

impl<'a> Mul<&'a Operator> for &'a Operator {
    type Output = Operator;
    fn mul(self, rhs: &'a Operator) -> Operator {
        Operator {
            entries: &self.entries * &rhs.entries,
        }
    }
}

impl Mul for Operator {
    type Output = Operator;
    fn mul(self, rhs: Operator) -> Operator {
        &self * &rhs
    }
}

impl<'a> Add<&'a Operator> for &'a Operator {
    type Output = Operator;
    fn add(self, rhs: &'a Operator) -> Operator {
        Operator {
            entries: &self.entries + &rhs.entries,
        }
    }
}

impl Add for Operator {
    type Output = Operator;
    fn add(self, rhs: Operator) -> Operator {
        &self + &rhs
    }
}

impl<'a> Sub<&'a Operator> for &'a Operator {
    type Output = Operator;
    fn sub(self, rhs: &'a Operator) -> Operator {
        Operator {
            entries: &self.entries - &rhs.entries,
        }
    }
}

impl Sub for Operator {
    type Output = Operator;
    fn sub(self, rhs: Operator) -> Operator {
        &self - &rhs
    }
}
