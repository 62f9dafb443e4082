//! Dense complex matrices for Hilbert spaces of dimension 2 through 16.
//!
//! Everything the engine needs (Pauli operators, Kronecker products, partial
//! traces, Hermitian eigendecompositions and matrix functions) lives here, so
//! the rest of the crate has no external numerical dependency beyond the
//! complex scalar type.

mod eigen;
mod pauli;

pub use eigen::{hermitian_eig, hermitian_function, EigenDecomposition};
pub use pauli::{pauli, PauliAxis};

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::{Error, Result};

/// Largest dimension produced by [`kron`].
pub const MAX_DIM: usize = 16;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    entries: Vec<Complex64>,
}

/// Which factor of the two-qubit space `medium ⊗ battery` to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subsystem {
    Medium,
    Battery,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            entries: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    /// Builds a matrix from row-major entries. The length must be a non-zero
    /// perfect square.
    pub fn from_vec(entries: Vec<Complex64>) -> Result<Self> {
        let dim = (entries.len() as f64).sqrt().round() as usize;
        if dim == 0 || dim * dim != entries.len() {
            return Err(Error::DimensionMismatch {
                expected: dim.max(1) * dim.max(1),
                found: entries.len(),
            });
        }
        Ok(Self { dim, entries })
    }

    /// Row-major real entries, convenient for tests and fixtures.
    pub fn from_real(entries: &[f64]) -> Result<Self> {
        Self::from_vec(entries.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn from_diag(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn from_real_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Entrywise complex conjugate (in the computational basis).
    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_dim(other)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out.entries[i * n + j] += a * other.entries[k * n + j];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|&z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// `U·self·U†`.
    pub fn conjugate_by(&self, unitary: &Self) -> Result<Self> {
        unitary.matmul(self)?.matmul(&unitary.dagger())
    }

    /// Max-abs entrywise difference. Panics on mismatched dimensions.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch in max_abs_diff");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `max |A_ij − conj(A_ji)|`.
    pub fn hermitian_asymmetry(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `max |U†U − I|`.
    pub fn unitarity_error(&self) -> f64 {
        let gram = self.dagger().matmul(self).expect("same dimension");
        gram.max_abs_diff(&Self::identity(self.dim))
    }

    pub(crate) fn check_hermitian(&self, tolerance: f64) -> Result<()> {
        let asymmetry = self.hermitian_asymmetry();
        if asymmetry > tolerance {
            return Err(Error::NotHermitian { asymmetry });
        }
        Ok(())
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        self.check_same_dim(other)?;
        Ok(Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.entries[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.entries[r * self.dim + c]
    }
}

// Operator forms panic on dimension mismatch; use the named methods for a
// `Result`.
impl Mul for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn mul(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        self.matmul(rhs).expect("matrix product dimension mismatch")
    }
}

impl Add for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn add(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::add(self, rhs).expect("matrix sum dimension mismatch")
    }
}

impl Sub for &ComplexMatrix {
    type Output = ComplexMatrix;

    fn sub(self, rhs: &ComplexMatrix) -> ComplexMatrix {
        ComplexMatrix::sub(self, rhs).expect("matrix difference dimension mismatch")
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{}) [", self.dim, self.dim)?;
        for r in 0..self.dim {
            write!(f, "  ")?;
            for c in 0..self.dim {
                let z = self[(r, c)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Kronecker product `a ⊗ b`; `a` is the left (medium) factor.
pub fn kron(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    let (na, nb) = (a.dim, b.dim);
    let dim = na * nb;
    if dim > MAX_DIM {
        return Err(Error::DimensionLimit { dim, max: MAX_DIM });
    }
    let mut out = ComplexMatrix::zeros(dim);
    for i in 0..na {
        for j in 0..na {
            let aij = a[(i, j)];
            for k in 0..nb {
                for l in 0..nb {
                    out[(i * nb + k, j * nb + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    Ok(out)
}

/// Reduces a two-qubit operator to the `keep` factor.
pub fn partial_trace(joint: &ComplexMatrix, keep: Subsystem) -> Result<ComplexMatrix> {
    if joint.dim != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: joint.dim,
        });
    }
    let mut out = ComplexMatrix::zeros(2);
    for i in 0..2 {
        for j in 0..2 {
            out[(i, j)] = match keep {
                Subsystem::Medium => joint[(2 * i, 2 * j)] + joint[(2 * i + 1, 2 * j + 1)],
                Subsystem::Battery => joint[(i, j)] + joint[(2 + i, 2 + j)],
            };
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(kron(&i2, &i2).unwrap(), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_block_structure() {
        let a = ComplexMatrix::from_real_diag(&[2.0, 3.0]);
        let out = kron(&a, &ComplexMatrix::identity(2)).unwrap();
        assert_eq!(out, ComplexMatrix::from_real_diag(&[2.0, 2.0, 3.0, 3.0]));
    }

    #[test]
    fn kron_rejects_dimension_above_limit() {
        let a = ComplexMatrix::identity(4);
        let b = ComplexMatrix::identity(8);
        assert_eq!(
            kron(&a, &b).unwrap_err(),
            Error::DimensionLimit { dim: 32, max: 16 }
        );
        assert_eq!(kron(&ComplexMatrix::identity(2), &b).unwrap().dim(), 16);
    }

    #[test]
    fn partial_trace_rejects_wrong_dimension() {
        let m = ComplexMatrix::identity(2);
        assert!(matches!(
            partial_trace(&m, Subsystem::Battery),
            Err(Error::DimensionMismatch { expected: 4, found: 2 })
        ));
    }

    #[test]
    fn partial_trace_of_bell_projector_is_maximally_mixed() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [c(0.0, 0.0), c(s, 0.0), c(s, 0.0), c(0.0, 0.0)];
        let mut rho = ComplexMatrix::zeros(4);
        for i in 0..4 {
            for j in 0..4 {
                rho[(i, j)] = psi[i] * psi[j].conj();
            }
        }
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        for keep in [Subsystem::Medium, Subsystem::Battery] {
            assert!(partial_trace(&rho, keep).unwrap().max_abs_diff(&half) < 1e-15);
        }
    }

    #[test]
    fn partial_trace_of_product_factorizes() {
        let a = ComplexMatrix::from_vec(vec![c(1.0, 0.0), c(0.2, -0.3), c(0.2, 0.3), c(2.0, 0.0)]).unwrap();
        let b = ComplexMatrix::from_vec(vec![c(0.5, 0.0), c(0.1, 0.1), c(0.7, -0.1), c(1.5, 0.0)]).unwrap();
        let joint = kron(&a, &b).unwrap();
        let med = partial_trace(&joint, Subsystem::Medium).unwrap();
        let bat = partial_trace(&joint, Subsystem::Battery).unwrap();
        assert!(med.max_abs_diff(&a.scale(b.trace())) < 1e-14);
        assert!(bat.max_abs_diff(&b.scale(a.trace())) < 1e-14);
    }

    #[test]
    fn mismatched_product_is_an_error() {
        let a = ComplexMatrix::identity(2);
        let b = ComplexMatrix::identity(4);
        assert!(matches!(a.matmul(&b), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(ComplexMatrix::add(&a, &b), Err(Error::DimensionMismatch { .. })));
        assert!(ComplexMatrix::from_vec(vec![ZERO; 3]).is_err());
    }

    #[test]
    fn identity_is_neutral_and_dagger_is_involutive() {
        let a = ComplexMatrix::from_vec(vec![c(1.0, 2.0), c(3.0, -1.0), c(0.5, 0.5), c(-2.0, 0.0)]).unwrap();
        assert_eq!(&ComplexMatrix::identity(2) * &a, a);
        assert_eq!(a.dagger().dagger(), a);
        assert_eq!(a.trace(), c(-1.0, 2.0));
    }
}
