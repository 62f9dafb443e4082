use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::smallmat::{hermitian_eig, pauli, ComplexMatrix, PauliAxis};
use crate::tolerance;
use crate::{Error, Result};

/// A validated density operator: Hermitian, unit trace and positive
/// semidefinite (eigenvalues above [`tolerance::PSD_CLAMP`]).
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator(ComplexMatrix);

impl DensityOperator {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let asymmetry = matrix.hermitian_asymmetry();
        if asymmetry > tolerance::VALIDATION {
            return Err(Error::NotHermitian { asymmetry });
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > tolerance::VALIDATION || tr.im.abs() > tolerance::VALIDATION {
            return Err(Error::InvalidState(format!(
                "trace must be 1, got {:.6e}{:+.6e}i",
                tr.re, tr.im
            )));
        }
        let min_eig = hermitian_eig(&matrix)?.eigenvalues[0];
        if min_eig < tolerance::PSD_CLAMP {
            return Err(Error::InvalidState(format!(
                "not positive semidefinite (min eigenvalue {min_eig:.6e})"
            )));
        }
        Ok(Self(matrix))
    }

    /// Wraps a matrix produced by a channel known to preserve validity
    /// (unitary conjugation, replacement, dephasing). Debug builds still check.
    pub(crate) fn from_channel_output(matrix: ComplexMatrix) -> Self {
        debug_assert!(
            Self::new(matrix.clone()).is_ok(),
            "channel produced an invalid state: {matrix:?}"
        );
        Self(matrix)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64))
    }

    /// Projector onto a normalized pure state.
    pub fn pure(amplitudes: &[Complex64]) -> Result<Self> {
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < tolerance::VALIDATION {
            return Err(Error::InvalidState("zero state vector".into()));
        }
        let n = amplitudes.len();
        let mut m = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = amplitudes[i] * amplitudes[j].conj() / (norm * norm);
            }
        }
        Self::new(m)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    /// `Tr[ρ·O]`.
    pub fn expectation(&self, observable: &ComplexMatrix) -> Result<Complex64> {
        Ok(self.0.matmul(observable)?.trace())
    }

    pub fn expect_dim(&self, dim: usize) -> Result<()> {
        if self.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: self.dim(),
            });
        }
        Ok(())
    }
}

/// Coefficients `P⃗` in `ρ = ½I + P⃗·σ⃗`; valid states satisfy `|P⃗| ≤ ½`.
/// Missing components deserialize as 0.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PolarizationVector {
    pub px: f64,
    pub py: f64,
    pub pz: f64,
}

impl PolarizationVector {
    pub const fn new(px: f64, py: f64, pz: f64) -> Self {
        Self { px, py, pz }
    }

    /// The ground level `|1⟩`.
    pub const GROUND: Self = Self::new(0.0, 0.0, -0.5);

    pub fn norm(&self) -> f64 {
        (self.px * self.px + self.py * self.py + self.pz * self.pz).sqrt()
    }

    pub fn validate(&self) -> Result<()> {
        if ![self.px, self.py, self.pz].iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidState("polarization components must be finite".into()));
        }
        if self.norm() > 0.5 + tolerance::BOUND_SLACK {
            return Err(Error::InvalidState(format!(
                "polarization |P| = {:.6} exceeds the Bloch-ball radius 1/2",
                self.norm()
            )));
        }
        Ok(())
    }

    /// `½I + P⃗·σ⃗`.
    pub fn to_matrix(&self) -> ComplexMatrix {
        let mut m = ComplexMatrix::identity(2).scale_real(0.5);
        for (coef, axis) in [(self.px, PauliAxis::X), (self.py, PauliAxis::Y), (self.pz, PauliAxis::Z)] {
            m = &m + &pauli(axis).scale_real(coef);
        }
        m
    }
}
