//! Figures of merit for the medium, the battery and their joint state.
//!
//! Single-qubit energies use `H = (ω/2)·σ^z` with `ħ = 1`; pass `omega = 1`
//! to get results in units of `ħω`.
//!
//! The ergotropy split follows the dephasing construction: the incoherent
//! part is the ergotropy of `Δ(ρ)`, the state with its `σ^z`-basis
//! off-diagonal elements removed, and the coherent part is what remains.
//! For a qubit both parts are non-negative.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::smallmat::{hermitian_eig, kron, pauli, ComplexMatrix, PauliAxis};
use crate::state::{DensityOperator, PolarizationVector};
use crate::Result;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErgotropyReport {
    pub total: f64,
    pub incoherent: f64,
    pub coherent: f64,
    #[serde(skip)]
    pub passive_state: Option<DensityOperator>,
}

/// Pauli expectation values of a two-qubit state. Each triple is ordered
/// `(x, y, z)`; `joint[j] = ⟨σ_M^j σ_B^j⟩`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CorrelatorSet {
    pub medium: [f64; 3],
    pub battery: [f64; 3],
    pub joint: [f64; 3],
}

const AXES: [PauliAxis; 3] = [PauliAxis::X, PauliAxis::Y, PauliAxis::Z];

/// `p_j = ½·Tr[ρσ^j]`.
pub fn polarization_vector(rho: &DensityOperator) -> Result<PolarizationVector> {
    rho.expect_dim(2)?;
    let [px, py, pz] = AXES.map(|a| 0.5 * rho.expectation(&pauli(a)).expect("2x2").re);
    Ok(PolarizationVector { px, py, pz })
}

/// `Tr[ρ·(ω/2)σ^z]`.
pub fn mean_energy(rho: &DensityOperator, omega: f64) -> Result<f64> {
    rho.expect_dim(2)?;
    Ok(0.5 * omega * rho.expectation(&pauli(PauliAxis::Z))?.re)
}

fn clamped_spectrum(m: &ComplexMatrix) -> Vec<f64> {
    hermitian_eig(m)
        .expect("density operators are Hermitian")
        .eigenvalues
        .into_iter()
        .map(|l| l.max(0.0))
        .collect()
}

fn shannon(probabilities: impl IntoIterator<Item = f64>) -> f64 {
    -probabilities
        .into_iter()
        .filter(|&p| p > 0.0)
        .map(|p| p * p.ln())
        .sum::<f64>()
}

/// `−Tr ρ ln ρ` in nats.
pub fn von_neumann_entropy(rho: &DensityOperator) -> f64 {
    shannon(clamped_spectrum(rho.matrix()))
}

/// `S(Δ(ρ)) − S(ρ)` with `Δ` the dephasing in the computational (energy)
/// basis.
pub fn relative_entropy_of_coherence(rho: &DensityOperator) -> f64 {
    let diagonal = rho.matrix().diagonal().into_iter().map(|z| z.re.max(0.0));
    (shannon(diagonal) - von_neumann_entropy(rho)).max(0.0)
}

/// Removes every off-diagonal element in the energy basis.
pub fn dephased(rho: &DensityOperator) -> DensityOperator {
    let diag: Vec<f64> = rho.matrix().diagonal().iter().map(|z| z.re).collect();
    DensityOperator::from_channel_output(ComplexMatrix::from_real_diag(&diag))
}

/// The passive state of a qubit under `H = (ω/2)σ^z`: the eigenvalues of `ρ`
/// placed on the energy levels with the larger one on the lower level.
pub fn passive_state(rho: &DensityOperator, omega: f64) -> Result<DensityOperator> {
    rho.expect_dim(2)?;
    let spectrum = clamped_spectrum(rho.matrix());
    let (small, large) = (spectrum[0], spectrum[1]);
    // |0⟩ has energy +ω/2, |1⟩ has −ω/2.
    let diag = if omega >= 0.0 { [small, large] } else { [large, small] };
    let total = small + large;
    Ok(DensityOperator::from_channel_output(ComplexMatrix::from_real_diag(&[
        diag[0] / total,
        diag[1] / total,
    ])))
}

fn plain_ergotropy(rho: &DensityOperator, omega: f64) -> Result<(f64, DensityOperator)> {
    let passive = passive_state(rho, omega)?;
    let value = mean_energy(rho, omega)? - mean_energy(&passive, omega)?;
    Ok((value, passive))
}

/// `ℰ = Tr[(ρ − ρ̃)H]` split into incoherent and coherent parts.
pub fn ergotropy(rho: &DensityOperator, omega: f64) -> Result<ErgotropyReport> {
    let (total, passive) = plain_ergotropy(rho, omega)?;
    let (incoherent, _) = plain_ergotropy(&dephased(rho), omega)?;
    Ok(ErgotropyReport {
        total,
        incoherent,
        coherent: total - incoherent,
        passive_state: Some(passive),
    })
}

pub fn pauli_correlators(joint: &DensityOperator) -> Result<CorrelatorSet> {
    joint.expect_dim(4)?;
    let id = ComplexMatrix::identity(2);
    let expect = |op: ComplexMatrix| joint.expectation(&op).map(|z| z.re);
    let mut set = CorrelatorSet::default();
    for (j, axis) in AXES.into_iter().enumerate() {
        let s = pauli(axis);
        set.medium[j] = expect(kron(&s, &id)?)?;
        set.battery[j] = expect(kron(&id, &s)?)?;
        set.joint[j] = expect(kron(&s, &s)?)?;
    }
    Ok(set)
}

/// Wootters concurrence of a two-qubit state.
///
/// The `λ_i` are the singular values of `A = √ρ·(σ^y⊗σ^y)·√ρ*`, since
/// `A·A† = √ρ·ρ̃·√ρ` with `ρ̃ = (σ^y⊗σ^y)ρ*(σ^y⊗σ^y)`. They are read off the
/// Hermitian dilation `[[0, A], [A†, 0]]`, whose spectrum is `±λ_i`. This
/// keeps the absolute error near machine precision for rank-deficient
/// states, where taking square roots of the eigenvalues of `√ρ·ρ̃·√ρ` would
/// amplify rounding noise to `~1e-8`.
pub fn concurrence(joint: &DensityOperator) -> Result<f64> {
    joint.expect_dim(4)?;
    let yy = kron(&pauli(PauliAxis::Y), &pauli(PauliAxis::Y))?;
    let sqrt_rho = hermitian_eig(joint.matrix())?.map(|l| Complex64::new(l.max(0.0).sqrt(), 0.0));
    let a = &(&sqrt_rho * &yy) * &sqrt_rho.conj();
    let a_dagger = a.dagger();

    let mut dilation = ComplexMatrix::zeros(8);
    for i in 0..4 {
        for j in 0..4 {
            dilation[(i, 4 + j)] = a[(i, j)];
            dilation[(4 + i, j)] = a_dagger[(i, j)];
        }
    }
    // Ascending: the upper half holds the singular values.
    let spectrum = hermitian_eig(&dilation)?.eigenvalues;
    let lambdas: Vec<f64> = spectrum[4..].iter().rev().map(|&s| s.max(0.0)).collect();
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}
