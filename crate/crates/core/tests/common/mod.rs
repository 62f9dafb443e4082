#![allow(dead_code)]

use coherent_otto::smallmat::hermitian_function;
use coherent_otto::{Complex64, ComplexMatrix, DensityOperator, PolarizationVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian_matrix(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let entries = (0..dim * dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    ComplexMatrix::from_vec(entries).unwrap()
}

pub fn random_hermitian(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let g = gaussian_matrix(rng, dim);
    (&g + &g.dagger()).scale_real(0.5)
}

/// `G·G†/Tr`, full rank with probability one.
pub fn random_density(rng: &mut impl Rng, dim: usize) -> DensityOperator {
    let g = gaussian_matrix(rng, dim);
    let m = &g * &g.dagger();
    let tr = m.trace().re;
    DensityOperator::new(m.scale_real(1.0 / tr)).unwrap()
}

/// Rank-deficient states exercise the PSD clamp.
pub fn random_pure(rng: &mut impl Rng, dim: usize) -> DensityOperator {
    let amps: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    DensityOperator::pure(&amps).unwrap()
}

pub fn random_unitary(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let h = random_hermitian(rng, dim);
    hermitian_function(&h, |l| Complex64::new(0.0, -3.0 * l).exp()).unwrap()
}

/// Uniform in the ball of radius ½.
pub fn random_polarization(rng: &mut impl Rng) -> PolarizationVector {
    loop {
        let v = [0; 3].map(|_| rng.gen_range(-0.5..0.5));
        if v.iter().map(|x| x * x).sum::<f64>() <= 0.25 {
            return PolarizationVector::new(v[0], v[1], v[2]);
        }
    }
}

pub fn min_eigenvalue(m: &ComplexMatrix) -> f64 {
    coherent_otto::smallmat::hermitian_eig(m).unwrap().eigenvalues[0]
}

pub fn trace_error(m: &ComplexMatrix) -> f64 {
    (m.trace() - Complex64::new(1.0, 0.0)).norm()
}
