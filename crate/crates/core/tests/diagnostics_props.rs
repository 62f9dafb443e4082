mod common;

use std::f64::consts::{FRAC_1_SQRT_2, LN_2};

use coherent_otto::diagnostics::{
    concurrence, dephased, ergotropy, mean_energy, passive_state, pauli_correlators, polarization_vector,
    relative_entropy_of_coherence, von_neumann_entropy,
};
use coherent_otto::smallmat::kron;
use coherent_otto::{Complex64, ComplexMatrix, DensityOperator, PolarizationVector};
use common::*;
use proptest::prelude::*;

fn qubit(p: PolarizationVector) -> DensityOperator {
    DensityOperator::new(p.to_matrix()).unwrap()
}

fn binary_entropy(x: f64) -> f64 {
    [x, 1.0 - x].iter().filter(|&&p| p > 0.0).map(|p| -p * p.ln()).sum()
}

fn bell(index: usize) -> DensityOperator {
    let h = FRAC_1_SQRT_2;
    let amps = match index {
        0 => [h, 0.0, 0.0, h],
        1 => [h, 0.0, 0.0, -h],
        2 => [0.0, h, h, 0.0],
        _ => [0.0, h, -h, 0.0],
    };
    DensityOperator::pure(&amps.map(|a| Complex64::new(a, 0.0))).unwrap()
}

/// `p·|Φ⁺⟩⟨Φ⁺| + (1 − p)·I/4`.
fn werner(p: f64) -> DensityOperator {
    let m = &bell(0).matrix().scale_real(p) + &ComplexMatrix::identity(4).scale_real((1.0 - p) / 4.0);
    DensityOperator::new(m).unwrap()
}

#[test]
fn bell_states_are_maximally_entangled() {
    for k in 0..4 {
        assert!((concurrence(&bell(k)).unwrap() - 1.0).abs() < 1e-10, "bell {k}");
    }
}

#[test]
fn werner_concurrence_matches_closed_form() {
    for i in 0..=20 {
        let p = i as f64 / 20.0;
        let expected = ((3.0 * p - 1.0) / 2.0).max(0.0);
        assert!((concurrence(&werner(p)).unwrap() - expected).abs() < 1e-10, "p {p}");
    }
}

#[test]
fn product_states_are_unentangled() {
    let mut rng = rng(21);
    for i in 0..200 {
        let (a, b) = if i % 2 == 0 {
            (random_pure(&mut rng, 2), random_pure(&mut rng, 2))
        } else {
            (random_density(&mut rng, 2), random_pure(&mut rng, 2))
        };
        let joint = DensityOperator::new(kron(a.matrix(), b.matrix()).unwrap()).unwrap();
        assert!(concurrence(&joint).unwrap() < 1e-10);
    }
}

#[test]
fn concurrence_is_invariant_under_local_unitaries() {
    let mut rng = rng(22);
    for i in 0..200 {
        let rho = if i % 2 == 0 { random_density(&mut rng, 4) } else { random_pure(&mut rng, 4) };
        let local = kron(&random_unitary(&mut rng, 2), &random_unitary(&mut rng, 2)).unwrap();
        let rotated = DensityOperator::new(rho.matrix().conjugate_by(&local).unwrap()).unwrap();
        let (a, b) = (concurrence(&rho).unwrap(), concurrence(&rotated).unwrap());
        assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        assert!((0.0..=1.0 + 1e-12).contains(&a));
    }
}

#[test]
fn pure_state_concurrence_matches_amplitude_formula() {
    let mut rng = rng(23);
    for _ in 0..200 {
        let rho = random_pure(&mut rng, 4);
        // For |ψ⟩ = Σ a_ij |ij⟩, C = 2·|a₀₀a₁₁ − a₀₁a₁₀|. Recover the
        // amplitudes from the first nonzero column.
        let m = rho.matrix();
        let k = (0..4).max_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re)).unwrap();
        let norm = m[(k, k)].re.sqrt();
        let a: Vec<Complex64> = (0..4).map(|i| m[(i, k)] / norm).collect();
        let expected = 2.0 * (a[0] * a[3] - a[1] * a[2]).norm();
        assert!((concurrence(&rho).unwrap() - expected).abs() < 1e-10);
    }
}

#[test]
fn correlators_factorize_on_products() {
    let mut rng = rng(24);
    for _ in 0..100 {
        let a = random_density(&mut rng, 2);
        let b = random_density(&mut rng, 2);
        let joint = DensityOperator::new(kron(a.matrix(), b.matrix()).unwrap()).unwrap();
        let set = pauli_correlators(&joint).unwrap();
        let pa = polarization_vector(&a).unwrap();
        let pb = polarization_vector(&b).unwrap();
        let ea = [2.0 * pa.px, 2.0 * pa.py, 2.0 * pa.pz];
        let eb = [2.0 * pb.px, 2.0 * pb.py, 2.0 * pb.pz];
        for j in 0..3 {
            assert!((set.medium[j] - ea[j]).abs() < 1e-12);
            assert!((set.battery[j] - eb[j]).abs() < 1e-12);
            assert!((set.joint[j] - ea[j] * eb[j]).abs() < 1e-12);
        }
    }
}

#[test]
fn bell_correlators() {
    let set = pauli_correlators(&bell(0)).unwrap();
    assert!((set.joint[0] - 1.0).abs() < 1e-15);
    assert!((set.joint[1] + 1.0).abs() < 1e-15);
    assert!((set.joint[2] - 1.0).abs() < 1e-15);
    assert!(set.medium.iter().chain(&set.battery).all(|x| x.abs() < 1e-15));
}

#[test]
fn reference_values() {
    let plus = qubit(PolarizationVector::new(0.5, 0.0, 0.0));
    let e = ergotropy(&plus, 1.0).unwrap();
    assert!((e.total - 0.5).abs() < 1e-12);
    assert!((e.coherent - 0.5).abs() < 1e-12);
    assert!(e.incoherent.abs() < 1e-12);
    assert!((relative_entropy_of_coherence(&plus) - LN_2).abs() < 1e-12);
    assert!((von_neumann_entropy(&DensityOperator::maximally_mixed(2)) - LN_2).abs() < 1e-12);
    assert!((von_neumann_entropy(&DensityOperator::maximally_mixed(4)) - 2.0 * LN_2).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn qubit_ergotropy_matches_bloch_formula(seed in any::<u64>(), omega in 0.1f64..5.0) {
        let p = random_polarization(&mut rng(seed));
        let rho = qubit(p);
        let e = ergotropy(&rho, omega).unwrap();
        // ℰ = ω(P_z + |P|); the dephased state keeps only P_z.
        prop_assert!((e.total - omega * (p.pz + p.norm())).abs() < 1e-12);
        prop_assert!((e.incoherent - omega * 2.0 * p.pz.max(0.0)).abs() < 1e-12);
        prop_assert!(e.coherent >= -1e-12 && e.incoherent >= 0.0);
        let passive = e.passive_state.clone().unwrap();
        let gap = mean_energy(&rho, omega).unwrap() - mean_energy(&passive, omega).unwrap();
        prop_assert!((e.total - gap).abs() < 1e-15);
        prop_assert!(ergotropy(&passive, omega).unwrap().total.abs() < 1e-12);
        prop_assert!(passive_state(&passive, omega).unwrap().matrix().max_abs_diff(passive.matrix()) < 1e-12);
    }

    #[test]
    fn diagonal_and_passive_states_split_cleanly(pz in -0.5f64..0.5) {
        let rho = qubit(PolarizationVector::new(0.0, 0.0, pz));
        let e = ergotropy(&rho, 1.0).unwrap();
        prop_assert_eq!(e.coherent, 0.0);
        if pz <= 0.0 {
            prop_assert!(e.incoherent.abs() < 1e-15);
        }
        prop_assert_eq!(relative_entropy_of_coherence(&rho), 0.0);
    }

    #[test]
    fn entropies_match_binary_entropy(seed in any::<u64>()) {
        let p = random_polarization(&mut rng(seed));
        let rho = qubit(p);
        let s = von_neumann_entropy(&rho);
        prop_assert!((s - binary_entropy(0.5 + p.norm())).abs() < 1e-12);
        let c = relative_entropy_of_coherence(&rho);
        let expected = binary_entropy(0.5 + p.pz) - binary_entropy(0.5 + p.norm());
        prop_assert!((c - expected).abs() < 1e-10);
        prop_assert!(c >= 0.0);
        let off = (p.px * p.px + p.py * p.py).sqrt();
        if off > 1e-6 {
            prop_assert!(c > 0.0);
        }
        prop_assert_eq!(relative_entropy_of_coherence(&dephased(&rho)), 0.0);
    }

    #[test]
    fn polarization_round_trips(seed in any::<u64>()) {
        let p = random_polarization(&mut rng(seed));
        let back = polarization_vector(&qubit(p)).unwrap();
        prop_assert!((back.px - p.px).abs() < 1e-15);
        prop_assert!((back.py - p.py).abs() < 1e-15);
        prop_assert!((back.pz - p.pz).abs() < 1e-15);
    }
}
