//! States, propagators and cycle stages of the two-qubit Otto engine.
//!
//! One cycle acts on `ρ_M ⊗ ρ_B`:
//!
//! 1. hot reset: the medium is replaced by `diag(p₀, p₁) + P_M^x·σ^x`;
//! 2. expansion stroke: flip-flop unitary with swap angle `θ = g·t`;
//! 3. cold reset: the medium is replaced by `diag(q₀, q₁)`;
//! 4. compression stroke: the same unitary (or `theta_compression`).
//!
//! Resets are replacement channels (a SWAP with an uncorrelated ancilla):
//! the battery marginal survives untouched and medium-battery correlations
//! are discarded. Work is the change of `Tr[ρ_B H_B]` in units of `ħω_B`.

use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::diagnostics::{self, polarization_vector};
use crate::multicycle::{CycleRecord, NoiseConfig};
use crate::smallmat::{kron, partial_trace, pauli, ComplexMatrix, PauliAxis, Subsystem};
use crate::state::{DensityOperator, PolarizationVector};
use crate::tolerance;
use crate::{Error, Result};

/// Matrix element of `H_I = g(σ_M^+σ_B^− + σ_M^−σ_B^+)` on the flip-flop
/// subspace, in units of `g`, with the unnormalized `σ^± = σ^x ± iσ^y`.
/// The propagator is defined so that its swap angle is exactly `θ`, i.e.
/// `U(θ) = exp(−i·θ·H_I / (FLIP_FLOP_MATRIX_ELEMENT·g))`.
pub const FLIP_FLOP_MATRIX_ELEMENT: f64 = 4.0;

/// All physical and protocol parameters of an engine run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EngineConfig {
    /// Medium angular frequency; only enters medium-energy diagnostics.
    pub omega_m: f64,
    /// Battery angular frequency; energies are reported in units of `ħω_B`.
    pub omega_b: f64,
    /// Swap angle `θ = g·t` of each power stroke.
    pub theta: f64,
    /// Separate angle for the compression stroke; `None` reuses `theta`.
    pub theta_compression: Option<f64>,
    /// Hot-bath coherence `P_M^x`.
    pub p_mx: f64,
    /// Hot-bath populations `(p₀, p₁)` of `|0⟩` (excited) and `|1⟩` (ground).
    pub hot_populations: [f64; 2],
    /// Cold-bath populations `(q₀, q₁)`.
    pub cold_populations: [f64; 2],
    pub battery_init: PolarizationVector,
    pub noise: NoiseConfig,
    pub cycles: usize,
}

impl Default for EngineConfig {
    /// Experimental bath states with the largest coherence they admit
    /// (rounded down), a battery in its ground state and one cycle.
    fn default() -> Self {
        Self {
            omega_m: 1.0,
            omega_b: 1.0,
            theta: FRAC_PI_4,
            theta_compression: None,
            p_mx: 0.49,
            hot_populations: [0.485, 0.515],
            cold_populations: [0.03, 0.97],
            battery_init: PolarizationVector::GROUND,
            noise: NoiseConfig::default(),
            cycles: 1,
        }
    }
}

impl EngineConfig {
    /// Infinite-temperature hot bath, zero-temperature cold bath, maximal
    /// coherence, no noise.
    pub fn ideal() -> Self {
        Self {
            p_mx: 0.5,
            hot_populations: [0.5, 0.5],
            cold_populations: [0.0, 1.0],
            ..Self::default()
        }
    }

    pub fn expansion_angle(&self) -> f64 {
        self.theta
    }

    pub fn compression_angle(&self) -> f64 {
        self.theta_compression.unwrap_or(self.theta)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.omega_m, self.omega_b, self.theta, self.p_mx]
            .into_iter()
            .chain(self.theta_compression)
            .all(f64::is_finite);
        if !finite {
            return Err(Error::InvalidConfig("parameters must be finite".into()));
        }
        validate_populations("hot_populations", self.hot_populations)?;
        validate_populations("cold_populations", self.cold_populations)?;
        check_coherence_bound(self.p_mx, self.hot_populations)?;
        self.battery_init
            .validate()
            .map_err(|e| Error::InvalidConfig(format!("battery_init: {e}")))?;
        self.noise.validate()?;
        if self.cycles == 0 {
            return Err(Error::InvalidConfig("cycles must be at least 1".into()));
        }
        Ok(())
    }
}

fn validate_populations(name: &str, [a, b]: [f64; 2]) -> Result<()> {
    if !(0.0..=1.0).contains(&a) || !(0.0..=1.0).contains(&b) {
        return Err(Error::InvalidConfig(format!("{name} must lie in [0, 1], got ({a}, {b})")));
    }
    if (a + b - 1.0).abs() > tolerance::BOUND_SLACK {
        return Err(Error::InvalidConfig(format!("{name} must sum to 1, got {}", a + b)));
    }
    Ok(())
}

fn check_coherence_bound(p_mx: f64, [p0, p1]: [f64; 2]) -> Result<()> {
    let bound = (p0 * p1).sqrt();
    if p_mx.abs() > bound + tolerance::BOUND_SLACK {
        return Err(Error::InvalidConfig(format!(
            "positivity requires |p_mx| <= sqrt(p0*p1) = {bound:.6}, got {p_mx}"
        )));
    }
    Ok(())
}

/// Total work with its classical and quantum (coherence-driven) parts, in
/// units of `ħω_B`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WorkBreakdown {
    pub total: f64,
    pub classical: f64,
    pub quantum: f64,
    /// Whether the config lies in the regime the ideal-cycle formula was
    /// derived for: hot populations `(½, ½)`, a pure-ground cold bath and
    /// equal stroke angles.
    pub ideal_regime: bool,
}

/// Hot-bath medium state `diag(p₀, p₁) + P_M^x·σ^x`.
pub fn prepare_medium_hot(p_mx: f64, hot_populations: [f64; 2]) -> Result<DensityOperator> {
    validate_populations("hot_populations", hot_populations)?;
    check_coherence_bound(p_mx, hot_populations)?;
    let m = &ComplexMatrix::from_real_diag(&hot_populations) + &pauli(PauliAxis::X).scale_real(p_mx);
    DensityOperator::new(m)
}

/// Cold-bath medium state `diag(q₀, q₁)`.
pub fn prepare_medium_cold(cold_populations: [f64; 2]) -> Result<DensityOperator> {
    validate_populations("cold_populations", cold_populations)?;
    DensityOperator::new(ComplexMatrix::from_real_diag(&cold_populations))
}

/// `½I + P⃗·σ⃗`.
pub fn prepare_battery(p: PolarizationVector) -> Result<DensityOperator> {
    p.validate()?;
    DensityOperator::new(p.to_matrix())
}

/// `H_I` for coupling `g`, built from the ladder operators.
pub fn flip_flop_hamiltonian(g: f64) -> ComplexMatrix {
    let plus = pauli(PauliAxis::Plus);
    let minus = pauli(PauliAxis::Minus);
    let h = &kron(&plus, &minus).expect("4x4") + &kron(&minus, &plus).expect("4x4");
    h.scale_real(g)
}

/// Identity on `|00⟩, |11⟩`; `[[cos θ, −i sin θ], [−i sin θ, cos θ]]` on
/// `{|01⟩, |10⟩}`.
pub fn flip_flop_propagator(theta: f64) -> ComplexMatrix {
    let (s, c) = theta.sin_cos();
    let mut u = ComplexMatrix::identity(4);
    u[(1, 1)] = Complex64::new(c, 0.0);
    u[(2, 2)] = Complex64::new(c, 0.0);
    u[(1, 2)] = Complex64::new(0.0, -s);
    u[(2, 1)] = Complex64::new(0.0, -s);
    u
}

/// `U(θ)·ρ·U(θ)†`.
pub fn power_stroke(joint: &DensityOperator, theta: f64) -> Result<DensityOperator> {
    joint.expect_dim(4)?;
    let out = joint.matrix().conjugate_by(&flip_flop_propagator(theta))?;
    Ok(DensityOperator::from_channel_output(out))
}

/// `fresh ⊗ Tr_M[joint]`.
pub fn reset_medium(joint: &DensityOperator, fresh: &DensityOperator) -> Result<DensityOperator> {
    joint.expect_dim(4)?;
    fresh.expect_dim(2)?;
    let battery = partial_trace(joint.matrix(), Subsystem::Battery)?;
    Ok(DensityOperator::from_channel_output(kron(fresh.matrix(), &battery)?))
}

pub fn battery_marginal(joint: &DensityOperator) -> Result<DensityOperator> {
    Ok(DensityOperator::from_channel_output(partial_trace(
        joint.matrix(),
        Subsystem::Battery,
    )?))
}

pub fn medium_marginal(joint: &DensityOperator) -> Result<DensityOperator> {
    Ok(DensityOperator::from_channel_output(partial_trace(
        joint.matrix(),
        Subsystem::Medium,
    )?))
}

/// Battery energy `Tr[ρ_B (σ^z/2)]` in units of `ħω_B`.
pub fn battery_energy(joint: &DensityOperator) -> Result<f64> {
    diagnostics::mean_energy(&battery_marginal(joint)?, 1.0)
}

fn ideal_regime(config: &EngineConfig) -> bool {
    config.hot_populations == [0.5, 0.5]
        && config.cold_populations == [0.0, 1.0]
        && config.compression_angle() == config.expansion_angle()
}

/// Closed-form first-cycle work in the ideal regime:
///
/// ```text
/// W/ħω_B = 2·P_M^x·P_B^y·sinθ·cos³θ + P_B^z·(cos⁴θ − 1) − ½·sin²θ
/// ```
///
/// The first term is the quantum part, which needs coherence in both the
/// medium and the battery. The coefficients follow from `ρ = ½I + P⃗·σ⃗` and
/// a cold reset into the ground level. Outside the ideal regime the value is
/// still returned but `ideal_regime` is false; [`two_stroke_work`] is exact
/// everywhere.
pub fn closed_form_work(config: &EngineConfig) -> WorkBreakdown {
    let (s, c) = config.theta.sin_cos();
    let b = config.battery_init;
    let quantum = 2.0 * config.p_mx * b.py * s * c.powi(3);
    let classical = b.pz * (c.powi(4) - 1.0) - 0.5 * s * s;
    WorkBreakdown {
        total: classical + quantum,
        classical,
        quantum,
        ideal_regime: ideal_regime(config),
    }
}

/// Exact first-cycle work for arbitrary bath populations and stroke angles.
///
/// With `b = ½ + P_B^z` the battery excited population, the expansion stroke
/// maps `b ↦ b·cos²θ₁ + p₀·sin²θ₁ + 2·P_M^x·P_B^y·sinθ₁·cosθ₁` and the
/// compression stroke maps `b ↦ b·cos²θ₂ + q₀·sin²θ₂`.
pub fn two_stroke_work(config: &EngineConfig) -> WorkBreakdown {
    let (s1, c1) = config.expansion_angle().sin_cos();
    let (s2, c2) = config.compression_angle().sin_cos();
    let b = config.battery_init;
    let excited = 0.5 + b.pz;
    let quantum = 2.0 * config.p_mx * b.py * s1 * c1 * c2 * c2;
    let after_expansion = excited * c1 * c1 + config.hot_populations[0] * s1 * s1;
    let after_compression = after_expansion * c2 * c2 + config.cold_populations[0] * s2 * s2;
    let classical = after_compression - excited;
    WorkBreakdown {
        total: classical + quantum,
        classical,
        quantum,
        ideal_regime: ideal_regime(config),
    }
}

/// Quantum part of one cycle's work given the battery state entering the
/// expansion stroke. Exact for any bath populations: dephasing and resets
/// never feed coherence back into populations.
pub(crate) fn quantum_work_term(config: &EngineConfig, battery_in: &PolarizationVector) -> f64 {
    let (s1, c1) = config.expansion_angle().sin_cos();
    let c2 = config.compression_angle().cos();
    2.0 * config.p_mx * battery_in.py * s1 * c1 * c2 * c2
}

/// Angle of the hot-bath Bloch vector from the `σ^z` axis; the rotation a
/// coherence-injection pulse would apply. Logged, never charged as work.
pub fn injection_angle(p_mx: f64, hot_populations: [f64; 2]) -> f64 {
    (2.0 * p_mx).atan2(hot_populations[0] - hot_populations[1])
}

/// Brute-force single cycle: hot reset, expansion, cold reset, compression
/// on `ρ_M ⊗ ρ_B`. Noise settings are ignored. Returns the cycle record and
/// the final joint state.
pub fn run_single_cycle(config: &EngineConfig) -> Result<(CycleRecord, DensityOperator)> {
    config.validate()?;
    let hot = prepare_medium_hot(config.p_mx, config.hot_populations)?;
    let cold = prepare_medium_cold(config.cold_populations)?;
    let battery = prepare_battery(config.battery_init)?;

    let joint = DensityOperator::from_channel_output(kron(hot.matrix(), battery.matrix())?);
    let start_energy = battery_energy(&joint)?;
    let battery_in = polarization_vector(&battery)?;

    let after_expansion = power_stroke(&joint, config.expansion_angle())?;
    let after_cold = reset_medium(&after_expansion, &cold)?;
    let final_joint = power_stroke(&after_cold, config.compression_angle())?;

    let cycle_work = battery_energy(&final_joint)? - start_energy;
    let record = CycleRecord::measure(
        1,
        cycle_work,
        cycle_work,
        quantum_work_term(config, &battery_in),
        injection_angle(config.p_mx, config.hot_populations),
        &after_expansion,
        &final_joint,
    )?;
    Ok((record, final_joint))
}
