//! Multi-cycle trajectories, coherent/incoherent comparison and sweeps.
//!
//! Imperfections are phenomenological: a dephasing multiplier applied to the
//! battery at every medium reset (residual transverse coupling during reset)
//! and one applied once per cycle (battery T2). Cold-bath imperfection is the
//! `cold_populations` field of [`EngineConfig`].

use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagnostics::{self, CorrelatorSet, ErgotropyReport};
use crate::engine::{self, EngineConfig};
use crate::smallmat::kron;
use crate::state::{DensityOperator, PolarizationVector};
use crate::tolerance;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoiseConfig {
    /// Multiplier on battery coherences at each of the two medium resets.
    pub battery_dephasing_per_reset: f64,
    /// Multiplier on battery coherences once per cycle, after compression.
    pub battery_t2_per_cycle: f64,
}

impl Default for NoiseConfig {
    fn default() -> Self {
        Self::IDEAL
    }
}

impl NoiseConfig {
    pub const IDEAL: Self = Self {
        battery_dephasing_per_reset: 1.0,
        battery_t2_per_cycle: 1.0,
    };

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("battery_dephasing_per_reset", self.battery_dephasing_per_reset),
            ("battery_t2_per_cycle", self.battery_t2_per_cycle),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidConfig(format!("{name} must lie in [0, 1], got {value}")));
            }
        }
        Ok(())
    }
}

/// Diagnostics recorded at the end of one engine cycle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CycleRecord {
    pub cycle_index: usize,
    /// Battery energy gained during this cycle, units of `ħω_B`.
    pub cycle_work: f64,
    /// Battery energy gained since the start of the run.
    pub cumulative_work: f64,
    /// Part of `cycle_work` driven by medium and battery coherence.
    pub quantum_work: f64,
    /// Bloch angle of the hot-bath state (coherence-injection rotation).
    pub injection_angle: f64,
    pub battery_polarization: PolarizationVector,
    pub ergotropy: ErgotropyReport,
    /// Relative entropy of coherence of the battery, nats.
    pub coherence_rel_entropy: f64,
    /// Measured right after the expansion stroke.
    pub concurrence_post_stroke: f64,
    /// Measured right after the expansion stroke.
    pub correlators: CorrelatorSet,
}

impl CycleRecord {
    pub(crate) fn measure(
        cycle_index: usize,
        cycle_work: f64,
        cumulative_work: f64,
        quantum_work: f64,
        injection_angle: f64,
        post_stroke: &DensityOperator,
        end_of_cycle: &DensityOperator,
    ) -> Result<Self> {
        let battery = engine::battery_marginal(end_of_cycle)?;
        Ok(Self {
            cycle_index,
            cycle_work,
            cumulative_work,
            quantum_work,
            injection_angle,
            battery_polarization: diagnostics::polarization_vector(&battery)?,
            ergotropy: diagnostics::ergotropy(&battery, 1.0)?,
            coherence_rel_entropy: diagnostics::relative_entropy_of_coherence(&battery),
            concurrence_post_stroke: diagnostics::concurrence(post_stroke)?,
            correlators: diagnostics::pauli_correlators(post_stroke)?,
        })
    }
}

#[derive(Clone, Debug)]
pub struct EngineTrace {
    pub config: EngineConfig,
    pub records: Vec<CycleRecord>,
    pub final_joint: DensityOperator,
}

impl EngineTrace {
    pub fn cumulative_work(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.cumulative_work).collect()
    }
}

/// Multiplies every element of `joint` that connects different battery
/// levels by `factor` (a phase-flip channel with `p = (1 − factor)/2`).
pub fn dephase_battery(joint: &DensityOperator, factor: f64) -> Result<DensityOperator> {
    joint.expect_dim(4)?;
    if !(0.0..=1.0).contains(&factor) {
        return Err(Error::InvalidConfig(format!("dephasing factor must lie in [0, 1], got {factor}")));
    }
    let mut m = joint.matrix().clone();
    for i in 0..4 {
        for j in 0..4 {
            if i % 2 != j % 2 {
                m[(i, j)] *= factor;
            }
        }
    }
    Ok(DensityOperator::from_channel_output(m))
}

/// Runs `config.cycles` engine cycles.
///
/// Each cycle: hot reset, reset dephasing, expansion stroke (concurrence and
/// correlators measured here), cold reset, reset dephasing, compression
/// stroke, per-cycle dephasing. The computation is deterministic.
pub fn run_engine(config: &EngineConfig) -> Result<EngineTrace> {
    config.validate()?;
    let hot = engine::prepare_medium_hot(config.p_mx, config.hot_populations)?;
    let cold = engine::prepare_medium_cold(config.cold_populations)?;
    let battery = engine::prepare_battery(config.battery_init)?;
    let noise = config.noise;
    let angle = engine::injection_angle(config.p_mx, config.hot_populations);

    let mut joint = DensityOperator::from_channel_output(kron(hot.matrix(), battery.matrix())?);
    let initial_energy = engine::battery_energy(&joint)?;
    let mut previous_energy = initial_energy;
    let mut records = Vec::with_capacity(config.cycles);

    for cycle_index in 1..=config.cycles {
        joint = engine::reset_medium(&joint, &hot)?;
        joint = dephase_battery(&joint, noise.battery_dephasing_per_reset)?;
        let battery_in = diagnostics::polarization_vector(&engine::battery_marginal(&joint)?)?;

        let post_stroke = engine::power_stroke(&joint, config.expansion_angle())?;
        joint = engine::reset_medium(&post_stroke, &cold)?;
        joint = dephase_battery(&joint, noise.battery_dephasing_per_reset)?;
        joint = engine::power_stroke(&joint, config.compression_angle())?;
        joint = dephase_battery(&joint, noise.battery_t2_per_cycle)?;

        let energy = engine::battery_energy(&joint)?;
        records.push(CycleRecord::measure(
            cycle_index,
            energy - previous_energy,
            energy - initial_energy,
            engine::quantum_work_term(config, &battery_in),
            angle,
            &post_stroke,
            &joint,
        )?);
        previous_energy = energy;
    }

    Ok(EngineTrace {
        config: config.clone(),
        records,
        final_joint: joint,
    })
}

/// A config run with its own coherence and with `p_mx = 0`.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub coherent: EngineTrace,
    pub incoherent: EngineTrace,
    /// `(W_coh − W_incoh)/W_incoh` on cumulative work after each cycle;
    /// `None` where `W_incoh ≤ 1e-12`.
    pub advantage: Vec<Option<f64>>,
}

/// Below this incoherent work the advantage ratio is undefined.
pub const ADVANTAGE_BASELINE_FLOOR: f64 = tolerance::EQUALITY;

impl Comparison {
    /// Largest defined advantage and its cycle index; earliest cycle wins ties.
    pub fn peak(&self) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64)> = None;
        for (i, ratio) in self.advantage.iter().enumerate() {
            if let Some(r) = *ratio {
                if best.is_none_or(|(_, b)| r > b) {
                    best = Some((i + 1, r));
                }
            }
        }
        best
    }
}

pub fn compare_coherent_incoherent(config: &EngineConfig) -> Result<Comparison> {
    let incoherent_config = EngineConfig {
        p_mx: 0.0,
        ..config.clone()
    };
    let (coherent, incoherent) = rayon::join(|| run_engine(config), || run_engine(&incoherent_config));
    let (coherent, incoherent) = (coherent?, incoherent?);
    let advantage = coherent
        .records
        .iter()
        .zip(&incoherent.records)
        .map(|(c, i)| {
            (i.cumulative_work > ADVANTAGE_BASELINE_FLOOR)
                .then(|| (c.cumulative_work - i.cumulative_work) / i.cumulative_work)
        })
        .collect();
    Ok(Comparison {
        coherent,
        incoherent,
        advantage,
    })
}

/// Config fields that [`sweep`] can vary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SweepField {
    Theta,
    ThetaCompression,
    PMx,
    BatteryPx,
    BatteryPy,
    BatteryPz,
    BatteryDephasingPerReset,
    BatteryT2PerCycle,
    Cycles,
}

impl SweepField {
    pub const ALL: [SweepField; 9] = [
        SweepField::Theta,
        SweepField::ThetaCompression,
        SweepField::PMx,
        SweepField::BatteryPx,
        SweepField::BatteryPy,
        SweepField::BatteryPz,
        SweepField::BatteryDephasingPerReset,
        SweepField::BatteryT2PerCycle,
        SweepField::Cycles,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepField::Theta => "theta",
            SweepField::ThetaCompression => "theta_compression",
            SweepField::PMx => "p_mx",
            SweepField::BatteryPx => "battery_px",
            SweepField::BatteryPy => "battery_py",
            SweepField::BatteryPz => "battery_pz",
            SweepField::BatteryDephasingPerReset => "battery_dephasing_per_reset",
            SweepField::BatteryT2PerCycle => "battery_t2_per_cycle",
            SweepField::Cycles => "cycles",
        }
    }

    /// Writes `value` into `config`. Validity is checked when the config runs.
    pub fn apply(self, config: &mut EngineConfig, value: f64) -> Result<()> {
        match self {
            SweepField::Theta => config.theta = value,
            SweepField::ThetaCompression => config.theta_compression = Some(value),
            SweepField::PMx => config.p_mx = value,
            SweepField::BatteryPx => config.battery_init.px = value,
            SweepField::BatteryPy => config.battery_init.py = value,
            SweepField::BatteryPz => config.battery_init.pz = value,
            SweepField::BatteryDephasingPerReset => config.noise.battery_dephasing_per_reset = value,
            SweepField::BatteryT2PerCycle => config.noise.battery_t2_per_cycle = value,
            SweepField::Cycles => {
                if value < 1.0 || value.fract() != 0.0 || value > u32::MAX as f64 {
                    return Err(Error::InvalidConfig(format!("cycles must be a positive integer, got {value}")));
                }
                config.cycles = value as usize;
            }
        }
        Ok(())
    }
}

impl FromStr for SweepField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownField(s.to_string()))
    }
}

/// One independent run per value, returned in the order of `values`.
/// Runs execute on the current rayon pool.
pub fn sweep(template: &EngineConfig, field: SweepField, values: &[f64]) -> Result<Vec<EngineTrace>> {
    values
        .par_iter()
        .map(|&value| {
            let mut config = template.clone();
            field.apply(&mut config, value)?;
            run_engine(&config)
        })
        .collect()
}
