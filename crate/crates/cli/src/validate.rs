//! The `validate` suite: oracle equivalence and invariant checks with fixed
//! seeds, reported as a pass/fail table.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, LN_2, PI};
use std::fmt::Write as _;

use coherent_otto::diagnostics::{concurrence, ergotropy, relative_entropy_of_coherence, von_neumann_entropy};
use coherent_otto::engine::{
    closed_form_work, power_stroke, prepare_medium_cold, prepare_medium_hot, reset_medium, run_single_cycle,
    two_stroke_work,
};
use coherent_otto::multicycle::{compare_coherent_incoherent, dephase_battery, run_engine};
use coherent_otto::smallmat::{hermitian_eig, kron};
use coherent_otto::{Complex64, ComplexMatrix, DensityOperator, EngineConfig, NoiseConfig, PolarizationVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::presets;

const SEED: u64 = 0x0770;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Self {
            name: name.to_string(),
            passed,
            detail,
        }
    }

    fn from_result(name: &str, result: coherent_otto::Result<(bool, String)>) -> Self {
        match result {
            Ok((passed, detail)) => Self::new(name, passed, detail),
            Err(e) => Self::new(name, false, format!("error: {e}")),
        }
    }
}

pub fn run_suite() -> Vec<CheckOutcome> {
    let checks: [(&str, fn() -> coherent_otto::Result<(bool, String)>); 14] = [
        ("closed-form-oracle", closed_form_oracle),
        ("two-stroke-exactness", two_stroke_exactness),
        ("quantum-work-criterion", quantum_work_criterion),
        ("coherence-transfer", coherence_transfer),
        ("noise-free-consistency", noise_free_consistency),
        ("cumulative-work-sum", cumulative_work_sum),
        ("determinism", determinism),
        ("fixture-advantage", fixture_advantage),
        ("advantage-non-negative", advantage_non_negative),
        ("monotone-dephasing", monotone_dephasing),
        ("coherence-rise-and-fall", coherence_rise_and_fall),
        ("diagnostics-reference-values", diagnostics_reference_values),
        ("state-validity-fuzz", || state_validity_fuzz(10_000)),
        ("concurrence-attainability", concurrence_attainability),
    ];
    checks
        .iter()
        .map(|(name, check)| CheckOutcome::from_result(name, check()))
        .collect()
}

pub fn render_table(outcomes: &[CheckOutcome]) -> String {
    let width = outcomes.iter().map(|o| o.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for o in outcomes {
        let status = if o.passed { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{status}  {:width$}  {}", o.name, o.detail);
    }
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let _ = writeln!(out, "{} checks, {failed} failed", outcomes.len());
    out
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED)
}

fn random_polarization(rng: &mut impl Rng) -> PolarizationVector {
    loop {
        let v = [0; 3].map(|_| rng.gen_range(-0.5..0.5));
        if v.iter().map(|x| x * x).sum::<f64>() <= 0.25 {
            return PolarizationVector::new(v[0], v[1], v[2]);
        }
    }
}

fn random_density(rng: &mut impl Rng) -> DensityOperator {
    let entries = (0..16)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let g = ComplexMatrix::from_vec(entries).expect("4x4");
    let m = &g * &g.dagger();
    let tr = m.trace().re;
    DensityOperator::new(m.scale_real(1.0 / tr)).expect("Gram matrices are states")
}

fn random_pure(rng: &mut impl Rng) -> DensityOperator {
    let amps: Vec<Complex64> = (0..4)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    DensityOperator::pure(&amps).expect("nonzero amplitudes")
}

fn ideal_draw(rng: &mut impl Rng) -> EngineConfig {
    EngineConfig {
        theta: rng.gen_range(0.0..=PI),
        p_mx: rng.gen_range(-0.5..=0.5),
        battery_init: random_polarization(rng),
        ..EngineConfig::ideal()
    }
}

fn closed_form_oracle() -> coherent_otto::Result<(bool, String)> {
    let mut rng = rng();
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let cfg = ideal_draw(&mut rng);
        worst = worst.max((run_single_cycle(&cfg)?.0.cycle_work - closed_form_work(&cfg).total).abs());
    }
    Ok((worst < 1e-10, format!("1000 draws, max |dW| = {worst:.2e} (< 1e-10)")))
}

fn two_stroke_exactness() -> coherent_otto::Result<(bool, String)> {
    let mut rng = rng();
    let mut worst: f64 = 0.0;
    for _ in 0..500 {
        let p0: f64 = rng.gen_range(0.0..=1.0);
        let q0: f64 = rng.gen_range(0.0..=1.0);
        let cfg = EngineConfig {
            theta: rng.gen_range(0.0..=PI),
            theta_compression: Some(rng.gen_range(0.0..=PI)),
            p_mx: (p0 * (1.0 - p0)).sqrt() * rng.gen_range(-1.0..=1.0),
            hot_populations: [p0, 1.0 - p0],
            cold_populations: [q0, 1.0 - q0],
            battery_init: random_polarization(&mut rng),
            ..EngineConfig::default()
        };
        worst = worst.max((run_single_cycle(&cfg)?.0.cycle_work - two_stroke_work(&cfg).total).abs());
    }
    Ok((worst < 1e-12, format!("500 draws, max |dW| = {worst:.2e} (< 1e-12)")))
}

fn quantum_work_criterion() -> coherent_otto::Result<(bool, String)> {
    let mut rng = rng();
    let mut worst: f64 = 0.0;
    for k in 0..500 {
        let mut cfg = ideal_draw(&mut rng);
        if k % 2 == 0 {
            cfg.p_mx = 0.0;
        } else {
            cfg.battery_init.py = 0.0;
        }
        let twin = EngineConfig { p_mx: 0.0, ..cfg.clone() };
        let record = run_single_cycle(&cfg)?.0;
        let gap = (record.cycle_work - run_single_cycle(&twin)?.0.cycle_work).abs();
        worst = worst.max(gap).max(record.quantum_work.abs());
    }
    Ok((worst < 1e-12, format!("500 draws with P_M^x = 0 or P_B^y = 0, max |W_q| = {worst:.2e}")))
}

fn coherence_transfer() -> coherent_otto::Result<(bool, String)> {
    let cfg = EngineConfig {
        theta: FRAC_PI_4,
        cycles: 2,
        ..EngineConfig::ideal()
    };
    let cmp = compare_coherent_incoherent(&cfg)?;
    let py = cmp.coherent.records[0].battery_polarization.py;
    let gap = (cmp.coherent.records[1].cycle_work - cmp.incoherent.records[1].cycle_work).abs();
    Ok((py.abs() > 1e-12 && gap > 1e-6, format!("P_B^y after cycle 1 = {py:.4}, cycle-2 gap = {gap:.4e}")))
}

fn noise_free_consistency() -> coherent_otto::Result<(bool, String)> {
    let mut rng = rng();
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let cfg = ideal_draw(&mut rng);
        let a = &run_engine(&cfg)?.records[0];
        let b = run_single_cycle(&cfg)?.0;
        worst = worst
            .max((a.cycle_work - b.cycle_work).abs())
            .max((a.concurrence_post_stroke - b.concurrence_post_stroke).abs())
            .max((a.ergotropy.total - b.ergotropy.total).abs());
    }
    Ok((worst < 1e-12, format!("200 draws, max deviation {worst:.2e}")))
}

fn cumulative_work_sum() -> coherent_otto::Result<(bool, String)> {
    let trace = run_engine(&presets::fig3().engine)?;
    let mut sum = 0.0;
    let mut worst: f64 = 0.0;
    for r in &trace.records {
        sum += r.cycle_work;
        worst = worst.max((r.cumulative_work - sum).abs());
    }
    Ok((worst < 1e-10, format!("fig3 config, max |cumulative - sum| = {worst:.2e}")))
}

fn determinism() -> coherent_otto::Result<(bool, String)> {
    let cfg = presets::fig3().engine;
    let (a, b) = (run_engine(&cfg)?, run_engine(&cfg)?);
    let same = a.records == b.records && a.final_joint == b.final_joint;
    Ok((same, "two runs of the fig3 config compared bit for bit".into()))
}

fn fixture_advantage() -> coherent_otto::Result<(bool, String)> {
    let cmp = compare_coherent_incoherent(&presets::fixture_config())?;
    Ok(match cmp.peak() {
        Some((cycle, ratio)) => (ratio >= 1.5 && cycle <= 10, format!("peak {ratio:.4} at N = {cycle} (>= 1.5, N <= 10)")),
        None => (false, "no defined advantage".into()),
    })
}

fn advantage_non_negative() -> coherent_otto::Result<(bool, String)> {
    let mut worst = f64::INFINITY;
    let mut points = 0;
    for k in 1..16 {
        for j in 1..=5 {
            let cfg = EngineConfig {
                theta: FRAC_PI_2 * k as f64 / 16.0,
                p_mx: 0.1 * j as f64,
                cycles: 20,
                ..EngineConfig::ideal()
            };
            for a in compare_coherent_incoherent(&cfg)?.advantage.into_iter().flatten() {
                worst = worst.min(a);
                points += 1;
            }
        }
    }
    Ok((worst >= 0.0, format!("{points} ratios, min {worst:.3e}")))
}

fn with_t2(cfg: &EngineConfig, t2: f64, cycles: usize) -> EngineConfig {
    EngineConfig {
        noise: NoiseConfig {
            battery_t2_per_cycle: t2,
            ..cfg.noise
        },
        cycles,
        ..cfg.clone()
    }
}

fn monotone_dephasing() -> coherent_otto::Result<(bool, String)> {
    let fixture = presets::fixture_config();
    let mut previous: Option<Vec<f64>> = None;
    let mut violations = 0;
    for k in 0..=10 {
        let work = run_engine(&with_t2(&fixture, 1.0 - 0.1 * k as f64, 30))?.cumulative_work();
        if let Some(prev) = &previous {
            violations += prev.iter().zip(&work).filter(|(hi, lo)| **hi + 1e-12 < **lo).count();
        }
        previous = Some(work);
    }
    Ok((violations == 0, format!("t2 in {{1.0, 0.9, ..., 0.0}} over 30 cycles, {violations} violations")))
}

fn interior_peak(series: &[f64]) -> Option<usize> {
    let (i, &peak) = series.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1))?;
    (peak > series[0] && peak > series[series.len() - 1]).then_some(i + 1)
}

fn coherence_rise_and_fall() -> coherent_otto::Result<(bool, String)> {
    let trace = run_engine(&with_t2(&presets::fixture_config(), 0.9, 30))?;
    let cb: Vec<f64> = trace.records.iter().map(|r| r.coherence_rel_entropy).collect();
    let eq: Vec<f64> = trace.records.iter().map(|r| r.ergotropy.coherent).collect();
    let (a, b) = (interior_peak(&cb), interior_peak(&eq));
    let show = |p: Option<usize>| p.map_or("no interior peak".to_string(), |n| format!("peak at N = {n}"));
    Ok((
        a.is_some() && b.is_some(),
        format!("t2 = 0.9, N = 1..30: C_B {}, coherent ergotropy {}", show(a), show(b)),
    ))
}

fn diagnostics_reference_values() -> coherent_otto::Result<(bool, String)> {
    let h = FRAC_1_SQRT_2;
    let bell = DensityOperator::pure(&[0.0, h, h, 0.0].map(|a| Complex64::new(a, 0.0)))?;
    let product = DensityOperator::new(kron(
        &PolarizationVector::new(0.5, 0.0, 0.0).to_matrix(),
        &PolarizationVector::new(0.0, 0.3, -0.4).to_matrix(),
    )?)?;
    let phi = DensityOperator::pure(&[h, 0.0, 0.0, h].map(|a| Complex64::new(a, 0.0)))?;
    let werner = DensityOperator::new(&phi.matrix().scale_real(0.5) + &ComplexMatrix::identity(4).scale_real(0.125))?;
    let plus = DensityOperator::new(PolarizationVector::new(0.5, 0.0, 0.0).to_matrix())?;
    let e = ergotropy(&plus, 1.0)?;

    let checks = [
        (concurrence(&bell)? - 1.0).abs() < 1e-10,
        concurrence(&product)? < 1e-10,
        (concurrence(&werner)? - 0.25).abs() < 1e-10,
        (e.total - 0.5).abs() < 1e-12 && (e.coherent - 0.5).abs() < 1e-12,
        (relative_entropy_of_coherence(&plus) - LN_2).abs() < 1e-12,
        (von_neumann_entropy(&DensityOperator::maximally_mixed(2)) - LN_2).abs() < 1e-12,
    ];
    let passed = checks.iter().filter(|&&c| c).count();
    Ok((passed == checks.len(), format!("{passed}/{} reference values", checks.len())))
}

/// Applies `count` randomly chosen stages to evolving random states and
/// records the worst trace error and the smallest eigenvalue seen. Pure
/// inputs and boundary bath states keep rank-deficient states in the mix.
pub fn fuzz_stages(seed: u64, count: usize) -> coherent_otto::Result<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = random_density(&mut rng);
    let (mut worst_trace, mut min_eig) = (0.0f64, f64::INFINITY);
    for step in 0..count {
        if step % 50 == 0 {
            state = if rng.gen_bool(0.5) { random_pure(&mut rng) } else { random_density(&mut rng) };
        }
        let edge = rng.gen_bool(0.3);
        state = match rng.gen_range(0..4) {
            0 => power_stroke(&state, rng.gen_range(-PI..PI))?,
            1 => {
                let p0: f64 = rng.gen_range(0.0..=1.0);
                let scale = if edge { 1.0 } else { rng.gen_range(-1.0..=1.0) };
                let p_mx = (p0 * (1.0 - p0)).sqrt() * scale;
                reset_medium(&state, &prepare_medium_hot(p_mx, [p0, 1.0 - p0])?)?
            }
            2 => {
                let q0: f64 = if edge { 0.0 } else { rng.gen_range(0.0..=1.0) };
                reset_medium(&state, &prepare_medium_cold([q0, 1.0 - q0])?)?
            }
            _ => dephase_battery(&state, rng.gen_range(0.0..=1.0))?,
        };
        let m = state.matrix();
        worst_trace = worst_trace.max((m.trace() - Complex64::new(1.0, 0.0)).norm());
        min_eig = min_eig.min(hermitian_eig(m)?.eigenvalues[0]);
    }
    Ok((worst_trace, min_eig))
}

fn state_validity_fuzz(count: usize) -> coherent_otto::Result<(bool, String)> {
    let (trace_error, min_eig) = fuzz_stages(SEED, count)?;
    Ok((
        trace_error <= 1e-12 && min_eig >= -1e-10,
        format!("{count} stages, max trace error {trace_error:.2e}, min eigenvalue {min_eig:.2e}"),
    ))
}

/// Post-stroke concurrence over `θ ∈ (0, π/2)`, `P_M^x ∈ (0, 0.49]` with
/// the default (experimental) bath states; returns the grid value nearest
/// to the middle of `[0.3, 0.5]`.
pub fn concurrence_scan() -> coherent_otto::Result<(f64, f64, f64)> {
    let mut best = (f64::NAN, f64::NAN, f64::NAN);
    for k in 1..32 {
        for j in 1..=7 {
            let cfg = EngineConfig {
                theta: FRAC_PI_2 * k as f64 / 32.0,
                p_mx: 0.07 * j as f64,
                ..EngineConfig::default()
            };
            let c = run_single_cycle(&cfg)?.0.concurrence_post_stroke;
            if best.2.is_nan() || (c - 0.4).abs() < (best.2 - 0.4).abs() {
                best = (cfg.theta, cfg.p_mx, c);
            }
        }
    }
    Ok(best)
}

fn concurrence_attainability() -> coherent_otto::Result<(bool, String)> {
    let (theta, p_mx, c) = concurrence_scan()?;
    Ok((
        (0.3..=0.5).contains(&c),
        format!("C = {c:.4} at theta = {theta:.4}, p_mx = {p_mx:.2} (target [0.3, 0.5])"),
    ))
}
