//! Exhaustive grid search for the largest coherent work advantage.

use std::fmt;

use coherent_otto::multicycle::compare_coherent_incoherent;
use coherent_otto::{EngineConfig, NoiseConfig};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::scenario::SearchGrid;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub theta: f64,
    pub p_mx: f64,
    pub battery_dephasing_per_reset: f64,
    pub battery_t2_per_cycle: f64,
}

impl GridPoint {
    pub fn config(&self, template: &EngineConfig, cycles: usize) -> EngineConfig {
        EngineConfig {
            theta: self.theta,
            p_mx: self.p_mx,
            noise: NoiseConfig {
                battery_dephasing_per_reset: self.battery_dephasing_per_reset,
                battery_t2_per_cycle: self.battery_t2_per_cycle,
            },
            cycles,
            ..template.clone()
        }
    }
}

impl fmt::Display for GridPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(theta={}, p_mx={}, battery_dephasing_per_reset={}, battery_t2_per_cycle={})",
            self.theta, self.p_mx, self.battery_dephasing_per_reset, self.battery_t2_per_cycle
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridEvaluation {
    pub point: GridPoint,
    /// Cycle and ratio of the largest defined advantage, if any.
    pub peak_cycle: Option<usize>,
    pub peak_advantage: Option<f64>,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// In grid order.
    pub evaluations: Vec<GridEvaluation>,
    /// Index into `evaluations`; `None` if no point has a defined ratio.
    pub best: Option<usize>,
}

impl SearchOutcome {
    pub fn best(&self) -> Option<&GridEvaluation> {
        self.best.map(|i| &self.evaluations[i])
    }
}

/// All grid points, lexicographic in axis order with the last axis fastest.
/// Axes are used as given; [`SearchGrid`] sorts them on load.
pub fn grid_points(grid: &SearchGrid) -> Vec<GridPoint> {
    let mut points = Vec::new();
    for &theta in &grid.theta {
        for &p_mx in &grid.p_mx {
            for &battery_dephasing_per_reset in &grid.battery_dephasing_per_reset {
                for &battery_t2_per_cycle in &grid.battery_t2_per_cycle {
                    points.push(GridPoint {
                        theta,
                        p_mx,
                        battery_dephasing_per_reset,
                        battery_t2_per_cycle,
                    });
                }
            }
        }
    }
    points
}

/// Evaluates every grid point over cycles `1..=grid.max_cycle`. The best
/// point has the strictly largest peak advantage; ties keep the earliest
/// point in grid order.
pub fn search_advantage(template: &EngineConfig, grid: &SearchGrid) -> Result<SearchOutcome> {
    let evaluations = grid_points(grid)
        .par_iter()
        .map(|point| {
            let comparison = compare_coherent_incoherent(&point.config(template, grid.max_cycle))?;
            let peak = comparison.peak();
            Ok(GridEvaluation {
                point: *point,
                peak_cycle: peak.map(|(cycle, _)| cycle),
                peak_advantage: peak.map(|(_, ratio)| ratio),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut best: Option<usize> = None;
    for (i, evaluation) in evaluations.iter().enumerate() {
        if let Some(ratio) = evaluation.peak_advantage {
            if best.is_none_or(|b| ratio > evaluations[b].peak_advantage.expect("best has a ratio")) {
                best = Some(i);
            }
        }
    }
    Ok(SearchOutcome { evaluations, best })
}
