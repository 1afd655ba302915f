//! Projected ascent for hull-area maximisation under an energy budget.
//!
//! The unknowns are cell slopes (or cell velocities for planar curves) on a
//! uniform grid of `[0, 1]` with `N` cells, so the energy `Γ = h Σ sᵢ²` is a
//! weighted sum of squares and the feasible set `Γ ≤ 1` is a ball. A step moves
//! along the gradient in the `Γ` inner product and rescales back onto the ball.
//! The gradient is exact: the hull area depends on hull vertices only, through
//! the shoelace formula.

mod ascent;
mod com;
mod curve;
mod drift;
mod family;

pub use com::{com_area, maximize_com_area, maximize_com_area_from, BEST_KNOWN_A};
pub use curve::{curve_hull_area, maximize_area_zero_drift, maximize_area_zero_drift_from, semicircle};
pub use drift::{maximize_area_drift, maximize_area_drift_from};
pub use family::{theta_bound_from_family, verify_planar_optimum, PlanarOptimumReport, ThetaFamilyReport};

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::geom::Point2;
use crate::PLFunction;

/// Relative turn below which hull points count as lying on an edge when the
/// subgradient is formed.
pub(crate) const EDGE_EPS: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct OptimizerConfig {
    /// Number of grid cells `N`.
    pub grid_n: usize,
    pub restarts: usize,
    pub max_iter: usize,
    /// Initial step in the energy inner product; `None` means `0.1/√N`.
    pub initial_step: Option<f64>,
    /// Step factor after a rejected step.
    pub decay: f64,
    /// Step factor after an accepted step.
    pub growth: f64,
    /// An accepted step gaining less than this counts as stalled.
    pub tolerance: f64,
    /// Stop after this many consecutive stalled or rejected steps.
    pub patience: usize,
    /// After an ascent stalls, try a shape surgery that cannot lower the
    /// objective and resume from it when it helps.
    pub surgery: bool,
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            grid_n: 512,
            restarts: 8,
            max_iter: 20_000,
            initial_step: None,
            decay: 0.5,
            growth: 1.5,
            tolerance: 1e-12,
            patience: 50,
            surgery: true,
            seed: 1,
        }
    }
}

impl OptimizerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.grid_n < 16 {
            return Err(invalid("grid size must be at least 16"));
        }
        if self.restarts == 0 {
            return Err(invalid("need at least one restart"));
        }
        if !(self.tolerance > 0.0) {
            return Err(invalid("tolerance must be positive"));
        }
        if !(self.decay > 0.0 && self.decay < 1.0) || !(self.growth >= 1.0) {
            return Err(invalid("need 0 < decay < 1 <= growth"));
        }
        if let Some(s) = self.initial_step {
            if !(s > 0.0) {
                return Err(invalid("initial step must be positive"));
            }
        }
        Ok(())
    }

    pub(crate) fn step0(&self) -> f64 {
        self.initial_step
            .unwrap_or(0.1 / (self.grid_n as f64).sqrt())
    }

    pub(crate) fn with_grid(&self, grid_n: usize) -> Self {
        Self {
            grid_n,
            ..self.clone()
        }
    }
}

/// Maximiser returned by an ascent.
#[derive(Clone, Debug, PartialEq)]
pub enum Argmax {
    Function(PLFunction),
    Curve(Vec<Point2<f64>>),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TracePoint {
    #[serde(rename = "N")]
    pub n: usize,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptResult {
    /// Objective of the feasible argmax; always a lower bound for the supremum.
    pub value: f64,
    pub argmax: Argmax,
    /// Objective after re-optimising at `N`, `2N`, `4N`.
    pub trace: Vec<TracePoint>,
    pub certified_lower_bound: bool,
    pub converged: bool,
    pub iterations: usize,
    /// Objective after each accepted step of the best run.
    pub history: Vec<f64>,
}

/// Best of several ascents; ties go to the lower restart index.
pub(crate) fn best_of(runs: Vec<ascent::Ascent>) -> ascent::Ascent {
    runs.into_iter()
        .reduce(|a, b| if b.value > a.value { b } else { a })
        .expect("at least one restart")
}

/// `h Σ xᵢ²`.
pub(crate) fn energy(x: &[f64], h: f64) -> f64 {
    h * x.iter().map(|v| v * v).sum::<f64>()
}

/// Rescales onto the unit energy sphere when outside the ball.
pub(crate) fn project(x: &mut [f64], h: f64) {
    let e = energy(x, h);
    if e > 1.0 {
        let k = e.sqrt().recip();
        for v in x.iter_mut() {
            *v *= k;
        }
    }
}

/// Rescales onto the unit energy sphere.
pub(crate) fn to_sphere(x: &mut [f64], h: f64) {
    let e = energy(x, h);
    if e > 0.0 {
        let k = e.sqrt().recip();
        for v in x.iter_mut() {
            *v *= k;
        }
    }
}

/// Repeats `surgery` + ascent while the surgery strictly improves the objective.
pub(crate) fn polish(
    obj: &impl ascent::Objective,
    mut best: ascent::Ascent,
    h: f64,
    cfg: &OptimizerConfig,
    surgery: impl Fn(&[f64]) -> Option<Vec<f64>>,
) -> ascent::Ascent {
    const MAX_ROUNDS: usize = 20;
    if !cfg.surgery {
        return best;
    }
    for _ in 0..MAX_ROUNDS {
        let Some(mut x) = surgery(&best.x) else {
            break;
        };
        to_sphere(&mut x, h);
        if obj.eval(&x, None) <= best.value + cfg.tolerance {
            break;
        }
        let next = ascent::ascend(obj, x, h, cfg);
        let mut history = std::mem::take(&mut best.history);
        history.extend_from_slice(&next.history);
        best = ascent::Ascent {
            iterations: best.iterations + next.iterations,
            history,
            ..next
        };
    }
    best
}

/// Piecewise-linear interpolation of `values` (uniform on `[0, 1]`) onto `m` cells.
pub(crate) fn resample(values: &[f64], m: usize) -> Vec<f64> {
    let n = values.len() - 1;
    (0..=m)
        .map(|j| {
            let pos = j as f64 * n as f64 / m as f64;
            let k = (pos.floor() as usize).min(n - 1);
            let w = pos - k as f64;
            values[k] * (1.0 - w) + values[k + 1] * w
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn projection_lands_on_sphere() {
        let mut x = vec![3.0, -4.0, 1.0, 2.0];
        project(&mut x, 0.25);
        assert!((energy(&x, 0.25) - 1.0).abs() < 1e-12);
        let mut y = vec![0.1, 0.2];
        project(&mut y, 0.5);
        assert_eq!(y, vec![0.1, 0.2]);
    }

    #[test]
    fn config_validation() {
        assert!(OptimizerConfig::default().validate().is_ok());
        let bad = OptimizerConfig {
            grid_n: 8,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
        let bad = OptimizerConfig {
            tolerance: 0.0,
            ..Default::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn resampling_is_interpolation() {
        let v = vec![0.0, 1.0, 0.0];
        assert_eq!(resample(&v, 4), vec![0.0, 0.5, 1.0, 0.5, 0.0]);
    }
}
