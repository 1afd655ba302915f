use rayon::prelude::*;

use super::ascent::{ascend, Ascent, Objective};
use super::{best_of, polish, resample, Argmax, OptResult, OptimizerConfig, TracePoint, EDGE_EPS};
use crate::error::{invalid, Result};
use crate::func::{area_a, bridge, convexify, symmetrize, uniform_grid, Sign};
use crate::geom::{convex_hull_indices, hull_cycle_with_collinear, Point2};
use crate::walk::{replica_rng, standard_normal};
use crate::PLFunction;

/// Area of the convex hull of the graph points `(tₖ, yₖ)` and its gradient in `y`.
///
/// For a boundary point with counterclockwise neighbours `p` and `q`, the
/// shoelace formula gives `∂A/∂yₖ = (x_p − x_q)/2`; interior points do not move
/// the area. Points on a hull edge get their one-sided derivative, which lets
/// the ascent bend flat pieces. Rounding leaves long faces slightly bowed, so
/// points within [`EDGE_EPS`] of an edge are treated as on it; the returned
/// area always comes from the strict hull.
pub(crate) fn graph_hull_area(t: &[f64], y: &[f64], grad: Option<&mut [f64]>) -> f64 {
    let pts: Vec<Point2<f64>> = t.iter().zip(y).map(|(&a, &b)| Point2::new(a, b)).collect();
    let hull = convex_hull_indices(&pts).expect("finite graph");
    let area = shoelace(&pts, &hull);
    let Some(g) = grad else {
        return area;
    };
    let cycle = hull_cycle_with_collinear(&pts, EDGE_EPS).expect("finite graph");
    g.iter_mut().for_each(|v| *v = 0.0);
    let m = cycle.len();
    if m >= 3 {
        for (j, &k) in cycle.iter().enumerate() {
            let prev = pts[cycle[(j + m - 1) % m]];
            let next = pts[cycle[(j + 1) % m]];
            g[k] += 0.5 * (prev.x - next.x);
        }
    }
    area
}

pub(crate) fn shoelace(pts: &[Point2<f64>], hull: &[usize]) -> f64 {
    if hull.len() < 3 {
        return 0.0;
    }
    let m = hull.len();
    let twice: f64 = (0..m)
        .map(|j| pts[hull[j]].cross(pts[hull[(j + 1) % m]]))
        .sum();
    0.5 * twice
}

/// Values `fₖ = h Σ_{i<k} sᵢ` on the uniform grid.
pub(crate) fn integrate_slopes(s: &[f64], h: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(s.len() + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for &v in s {
        acc += h * v;
        out.push(acc);
    }
    out
}

/// Pulls a gradient in the values back to the slopes: `∂/∂sᵢ = h Σ_{k>i} ∂/∂fₖ`.
pub(crate) fn pull_back_to_slopes(gf: &[f64], h: f64, gs: &mut [f64]) {
    let mut acc = 0.0;
    for i in (0..gs.len()).rev() {
        acc += gf[i + 1];
        gs[i] = h * acc;
    }
}

pub(crate) fn slopes_of(values: &[f64], h: f64) -> Vec<f64> {
    values.windows(2).map(|w| (w[1] - w[0]) / h).collect()
}

struct DriftArea {
    t: Vec<f64>,
    h: f64,
}

impl Objective for DriftArea {
    fn eval(&self, s: &[f64], grad: Option<&mut [f64]>) -> f64 {
        let f = integrate_slopes(s, self.h);
        match grad {
            None => graph_hull_area(&self.t, &f, None),
            Some(gs) => {
                let mut gf = vec![0.0; f.len()];
                let a = graph_hull_area(&self.t, &f, Some(&mut gf));
                pull_back_to_slopes(&gf, self.h, gs);
                a
            }
        }
    }
}

/// Bridge, the better of the two symmetrizations, then the concave majorant.
/// None of these lowers `A`, and none raises `Γ`.
fn surgery(slopes: &[f64], h: f64) -> Option<Vec<f64>> {
    let f = PLFunction::uniform(1.0, integrate_slopes(slopes, h)).ok()?;
    let b = bridge(&f).ok()?;
    if b.max_abs() == 0.0 {
        return None;
    }
    let plus = symmetrize(&b, Sign::Plus).ok()?;
    let minus = symmetrize(&b, Sign::Minus).ok()?;
    let pick = if area_a(&minus) > area_a(&plus) { minus } else { plus };
    let c = convexify(&pick).ok()?;
    // Reflections map the uniform grid to itself, so the values stay aligned.
    Some(slopes_of(c.values(), h))
}

fn run(cfg: &OptimizerConfig, slopes: Vec<f64>) -> Ascent {
    let n = cfg.grid_n;
    let obj = DriftArea {
        t: uniform_grid(1.0, n),
        h: 1.0 / n as f64,
    };
    let first = ascend(&obj, slopes, obj.h, cfg);
    polish(&obj, first, obj.h, cfg, |s| surgery(s, obj.h))
}

pub(crate) fn random_slopes(seed: u64, replica: u64, n: usize) -> Vec<f64> {
    let mut rng = replica_rng(seed, replica);
    (0..n).map(|_| standard_normal(&mut rng)).collect()
}

fn finish(cfg: &OptimizerConfig, best: Ascent) -> Result<OptResult> {
    let n = cfg.grid_n;
    let h = 1.0 / n as f64;
    let argmax = PLFunction::uniform(1.0, integrate_slopes(&best.x, h))?;
    let value = area_a(&argmax);
    let mut trace = vec![TracePoint { n, value }];
    let mut converged = best.converged;
    let mut values = argmax.values().to_vec();
    for m in [2 * n, 4 * n] {
        let hm = 1.0 / m as f64;
        let refined = run(&cfg.with_grid(m), slopes_of(&resample(&values, m), hm));
        converged &= refined.converged;
        values = integrate_slopes(&refined.x, hm);
        trace.push(TracePoint {
            n: m,
            value: area_a(&PLFunction::uniform(1.0, values.clone())?),
        });
    }
    Ok(OptResult {
        value,
        argmax: Argmax::Function(argmax),
        trace,
        certified_lower_bound: true,
        converged,
        iterations: best.iterations,
        history: best.history,
    })
}

/// Maximises `A(f)` over piecewise-linear `f` on `[0, 1]` with `Γ(f) ≤ 1`,
/// from `restarts` Gaussian random starts run in parallel.
pub fn maximize_area_drift(cfg: &OptimizerConfig) -> Result<OptResult> {
    cfg.validate()?;
    let runs: Vec<Ascent> = (0..cfg.restarts as u64)
        .into_par_iter()
        .map(|r| run(cfg, random_slopes(cfg.seed, r, cfg.grid_n)))
        .collect();
    finish(cfg, best_of(runs))
}

/// Single ascent started from `init`, which is resampled onto the configured grid.
pub fn maximize_area_drift_from(cfg: &OptimizerConfig, init: &PLFunction) -> Result<OptResult> {
    cfg.validate()?;
    if (init.domain_length() - 1.0).abs() > 1e-12 {
        return Err(invalid("initial function must live on [0, 1]"));
    }
    let n = cfg.grid_n;
    let grid = uniform_grid(1.0, n);
    let values: Vec<f64> = grid.iter().map(|&t| init.eval(t)).collect();
    finish(cfg, run(cfg, slopes_of(&values, 1.0 / n as f64)))
}
