use rayon::prelude::*;

use super::ascent::{ascend, Ascent, Objective};
use super::drift::{graph_hull_area, integrate_slopes, pull_back_to_slopes, random_slopes, slopes_of};
use super::{best_of, project, resample, Argmax, OptResult, OptimizerConfig, TracePoint};
use crate::error::{invalid, Result};
use crate::func::{area_a, f_a_family, running_average, uniform_grid};
use crate::PLFunction;

/// `A(H(g))` for the running average `g` of `f`, sampled on the grid of `f`.
pub fn com_area(f: &PLFunction) -> Result<f64> {
    Ok(area_a(&running_average(f, f.cells())?))
}

struct ComArea {
    t: Vec<f64>,
    h: f64,
}

impl ComArea {
    /// Running average at the grid points: `gₖ = (1/tₖ) Σ_{i<k} h (fᵢ + fᵢ₊₁)/2`.
    fn average(&self, f: &[f64]) -> Vec<f64> {
        let mut g = Vec::with_capacity(f.len());
        g.push(0.0);
        let mut acc = 0.0;
        for k in 1..f.len() {
            acc += 0.5 * self.h * (f[k - 1] + f[k]);
            g.push(acc / self.t[k]);
        }
        g
    }
}

impl Objective for ComArea {
    fn eval(&self, s: &[f64], grad: Option<&mut [f64]>) -> f64 {
        let f = integrate_slopes(s, self.h);
        let g = self.average(&f);
        let Some(gs) = grad else {
            return graph_hull_area(&self.t, &g, None);
        };
        let mut gg = vec![0.0; g.len()];
        let a = graph_hull_area(&self.t, &g, Some(&mut gg));
        // Adjoint of the averaging map: fⱼ enters gₖ with weight h/tₖ for
        // j < k and h/(2tₖ) for j = k (f₀ is pinned at zero).
        let c: Vec<f64> = (0..g.len())
            .map(|k| if k == 0 { 0.0 } else { gg[k] * self.h / self.t[k] })
            .collect();
        let mut gf = vec![0.0; f.len()];
        let mut tail = 0.0;
        for j in (1..f.len()).rev() {
            gf[j] = 0.5 * c[j] + tail;
            tail += c[j];
        }
        pull_back_to_slopes(&gf, self.h, gs);
        a
    }
}

fn run(cfg: &OptimizerConfig, slopes: Vec<f64>) -> Ascent {
    let n = cfg.grid_n;
    let obj = ComArea {
        t: uniform_grid(1.0, n),
        h: 1.0 / n as f64,
    };
    ascend(&obj, slopes, obj.h, cfg)
}

fn finish(cfg: &OptimizerConfig, best: Ascent) -> Result<OptResult> {
    let n = cfg.grid_n;
    let argmax = PLFunction::uniform(1.0, integrate_slopes(&best.x, 1.0 / n as f64))?;
    let value = com_area(&argmax)?;
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
            value: com_area(&PLFunction::uniform(1.0, values.clone())?)?,
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

/// Parameter of the best-known member of the `f_a` family.
pub const BEST_KNOWN_A: f64 = 4.059781;

/// Maximises the hull area of the running average of `f` over
/// piecewise-linear `f` with `Γ(f) ≤ 1`. Restart 0 starts from
/// `f_a` with `a =` [`BEST_KNOWN_A`]; the others start at random.
pub fn maximize_com_area(cfg: &OptimizerConfig) -> Result<OptResult> {
    cfg.validate()?;
    let n = cfg.grid_n;
    let h = 1.0 / n as f64;
    let (fa, _) = f_a_family(BEST_KNOWN_A, n)?;
    let mut seeded = slopes_of(fa.values(), h);
    project(&mut seeded, h);
    let runs: Vec<Ascent> = (0..cfg.restarts as u64)
        .into_par_iter()
        .map(|r| {
            let start = if r == 0 { seeded.clone() } else { random_slopes(cfg.seed, r, n) };
            run(cfg, start)
        })
        .collect();
    finish(cfg, best_of(runs))
}

/// Single ascent from `init`, resampled onto the configured grid.
pub fn maximize_com_area_from(cfg: &OptimizerConfig, init: &PLFunction) -> Result<OptResult> {
    cfg.validate()?;
    if (init.domain_length() - 1.0).abs() > 1e-12 {
        return Err(invalid("initial function must live on [0, 1]"));
    }
    let n = cfg.grid_n;
    let values: Vec<f64> = uniform_grid(1.0, n).iter().map(|&t| init.eval(t)).collect();
    finish(cfg, run(cfg, slopes_of(&values, 1.0 / n as f64)))
}
