use rayon::prelude::*;

use super::ascent::{ascend, Ascent, Objective};
use super::drift::shoelace;
use super::{best_of, polish, Argmax, OptResult, OptimizerConfig, TracePoint, EDGE_EPS};
use crate::error::{invalid, Result};
use crate::geom::{convex_hull_indices, hull_cycle_with_collinear, Point2};
use crate::walk::{replica_rng, standard_normal};

/// Hull area of the points `P₀ = 0, Pₖ = h Σ_{i<k} vᵢ`, velocities interleaved as
/// `(x₀, y₀, x₁, y₁, …)`.
struct CurveArea {
    h: f64,
}

fn positions(v: &[f64], h: f64) -> Vec<Point2<f64>> {
    let mut out = Vec::with_capacity(v.len() / 2 + 1);
    let mut p = Point2::new(0.0, 0.0);
    out.push(p);
    for c in v.chunks_exact(2) {
        p = Point2::new(p.x + h * c[0], p.y + h * c[1]);
        out.push(p);
    }
    out
}

impl Objective for CurveArea {
    fn eval(&self, v: &[f64], grad: Option<&mut [f64]>) -> f64 {
        let pts = positions(v, self.h);
        let strict = convex_hull_indices(&pts).expect("finite curve");
        let area = shoelace(&pts, &strict);
        let Some(g) = grad else {
            return area;
        };
        // Edge points get one-sided derivatives, as for graphs.
        let hull = hull_cycle_with_collinear(&pts, EDGE_EPS).expect("finite curve");
        {
            let mut gp = vec![Point2::new(0.0, 0.0); pts.len()];
            if hull.len() >= 3 {
                let m = hull.len();
                for (j, &k) in hull.iter().enumerate() {
                    let prev = pts[hull[(j + m - 1) % m]];
                    let next = pts[hull[(j + 1) % m]];
                    gp[k] = gp[k] + Point2::new(0.5 * (next.y - prev.y), 0.5 * (prev.x - next.x));
                }
            }
            let (mut ax, mut ay) = (0.0, 0.0);
            for i in (0..v.len() / 2).rev() {
                ax += gp[i + 1].x;
                ay += gp[i + 1].y;
                g[2 * i] = self.h * ax;
                g[2 * i + 1] = self.h * ay;
            }
        }
        area
    }
}

/// Hull area of a planar curve given by its grid points.
pub fn curve_hull_area(points: &[Point2<f64>]) -> Result<f64> {
    let hull = convex_hull_indices(points)?;
    Ok(shoelace(points, &hull))
}

/// Arc-length parametrised half circle of radius `1/π` through the origin,
/// sampled at `n + 1` points; it has unit length.
pub fn semicircle(n: usize) -> Vec<Point2<f64>> {
    let r = std::f64::consts::FRAC_1_PI;
    (0..=n)
        .map(|k| {
            let th = std::f64::consts::PI * k as f64 / n as f64;
            Point2::new(r * (1.0 - th.cos()), r * th.sin())
        })
        .collect()
}

fn velocities(points: &[Point2<f64>], h: f64) -> Vec<f64> {
    points
        .windows(2)
        .flat_map(|w| [(w[1].x - w[0].x) / h, (w[1].y - w[0].y) / h])
        .collect()
}

fn resample_curve(points: &[Point2<f64>], m: usize) -> Vec<Point2<f64>> {
    let n = points.len() - 1;
    (0..=m)
        .map(|j| {
            let pos = j as f64 * n as f64 / m as f64;
            let k = (pos.floor() as usize).min(n - 1);
            points[k].lerp(points[k + 1], pos - k as f64)
        })
        .collect()
}

/// Points at `m + 1` equally spaced arc-length positions along a polyline.
fn arc_length_resample(points: &[Point2<f64>], m: usize) -> Vec<Point2<f64>> {
    let mut cum = vec![0.0];
    for w in points.windows(2) {
        cum.push(cum.last().unwrap() + (w[1] - w[0]).norm());
    }
    let total = *cum.last().unwrap();
    let mut seg = 0;
    (0..=m)
        .map(|j| {
            let s = total * j as f64 / m as f64;
            while seg + 2 < cum.len() && cum[seg + 1] < s {
                seg += 1;
            }
            let len = cum[seg + 1] - cum[seg];
            let w = if len > 0.0 { ((s - cum[seg]) / len).clamp(0.0, 1.0) } else { 0.0 };
            points[seg].lerp(points[seg + 1], w)
        })
        .collect()
}

/// The hull boundary with its longest edge removed, traversed at constant
/// speed. Its hull is the hull of the curve, and it is no longer than the
/// curve whenever the curve visits the hull vertices in boundary order.
fn surgery(v: &[f64], h: f64) -> Option<Vec<f64>> {
    let pts = positions(v, h);
    let hull = convex_hull_indices(&pts).ok()?;
    let m = hull.len();
    if m < 3 {
        return None;
    }
    let edge = |j: usize| (pts[hull[(j + 1) % m]] - pts[hull[j]]).norm();
    let longest = (0..m)
        .max_by(|&a, &b| edge(a).total_cmp(&edge(b)))
        .expect("non-empty hull");
    let path: Vec<Point2<f64>> = (1..=m)
        .map(|k| pts[hull[(longest + k) % m]])
        .collect();
    let origin = path[0];
    let shifted: Vec<Point2<f64>> = path.iter().map(|&p| p - origin).collect();
    let n = v.len() / 2;
    Some(velocities(&arc_length_resample(&shifted, n), h))
}

fn run(cfg: &OptimizerConfig, v: Vec<f64>) -> Ascent {
    let obj = CurveArea {
        h: 1.0 / cfg.grid_n as f64,
    };
    let first = ascend(&obj, v, obj.h, cfg);
    polish(&obj, first, obj.h, cfg, |x| surgery(x, obj.h))
}

fn finish(cfg: &OptimizerConfig, best: Ascent) -> Result<OptResult> {
    let n = cfg.grid_n;
    let curve = positions(&best.x, 1.0 / n as f64);
    let value = curve_hull_area(&curve)?;
    let mut trace = vec![TracePoint { n, value }];
    let mut converged = best.converged;
    let mut points = curve.clone();
    for m in [2 * n, 4 * n] {
        let hm = 1.0 / m as f64;
        let refined = run(&cfg.with_grid(m), velocities(&resample_curve(&points, m), hm));
        converged &= refined.converged;
        points = positions(&refined.x, hm);
        trace.push(TracePoint {
            n: m,
            value: curve_hull_area(&points)?,
        });
    }
    Ok(OptResult {
        value,
        argmax: Argmax::Curve(curve),
        trace,
        certified_lower_bound: true,
        converged,
        iterations: best.iterations,
        history: best.history,
    })
}

/// Maximises the hull area of a planar piecewise-linear curve from the origin
/// with `∫ |f'|² ≤ 1`, from random starts.
pub fn maximize_area_zero_drift(cfg: &OptimizerConfig) -> Result<OptResult> {
    cfg.validate()?;
    let n = cfg.grid_n;
    let runs: Vec<Ascent> = (0..cfg.restarts as u64)
        .into_par_iter()
        .map(|r| {
            let mut rng = replica_rng(cfg.seed, r);
            run(cfg, (0..2 * n).map(|_| standard_normal(&mut rng)).collect())
        })
        .collect();
    finish(cfg, best_of(runs))
}

/// Single ascent from the curve through `init` (starting at the origin),
/// resampled onto the configured grid.
pub fn maximize_area_zero_drift_from(cfg: &OptimizerConfig, init: &[Point2<f64>]) -> Result<OptResult> {
    cfg.validate()?;
    if init.len() < 2 || init[0] != Point2::new(0.0, 0.0) {
        return Err(invalid("initial curve must start at the origin"));
    }
    let n = cfg.grid_n;
    let pts = resample_curve(init, n);
    finish(cfg, run(cfg, velocities(&pts, 1.0 / n as f64)))
}
