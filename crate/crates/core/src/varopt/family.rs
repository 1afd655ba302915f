use rayon::prelude::*;

use super::{Argmax, OptResult, TracePoint};
use crate::error::{invalid, Result};
use crate::func::{area_a, f_a_family, f_star, gamma, majorant, rescale_affine};

/// Scan of the `f_a` family: the hull area of the exact running average of
/// each member, sampled on `N` cells.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaFamilyReport {
    /// `value` is the best area; `argmax` is the best `f_a`.
    pub result: OptResult,
    pub best_a: f64,
    /// Start of the last face of the running average's majorant.
    pub t0: Option<f64>,
    /// `area/√2`.
    pub theta_bound: f64,
    /// `∫₀¹ g` for the best member.
    pub integral: f64,
    pub scan: Vec<(f64, f64)>,
}

pub fn theta_bound_from_family(a_values: &[f64], n: usize) -> Result<ThetaFamilyReport> {
    if a_values.is_empty() {
        return Err(invalid("no parameter values given"));
    }
    if let Some(a) = a_values.iter().find(|a| a.abs() > 27f64.sqrt()) {
        return Err(invalid(format!("parameter {a} outside [-√27, √27]")));
    }
    let scan: Vec<(f64, f64)> = a_values
        .par_iter()
        .map(|&a| {
            let (_, g) = f_a_family(a, n)?;
            Ok((a, area_a(&g)))
        })
        .collect::<Result<_>>()?;
    let (best_a, area) = scan
        .iter()
        .copied()
        .reduce(|x, y| if y.1 > x.1 { y } else { x })
        .expect("non-empty scan");
    let (f, g) = f_a_family(best_a, n)?;
    let (_, faces) = majorant(&g);
    let t0 = faces
        .intervals
        .last()
        .filter(|&&(_, v)| v == g.cells())
        .map(|&(u, _)| g.grid()[u]);
    Ok(ThetaFamilyReport {
        result: OptResult {
            value: area,
            argmax: Argmax::Function(f),
            trace: vec![TracePoint { n, value: area }],
            certified_lower_bound: true,
            converged: true,
            iterations: a_values.len(),
            history: Vec::new(),
        },
        best_a,
        t0,
        theta_bound: area / 2f64.sqrt(),
        integral: g.integral(),
        scan,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct PlanarOptimumReport {
    pub x: f64,
    pub gamma_target: f64,
    pub grid_n: usize,
    pub gamma: f64,
    pub area: f64,
    /// `√(3γx³)/6`.
    pub expected_area: f64,
    /// Largest relative error among the affine scaling identities checked.
    pub scaling_error: f64,
}

impl PlanarOptimumReport {
    pub fn gamma_error(&self) -> f64 {
        (self.gamma - self.gamma_target).abs()
    }

    pub fn area_error(&self) -> f64 {
        (self.area - self.expected_area).abs()
    }
}

/// Evaluates the parabola `f★_{x,γ}` on `N` cells and checks the affine
/// scaling identities `A(a f(·/x)) = a x A(f)` and `Γ(a f(·/x)) = (a²/x) Γ(f)`.
pub fn verify_planar_optimum(x: f64, gamma_target: f64, n: usize) -> Result<PlanarOptimumReport> {
    if n < 16 {
        return Err(invalid("grid size must be at least 16"));
    }
    let f = f_star(x, gamma_target, n)?;
    let unit = f_star(1.0, 1.0, n)?;
    let a = (gamma_target * x).sqrt();
    let scaled = rescale_affine(&unit, a, x)?;
    let rel = |got: f64, want: f64| (got - want).abs() / want.abs().max(1e-300);
    let mut scaling_error = rel(area_a(&scaled), a * x * area_a(&unit))
        .max(rel(gamma(&scaled), a * a / x * gamma(&unit)));
    for (p, q) in scaled.values().iter().zip(f.values()) {
        scaling_error = scaling_error.max((p - q).abs() / f.max_abs());
    }
    Ok(PlanarOptimumReport {
        x,
        gamma_target,
        grid_n: n,
        gamma: gamma(&f),
        area: area_a(&f),
        expected_area: (3.0 * gamma_target * x.powi(3)).sqrt() / 6.0,
        scaling_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_optimum_examples() {
        let r = verify_planar_optimum(1.0, 1.0, 2000).unwrap();
        assert!(r.area_error() < 1e-5 && r.gamma_error() < 2e-5);
        let r = verify_planar_optimum(4.0, 1.0, 2000).unwrap();
        assert!((r.area - 2.309401).abs() < 1e-4);
        let r = verify_planar_optimum(2.0, 3.0, 2000).unwrap();
        assert!(r.gamma_error() < 1e-4);
        assert!(r.scaling_error < 1e-12);
    }

    #[test]
    fn family_scan_rejects_bad_parameters() {
        assert!(theta_bound_from_family(&[], 100).is_err());
        assert!(theta_bound_from_family(&[6.0], 100).is_err());
    }

    #[test]
    fn family_scan_small_grid() {
        let r = theta_bound_from_family(&[3.9, 4.06, 4.2], 2000).unwrap();
        assert_eq!(r.best_a, 4.06);
        assert!(r.t0.is_some());
        assert!((r.theta_bound - r.result.value / 2f64.sqrt()).abs() < 1e-15);
    }
}
