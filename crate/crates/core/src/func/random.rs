use rand::Rng;

use super::surgery::bridge;
use super::PLFunction;
use crate::num::Scalar;
use crate::walk::standard_normal;

/// Random function on a uniform grid of `[0, 1]`: Gaussian slopes rescaled so
/// that `Γ(f) = gamma`.
pub fn random_pl<T: Scalar, R: Rng + ?Sized>(rng: &mut R, cells: usize, gamma: f64) -> PLFunction<T> {
    let cells = cells.max(2);
    let mut slopes: Vec<f64> = (0..cells).map(|_| standard_normal(rng)).collect();
    let energy: f64 = slopes.iter().map(|s| s * s).sum::<f64>() / cells as f64;
    let k = (gamma / energy).sqrt();
    for s in &mut slopes {
        *s *= k;
    }
    let slopes: Vec<T> = slopes.into_iter().map(T::lit).collect();
    PLFunction::from_slopes(super::uniform_grid(T::one(), cells), &slopes)
        .expect("finite slopes on a valid grid")
}

/// Random bridge (`f(0) = f(1) = 0`), not identically zero.
pub fn random_bridge<T: Scalar, R: Rng + ?Sized>(rng: &mut R, cells: usize, gamma: f64) -> PLFunction<T> {
    loop {
        let f = bridge(&random_pl::<T, R>(rng, cells, gamma)).expect("domain [0, 1]");
        if f.max_abs() > T::zero() {
            return f;
        }
    }
}

/// Random non-negative bridge: the absolute value of a random bridge at the grid points.
pub fn random_nonneg_bridge<T: Scalar, R: Rng + ?Sized>(
    rng: &mut R,
    cells: usize,
    gamma: f64,
) -> PLFunction<T> {
    let f = random_bridge::<T, R>(rng, cells, gamma);
    PLFunction::new(
        f.grid().to_vec(),
        f.values().iter().map(|v| v.abs()).collect(),
    )
    .expect("valid grid")
}
