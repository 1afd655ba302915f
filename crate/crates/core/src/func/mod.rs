//! Functionals of piecewise-linear functions `f : [0, x] → ℝ` with `f(0) = 0`.
//!
//! Every functional is evaluated in closed form on the piecewise-linear data:
//! the energy `Γ(f) = ∫ f'²`, arc length, the hull area `A(f) = ∫ (f̄ − f̲)`
//! between the least concave majorant and the greatest convex minorant, and the
//! running average `t ↦ (1/t) ∫₀ᵗ f`.

mod families;
mod functionals;
mod majorant;
mod random;
mod surgery;

pub use families::{f_a_family, f_star, running_average};
pub use functionals::{arc_length, area_a, gamma, space_time_hull};
pub use majorant::{face_decomposition, majorant, minorant, FaceDecomposition, Faces};
pub use random::{random_bridge, random_nonneg_bridge, random_pl};
pub use surgery::{bridge, convexify, rescale_affine, symmetrize, Sign};

use crate::error::{Error, Result};
use crate::geom::Point2;
use crate::num::Scalar;

/// A continuous piecewise-linear function on `[0, x]`, given by its values on a
/// strictly increasing grid `0 = t₀ < … < t_N = x`, with `f(0) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct PLFunction<T> {
    grid: Vec<T>,
    values: Vec<T>,
}

fn bad(msg: &str) -> Error {
    Error::InvalidFunction(msg.to_string())
}

impl<T: Scalar> PLFunction<T> {
    pub fn new(grid: Vec<T>, values: Vec<T>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(bad("grid and values differ in length"));
        }
        if grid.len() < 2 {
            return Err(bad("need at least one cell"));
        }
        if grid.iter().chain(&values).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        if grid[0] != T::zero() {
            return Err(bad("grid must start at 0"));
        }
        if grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(bad("grid must be strictly increasing"));
        }
        let scale = values.iter().fold(T::one(), |m, v| m.max(v.abs()));
        if values[0].abs() > T::orient_eps() * scale {
            return Err(bad("f(0) must be 0"));
        }
        let mut values = values;
        values[0] = T::zero();
        Ok(Self { grid, values })
    }

    /// Uniform grid on `[0, x]` with `values.len() - 1` cells.
    pub fn uniform(x: T, values: Vec<T>) -> Result<Self> {
        if !(x > T::zero()) {
            return Err(bad("domain length must be positive"));
        }
        let n = values.len().saturating_sub(1).max(1);
        Self::new(uniform_grid(x, n), values)
    }

    /// Samples `f` on a uniform grid of `[0, x]` with `cells` cells.
    pub fn from_fn(x: T, cells: usize, f: impl Fn(T) -> T) -> Result<Self> {
        let grid = uniform_grid(x, cells.max(1));
        let values = grid.iter().map(|&t| f(t)).collect();
        Self::new(grid, values)
    }

    /// Integrates cell slopes on the given grid.
    pub fn from_slopes(grid: Vec<T>, slopes: &[T]) -> Result<Self> {
        if slopes.len() + 1 != grid.len() {
            return Err(bad("need one slope per cell"));
        }
        let mut values = Vec::with_capacity(grid.len());
        values.push(T::zero());
        let mut acc = T::zero();
        for (w, &s) in grid.windows(2).zip(slopes) {
            acc = acc + s * (w[1] - w[0]);
            values.push(acc);
        }
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &[T] {
        &self.grid
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Number of cells `N`.
    pub fn cells(&self) -> usize {
        self.grid.len() - 1
    }

    pub fn domain_length(&self) -> T {
        *self.grid.last().expect("non-empty grid")
    }

    pub fn end_value(&self) -> T {
        *self.values.last().expect("non-empty values")
    }

    pub fn max_abs(&self) -> T {
        self.values.iter().fold(T::zero(), |m, v| m.max(v.abs()))
    }

    pub fn slopes(&self) -> Vec<T> {
        self.grid
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(t, v)| (v[1] - v[0]) / (t[1] - t[0]))
            .collect()
    }

    /// Graph points `(tᵢ, f(tᵢ))`.
    pub fn points(&self) -> Vec<Point2<T>> {
        self.grid
            .iter()
            .zip(&self.values)
            .map(|(&t, &v)| Point2::new(t, v))
            .collect()
    }

    /// Value at `t`, clamped to the domain.
    pub fn eval(&self, t: T) -> T {
        let t = t.max(T::zero()).min(self.domain_length());
        let i = match self
            .grid
            .binary_search_by(|g| g.partial_cmp(&t).expect("finite grid"))
        {
            Ok(i) => return self.values[i],
            Err(i) => i,
        };
        let (t0, t1) = (self.grid[i - 1], self.grid[i]);
        let (v0, v1) = (self.values[i - 1], self.values[i]);
        v0 + (v1 - v0) * (t - t0) / (t1 - t0)
    }

    /// `∫₀ˣ f`.
    pub fn integral(&self) -> T {
        let half = T::lit(0.5);
        self.grid
            .windows(2)
            .zip(self.values.windows(2))
            .map(|(t, v)| (t[1] - t[0]) * (v[0] + v[1]) * half)
            .sum()
    }

    /// `∫ₐᵇ f` for `0 ≤ a ≤ b ≤ x`, exact.
    pub fn integral_between(&self, a: T, b: T) -> T {
        self.sum_over_cells(a, b, |t0, t1, v0, v1| (t1 - t0) * (v0 + v1) * T::lit(0.5))
    }

    /// `Γ` restricted to `[a, b]`, exact.
    pub fn gamma_between(&self, a: T, b: T) -> T {
        self.sum_over_cells(a, b, |t0, t1, v0, v1| {
            let dt = t1 - t0;
            if dt > T::zero() {
                (v1 - v0) * (v1 - v0) / dt
            } else {
                T::zero()
            }
        })
    }

    fn sum_over_cells(&self, a: T, b: T, piece: impl Fn(T, T, T, T) -> T) -> T {
        let mut total = T::zero();
        for (t, _) in self.grid.windows(2).zip(self.values.windows(2)) {
            let lo = t[0].max(a);
            let hi = t[1].min(b);
            if hi > lo {
                total = total + piece(lo, hi, self.eval(lo), self.eval(hi));
            }
        }
        total
    }

    /// `−f`.
    pub fn negated(&self) -> Self {
        Self {
            grid: self.grid.clone(),
            values: self.values.iter().map(|v| -*v).collect(),
        }
    }

    pub(crate) fn from_parts_unchecked(grid: Vec<T>, values: Vec<T>) -> Self {
        Self { grid, values }
    }
}

pub(crate) fn uniform_grid<T: Scalar>(x: T, cells: usize) -> Vec<T> {
    let n = T::from_usize_lossy(cells);
    let mut grid: Vec<T> = (0..=cells).map(|i| x * T::from_usize_lossy(i) / n).collect();
    grid[cells] = x;
    grid
}
