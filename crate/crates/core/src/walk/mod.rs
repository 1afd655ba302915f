//! Seeded random walks `S₀ = 0, Sₙ = Z₁ + … + Zₙ` in `ℝᵈ`.
//!
//! Every path is a pure function of `(model, n, seed, replica)`: replica `r` of
//! seed `s` draws from ChaCha8 stream `r` keyed by `s`, so parallel runs are
//! reproducible regardless of scheduling.

mod frame;
mod model;
mod normal;

pub use frame::{drift_frame, reduced_covariance, scale_psi, ReducedCovariance};
pub use model::{sigma_star, symmetric_sqrt, IncrementModel, ModelKind};
pub use normal::{replica_rng, standard_normal};

use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::geom::Point2;
use normal::NormalSource;

/// Khinchin scaling `ℓ(n) = √(2n log log n)` for `n ≥ 3`, and 1 below.
pub fn khinchin_ell(n: u64) -> f64 {
    if n < 3 {
        1.0
    } else {
        let n = n as f64;
        (2.0 * n * n.ln().ln()).sqrt()
    }
}

/// Step-by-step generator that keeps only the current position.
#[derive(Clone, Debug)]
pub struct WalkStream<'a> {
    model: &'a IncrementModel,
    rng: ChaCha8Rng,
    normals: NormalSource,
    noise: Vec<f64>,
    step: Vec<f64>,
    position: Vec<f64>,
    steps: u64,
}

impl<'a> WalkStream<'a> {
    pub fn new(model: &'a IncrementModel, seed: u64, replica: u64) -> Self {
        let d = model.dim();
        Self {
            model,
            rng: replica_rng(seed, replica),
            normals: NormalSource::default(),
            noise: vec![0.0; d],
            step: vec![0.0; d],
            position: vec![0.0; d],
            steps: 0,
        }
    }

    /// Advances one step and returns the new position.
    pub fn advance(&mut self) -> &[f64] {
        self.model
            .sample_into(&mut self.rng, &mut self.normals, &mut self.noise, &mut self.step);
        for (p, z) in self.position.iter_mut().zip(&self.step) {
            *p += z;
        }
        self.steps += 1;
        &self.position
    }

    /// The increment drawn by the last call to [`advance`](Self::advance).
    pub fn last_increment(&self) -> &[f64] {
        &self.step
    }

    pub fn position(&self) -> &[f64] {
        &self.position
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }
}

/// A stored path `S₀, …, Sₙ`.
#[derive(Clone, Debug, PartialEq)]
pub struct WalkPath {
    coords: Vec<f64>,
    dim: usize,
    model: IncrementModel,
    seed: u64,
}

impl WalkPath {
    /// Builds a path from explicit positions; the first must be the origin.
    pub fn from_points(model: IncrementModel, points: &[Vec<f64>], seed: u64) -> Result<Self> {
        let dim = model.dim();
        let first = points.first().ok_or(Error::EmptyPointSet)?;
        if first.iter().any(|&x| x != 0.0) {
            return Err(invalid("a walk starts at the origin"));
        }
        let mut coords = Vec::with_capacity(points.len() * dim);
        for p in points {
            if p.len() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    got: p.len(),
                });
            }
            coords.extend_from_slice(p);
        }
        Ok(Self {
            coords,
            dim,
            model,
            seed,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of steps `n`; the path holds `n + 1` points.
    pub fn steps(&self) -> usize {
        self.coords.len() / self.dim - 1
    }

    pub fn model(&self) -> &IncrementModel {
        &self.model
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn point(&self, k: usize) -> &[f64] {
        &self.coords[k * self.dim..(k + 1) * self.dim]
    }

    pub fn points(&self) -> impl Iterator<Item = &[f64]> + '_ {
        self.coords.chunks_exact(self.dim)
    }

    pub fn end(&self) -> &[f64] {
        self.point(self.steps())
    }

    /// Planar view of the path; errors unless `d = 2`.
    pub fn points_2d(&self) -> Result<Vec<Point2<f64>>> {
        planar(self.points(), self.dim)
    }
}

pub(crate) fn planar<'a>(
    points: impl Iterator<Item = &'a [f64]>,
    dim: usize,
) -> Result<Vec<Point2<f64>>> {
    if dim != 2 {
        return Err(Error::Dimension {
            expected: 2,
            got: dim,
        });
    }
    Ok(points.map(|p| Point2::new(p[0], p[1])).collect())
}

/// `n` steps of replica 0 of `seed`.
pub fn generate_walk(model: &IncrementModel, n: usize, seed: u64) -> WalkPath {
    generate_replica(model, n, seed, 0)
}

pub fn generate_replica(model: &IncrementModel, n: usize, seed: u64, replica: u64) -> WalkPath {
    let d = model.dim();
    let mut coords = Vec::with_capacity((n + 1) * d);
    coords.extend(std::iter::repeat_n(0.0, d));
    let mut stream = WalkStream::new(model, seed, replica);
    for _ in 0..n {
        coords.extend_from_slice(stream.advance());
    }
    WalkPath {
        coords,
        dim: d,
        model: model.clone(),
        seed,
    }
}

/// `G₀ = 0`, `Gₙ = (1/n) Σ_{i=1}^{n} Sᵢ`.
pub fn centre_of_mass(path: &WalkPath) -> Vec<Vec<f64>> {
    let d = path.dim();
    let mut sum = vec![0.0; d];
    let mut out = Vec::with_capacity(path.steps() + 1);
    out.push(vec![0.0; d]);
    for (i, p) in path.points().enumerate().skip(1) {
        for (s, x) in sum.iter_mut().zip(p) {
            *s += x;
        }
        out.push(sum.iter().map(|s| s / i as f64).collect());
    }
    out
}

/// Linear interpolation `Yₙ(t) = S_{⌊nt⌋} + (nt − ⌊nt⌋) Z_{⌊nt⌋+1}`.
pub fn interpolate(path: &WalkPath, t: f64) -> Result<Vec<f64>> {
    if !(0.0..=1.0).contains(&t) {
        return Err(invalid(format!("interpolation time {t} outside [0, 1]")));
    }
    let n = path.steps();
    let nt = n as f64 * t;
    let k = (nt.floor() as usize).min(n);
    if k == n {
        return Ok(path.end().to_vec());
    }
    let frac = nt - k as f64;
    let (a, b) = (path.point(k), path.point(k + 1));
    Ok(a.iter().zip(b).map(|(x, y)| x + frac * (y - x)).collect())
}
