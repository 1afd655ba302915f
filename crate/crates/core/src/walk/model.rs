use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;

use super::frame::drift_frame;
use super::normal::NormalSource;
use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModelKind {
    Gaussian,
    /// Independent `±1` coordinates plus the drift.
    RademacherLattice,
    /// Uniform on the ball of radius `√(d + 2)` plus the drift.
    UniformBall,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::Gaussian => "gaussian",
            ModelKind::RademacherLattice => "rademacher-lattice",
            ModelKind::UniformBall => "uniform-ball",
        }
    }
}

impl std::str::FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(ModelKind::Gaussian),
            "rademacher-lattice" | "rademacher" => Ok(ModelKind::RademacherLattice),
            "uniform-ball" => Ok(ModelKind::UniformBall),
            other => Err(invalid(format!("unknown increment model '{other}'"))),
        }
    }
}

/// Law of the i.i.d. increments `Z = μ + ξ`, `E ξ = 0`, `Cov ξ = Σ`.
///
/// The non-Gaussian kinds have `Σ = I`.
#[derive(Clone, Debug, PartialEq)]
pub struct IncrementModel {
    kind: ModelKind,
    drift: Vec<f64>,
    covariance: DMatrix<f64>,
    /// Row-major `d × d` map applied to the centred noise.
    transform: Vec<f64>,
}

impl IncrementModel {
    /// Gaussian increments `μ + Σ^{1/2} R ξ`, where `ξ` is standard normal and
    /// `R` is the drift frame (identity without drift). `R` does not change the
    /// law, but couples walks whose drifts differ by an orthogonal map.
    pub fn gaussian(drift: Vec<f64>, covariance: DMatrix<f64>) -> Result<Self> {
        let d = drift.len();
        check_dim(d)?;
        if covariance.nrows() != d || covariance.ncols() != d {
            return Err(Error::Dimension {
                expected: d,
                got: covariance.nrows(),
            });
        }
        let root = symmetric_sqrt(&covariance)?;
        let transform = &root * frame_or_identity(&drift)?;
        Ok(Self {
            kind: ModelKind::Gaussian,
            transform: row_major(&transform),
            covariance,
            drift,
        })
    }

    /// Gaussian with `Σ = I`.
    pub fn standard_gaussian(drift: Vec<f64>) -> Result<Self> {
        let d = drift.len();
        Self::gaussian(drift, DMatrix::identity(d, d))
    }

    pub fn rademacher_lattice(drift: Vec<f64>) -> Result<Self> {
        let d = drift.len();
        check_dim(d)?;
        Ok(Self {
            kind: ModelKind::RademacherLattice,
            transform: row_major(&DMatrix::identity(d, d)),
            covariance: DMatrix::identity(d, d),
            drift,
        })
    }

    pub fn uniform_ball(drift: Vec<f64>) -> Result<Self> {
        let d = drift.len();
        check_dim(d)?;
        Ok(Self {
            kind: ModelKind::UniformBall,
            transform: row_major(&frame_or_identity(&drift)?),
            covariance: DMatrix::identity(d, d),
            drift,
        })
    }

    /// Builds a model of the given kind; `covariance` must be `None` (or the
    /// identity) for the non-Gaussian kinds.
    pub fn from_kind(
        kind: ModelKind,
        drift: Vec<f64>,
        covariance: Option<DMatrix<f64>>,
    ) -> Result<Self> {
        let d = drift.len();
        match kind {
            ModelKind::Gaussian => {
                Self::gaussian(drift, covariance.unwrap_or_else(|| DMatrix::identity(d, d)))
            }
            other => {
                if let Some(c) = covariance {
                    if c != DMatrix::identity(d, d) {
                        return Err(invalid(format!(
                            "{} increments have identity covariance",
                            other.name()
                        )));
                    }
                }
                if other == ModelKind::RademacherLattice {
                    Self::rademacher_lattice(drift)
                } else {
                    Self::uniform_ball(drift)
                }
            }
        }
    }

    pub fn kind(&self) -> ModelKind {
        self.kind
    }

    pub fn dim(&self) -> usize {
        self.drift.len()
    }

    pub fn drift(&self) -> &[f64] {
        &self.drift
    }

    pub fn drift_norm(&self) -> f64 {
        self.drift.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn has_drift(&self) -> bool {
        self.drift.iter().any(|&x| x != 0.0)
    }

    pub fn covariance(&self) -> &DMatrix<f64> {
        &self.covariance
    }

    /// Draws one increment into `out`.
    pub(crate) fn sample_into<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        normals: &mut NormalSource,
        noise: &mut [f64],
        out: &mut [f64],
    ) {
        let d = self.dim();
        match self.kind {
            ModelKind::Gaussian => {
                for x in noise.iter_mut() {
                    *x = normals.next(rng);
                }
            }
            ModelKind::RademacherLattice => {
                for x in noise.iter_mut() {
                    *x = if rng.random::<bool>() { 1.0 } else { -1.0 };
                }
            }
            ModelKind::UniformBall => {
                let mut r2 = 0.0;
                for x in noise.iter_mut() {
                    *x = normals.next(rng);
                    r2 += *x * *x;
                }
                let u: f64 = rng.random();
                let radius = ((d + 2) as f64).sqrt() * u.powf(1.0 / d as f64);
                let k = radius / r2.sqrt();
                for x in noise.iter_mut() {
                    *x *= k;
                }
            }
        }
        for (i, o) in out.iter_mut().enumerate() {
            let row = &self.transform[i * d..(i + 1) * d];
            *o = self.drift[i] + row.iter().zip(noise.iter()).map(|(a, b)| a * b).sum::<f64>();
        }
    }
}

fn check_dim(d: usize) -> Result<()> {
    if d == 0 {
        Err(invalid("dimension must be positive"))
    } else {
        Ok(())
    }
}

fn frame_or_identity(drift: &[f64]) -> Result<DMatrix<f64>> {
    let d = drift.len();
    if drift.iter().all(|&x| x == 0.0) {
        Ok(DMatrix::identity(d, d))
    } else {
        drift_frame(drift)
    }
}

fn row_major(m: &DMatrix<f64>) -> Vec<f64> {
    (0..m.nrows())
        .flat_map(|i| (0..m.ncols()).map(move |j| m[(i, j)]))
        .collect()
}

/// Symmetric non-negative square root; eigenvalues down to `−1e-12·scale` are
/// clipped to zero, anything more negative is rejected.
pub fn symmetric_sqrt(sigma: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    if !sigma.is_square() {
        return Err(Error::NotPsd);
    }
    if sigma.iter().any(|x| !x.is_finite()) {
        return Err(Error::NonFinite);
    }
    let scale = sigma.amax().max(1.0);
    if (sigma - sigma.transpose()).amax() > 1e-12 * scale {
        return Err(Error::NotPsd);
    }
    let eig = SymmetricEigen::new(sigma.clone());
    if eig.eigenvalues.iter().any(|&l| l < -1e-12 * scale) {
        return Err(Error::NotPsd);
    }
    let roots = eig.eigenvalues.map(|l| l.max(0.0).sqrt());
    let v = &eig.eigenvectors;
    Ok(v * DMatrix::from_diagonal(&roots) * v.transpose())
}

/// Largest eigenvalue of `Σ^{1/2}`, i.e. `√λ_max(Σ)`.
pub fn sigma_star(sigma: &DMatrix<f64>) -> Result<f64> {
    let root = symmetric_sqrt(sigma)?;
    let eig = SymmetricEigen::new(root);
    Ok(eig.eigenvalues.iter().cloned().fold(0.0, f64::max))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_root_of_diagonal() {
        let s = DMatrix::from_row_slice(2, 2, &[4.0, 0.0, 0.0, 9.0]);
        let r = symmetric_sqrt(&s).unwrap();
        assert!((r[(0, 0)] - 2.0).abs() < 1e-12 && (r[(1, 1)] - 3.0).abs() < 1e-12);
        assert!((sigma_star(&s).unwrap() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn square_root_squares_back() {
        let s = DMatrix::from_row_slice(3, 3, &[2.0, 0.5, 0.1, 0.5, 1.0, 0.2, 0.1, 0.2, 0.5]);
        let r = symmetric_sqrt(&s).unwrap();
        assert!((&r * &r - &s).amax() < 1e-12);
    }

    #[test]
    fn rejects_indefinite_and_asymmetric() {
        let s = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 1.0]);
        assert_eq!(symmetric_sqrt(&s), Err(Error::NotPsd));
        let a = DMatrix::from_row_slice(2, 2, &[1.0, 0.5, 0.0, 1.0]);
        assert_eq!(IncrementModel::gaussian(vec![0.0, 0.0], a), Err(Error::NotPsd));
    }

    #[test]
    fn clips_tiny_negative_eigenvalues() {
        let s = DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0 - 1e-14]);
        let r = symmetric_sqrt(&s).unwrap();
        assert!(r.iter().all(|x| x.is_finite()));
    }

    #[test]
    fn kinds_parse() {
        assert_eq!("gaussian".parse::<ModelKind>().unwrap(), ModelKind::Gaussian);
        assert!("cauchy".parse::<ModelKind>().is_err());
        let c = DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 1.0]);
        assert!(IncrementModel::from_kind(ModelKind::UniformBall, vec![1.0, 0.0], Some(c)).is_err());
    }
}
