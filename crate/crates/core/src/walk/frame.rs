use nalgebra::DMatrix;

use super::{khinchin_ell, WalkPath};
use crate::error::{Error, Result};

const SKIP_TOL: f64 = 1e-8;

/// Orthonormal basis (as columns) whose first vector is `μ/‖μ‖`, completed by
/// Gram–Schmidt over the coordinate axes in order.
pub fn drift_frame(mu: &[f64]) -> Result<DMatrix<f64>> {
    let d = mu.len();
    let norm = mu.iter().map(|x| x * x).sum::<f64>().sqrt();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::ZeroDrift);
    }
    let mut basis: Vec<Vec<f64>> = vec![mu.iter().map(|x| x / norm).collect()];
    for axis in 0..d {
        if basis.len() == d {
            break;
        }
        let mut v = vec![0.0; d];
        v[axis] = 1.0;
        // Two passes of modified Gram–Schmidt keep orthogonality near machine precision.
        for _ in 0..2 {
            for b in &basis {
                let p: f64 = v.iter().zip(b).map(|(x, y)| x * y).sum();
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= p * y;
                }
            }
        }
        let len = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if len < SKIP_TOL {
            continue;
        }
        basis.push(v.into_iter().map(|x| x / len).collect());
    }
    Ok(DMatrix::from_fn(d, d, |i, j| basis[j][i]))
}

/// Covariance of the increment component orthogonal to the drift, expressed in
/// the drift frame with the drift axis removed.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedCovariance {
    pub matrix: DMatrix<f64>,
    pub determinant: f64,
    /// Columns form the drift frame; the first is `μ̂`.
    pub frame: DMatrix<f64>,
}

pub fn reduced_covariance(sigma: &DMatrix<f64>, mu: &[f64]) -> Result<ReducedCovariance> {
    let d = mu.len();
    if sigma.nrows() != d || sigma.ncols() != d {
        return Err(Error::Dimension {
            expected: d,
            got: sigma.nrows(),
        });
    }
    super::model::symmetric_sqrt(sigma)?;
    let frame = drift_frame(mu)?;
    let rotated = frame.transpose() * sigma * &frame;
    let matrix = rotated.view((1, 1), (d - 1, d - 1)).into_owned();
    let determinant = if d == 1 { 1.0 } else { matrix.determinant() };
    Ok(ReducedCovariance {
        matrix,
        determinant,
        frame,
    })
}

/// Expresses every point of the path in the drift frame and divides the drift
/// coordinate by `n` and the others by `ℓ(n)`.
pub fn scale_psi(path: &WalkPath, frame: &ReducedCovariance) -> Result<Vec<Vec<f64>>> {
    let d = path.dim();
    if frame.frame.nrows() != d {
        return Err(Error::Dimension {
            expected: d,
            got: frame.frame.nrows(),
        });
    }
    if !path.model().has_drift() {
        return Err(Error::ZeroDrift);
    }
    let n = path.steps();
    if n == 0 {
        return Err(crate::error::invalid("scaling needs at least one step"));
    }
    let along = n as f64;
    let across = khinchin_ell(n as u64);
    Ok((0..=n)
        .map(|k| {
            let s = path.point(k);
            (0..d)
                .map(|j| {
                    let c: f64 = (0..d).map(|i| frame.frame[(i, j)] * s[i]).sum();
                    if j == 0 {
                        c / along
                    } else {
                        c / across
                    }
                })
                .collect()
        })
        .collect())
}
