use anyhow::{bail, Context, Result};
use hull_lil::walk::{IncrementModel, ModelKind};
use nalgebra::DMatrix;

use crate::args::ModelArgs;

pub fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<f64>().with_context(|| format!("'{t}' is not a number"))
        })
        .collect()
}

pub fn parse_u64_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|t| {
            let t = t.trim();
            t.parse::<u64>().with_context(|| format!("'{t}' is not a non-negative integer"))
        })
        .collect()
}

/// `I` (any case) or a row-major list of `d²` entries.
fn parse_sigma(s: &str) -> Result<Option<Vec<f64>>> {
    if s.trim().eq_ignore_ascii_case("i") {
        Ok(None)
    } else {
        parse_list(s).map(Some)
    }
}

fn square_side(len: usize) -> Result<usize> {
    let d = (len as f64).sqrt().round() as usize;
    if d * d != len || d == 0 {
        bail!("covariance needs d² entries, got {len}");
    }
    Ok(d)
}

pub fn build_model(m: &ModelArgs, default_dim: usize) -> Result<IncrementModel> {
    let kind: ModelKind = m.model.parse()?;
    let sigma = parse_sigma(&m.sigma)?;
    let drift = match (&m.drift, m.zero_drift) {
        (Some(d), true) => {
            let d = parse_list(d)?;
            if d.iter().any(|&x| x != 0.0) {
                bail!("--zero-drift conflicts with a non-zero --drift");
            }
            Some(d)
        }
        (Some(d), false) => Some(parse_list(d)?),
        (None, true) => None,
        (None, false) => bail!("give --drift or --zero-drift"),
    };
    let dim = match (&drift, &sigma, m.dim) {
        (Some(d), _, _) => d.len(),
        (None, Some(s), _) => square_side(s.len())?,
        (None, None, Some(d)) => d,
        (None, None, None) => default_dim,
    };
    if let Some(want) = m.dim {
        if want != dim {
            bail!("--dim {want} disagrees with the drift or covariance dimension {dim}");
        }
    }
    let drift = drift.unwrap_or_else(|| vec![0.0; dim]);
    let cov = match sigma {
        None => None,
        Some(s) => {
            if square_side(s.len())? != dim {
                bail!("covariance is not {dim}×{dim}");
            }
            Some(DMatrix::from_row_slice(dim, dim, &s))
        }
    };
    if kind != ModelKind::Gaussian && cov.is_some() {
        bail!("only the gaussian model takes a covariance");
    }
    Ok(IncrementModel::from_kind(kind, drift, cov)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(drift: Option<&str>, zero: bool, sigma: &str) -> ModelArgs {
        ModelArgs {
            model: "gaussian".into(),
            drift: drift.map(String::from),
            zero_drift: zero,
            sigma: sigma.into(),
            dim: None,
        }
    }

    #[test]
    fn models_from_flags() {
        let m = build_model(&args(Some("1,0"), false, "I"), 2).unwrap();
        assert_eq!(m.drift(), &[1.0, 0.0]);
        let m = build_model(&args(None, true, "4,0,0,1"), 2).unwrap();
        assert_eq!(m.covariance()[(0, 0)], 4.0);
        assert!(!m.has_drift());
        let m = build_model(&args(None, true, "I"), 3).unwrap();
        assert_eq!(m.dim(), 3);
    }

    #[test]
    fn bad_flags() {
        assert!(build_model(&args(None, false, "I"), 2).is_err());
        assert!(build_model(&args(Some("1,0"), true, "I"), 2).is_err());
        assert!(build_model(&args(Some("1,0"), false, "1,2,3"), 2).is_err());
        assert!(build_model(&args(Some("1,0,0"), false, "1,0,0,1"), 2).is_err());
        let mut lattice = args(Some("1,0"), false, "2,0,0,2");
        lattice.model = "rademacher-lattice".into();
        assert!(build_model(&lattice, 2).is_err());
    }
}
