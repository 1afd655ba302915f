//! Monte Carlo running maxima of hull functionals under iterated-logarithm
//! normalisations.
//!
//! With drift `μ ≠ 0`, the `k`-th intrinsic volume of the hull is divided by
//! `√(2^{k−1} n^{k+1} (log log n)^{k−1})`; without drift a functional
//! homogeneous of order `β` is divided by `ℓ(n)^β`. Because the limsup is only
//! reached at astronomically large `n`, the estimators report checkpointed
//! running maxima and leave the comparison with a target to the caller.

mod estimate;
mod stability;

pub use estimate::{default_checkpoints, estimate_limsup, ReplicaTrace, RunningMaxTrace};
pub use stability::permutation_stability_probe;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::walk::{khinchin_ell, reduced_covariance, sigma_star, IncrementModel};

/// Hull functional tracked along the walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Functional {
    /// Half the perimeter of the planar hull.
    V1,
    /// Area of the planar hull.
    Area,
    /// Volume of the hull in three dimensions.
    Volume,
    Diameter,
    /// Area of the hull of the centre-of-mass process.
    ComArea,
}

impl Functional {
    pub fn name(self) -> &'static str {
        match self {
            Functional::V1 => "v1",
            Functional::Area => "area",
            Functional::Volume => "volume",
            Functional::Diameter => "diameter",
            Functional::ComArea => "com-area",
        }
    }

    /// Order of homogeneity, which is also the intrinsic-volume index.
    pub fn order(self) -> u32 {
        match self {
            Functional::V1 | Functional::Diameter => 1,
            Functional::Area | Functional::ComArea => 2,
            Functional::Volume => 3,
        }
    }

    fn dim(self) -> usize {
        if self == Functional::Volume {
            3
        } else {
            2
        }
    }
}

impl std::str::FromStr for Functional {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "v1" => Ok(Functional::V1),
            "v2" | "area" => Ok(Functional::Area),
            "v3" | "volume" => Ok(Functional::Volume),
            "diameter" => Ok(Functional::Diameter),
            "com-area" | "com" => Ok(Functional::ComArea),
            other => Err(invalid(format!("unknown functional '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Drift,
    ZeroDrift,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Drift => "drift",
            Regime::ZeroDrift => "zero-drift",
        }
    }
}

/// What to estimate: a functional, a regime and the increment law.
#[derive(Clone, Debug, PartialEq)]
pub struct LilSpec {
    functional: Functional,
    regime: Regime,
    model: IncrementModel,
}

impl LilSpec {
    pub fn new(functional: Functional, regime: Regime, model: IncrementModel) -> Result<Self> {
        match regime {
            Regime::Drift if !model.has_drift() => return Err(Error::ZeroDrift),
            Regime::ZeroDrift if model.has_drift() => {
                return Err(invalid("zero-drift regime needs a model without drift"))
            }
            _ => {}
        }
        if model.dim() != functional.dim() {
            return Err(Error::Dimension {
                expected: functional.dim(),
                got: model.dim(),
            });
        }
        Ok(Self {
            functional,
            regime,
            model,
        })
    }

    pub fn functional(&self) -> Functional {
        self.functional
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn model(&self) -> &IncrementModel {
        &self.model
    }
}

/// The normalising sequence at step `n ≥ 3`.
pub fn normalizer(spec: &LilSpec, n: u64) -> Result<f64> {
    if n < 3 {
        return Err(invalid("normalizer needs n ≥ 3"));
    }
    let k = spec.functional.order() as i32;
    Ok(match spec.regime {
        Regime::Drift => {
            let nf = n as f64;
            let ll = nf.ln().ln();
            (2f64.powi(k - 1) * nf.powi(k + 1) * ll.powi(k - 1)).sqrt()
        }
        Regime::ZeroDrift => khinchin_ell(n).powi(k),
    })
}

/// `√3/6`, the planar drift-case variational constant.
pub const LAMBDA_2: f64 = 0.288_675_134_594_812_9;
/// `1/(2π)`, the planar zero-drift variational constant.
pub const V_2: f64 = 0.159_154_943_091_895_35;

/// The almost-sure limsup of the normalised functional, when known.
pub fn theoretical_constant(spec: &LilSpec) -> Option<f64> {
    let m = &spec.model;
    let sigma = m.covariance();
    match (spec.regime, spec.functional) {
        (Regime::Drift, Functional::V1 | Functional::Diameter) => Some(m.drift_norm()),
        (Regime::Drift, Functional::Area) => {
            let reduced = reduced_covariance(sigma, m.drift()).ok()?;
            Some(LAMBDA_2 * m.drift_norm() * reduced.determinant.max(0.0).sqrt())
        }
        (Regime::ZeroDrift, Functional::Area) => Some(V_2 * sigma.determinant().max(0.0).sqrt()),
        (Regime::ZeroDrift, Functional::Diameter) => sigma_star(sigma).ok(),
        _ => None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CheckpointValue {
    pub n: u64,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpecSummary {
    pub functional: Functional,
    pub regime: Regime,
    pub model: &'static str,
    pub dim: usize,
    pub drift: Vec<f64>,
    /// Row-major.
    pub covariance: Vec<f64>,
}

/// Summary of a run, as exported next to the trace CSV.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LilSummary {
    pub spec: SpecSummary,
    pub n_max: u64,
    pub replicas: usize,
    pub seed: u64,
    pub constant_theoretical: Option<f64>,
    pub merged_max_at: Vec<CheckpointValue>,
}

impl LilSummary {
    pub fn new(spec: &LilSpec, n_max: u64, trace: &RunningMaxTrace) -> Self {
        let m = spec.model();
        let cov = m.covariance();
        let d = m.dim();
        Self {
            spec: SpecSummary {
                functional: spec.functional,
                regime: spec.regime,
                model: m.kind().name(),
                dim: d,
                drift: m.drift().to_vec(),
                covariance: (0..d * d).map(|i| cov[(i / d, i % d)]).collect(),
            },
            n_max,
            replicas: trace.replicas().len(),
            seed: trace.seed(),
            constant_theoretical: theoretical_constant(spec),
            merged_max_at: trace
                .checkpoints()
                .iter()
                .zip(trace.merged_max())
                .map(|(&n, &value)| CheckpointValue { n, value })
                .collect(),
        }
    }
}
