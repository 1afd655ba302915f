use super::{project, OptimizerConfig};

pub(crate) trait Objective: Sync {
    /// Objective value; fills `grad` with Euclidean partial derivatives when given.
    fn eval(&self, x: &[f64], grad: Option<&mut [f64]>) -> f64;
}

#[derive(Clone, Debug)]
pub(crate) struct Ascent {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
    pub history: Vec<f64>,
}

const MAX_STEP: f64 = 1e8;

/// Projected gradient ascent in the energy inner product `⟨a, b⟩ = h Σ aᵢbᵢ`.
///
/// Steps that do not increase the objective are rejected and shrink the step;
/// accepted steps enlarge it. Stops after `patience` consecutive steps that are
/// rejected or gain less than `tolerance`.
pub(crate) fn ascend(obj: &impl Objective, mut x: Vec<f64>, h: f64, cfg: &OptimizerConfig) -> Ascent {
    project(&mut x, h);
    let mut grad = vec![0.0; x.len()];
    let mut value = obj.eval(&x, Some(&mut grad));
    let mut history = vec![value];
    let mut step = cfg.step0();
    let mut stalled = 0;
    let mut cand = vec![0.0; x.len()];
    let mut cand_grad = vec![0.0; x.len()];
    for it in 0..cfg.max_iter {
        if grad.iter().all(|&g| g == 0.0) {
            return Ascent { x, value, iterations: it, converged: true, history };
        }
        for ((c, &xi), &g) in cand.iter_mut().zip(&x).zip(&grad) {
            *c = xi + step * g / h;
        }
        project(&mut cand, h);
        let v = obj.eval(&cand, Some(&mut cand_grad));
        if v > value {
            stalled = if v - value < cfg.tolerance { stalled + 1 } else { 0 };
            std::mem::swap(&mut x, &mut cand);
            std::mem::swap(&mut grad, &mut cand_grad);
            value = v;
            history.push(v);
            step = (step * cfg.growth).min(MAX_STEP);
        } else {
            stalled += 1;
            step *= cfg.decay;
        }
        if stalled >= cfg.patience {
            return Ascent { x, value, iterations: it + 1, converged: true, history };
        }
    }
    Ascent {
        x,
        value,
        iterations: cfg.max_iter,
        converged: false,
        history,
    }
}
