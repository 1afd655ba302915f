use super::{uniform_grid, PLFunction};
use crate::error::{invalid, Result};
use crate::num::Scalar;

/// Running average `g(t) = (1/t) ∫₀ᵗ f`, `g(0) = 0`, evaluated exactly at the
/// `m + 1` points of a uniform grid on the domain of `f`.
pub fn running_average<T: Scalar>(f: &PLFunction<T>, m: usize) -> Result<PLFunction<T>> {
    if m < f.cells() {
        return Err(invalid(format!(
            "output grid ({m} cells) must be at least as fine as the input ({} cells)",
            f.cells()
        )));
    }
    let x = f.domain_length();
    let out = uniform_grid(x, m);
    let (t, v) = (f.grid(), f.values());
    let half = T::lit(0.5);
    let mut values = Vec::with_capacity(out.len());
    values.push(T::zero());
    // Integral over completed cells, and the index of the current cell.
    let mut done = T::zero();
    let mut cell = 0;
    for &s in &out[1..] {
        while cell + 1 < t.len() - 1 && t[cell + 1] <= s {
            done = done + (t[cell + 1] - t[cell]) * (v[cell] + v[cell + 1]) * half;
            cell += 1;
        }
        let slope = (v[cell + 1] - v[cell]) / (t[cell + 1] - t[cell]);
        let h = s - t[cell];
        let partial = v[cell] * h + slope * h * h * half;
        values.push((done + partial) / s);
    }
    PLFunction::new(out, values)
}

/// `u ↦ √(3γ/x³)·u(x − u)` sampled on a uniform grid of `[0, x]` with `cells` cells.
pub fn f_star<T: Scalar>(x: T, gamma: T, cells: usize) -> Result<PLFunction<T>> {
    if !(x > T::zero()) || !(gamma > T::zero()) {
        return Err(invalid("x and gamma must be positive"));
    }
    if cells < 2 {
        return Err(invalid("need at least two cells"));
    }
    let c = (T::lit(3.0) * gamma / (x * x * x)).sqrt();
    PLFunction::from_fn(x, cells, |u| c * u * (x - u))
}

/// The family `f_a(t) = a t² log t − (2a/3 + (3/2)s) t² + (2a/3 + s) t` with
/// `s = √(1 − a²/27)`, sampled on `[0, 1]`, together with its running average
/// from the closed-form antiderivative `∫₀ᵗ s² log s ds = t³ log t / 3 − t³/9`.
///
/// Each member has `∫₀¹ f_a = 0` and `∫₀¹ f_a'² = 1`.
pub fn f_a_family<T: Scalar>(a: T, cells: usize) -> Result<(PLFunction<T>, PLFunction<T>)> {
    if a * a > T::lit(27.0) {
        return Err(invalid("need |a| <= sqrt(27)"));
    }
    if cells < 2 {
        return Err(invalid("need at least two cells"));
    }
    let (b, c) = f_a_coefficients(a);
    let three = T::lit(3.0);
    let nine = T::lit(9.0);
    let half = T::lit(0.5);
    let f = PLFunction::from_fn(T::one(), cells, |t| {
        if t == T::zero() {
            T::zero()
        } else {
            a * t * t * t.ln() - b * t * t + c * t
        }
    })?;
    let g = PLFunction::from_fn(T::one(), cells, |t| {
        if t == T::zero() {
            T::zero()
        } else {
            a * (t * t * t.ln() / three - t * t / nine) - b * t * t / three + c * t * half
        }
    })?;
    Ok((f, g))
}

/// Coefficients `(b, c)` of `t²` (negated) and `t` in `f_a`.
pub(crate) fn f_a_coefficients<T: Scalar>(a: T) -> (T, T) {
    let s = (T::one() - a * a / T::lit(27.0)).max(T::zero()).sqrt();
    let two_thirds = a * T::lit(2.0) / T::lit(3.0);
    (two_thirds + T::lit(1.5) * s, two_thirds + s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::func::{area_a, gamma, random_pl};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn running_average_of_identity() {
        let f = PLFunction::from_fn(1.0, 8, |t: f64| t).unwrap();
        let g = running_average(&f, 16).unwrap();
        for (&t, &v) in g.grid().iter().zip(g.values()) {
            assert!((v - t / 2.0).abs() < 1e-15);
        }
        assert!(running_average(&f, 4).is_err());
    }

    #[test]
    fn running_average_of_f_star() {
        // Exact on the PL interpolant; compare with the smooth closed form.
        let f = f_star(1.0, 1.0, 4000).unwrap();
        let g = running_average(&f, 4000).unwrap();
        let s3 = 3f64.sqrt();
        for (&t, &v) in g.grid().iter().zip(g.values()).step_by(97) {
            assert!((v - s3 * (t / 2.0 - t * t / 3.0)).abs() < 1e-7);
        }
        assert!((g.end_value() - s3 / 6.0).abs() < 1e-7);
    }

    #[test]
    fn running_average_endpoint_is_the_integral() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for i in 0..100 {
            let f: PLFunction<f64> = random_pl(&mut rng, 5 + i, 1.0);
            let g = running_average(&f, 5 + i + i % 7).unwrap();
            assert!((g.end_value() - f.integral()).abs() < 1e-14);
        }
    }

    #[test]
    fn f_star_values() {
        let f = f_star(1.0, 1.0, 2).unwrap();
        assert!((f.values()[1] - 3f64.sqrt() / 4.0).abs() < 1e-15);
        let big = f_star(4.0, 1.0, 4000).unwrap();
        assert!((area_a(&big) - 8.0 * 3f64.sqrt() / 6.0).abs() < 1e-4);
        let g = f_star(2.0f64, 3.0, 2000).unwrap();
        assert!((gamma(&g) - 3.0).abs() < 1e-4);
        assert!(f_star(1.0, 1.0, 1).is_err());
    }

    #[test]
    fn f_a_constraints() {
        for a in [0.0f64, 2.0, 3.927922024247863, 4.059781, -1.0] {
            let (f, g) = f_a_family(a, 4000).unwrap();
            assert!((gamma(&f) - 1.0).abs() < 1e-3, "{a}: {}", gamma(&f));
            assert!(f.integral().abs() < 1e-6);
            assert!(g.end_value().abs() < 1e-12);
        }
        assert!(f_a_family(5.3, 10).is_err());
    }

    #[test]
    fn f_a_running_average_matches_numeric() {
        let (f, g) = f_a_family(4.0f64, 20000).unwrap();
        let numeric = running_average(&f, 20000).unwrap();
        for (a, b) in g.values().iter().zip(numeric.values()).skip(10) {
            assert!((a - b).abs() < 1e-6);
        }
    }
}
