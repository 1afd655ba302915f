use super::majorant::{majorant, minorant};
use super::PLFunction;
use crate::error::{Error, Result};
use crate::num::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

fn bridge_tolerance<T: Scalar>(f: &PLFunction<T>) -> T {
    T::orient_eps() * T::lit(1e3) * f.max_abs().max(T::one())
}

fn require_bridge<T: Scalar>(f: &PLFunction<T>) -> Result<()> {
    if f.end_value().abs() > bridge_tolerance(f) {
        return Err(Error::InvalidFunction("expected a bridge (f(x) = 0)".into()));
    }
    Ok(())
}

/// `f̂(u) = f(u) − u·f(1)` on `[0, 1]`.
pub fn bridge<T: Scalar>(f: &PLFunction<T>) -> Result<PLFunction<T>> {
    if (f.domain_length() - T::one()).abs() > T::orient_eps() {
        return Err(Error::InvalidFunction(
            "bridge needs domain [0, 1]; rescale first".into(),
        ));
    }
    let end = f.end_value();
    let values: Vec<T> = f
        .grid()
        .iter()
        .zip(f.values())
        .map(|(&t, &v)| v - t * end)
        .collect();
    let mut values = values;
    *values.last_mut().expect("non-empty") = T::zero();
    PLFunction::new(f.grid().to_vec(), values)
}

/// Face-by-face reflection of a bridge into a non-negative bridge.
///
/// `Plus` replaces `f` on each face `[u, v]` of its concave majorant by
/// `f(u) + f(v) − f(u + v − t)` and keeps `f` elsewhere; `Minus` does the
/// mirrored construction from the convex minorant and returns `−f` elsewhere.
/// Inside a face the reflected grid `u + v − tᵢ` is used, so the output is
/// exactly piecewise linear and the energy is preserved cell by cell.
pub fn symmetrize<T: Scalar>(f: &PLFunction<T>, sign: Sign) -> Result<PLFunction<T>> {
    require_bridge(f)?;
    if f.max_abs() == T::zero() {
        return Err(Error::InvalidFunction(
            "symmetrization of the zero function".into(),
        ));
    }
    let faces = match sign {
        Sign::Plus => majorant(f).1,
        Sign::Minus => minorant(f).1,
    };
    let (t, v) = (f.grid(), f.values());
    let outside = |k: usize| match sign {
        Sign::Plus => v[k],
        Sign::Minus => -v[k],
    };
    let mut grid = Vec::with_capacity(t.len());
    let mut values = Vec::with_capacity(t.len());
    let mut faces_iter = faces.intervals.iter().peekable();
    let mut k = 0;
    while k < t.len() {
        match faces_iter.peek() {
            Some(&&(u, w)) if u == k => {
                faces_iter.next();
                grid.push(t[u]);
                values.push(outside(u));
                for j in (u + 1..w).rev() {
                    grid.push(t[u] + t[w] - t[j]);
                    values.push(match sign {
                        Sign::Plus => v[u] + v[w] - v[j],
                        Sign::Minus => v[j] - v[u] - v[w],
                    });
                }
                k = w;
            }
            _ => {
                grid.push(t[k]);
                values.push(outside(k));
                k += 1;
            }
        }
    }
    *values.last_mut().expect("non-empty") = T::zero();
    PLFunction::new(grid, values)
}

/// Replaces a non-negative bridge by its concave majorant.
pub fn convexify<T: Scalar>(f: &PLFunction<T>) -> Result<PLFunction<T>> {
    require_bridge(f)?;
    let tol = bridge_tolerance(f);
    if f.values().iter().any(|&v| v < -tol) {
        return Err(Error::InvalidFunction(
            "convexify needs a non-negative bridge".into(),
        ));
    }
    Ok(majorant(f).0)
}

/// `u ↦ a·f(u/x)`, stretching the domain by `x` and the values by `a`.
pub fn rescale_affine<T: Scalar>(f: &PLFunction<T>, a: T, x: T) -> Result<PLFunction<T>> {
    if !(a > T::zero()) || !(x > T::zero()) {
        return Err(Error::InvalidArgument(
            "affine factors must be positive".into(),
        ));
    }
    PLFunction::new(
        f.grid().iter().map(|&t| t * x).collect(),
        f.values().iter().map(|&v| v * a).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::func::{area_a, gamma, random_bridge, random_nonneg_bridge, random_pl};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tent() -> PLFunction<f64> {
        PLFunction::new(vec![0.0, 0.5, 1.0], vec![0.0, 1.0, 0.0]).unwrap()
    }

    #[test]
    fn bridge_of_identity_is_zero() {
        let id = PLFunction::from_fn(1.0, 4, |t: f64| t).unwrap();
        let b = bridge(&id).unwrap();
        assert!(b.values().iter().all(|v| v.abs() < 1e-15));
        assert_eq!(gamma(&b), 0.0);
    }

    #[test]
    fn bridge_of_square() {
        let f = PLFunction::from_fn(1.0, 2000, |t: f64| t * t).unwrap();
        let b = bridge(&f).unwrap();
        assert!((gamma(&f) - 4.0 / 3.0).abs() < 2e-6);
        assert!((gamma(&b) - 1.0 / 3.0).abs() < 2e-6);
    }

    #[test]
    fn bridge_rejects_other_domains() {
        let f = PLFunction::from_fn(2.0, 4, |t: f64| t).unwrap();
        assert!(bridge(&f).is_err());
    }

    #[test]
    fn bridge_identities_on_random_functions() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for i in 0..1000 {
            let f: PLFunction<f64> = random_pl(&mut rng, 10 + i % 60, 1.5);
            let b = bridge(&f).unwrap();
            let end = f.end_value();
            assert!((gamma(&b) - (gamma(&f) - end * end)).abs() < 1e-9);
            assert!((area_a(&b) - area_a(&f)).abs() < 1e-10);
        }
    }

    #[test]
    fn symmetrize_concave_tent_is_identity() {
        assert_eq!(symmetrize(&tent(), Sign::Plus).unwrap(), tent());
    }

    #[test]
    fn symmetrize_reflects_negative_parabola() {
        let f = PLFunction::from_fn(1.0, 100, |t: f64| -t * (1.0 - t)).unwrap();
        let s = symmetrize(&f, Sign::Plus).unwrap();
        for (&t, &v) in s.grid().iter().zip(s.values()) {
            assert!((v - t * (1.0 - t)).abs() < 1e-12);
        }
    }

    #[test]
    fn symmetrize_rejects_non_bridges_and_zero() {
        let id = PLFunction::from_fn(1.0, 4, |t: f64| t).unwrap();
        assert!(symmetrize(&id, Sign::Plus).is_err());
        let zero = PLFunction::from_fn(1.0, 4, |_t: f64| 0.0).unwrap();
        assert!(symmetrize(&zero, Sign::Minus).is_err());
    }

    #[test]
    fn symmetrization_properties_on_random_bridges() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for i in 0..500 {
            let f: PLFunction<f64> = random_bridge(&mut rng, 10 + i % 60, 1.0);
            let (upper, _) = majorant(&f);
            let (lower, _) = minorant(&f);
            let sp = symmetrize(&f, Sign::Plus).unwrap();
            let sm = symmetrize(&f, Sign::Minus).unwrap();
            assert!((gamma(&sp) - gamma(&f)).abs() < 1e-9);
            assert!((gamma(&sm) - gamma(&f)).abs() < 1e-9);
            assert!(sp.values().iter().all(|&v| v >= -1e-12));
            assert!(sm.values().iter().all(|&v| v >= -1e-12));
            let excess_plus = 2.0 * upper.integral() - f.integral();
            let excess_minus = f.integral() - 2.0 * lower.integral();
            assert!((sp.integral() - excess_plus).abs() < 1e-9);
            assert!((sm.integral() - excess_minus).abs() < 1e-9);
            assert!(area_a(&sp).max(area_a(&sm)) >= area_a(&f) - 1e-12);
            for (&t, &v) in sp.grid().iter().zip(sp.values()) {
                assert!(v >= upper.eval(t) - 1e-12);
            }
        }
    }

    #[test]
    fn convexify_examples() {
        assert_eq!(convexify(&tent()).unwrap(), tent());
        let w = PLFunction::new(
            vec![0.0f64, 0.25, 0.5, 0.75, 1.0],
            vec![0.0, 1.0, 0.2, 1.0, 0.0],
        )
        .unwrap();
        let c = convexify(&w).unwrap();
        assert_eq!(c.values(), &[0.0, 1.0, 1.0, 1.0, 0.0]);
        assert!(gamma(&c) < gamma(&w));
        assert!((area_a(&c) - area_a(&w)).abs() < 1e-15);
        let neg = PLFunction::new(vec![0.0, 0.5, 1.0], vec![0.0, -1.0, 0.0]).unwrap();
        assert!(convexify(&neg).is_err());
    }

    #[test]
    fn convexify_on_random_nonneg_bridges() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for i in 0..1000 {
            let f: PLFunction<f64> = random_nonneg_bridge(&mut rng, 10 + i % 60, 1.0);
            let c = convexify(&f).unwrap();
            assert!((area_a(&c) - area_a(&f)).abs() < 1e-12);
            assert!(gamma(&c) <= gamma(&f) + 1e-12);
        }
    }

    #[test]
    fn affine_rescaling() {
        let r = rescale_affine(&tent(), 2.0, 3.0).unwrap();
        assert!((area_a(&r) - 3.0).abs() < 1e-14);
        assert!((gamma(&r) - 16.0 / 3.0).abs() < 1e-14);
        assert_eq!(rescale_affine(&tent(), 1.0, 1.0).unwrap(), tent());
        let back = rescale_affine(&r, 0.5, 1.0 / 3.0).unwrap();
        for (a, b) in back.values().iter().zip(tent().values()) {
            assert!((a - b).abs() < 1e-12);
        }
        for (a, b) in back.grid().iter().zip(tent().grid()) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
