use rand::seq::SliceRandom;

use crate::error::{invalid, Error, Result};
use crate::geom::{convex_hull_2d, symmetric_difference_radius, Point2};
use crate::walk::{generate_walk, replica_rng, IncrementModel};

/// Stream used for drawing permutations, kept apart from the walk streams.
const PERMUTATION_STREAM: u64 = u64::MAX;

/// Largest `symmetric_difference_radius(ℋₙ, ℋₙ^π)` over `permutations`
/// random shuffles `π` of the first `k` increments, for each `n`.
///
/// One planar walk of length `max(n_values)` is drawn from `seed`, and every
/// `n` uses its prefix, so the radii for different `n` are comparable.
pub fn permutation_stability_probe(
    model: &IncrementModel,
    n_values: &[usize],
    k: usize,
    permutations: usize,
    seed: u64,
) -> Result<Vec<f64>> {
    if !model.has_drift() {
        return Err(Error::ZeroDrift);
    }
    if model.dim() != 2 {
        return Err(Error::Dimension {
            expected: 2,
            got: model.dim(),
        });
    }
    let Some(&n_min) = n_values.iter().min() else {
        return Ok(Vec::new());
    };
    if k > n_min {
        return Err(invalid("k exceeds the shortest walk"));
    }
    let n_max = *n_values.iter().max().expect("non-empty");
    let path = generate_walk(model, n_max, seed).points_2d()?;
    let steps: Vec<Point2<f64>> = path.windows(2).take(k).map(|w| w[1] - w[0]).collect();

    let mut rng = replica_rng(seed, PERMUTATION_STREAM);
    let shuffled: Vec<Vec<Point2<f64>>> = (0..permutations)
        .map(|_| {
            let mut order: Vec<usize> = (0..k).collect();
            order.shuffle(&mut rng);
            let mut pos = Point2::origin();
            std::iter::once(pos)
                .chain(order.iter().map(|&i| {
                    pos = pos + steps[i];
                    pos
                }))
                .collect()
        })
        .collect();

    n_values
        .iter()
        .map(|&n| {
            // Points after step k are shared by both hulls.
            let tail = convex_hull_2d(&path[k..=n])?;
            let with = |head: &[Point2<f64>]| {
                let mut pts = head.to_vec();
                pts.extend_from_slice(tail.vertices());
                convex_hull_2d(&pts)
            };
            let original = with(&path[..=k])?;
            shuffled.iter().try_fold(0.0f64, |best, head| {
                let r = symmetric_difference_radius(&original, &with(head)?)?;
                Ok(best.max(r))
            })
        })
        .collect()
}
