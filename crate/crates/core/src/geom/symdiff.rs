use super::point::Point2;
use super::polygon::ConvexPolygon;
use crate::error::{Error, Result};
use crate::num::Scalar;

/// Smallest `r` with `p1 Δ p2 ⊆ B(0, r)`.
///
/// The farthest point of the closed difference `cl(p1 \ p2)` lies on a piece of
/// `∂p1` outside `p2`. Each edge of `p1` is cut at its crossings with `∂p2`;
/// pieces whose midpoint lies outside `p2` contribute their endpoints. The same
/// is done with the roles swapped.
pub fn symmetric_difference_radius<T: Scalar>(
    p1: &ConvexPolygon<T>,
    p2: &ConvexPolygon<T>,
) -> Result<T> {
    let o = Point2::origin();
    if !p1.contains(o) || !p2.contains(o) {
        return Err(Error::OriginOutside);
    }
    Ok(one_sided(p1, p2).max(one_sided(p2, p1)))
}

fn one_sided<T: Scalar>(inner: &ConvexPolygon<T>, other: &ConvexPolygon<T>) -> T {
    let tol = inner.tolerance().max(other.tolerance());
    let outside = |p: Point2<T>| other.outside_distance(p) > tol;
    let mut best = T::zero();
    if inner.len() == 1 {
        let p = inner.vertices()[0];
        if outside(p) {
            best = p.norm();
        }
        return best;
    }
    for (a, b) in inner.edges() {
        let mut cuts = vec![T::zero(), T::one()];
        for (c, d) in other.edges() {
            if let Some(t) = segment_crossing(a, b, c, d) {
                cuts.push(t);
            }
        }
        cuts.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
        cuts.dedup();
        for w in cuts.windows(2) {
            let mid = a.lerp(b, (w[0] + w[1]) * T::lit(0.5));
            if outside(mid) {
                best = best.max(a.lerp(b, w[0]).norm()).max(a.lerp(b, w[1]).norm());
            }
        }
    }
    best
}

/// Parameter `t ∈ [0, 1]` along `a → b` where it crosses segment `c → d`.
/// Parallel (including overlapping) segments report no crossing.
fn segment_crossing<T: Scalar>(
    a: Point2<T>,
    b: Point2<T>,
    c: Point2<T>,
    d: Point2<T>,
) -> Option<T> {
    let r = b - a;
    let s = d - c;
    let denom = r.cross(s);
    if denom.abs() <= T::orient_eps() * r.norm() * s.norm() {
        return None;
    }
    let t = (c - a).cross(s) / denom;
    let u = (c - a).cross(r) / denom;
    let slack = T::orient_eps();
    if t >= -slack && t <= T::one() + slack && u >= -slack && u <= T::one() + slack {
        Some(t.max(T::zero()).min(T::one()))
    } else {
        None
    }
}
