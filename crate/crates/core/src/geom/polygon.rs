use std::cmp::Ordering;

use super::point::{strictly_left, strictly_right, Point2};
use crate::error::{Error, Result};
use crate::num::Scalar;

/// Counterclockwise, strictly convex vertex list of a planar convex hull.
///
/// One vertex encodes a point, two vertices a segment.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon<T> {
    vertices: Vec<Point2<T>>,
}

impl<T: Scalar> ConvexPolygon<T> {
    /// Wraps a vertex list that is already in canonical hull form.
    pub(crate) fn from_canonical(vertices: Vec<Point2<T>>) -> Self {
        debug_assert!(!vertices.is_empty());
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Point2<T>] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point2<T>> {
        self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Directed boundary edges. A segment yields its single edge once, a point none.
    pub fn edges(&self) -> impl Iterator<Item = (Point2<T>, Point2<T>)> + '_ {
        let n = self.vertices.len();
        let count = match n {
            0 | 1 => 0,
            2 => 1,
            _ => n,
        };
        (0..count).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    /// Shoelace area; zero for points and segments.
    pub fn area(&self) -> T {
        let n = self.vertices.len();
        if n < 3 {
            return T::zero();
        }
        let o = self.vertices[0];
        let twice: T = (1..n - 1)
            .map(|i| (self.vertices[i] - o).cross(self.vertices[i + 1] - o))
            .sum();
        twice * T::lit(0.5)
    }

    /// Boundary length. A segment of length `L` has perimeter `2L`.
    pub fn perimeter(&self) -> T {
        match self.vertices.len() {
            0 | 1 => T::zero(),
            2 => (self.vertices[1] - self.vertices[0]).norm() * T::lit(2.0),
            n => (0..n)
                .map(|i| (self.vertices[(i + 1) % n] - self.vertices[i]).norm())
                .sum(),
        }
    }

    /// Largest pairwise vertex distance.
    pub fn diameter(&self) -> T {
        let v = &self.vertices;
        let mut best = T::zero();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                best = best.max((v[j] - v[i]).norm());
            }
        }
        best
    }

    pub fn max_vertex_norm(&self) -> T {
        self.vertices
            .iter()
            .fold(T::zero(), |m, p| m.max(p.norm()))
    }

    /// The image under `x ↦ λx`; `λ = 0` collapses to the origin.
    pub fn scaled(&self, lambda: T) -> Self {
        if lambda == T::zero() {
            return Self::from_canonical(vec![Point2::origin()]);
        }
        let pts: Vec<_> = self.vertices.iter().map(|p| p.scale(lambda)).collect();
        if lambda > T::zero() {
            Self::from_canonical(pts)
        } else {
            convex_hull_2d(&pts).expect("non-empty")
        }
    }

    /// How far `p` lies outside the polygon (zero or negative when inside).
    ///
    /// For proper polygons this is the largest signed distance to an edge line,
    /// which agrees with the Euclidean distance up to the corner regions.
    pub fn outside_distance(&self, p: Point2<T>) -> T {
        match self.vertices.len() {
            0 => T::infinity(),
            1 => (p - self.vertices[0]).norm(),
            2 => point_segment_distance(p, self.vertices[0], self.vertices[1]),
            _ => self
                .edges()
                .map(|(a, b)| {
                    let e = b - a;
                    -e.cross(p - a) / e.norm()
                })
                .fold(T::neg_infinity(), T::max),
        }
    }

    /// Default absolute tolerance for containment tests, relative to the polygon size.
    pub fn tolerance(&self) -> T {
        T::orient_eps() * T::lit(1e3) * (T::one() + self.max_vertex_norm())
    }

    pub fn contains(&self, p: Point2<T>) -> bool {
        self.outside_distance(p) <= self.tolerance()
    }
}

pub(crate) fn point_segment_distance<T: Scalar>(p: Point2<T>, a: Point2<T>, b: Point2<T>) -> T {
    let e = b - a;
    let len2 = e.dot(e);
    if len2 == T::zero() {
        return (p - a).norm();
    }
    let t = ((p - a).dot(e) / len2).max(T::zero()).min(T::one());
    (p - a.lerp(b, t)).norm()
}

fn lex<T: Scalar>(a: &Point2<T>, b: &Point2<T>) -> Ordering {
    a.x.partial_cmp(&b.x)
        .unwrap_or(Ordering::Equal)
        .then(a.y.partial_cmp(&b.y).unwrap_or(Ordering::Equal))
}

/// Convex hull by Andrew's monotone chain.
///
/// Collinear boundary points are dropped, so the result is strictly convex.
/// All-collinear input yields the two extreme points; a single distinct point
/// yields a one-vertex polygon.
pub fn convex_hull_2d<T: Scalar>(points: &[Point2<T>]) -> Result<ConvexPolygon<T>> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(Error::NonFinite);
    }
    let mut pts = points.to_vec();
    pts.sort_unstable_by(lex);
    pts.dedup();
    if pts.len() == 1 {
        return Ok(ConvexPolygon::from_canonical(pts));
    }

    let mut hull: Vec<Point2<T>> = Vec::with_capacity(pts.len() + 1);
    for &p in &pts {
        while hull.len() >= 2 && !strictly_left(hull[hull.len() - 2], hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && !strictly_left(hull[hull.len() - 2], hull[hull.len() - 1], p)
        {
            hull.pop();
        }
        hull.push(p);
    }
    // The last point repeats the first.
    hull.pop();
    if hull.len() == 2 && hull[0] == hull[1] {
        hull.pop();
    }
    Ok(ConvexPolygon::from_canonical(hull))
}

/// Indices of the strict convex hull vertices in counterclockwise order,
/// starting from the lexicographically smallest point. Degenerate input gives
/// one or two indices.
pub fn convex_hull_indices<T: Scalar>(points: &[Point2<T>]) -> Result<Vec<usize>> {
    hull_cycle(points, None)
}

/// Counterclockwise boundary cycle that also keeps points lying on hull
/// edges. For collinear input the cycle runs out and back, so interior
/// points appear twice.
///
/// Turns to the right by less than `eps` (relative) count as collinear, so
/// points within roughly `eps` of an edge are kept too.
pub(crate) fn hull_cycle_with_collinear<T: Scalar>(points: &[Point2<T>], eps: T) -> Result<Vec<usize>> {
    hull_cycle(points, Some(eps))
}

fn hull_cycle<T: Scalar>(points: &[Point2<T>], keep_collinear: Option<T>) -> Result<Vec<usize>> {
    if points.is_empty() {
        return Err(Error::EmptyPointSet);
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(Error::NonFinite);
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_unstable_by(|&a, &b| lex(&points[a], &points[b]).then(a.cmp(&b)));
    order.dedup_by(|a, b| points[*a] == points[*b]);
    if order.len() == 1 {
        return Ok(order);
    }
    let pop = |h: &[usize], p: usize| {
        let (o, a, b) = (points[h[h.len() - 2]], points[h[h.len() - 1]], points[p]);
        match keep_collinear {
            Some(eps) => strictly_right(o, a, b, eps),
            None => !strictly_left(o, a, b),
        }
    };
    let mut hull: Vec<usize> = Vec::with_capacity(2 * order.len());
    for &i in &order {
        while hull.len() >= 2 && pop(&hull, i) {
            hull.pop();
        }
        hull.push(i);
    }
    let lower_len = hull.len() + 1;
    for &i in order.iter().rev().skip(1) {
        while hull.len() >= lower_len && pop(&hull, i) {
            hull.pop();
        }
        hull.push(i);
    }
    hull.pop();
    Ok(hull)
}
