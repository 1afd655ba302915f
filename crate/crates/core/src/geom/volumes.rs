use super::point::Point2;
use super::polygon::ConvexPolygon;
use crate::error::{invalid, Result};
use crate::num::Scalar;

/// Intrinsic volumes `V_0, …, V_d` of a convex body.
#[derive(Clone, Debug, PartialEq)]
pub struct IntrinsicVolumes<T> {
    values: Vec<T>,
}

impl<T: Scalar> IntrinsicVolumes<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.first() != Some(&T::one()) {
            return Err(invalid("V_0 must equal 1"));
        }
        if values.iter().any(|v| *v < T::zero() || !v.is_finite()) {
            return Err(invalid("intrinsic volumes must be finite and non-negative"));
        }
        Ok(Self { values })
    }

    /// Ambient dimension `d`.
    pub fn dim(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, k: usize) -> T {
        self.values[k]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }
}

/// `(1, perimeter/2, area)` for a planar convex polygon, segment or point.
pub fn intrinsic_volumes_2d<T: Scalar>(poly: &ConvexPolygon<T>) -> IntrinsicVolumes<T> {
    IntrinsicVolumes {
        values: vec![T::one(), poly.perimeter() * T::lit(0.5), poly.area()],
    }
}

/// Intrinsic volumes of the disk of radius `r`.
pub fn ball_intrinsic_volumes_2d<T: Scalar>(r: T) -> IntrinsicVolumes<T> {
    IntrinsicVolumes {
        values: vec![T::one(), T::PI() * r, T::PI() * r * r],
    }
}

pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `V_k` of the box `[x, x+h] × [-r, r]^{d-1}`, the elementary symmetric
/// polynomial `e_k(h, 2r, …, 2r)`.
pub fn rectangle_intrinsic_volumes<T: Scalar>(d: usize, k: usize, h: T, r: T) -> Result<T> {
    if k < 1 || k > d {
        return Err(invalid(format!("need 1 <= k <= d, got k={k}, d={d}")));
    }
    if h < T::zero() || r < T::zero() {
        return Err(invalid("side lengths must be non-negative"));
    }
    let w = r * T::lit(2.0);
    let head = T::lit(binomial(d - 1, k - 1)) * h * w.powi(k as i32 - 1);
    let tail = T::lit(binomial(d - 1, k)) * w.powi(k as i32);
    Ok(head + tail)
}

/// Area of the `λ`-parallel body by the Steiner polynomial
/// `V_2 + λ·perimeter + πλ²`.
pub fn parallel_body_area_2d<T: Scalar>(poly: &ConvexPolygon<T>, lambda: T) -> Result<T> {
    if lambda < T::zero() {
        return Err(invalid("parallel distance must be non-negative"));
    }
    Ok(poly.area() + lambda * poly.perimeter() + T::PI() * lambda * lambda)
}

/// Area of the `λ`-parallel body computed from its boundary: offset edges joined
/// by circular arcs around each vertex, integrated with Green's theorem.
///
/// Independent of the Steiner polynomial; used to cross-check it.
pub fn parallel_body_area_by_boundary<T: Scalar>(poly: &ConvexPolygon<T>, lambda: T) -> Result<T> {
    if lambda < T::zero() {
        return Err(invalid("parallel distance must be non-negative"));
    }
    let v = poly.vertices();
    let two_pi = T::PI() * T::lit(2.0);
    if v.len() == 1 {
        return Ok(T::PI() * lambda * lambda);
    }
    // Closed boundary walk: for a segment, traverse it forth and back.
    let walk: Vec<Point2<T>> = if v.len() == 2 {
        vec![v[0], v[1]]
    } else {
        v.to_vec()
    };
    let m = walk.len();
    // Outward normal angle of edge i (walk[i] -> walk[i+1]); CCW so outward is right-hand.
    let normal_angle = |i: usize| {
        let e = walk[(i + 1) % m] - walk[i];
        (-e.x).atan2(e.y)
    };
    let mut twice_area = T::zero();
    for i in 0..m {
        let a = walk[i];
        let b = walk[(i + 1) % m];
        let th = normal_angle(i);
        let n = Point2::new(th.cos(), th.sin()).scale(lambda);
        let (p, q) = (a + n, b + n);
        twice_area = twice_area + p.cross(q);
        // Arc around b from this edge's normal to the next edge's normal.
        let mut th_next = normal_angle((i + 1) % m);
        while th_next < th {
            th_next = th_next + two_pi;
        }
        twice_area = twice_area + arc_green(b, lambda, th, th_next);
    }
    Ok(twice_area * T::lit(0.5))
}

/// `∮ (x dy − y dx)` along a CCW arc of radius `r` centred at `c`.
fn arc_green<T: Scalar>(c: Point2<T>, r: T, t1: T, t2: T) -> T {
    r * c.x * (t2.sin() - t1.sin()) - r * c.y * (t2.cos() - t1.cos()) + r * r * (t2 - t1)
}
