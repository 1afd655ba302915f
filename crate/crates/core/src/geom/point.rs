use std::ops::{Add, Mul, Sub};

use crate::num::Scalar;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point2<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point2<T> {
    #[inline]
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn origin() -> Self {
        Self::new(T::zero(), T::zero())
    }

    #[inline]
    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the cross product `self × other`.
    #[inline]
    pub fn cross(self, other: Self) -> T {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    #[inline]
    pub fn scale(self, s: T) -> Self {
        Self::new(self.x * s, self.y * s)
    }

    #[inline]
    pub fn lerp(self, other: Self, t: T) -> Self {
        self + (other - self).scale(t)
    }
}

impl<T: Scalar> Add for Point2<T> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<T: Scalar> Sub for Point2<T> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<T: Scalar> Mul<T> for Point2<T> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: T) -> Self {
        self.scale(rhs)
    }
}

impl<T: Scalar> From<(T, T)> for Point2<T> {
    fn from((x, y): (T, T)) -> Self {
        Self::new(x, y)
    }
}

/// True when `o → a → b` turns strictly counterclockwise, with the turn measured
/// against a tolerance relative to the two edge lengths.
#[inline]
pub(crate) fn strictly_left<T: Scalar>(o: Point2<T>, a: Point2<T>, b: Point2<T>) -> bool {
    let u = a - o;
    let v = b - o;
    let c = u.cross(v);
    c > T::zero() && beyond_tolerance(c, u, v)
}

/// Right turn by more than `eps` relative to `|a − o||b − o|`.
#[inline]
pub(crate) fn strictly_right<T: Scalar>(o: Point2<T>, a: Point2<T>, b: Point2<T>, eps: T) -> bool {
    let u = a - o;
    let v = b - o;
    let c = u.cross(v);
    c < T::zero() && c * c > eps * eps * u.dot(u) * v.dot(v)
}

/// `|c| > ε|u||v|`, compared in squares.
#[inline]
fn beyond_tolerance<T: Scalar>(c: T, u: Point2<T>, v: Point2<T>) -> bool {
    let eps = T::orient_eps();
    c * c > eps * eps * u.dot(u) * v.dot(v)
}
