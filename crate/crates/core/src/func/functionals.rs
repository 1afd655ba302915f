use super::majorant::{majorant, minorant};
use super::PLFunction;
use crate::geom::{convex_hull_2d, ConvexPolygon};
use crate::num::Scalar;

/// `Γ(f) = ∫ f'² = Σ (Δf)² / Δt`.
pub fn gamma<T: Scalar>(f: &PLFunction<T>) -> T {
    f.grid()
        .windows(2)
        .zip(f.values().windows(2))
        .map(|(t, v)| (v[1] - v[0]) * (v[1] - v[0]) / (t[1] - t[0]))
        .sum()
}

/// Length of the graph, `Σ √(Δt² + Δf²)`.
pub fn arc_length<T: Scalar>(f: &PLFunction<T>) -> T {
    f.grid()
        .windows(2)
        .zip(f.values().windows(2))
        .map(|(t, v)| (t[1] - t[0]).hypot(v[1] - v[0]))
        .sum()
}

/// `A(f) = ∫ (f̄ − f̲)`, the area between majorant and minorant.
pub fn area_a<T: Scalar>(f: &PLFunction<T>) -> T {
    let (upper, _) = majorant(f);
    let (lower, _) = minorant(f);
    let half = T::lit(0.5);
    f.grid()
        .windows(2)
        .zip(upper.values().windows(2).zip(lower.values().windows(2)))
        .map(|(t, (u, l))| (t[1] - t[0]) * ((u[0] - l[0]) + (u[1] - l[1])) * half)
        .sum()
}

/// Convex hull of the graph points.
pub fn space_time_hull<T: Scalar>(f: &PLFunction<T>) -> ConvexPolygon<T> {
    convex_hull_2d(&f.points()).expect("graph has at least two points")
}
