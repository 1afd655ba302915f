use super::PLFunction;
use crate::num::Scalar;

/// Extreme grid indices of a majorant (or minorant) and the faces between them.
///
/// A face is a pair of consecutive extreme indices `(u, v)` with `v > u + 1`
/// such that the function departs from the hull strictly inside `(t_u, t_v)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Faces {
    pub extreme: Vec<usize>,
    pub intervals: Vec<(usize, usize)>,
}

impl Faces {
    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    /// Face intervals as abscissae.
    pub fn bounds<T: Scalar>(&self, f: &PLFunction<T>) -> Vec<(T, T)> {
        self.intervals
            .iter()
            .map(|&(u, v)| (f.grid()[u], f.grid()[v]))
            .collect()
    }
}

/// Upper and lower face structure of a piecewise-linear function.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FaceDecomposition {
    pub upper: Faces,
    pub lower: Faces,
}

/// Least concave majorant on the same grid, with its faces.
///
/// The majorant of a piecewise-linear function is the upper hull of its graph
/// points, so its kinks sit on grid abscissae and the result is exact.
pub fn majorant<T: Scalar>(f: &PLFunction<T>) -> (PLFunction<T>, Faces) {
    let t = f.grid();
    let v = f.values();
    let mut hull: Vec<usize> = Vec::with_capacity(t.len());
    for i in 0..t.len() {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // Keep b only if a → b → i turns strictly clockwise.
            let (ux, uy) = (t[b] - t[a], v[b] - v[a]);
            let (wx, wy) = (t[i] - t[a], v[i] - v[a]);
            let cross = ux * wy - uy * wx;
            let tol = T::orient_eps() * ux.hypot(uy) * wx.hypot(wy);
            if cross < -tol {
                break;
            }
            hull.pop();
        }
        hull.push(i);
    }

    let mut upper = v.to_vec();
    for w in hull.windows(2) {
        let (a, b) = (w[0], w[1]);
        let slope = (v[b] - v[a]) / (t[b] - t[a]);
        for k in a + 1..b {
            upper[k] = v[a] + slope * (t[k] - t[a]);
        }
    }

    let scale = f.max_abs().max(T::one());
    let tol = T::orient_eps() * T::lit(1e2) * scale;
    let extreme: Vec<usize> = (0..t.len()).filter(|&k| upper[k] - v[k] <= tol).collect();
    for &k in &extreme {
        upper[k] = v[k];
    }
    let intervals = extreme
        .windows(2)
        .filter(|w| w[1] > w[0] + 1)
        .map(|w| (w[0], w[1]))
        .collect();
    (
        PLFunction::from_parts_unchecked(t.to_vec(), upper),
        Faces { extreme, intervals },
    )
}

/// Greatest convex minorant on the same grid, with its faces.
pub fn minorant<T: Scalar>(f: &PLFunction<T>) -> (PLFunction<T>, Faces) {
    let (m, faces) = majorant(&f.negated());
    (m.negated(), faces)
}

pub fn face_decomposition<T: Scalar>(f: &PLFunction<T>) -> FaceDecomposition {
    FaceDecomposition {
        upper: majorant(f).1,
        lower: minorant(f).1,
    }
}
