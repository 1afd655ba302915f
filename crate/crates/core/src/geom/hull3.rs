use std::collections::HashSet;

use crate::num::Scalar;

type P3<T> = [T; 3];

fn sub<T: Scalar>(a: P3<T>, b: P3<T>) -> P3<T> {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross<T: Scalar>(a: P3<T>, b: P3<T>) -> P3<T> {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot<T: Scalar>(a: P3<T>, b: P3<T>) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm<T: Scalar>(a: P3<T>) -> T {
    dot(a, a).sqrt()
}

#[derive(Clone, Copy, Debug)]
struct Face {
    v: [usize; 3],
}

/// Incremental 3-d convex hull; triangles are stored with outward orientation.
///
/// Coplanar (or lower-dimensional) input produces an empty face list and zero volume.
#[derive(Clone, Debug)]
pub struct Hull3<T> {
    points: Vec<P3<T>>,
    faces: Vec<Face>,
    interior: P3<T>,
    eps: T,
}

impl<T: Scalar> Hull3<T> {
    pub fn new(points: &[P3<T>]) -> Self {
        let mut hull = Hull3 {
            points: points.to_vec(),
            faces: Vec::new(),
            interior: [T::zero(); 3],
            eps: T::zero(),
        };
        hull.build();
        hull
    }

    /// Whether the points span three dimensions.
    pub fn is_solid(&self) -> bool {
        !self.faces.is_empty()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Points that are vertices of some hull face. For degenerate input, all points.
    pub fn vertices(&self) -> Vec<P3<T>> {
        if self.faces.is_empty() {
            return self.points.clone();
        }
        let mut idx: Vec<usize> = self.faces.iter().flat_map(|f| f.v).collect();
        idx.sort_unstable();
        idx.dedup();
        idx.into_iter().map(|i| self.points[i]).collect()
    }

    /// Sum of signed tetrahedra spanned by each face and an interior point.
    pub fn volume(&self) -> T {
        let six = T::lit(6.0);
        self.faces
            .iter()
            .map(|f| {
                let [a, b, c] = f.v.map(|i| self.points[i]);
                dot(sub(a, self.interior), cross(sub(b, self.interior), sub(c, self.interior)))
            })
            .sum::<T>()
            / six
    }

    fn signed_dist(&self, f: &Face, p: P3<T>) -> T {
        let [a, b, c] = f.v.map(|i| self.points[i]);
        let n = cross(sub(b, a), sub(c, a));
        let len = norm(n);
        if len == T::zero() {
            return T::zero();
        }
        dot(n, sub(p, a)) / len
    }

    fn build(&mut self) {
        let pts = &self.points;
        if pts.len() < 4 {
            return;
        }
        let scale = pts
            .iter()
            .fold(T::zero(), |m, p| m.max(p[0].abs()).max(p[1].abs()).max(p[2].abs()));
        self.eps = T::orient_eps() * T::lit(1e2) * (T::one() + scale);
        let eps = self.eps;

        // Initial simplex from extreme points.
        let i0 = (0..pts.len())
            .min_by(|&a, &b| pts[a][0].partial_cmp(&pts[b][0]).unwrap())
            .unwrap();
        let i1 = (0..pts.len())
            .max_by(|&a, &b| {
                norm(sub(pts[a], pts[i0]))
                    .partial_cmp(&norm(sub(pts[b], pts[i0])))
                    .unwrap()
            })
            .unwrap();
        let d01 = sub(pts[i1], pts[i0]);
        if norm(d01) <= eps {
            return;
        }
        let line_dist = |p: P3<T>| norm(cross(d01, sub(p, pts[i0]))) / norm(d01);
        let i2 = (0..pts.len())
            .max_by(|&a, &b| line_dist(pts[a]).partial_cmp(&line_dist(pts[b])).unwrap())
            .unwrap();
        if line_dist(pts[i2]) <= eps {
            return;
        }
        let n = cross(d01, sub(pts[i2], pts[i0]));
        let nn = norm(n);
        let plane_dist = |p: P3<T>| dot(n, sub(p, pts[i0])) / nn;
        let i3 = (0..pts.len())
            .max_by(|&a, &b| {
                plane_dist(pts[a])
                    .abs()
                    .partial_cmp(&plane_dist(pts[b]).abs())
                    .unwrap()
            })
            .unwrap();
        if plane_dist(pts[i3]).abs() <= eps {
            return;
        }
        let quarter = T::lit(0.25);
        self.interior = [0, 1, 2].map(|k| (pts[i0][k] + pts[i1][k] + pts[i2][k] + pts[i3][k]) * quarter);
        let simplex = [i0, i1, i2, i3];
        for skip in 0..4 {
            let mut v = [0usize; 3];
            let mut j = 0;
            for (k, &idx) in simplex.iter().enumerate() {
                if k != skip {
                    v[j] = idx;
                    j += 1;
                }
            }
            self.push_oriented(v);
        }

        for pi in 0..self.points.len() {
            if simplex.contains(&pi) {
                continue;
            }
            let p = self.points[pi];
            let visible: Vec<usize> = (0..self.faces.len())
                .filter(|&fi| self.signed_dist(&self.faces[fi], p) > eps)
                .collect();
            if visible.is_empty() {
                continue;
            }
            let mut edges: HashSet<(usize, usize)> = HashSet::new();
            for &fi in &visible {
                let [a, b, c] = self.faces[fi].v;
                for e in [(a, b), (b, c), (c, a)] {
                    edges.insert(e);
                }
            }
            let horizon: Vec<(usize, usize)> = edges
                .iter()
                .copied()
                .filter(|&(a, b)| !edges.contains(&(b, a)))
                .collect();
            let visible: HashSet<usize> = visible.into_iter().collect();
            let mut kept = Vec::with_capacity(self.faces.len());
            for (fi, f) in self.faces.iter().enumerate() {
                if !visible.contains(&fi) {
                    kept.push(*f);
                }
            }
            self.faces = kept;
            for (a, b) in horizon {
                self.faces.push(Face { v: [a, b, pi] });
            }
        }
    }

    fn push_oriented(&mut self, mut v: [usize; 3]) {
        let f = Face { v };
        if self.signed_dist(&f, self.interior) > T::zero() {
            v.swap(1, 2);
        }
        self.faces.push(Face { v });
    }
}

/// Volume of the convex hull of 3-d points; zero for degenerate input.
pub fn convex_hull_volume_3d<T: Scalar>(points: &[[T; 3]]) -> T {
    Hull3::new(points).volume()
}
