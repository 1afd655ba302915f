use rayon::prelude::*;

use super::{normalizer, Functional, LilSpec};
use crate::error::{invalid, Result};
use crate::geom::{convex_hull_2d, intrinsic_volumes_2d, ConvexPolygon, Hull3, Point2};
use crate::walk::WalkStream;

/// New points are merged into the hull in blocks of this size.
const BLOCK: usize = 1 << 14;

/// Geometric grid of about 20 checkpoints from `10³` (or 3 for short runs)
/// up to `n_max`, rounded and deduplicated.
pub fn default_checkpoints(n_max: u64) -> Vec<u64> {
    const COUNT: usize = 20;
    if n_max < 3 {
        return Vec::new();
    }
    let lo = if n_max > 1000 { 1000.0 } else { 3.0 };
    let hi = n_max as f64;
    let mut out: Vec<u64> = (0..COUNT)
        .map(|i| {
            let x = lo * (hi / lo).powf(i as f64 / (COUNT - 1) as f64);
            (x.round() as u64).clamp(3, n_max)
        })
        .collect();
    out.dedup();
    *out.last_mut().expect("non-empty grid") = n_max;
    out
}

/// Normalised values of one replica at each checkpoint, with their running maximum.
#[derive(Clone, Debug, PartialEq)]
pub struct ReplicaTrace {
    pub replica: u64,
    pub values: Vec<f64>,
    pub running_max: Vec<f64>,
}

impl ReplicaTrace {
    fn new(replica: u64, values: Vec<f64>) -> Self {
        let running_max = values
            .iter()
            .scan(f64::NEG_INFINITY, |m, &v| {
                *m = m.max(v);
                Some(*m)
            })
            .collect();
        Self {
            replica,
            values,
            running_max,
        }
    }
}

/// Checkpointed running maxima of several replicas and their pointwise maximum.
///
/// Traces for the same checkpoints and seed merge into one another; merging is
/// associative and commutative because replicas are kept sorted by index.
#[derive(Clone, Debug, PartialEq)]
pub struct RunningMaxTrace {
    checkpoints: Vec<u64>,
    seed: u64,
    replicas: Vec<ReplicaTrace>,
    merged_max: Vec<f64>,
}

impl RunningMaxTrace {
    pub fn new(checkpoints: Vec<u64>, seed: u64, mut replicas: Vec<ReplicaTrace>) -> Result<Self> {
        if replicas.iter().any(|r| r.values.len() != checkpoints.len()) {
            return Err(invalid("replica trace length differs from the checkpoint count"));
        }
        replicas.sort_by_key(|r| r.replica);
        if replicas.windows(2).any(|w| w[0].replica == w[1].replica) {
            return Err(invalid("duplicate replica index"));
        }
        let merged_max = (0..checkpoints.len())
            .map(|i| {
                replicas
                    .iter()
                    .map(|r| r.running_max[i])
                    .fold(f64::NEG_INFINITY, f64::max)
            })
            .collect();
        Ok(Self {
            checkpoints,
            seed,
            replicas,
            merged_max,
        })
    }

    pub fn merge(self, other: Self) -> Result<Self> {
        if self.checkpoints != other.checkpoints || self.seed != other.seed {
            return Err(invalid("traces have different checkpoints or seeds"));
        }
        let mut replicas = self.replicas;
        replicas.extend(other.replicas);
        Self::new(self.checkpoints, self.seed, replicas)
    }

    pub fn checkpoints(&self) -> &[u64] {
        &self.checkpoints
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn replicas(&self) -> &[ReplicaTrace] {
        &self.replicas
    }

    /// Maximum over replicas of the running maximum, per checkpoint.
    pub fn merged_max(&self) -> &[f64] {
        &self.merged_max
    }

    /// Merged maximum at the last checkpoint.
    pub fn final_max(&self) -> Option<f64> {
        self.merged_max.last().copied()
    }
}

/// Hull of a growing point stream: new points wait in a buffer and are merged
/// with the current hull vertices when the buffer fills or a value is needed.
struct PlanarTracker {
    hull: ConvexPolygon<f64>,
    pending: Vec<Point2<f64>>,
}

impl PlanarTracker {
    fn new() -> Self {
        Self {
            hull: convex_hull_2d(&[Point2::origin()]).expect("one finite point"),
            pending: Vec::with_capacity(BLOCK),
        }
    }

    fn push(&mut self, p: Point2<f64>) -> Result<()> {
        self.pending.push(p);
        if self.pending.len() >= BLOCK {
            self.flush()?;
        }
        Ok(())
    }

    fn flush(&mut self) -> Result<&ConvexPolygon<f64>> {
        if !self.pending.is_empty() {
            self.pending.extend_from_slice(self.hull.vertices());
            discard_interior(&mut self.pending)?;
            self.hull = convex_hull_2d(&self.pending)?;
            self.pending.clear();
        }
        Ok(&self.hull)
    }
}

/// Akl–Toussaint filter: drops points strictly inside the hull of the extreme
/// points in eight directions. None of them can be a hull vertex.
fn discard_interior(pts: &mut Vec<Point2<f64>>) -> Result<()> {
    const DIRS: [(f64, f64); 8] = [
        (1.0, 0.0),
        (1.0, 1.0),
        (0.0, 1.0),
        (-1.0, 1.0),
        (-1.0, 0.0),
        (-1.0, -1.0),
        (0.0, -1.0),
        (1.0, -1.0),
    ];
    if pts.len() < 64 {
        return Ok(());
    }
    let extremes: Vec<Point2<f64>> = DIRS
        .iter()
        .map(|&(a, b)| {
            *pts.iter()
                .max_by(|p, q| (a * p.x + b * p.y).total_cmp(&(a * q.x + b * q.y)))
                .expect("non-empty")
        })
        .collect();
    let core = convex_hull_2d(&extremes)?;
    if core.len() < 3 {
        return Ok(());
    }
    let edges: Vec<(Point2<f64>, Point2<f64>)> = core.edges().collect();
    let tol = core.tolerance();
    pts.retain(|&p| {
        edges
            .iter()
            .any(|&(a, b)| (b - a).cross(p - a) <= tol * (b - a).norm())
    });
    Ok(())
}

struct SolidTracker {
    vertices: Vec<[f64; 3]>,
    volume: f64,
    pending: Vec<[f64; 3]>,
}

impl SolidTracker {
    fn new() -> Self {
        Self {
            vertices: vec![[0.0; 3]],
            volume: 0.0,
            pending: Vec::with_capacity(BLOCK),
        }
    }

    fn push(&mut self, p: [f64; 3]) {
        self.pending.push(p);
        if self.pending.len() >= BLOCK {
            self.flush();
        }
    }

    fn flush(&mut self) -> f64 {
        if !self.pending.is_empty() {
            self.pending.extend_from_slice(&self.vertices);
            let hull = Hull3::new(&self.pending);
            self.vertices = hull.vertices();
            self.volume = hull.volume();
            self.pending.clear();
        }
        self.volume
    }
}

fn planar_value(f: Functional, hull: &ConvexPolygon<f64>) -> f64 {
    match f {
        Functional::V1 => intrinsic_volumes_2d(hull).get(1),
        Functional::Diameter => hull.diameter(),
        _ => hull.area(),
    }
}

fn run_replica(spec: &LilSpec, checkpoints: &[u64], norms: &[f64], seed: u64, replica: u64) -> Result<ReplicaTrace> {
    let functional = spec.functional();
    let n_last = *checkpoints.last().expect("validated checkpoints");
    let mut stream = WalkStream::new(spec.model(), seed, replica);
    let mut values = Vec::with_capacity(checkpoints.len());
    let mut next = 0;
    let mut planar = PlanarTracker::new();
    let mut solid = SolidTracker::new();
    let mut sum = [0.0; 2];
    for k in 1..=n_last {
        let p = stream.advance();
        match functional {
            Functional::Volume => solid.push([p[0], p[1], p[2]]),
            Functional::ComArea => {
                sum[0] += p[0];
                sum[1] += p[1];
                let kf = k as f64;
                planar.push(Point2::new(sum[0] / kf, sum[1] / kf))?;
            }
            _ => planar.push(Point2::new(p[0], p[1]))?,
        }
        if k == checkpoints[next] {
            let raw = match functional {
                Functional::Volume => solid.flush(),
                f => planar_value(f, planar.flush()?),
            };
            values.push(raw / norms[next]);
            next += 1;
        }
    }
    Ok(ReplicaTrace::new(replica, values))
}

/// Runs `replicas` independent walks of seed `seed` up to the last
/// checkpoint, recording the normalised functional at each checkpoint.
///
/// An empty `checkpoints` slice means [`default_checkpoints`]`(n_max)`. Only
/// the current hull vertices and one block of new points are kept in memory.
pub fn estimate_limsup(
    spec: &LilSpec,
    n_max: u64,
    checkpoints: &[u64],
    replicas: usize,
    seed: u64,
) -> Result<RunningMaxTrace> {
    let checkpoints = if checkpoints.is_empty() {
        default_checkpoints(n_max)
    } else {
        checkpoints.to_vec()
    };
    if checkpoints.is_empty() || checkpoints[0] < 3 {
        return Err(invalid("checkpoints must be at least 3"));
    }
    if checkpoints.windows(2).any(|w| w[1] <= w[0]) {
        return Err(invalid("checkpoints must be strictly increasing"));
    }
    if *checkpoints.last().expect("non-empty") > n_max {
        return Err(invalid("checkpoints must not exceed n_max"));
    }
    if replicas == 0 {
        return Err(invalid("need at least one replica"));
    }
    let norms: Vec<f64> = checkpoints
        .iter()
        .map(|&n| normalizer(spec, n))
        .collect::<Result<_>>()?;
    let traces: Vec<ReplicaTrace> = (0..replicas as u64)
        .into_par_iter()
        .map(|r| run_replica(spec, &checkpoints, &norms, seed, r))
        .collect::<Result<_>>()?;
    RunningMaxTrace::new(checkpoints, seed, traces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lil::Regime;
    use crate::walk::{centre_of_mass, generate_replica, IncrementModel};

    fn spec(f: Functional, mu: Vec<f64>) -> LilSpec {
        let regime = if mu.iter().any(|&x| x != 0.0) {
            Regime::Drift
        } else {
            Regime::ZeroDrift
        };
        LilSpec::new(f, regime, IncrementModel::standard_gaussian(mu).unwrap()).unwrap()
    }

    #[test]
    fn checkpoint_grid() {
        let c = default_checkpoints(1_000_000);
        assert_eq!(c.len(), 20);
        assert_eq!((c[0], *c.last().unwrap()), (1000, 1_000_000));
        assert!(c.windows(2).all(|w| w[1] > w[0]));
        let short = default_checkpoints(50);
        assert!(short[0] == 3 && *short.last().unwrap() == 50);
        assert!(default_checkpoints(2).is_empty());
    }

    #[test]
    fn streaming_matches_stored_path() {
        for f in [Functional::Area, Functional::V1, Functional::Diameter, Functional::ComArea] {
            let s = spec(f, vec![0.3, 0.1]);
            let cps = [10, 100, 20_000, 40_000];
            let trace = estimate_limsup(&s, 40_000, &cps, 2, 5).unwrap();
            for r in 0..2u64 {
                let path = generate_replica(s.model(), 40_000, 5, r);
                let pts: Vec<Point2<f64>> = if f == Functional::ComArea {
                    centre_of_mass(&path).iter().map(|p| Point2::new(p[0], p[1])).collect()
                } else {
                    path.points_2d().unwrap()
                };
                for (i, &n) in cps.iter().enumerate() {
                    let hull = convex_hull_2d(&pts[..=n as usize]).unwrap();
                    let want = planar_value(f, &hull) / normalizer(&s, n).unwrap();
                    let got = trace.replicas()[r as usize].values[i];
                    assert!((got - want).abs() <= 1e-12 * want.abs(), "{f:?} n={n}: {got} vs {want}");
                }
            }
        }
    }

    #[test]
    fn volume_tracker_matches_direct_hull() {
        let m = IncrementModel::standard_gaussian(vec![0.0; 3]).unwrap();
        let s = LilSpec::new(Functional::Volume, Regime::ZeroDrift, m).unwrap();
        let trace = estimate_limsup(&s, 20_000, &[500, 20_000], 1, 3).unwrap();
        let path = generate_replica(s.model(), 20_000, 3, 0);
        let pts: Vec<[f64; 3]> = path.points().map(|p| [p[0], p[1], p[2]]).collect();
        let want = Hull3::new(&pts).volume() / normalizer(&s, 20_000).unwrap();
        let got = trace.replicas()[0].values[1];
        assert!((got - want).abs() <= 1e-10 * want);
    }

    #[test]
    fn running_maxima_and_merge() {
        let s = spec(Functional::Area, vec![1.0, 0.0]);
        let cps = default_checkpoints(5000);
        let a = estimate_limsup(&s, 5000, &cps, 3, 9).unwrap();
        assert!(a.merged_max().windows(2).all(|w| w[1] >= w[0]));
        for (i, &m) in a.merged_max().iter().enumerate() {
            let best = a.replicas().iter().map(|r| r.running_max[i]).fold(f64::MIN, f64::max);
            assert_eq!(m, best);
        }
        let parts: Vec<RunningMaxTrace> = a
            .replicas()
            .iter()
            .map(|r| RunningMaxTrace::new(cps.clone(), 9, vec![r.clone()]).unwrap())
            .collect();
        let fwd = parts.iter().cloned().reduce(|x, y| x.merge(y).unwrap()).unwrap();
        let rev = parts.iter().rev().cloned().reduce(|x, y| x.merge(y).unwrap()).unwrap();
        assert_eq!(fwd, a);
        assert_eq!(rev, a);
        assert!(fwd.clone().merge(parts[0].clone()).is_err());
    }

    #[test]
    fn rejects_bad_checkpoints() {
        let s = spec(Functional::Area, vec![1.0, 0.0]);
        assert!(estimate_limsup(&s, 100, &[2, 50], 1, 1).is_err());
        assert!(estimate_limsup(&s, 100, &[50, 50], 1, 1).is_err());
        assert!(estimate_limsup(&s, 100, &[50, 200], 1, 1).is_err());
        assert!(estimate_limsup(&s, 100, &[50], 0, 1).is_err());
    }

    #[test]
    fn deterministic_and_rotation_invariant() {
        let s = spec(Functional::Area, vec![1.0, 0.0]);
        let a = estimate_limsup(&s, 20_000, &[], 4, 21).unwrap();
        assert_eq!(a, estimate_limsup(&s, 20_000, &[], 4, 21).unwrap());
        let th = std::f64::consts::PI / 6.0;
        let r = spec(Functional::Area, vec![th.cos(), th.sin()]);
        let b = estimate_limsup(&r, 20_000, &[], 4, 21).unwrap();
        for (x, y) in a.merged_max().iter().zip(b.merged_max()) {
            assert!((x - y).abs() < 1e-9, "{x} vs {y}");
        }
    }
}
