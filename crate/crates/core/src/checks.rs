//! Named invariant suites over seeded random inputs.
//!
//! Each suite draws its inputs from one seed and returns a table with one row
//! per property: how many cases were checked, how many failed, and the worst
//! violation seen (a signed excess for inequalities, an error for identities).

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::func::{
    arc_length, area_a, bridge, convexify, gamma, majorant, minorant, random_bridge,
    random_nonneg_bridge, random_pl, symmetrize, Sign,
};
use crate::geom::{
    ball_intrinsic_volumes_2d, binomial, convex_hull_2d, intrinsic_volumes_2d,
    parallel_body_area_2d, parallel_body_area_by_boundary, rectangle_intrinsic_volumes,
    symmetric_difference_radius, ConvexPolygon, Point2,
};
use crate::lil::permutation_stability_probe;
use crate::walk::{
    centre_of_mass, generate_replica, khinchin_ell, reduced_covariance, replica_rng, scale_psi,
    IncrementModel,
};
use crate::PLFunction;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Steiner,
    Lemmas,
    Scaling,
    Stability,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Steiner, Suite::Lemmas, Suite::Scaling, Suite::Stability];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Steiner => "steiner",
            Suite::Lemmas => "lemmas",
            Suite::Scaling => "scaling",
            Suite::Stability => "stability",
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "steiner" | "geometry" => Ok(Suite::Steiner),
            "lemmas" | "lemmas-s5" => Ok(Suite::Lemmas),
            "scaling" => Ok(Suite::Scaling),
            "stability" => Ok(Suite::Stability),
            other => Err(invalid(format!("unknown suite '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    /// Random functions per property in the lemma suite.
    pub functions: usize,
    /// Random polygons (or polygon pairs) in the geometry suite.
    pub polygons: usize,
    /// Random walks in the scaling suite, and their length.
    pub paths: usize,
    pub path_len: usize,
    /// Stability probe: number of permuted increments, longest walk and
    /// permutations per walk length.
    pub k: usize,
    pub n_max: usize,
    pub permutations: usize,
    /// Allowed relative growth of the stability radius from `10³` to `n_max`.
    pub slack: f64,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            functions: 1000,
            polygons: 200,
            paths: 100,
            path_len: 10_000,
            k: 5,
            n_max: 100_000,
            permutations: 20,
            slack: 0.1,
            seed: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckRow {
    pub name: &'static str,
    /// The mathematical statement the row certifies.
    pub statement: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub worst: f64,
    pub tolerance: f64,
}

impl CheckRow {
    fn new(name: &'static str, statement: &'static str, tolerance: f64) -> Self {
        Self {
            name,
            statement,
            cases: 0,
            failures: 0,
            worst: f64::NEG_INFINITY,
            tolerance,
        }
    }

    /// Records one case whose violation is `excess` (passing when `≤ tolerance`).
    fn record(&mut self, excess: f64) {
        self.cases += 1;
        if !(excess <= self.tolerance) {
            self.failures += 1;
        }
        self.worst = if excess.is_nan() { f64::NAN } else { self.worst.max(excess) };
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub rows: Vec<CheckRow>,
    /// Stability suite only: `(n, max radius)`.
    pub radii: Vec<(usize, f64)>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(CheckRow::passed)
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let (rows, radii) = match suite {
        Suite::Steiner => (geometry(cfg)?, Vec::new()),
        Suite::Lemmas => (lemmas(cfg)?, Vec::new()),
        Suite::Scaling => (scaling(cfg)?, Vec::new()),
        Suite::Stability => stability(cfg)?,
    };
    Ok(SuiteReport {
        suite,
        seed: cfg.seed,
        rows,
        radii,
    })
}

fn rel(got: f64, want: f64) -> f64 {
    (got - want).abs() / want.abs().max(1.0)
}

/// Random polygon: hull of 3 to 40 points, uniform in a box around the origin.
fn random_polygon(rng: &mut ChaCha8Rng) -> Result<ConvexPolygon<f64>> {
    let m = rng.random_range(3..=40);
    let s = rng.random_range(0.1..10.0);
    let pts: Vec<Point2<f64>> = (0..m)
        .map(|_| Point2::new(s * rng.random_range(-1.0..1.0), s * rng.random_range(-1.0..1.0)))
        .collect();
    convex_hull_2d(&pts)
}

fn with_origin(p: &ConvexPolygon<f64>, extra: &[Point2<f64>]) -> Result<ConvexPolygon<f64>> {
    let mut pts = p.vertices().to_vec();
    pts.push(Point2::origin());
    pts.extend_from_slice(extra);
    convex_hull_2d(&pts)
}

/// `e_k(x₁, …, x_d)` by the usual recurrence; independent of the closed form.
fn elementary_symmetric(xs: &[f64], k: usize) -> f64 {
    let mut e = vec![0.0; k + 1];
    e[0] = 1.0;
    for &x in xs {
        for j in (1..=k).rev() {
            e[j] += x * e[j - 1];
        }
    }
    e[k]
}

fn geometry(cfg: &SuiteConfig) -> Result<Vec<CheckRow>> {
    let mut rng = replica_rng(cfg.seed, 0);
    let mut steiner = CheckRow::new(
        "steiner",
        "parallel-body area equals V2 + 2λV1 + πλ² (boundary construction)",
        1e-10,
    );
    let mut rect = CheckRow::new(
        "rectangle-volumes",
        "V_k of a box with sides h, 2r, …, 2r is e_k(h, 2r, …, 2r), 1 ≤ k ≤ d ≤ 6",
        1e-12,
    );
    let mut homog = CheckRow::new(
        "homogeneity",
        "V_k(λC) = λᵏ V_k(C) for λ ∈ {0.5, 2, 7}",
        1e-12,
    );
    let mut smooth = CheckRow::new(
        "smoothness",
        "|V_k(C₁) − V_k(C₂)| ≤ V_k(B(0, r)) when C₁ Δ C₂ ⊆ B(0, r)",
        1e-9,
    );
    for _ in 0..cfg.polygons {
        let p = random_polygon(&mut rng)?;
        let lambda = rng.random_range(0.0..5.0);
        let direct = parallel_body_area_2d(&p, lambda)?;
        steiner.record(rel(direct, parallel_body_area_by_boundary(&p, lambda)?));
        let v = intrinsic_volumes_2d(&p);
        for s in [0.5, 2.0, 7.0] {
            let w = intrinsic_volumes_2d(&p.scaled(s));
            for k in 0..=2 {
                homog.record(rel(w.get(k), s.powi(k as i32) * v.get(k)));
            }
        }
    }
    for _ in 0..100 {
        let h: f64 = rng.random_range(0.0..10.0);
        let r: f64 = rng.random_range(0.0..5.0);
        for d in 1..=6 {
            let mut sides = vec![2.0 * r; d];
            sides[0] = h;
            for k in 1..=d {
                let got = rectangle_intrinsic_volumes(d, k, h, r)?;
                let scale = binomial(d, k) * (h.max(2.0 * r)).powi(k as i32);
                rect.record((got - elementary_symmetric(&sides, k)).abs() / scale.max(1.0));
            }
        }
    }
    for _ in 0..cfg.polygons {
        let c1 = with_origin(&random_polygon(&mut rng)?, &[])?;
        let bump = rng.random_range(0.5..3.0);
        let extra: Vec<Point2<f64>> = (0..rng.random_range(1..4))
            .map(|_| {
                let th = rng.random_range(0.0..std::f64::consts::TAU);
                let reach = c1.max_vertex_norm() * bump;
                Point2::new(reach * th.cos(), reach * th.sin())
            })
            .collect();
        let c2 = with_origin(&c1, &extra)?;
        let r = symmetric_difference_radius(&c1, &c2)?;
        let (v1, v2, ball) = (
            intrinsic_volumes_2d(&c1),
            intrinsic_volumes_2d(&c2),
            ball_intrinsic_volumes_2d(r),
        );
        for k in 1..=2 {
            let excess = (v1.get(k) - v2.get(k)).abs() - ball.get(k);
            smooth.record(excess / ball.get(k).max(1.0));
        }
    }
    Ok(vec![steiner, rect, homog, smooth])
}

fn random_cells(rng: &mut ChaCha8Rng) -> usize {
    rng.random_range(2..=200)
}

fn lemmas(cfg: &SuiteConfig) -> Result<Vec<CheckRow>> {
    let mut rng = replica_rng(cfg.seed, 1);
    let mut bridge_energy = CheckRow::new("bridge-energy", "Γ(f̂) = Γ(f) − f(1)²", 1e-9);
    let mut bridge_area = CheckRow::new("bridge-area", "A(f̂) = A(f)", 1e-9);
    let mut sym_energy = CheckRow::new("symmetrization-energy", "Γ(f^{s±}) = Γ(f)", 1e-9);
    let mut excess_plus =
        CheckRow::new("area-excess-plus", "∫f^{s+} = ∫(2f̄ − f)", 1e-9);
    let mut excess_minus =
        CheckRow::new("area-excess-minus", "∫f^{s−} = ∫(f − 2f̲)", 1e-9);
    let mut excess_sum =
        CheckRow::new("area-excess-sum", "∫f^{s+} + ∫f^{s−} = 2A(f)", 1e-9);
    let mut sym_gain = CheckRow::new(
        "symmetrization-gain",
        "max(A(f^{s+}), A(f^{s−})) ≥ A(f)",
        1e-12,
    );
    let mut sym_above = CheckRow::new("symmetrization-above-majorant", "f^{s+} ≥ f̄", 1e-12);
    let mut convex_area = CheckRow::new("convexify-area", "A(f̄) = A(f) for f ≥ 0 bridges", 1e-12);
    let mut convex_energy =
        CheckRow::new("convexify-energy", "Γ(f̄) ≤ Γ(f) for f ≥ 0 bridges", 1e-12);
    let mut iso = CheckRow::new("iso", "∫₀¹ f ≤ √(Γ(f)/12) for bridges", 1e-12);
    let mut half1 = CheckRow::new("half-first", "∫₀^{1/2} f ≤ √(Γ_{0,1/2}(f)/24)", 1e-12);
    let mut half2 =
        CheckRow::new("half-second", "∫_{1/2}^1 f ≤ √(Γ_{1/2,1}(f)/24) for bridges", 1e-12);
    let mut arc = CheckRow::new("arc-length", "L(f)² ≤ 1 + Γ(f)", 1e-12);
    let mut concave =
        CheckRow::new("concave-bridge-area", "A(f) = ∫f for concave f ≥ 0 bridges", 1e-12);
    let mut diameter = CheckRow::new(
        "diameter",
        "sup_{s≤t} |f(t) − f(s)| ≤ √Γ(f)",
        1e-12,
    );

    for _ in 0..cfg.functions {
        let cells = random_cells(&mut rng);
        let g = rng.random_range(0.01..10.0);
        let f: PLFunction = random_pl(&mut rng, cells, g);
        let fh = bridge(&f)?;
        let end = f.end_value();
        bridge_energy.record(rel(gamma(&fh), gamma(&f) - end * end));
        bridge_area.record(rel(area_a(&fh), area_a(&f)));
        arc.record(arc_length(&f).powi(2) - (1.0 + gamma(&f)));
        half1.record(f.integral_between(0.0, 0.5) - (f.gamma_between(0.0, 0.5) / 24.0).sqrt());
        let spread = f.values().iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v))
            - f.values().iter().fold(f64::INFINITY, |m, &v| m.min(v));
        diameter.record(spread - gamma(&f).sqrt());

        let cells = random_cells(&mut rng);
        let b: PLFunction = random_bridge(&mut rng, cells, g);
        let (upper, _) = majorant(&b);
        let (lower, _) = minorant(&b);
        let plus = symmetrize(&b, Sign::Plus)?;
        let minus = symmetrize(&b, Sign::Minus)?;
        let a = area_a(&b);
        sym_energy.record(rel(gamma(&plus), gamma(&b)));
        sym_energy.record(rel(gamma(&minus), gamma(&b)));
        excess_plus.record(rel(plus.integral(), 2.0 * upper.integral() - b.integral()));
        excess_minus.record(rel(minus.integral(), b.integral() - 2.0 * lower.integral()));
        excess_sum.record(rel(plus.integral() + minus.integral(), 2.0 * a));
        sym_gain.record(a - area_a(&plus).max(area_a(&minus)));
        let below = plus
            .values()
            .iter()
            .zip(upper.values())
            .map(|(p, u)| u - p)
            .fold(f64::NEG_INFINITY, f64::max);
        sym_above.record(below);
        iso.record(b.integral() - (gamma(&b) / 12.0).sqrt());
        half2.record(b.integral_between(0.5, 1.0) - (b.gamma_between(0.5, 1.0) / 24.0).sqrt());

        let cells = random_cells(&mut rng);
        let nb: PLFunction = random_nonneg_bridge(&mut rng, cells, g);
        let c = convexify(&nb)?;
        convex_area.record(rel(area_a(&c), area_a(&nb)));
        convex_energy.record(gamma(&c) - gamma(&nb));
        concave.record(rel(area_a(&c), c.integral()));
    }
    Ok(vec![
        bridge_energy,
        bridge_area,
        sym_energy,
        excess_plus,
        excess_minus,
        excess_sum,
        sym_gain,
        sym_above,
        convex_area,
        convex_energy,
        iso,
        half1,
        half2,
        arc,
        concave,
        diameter,
    ])
}

fn scaling(cfg: &SuiteConfig) -> Result<Vec<CheckRow>> {
    let mut psi_area = CheckRow::new(
        "psi-area",
        "area(ψₙ(ℋₙ)) · n · ℓ(n) = area(ℋₙ)",
        1e-9,
    );
    let mut com_inside = CheckRow::new("com-containment", "Gₙ ∈ ℋₙ", 0.0);
    let mut com_area = CheckRow::new("com-area", "area(𝒢ₙ) ≤ area(ℋₙ)", 0.0);
    let mut monotone = CheckRow::new("prefix-monotone", "area(ℋₘ) ≤ area(ℋₙ) for m ≤ n", 0.0);
    let mut rng = replica_rng(cfg.seed, 2);
    let n = cfg.path_len;
    for i in 0..cfg.paths as u64 {
        let th = rng.random_range(0.0..std::f64::consts::TAU);
        let speed = rng.random_range(0.1..3.0);
        let model = IncrementModel::standard_gaussian(vec![speed * th.cos(), speed * th.sin()])?;
        let path = generate_replica(&model, n, cfg.seed, i);
        let pts = path.points_2d()?;
        let hull = convex_hull_2d(&pts)?;
        let frame = reduced_covariance(model.covariance(), model.drift())?;
        let scaled: Vec<Point2<f64>> = scale_psi(&path, &frame)?
            .iter()
            .map(|p| Point2::new(p[0], p[1]))
            .collect();
        let scaled_area = convex_hull_2d(&scaled)?.area();
        psi_area.record(
            (scaled_area * n as f64 * khinchin_ell(n as u64) - hull.area()).abs() / hull.area(),
        );
        let g: Vec<Point2<f64>> = centre_of_mass(&path)
            .iter()
            .map(|p| Point2::new(p[0], p[1]))
            .collect();
        let outside = g
            .iter()
            .map(|&p| hull.outside_distance(p) - hull.tolerance())
            .fold(0.0, f64::max);
        com_inside.record(outside);
        com_area.record(convex_hull_2d(&g)?.area() - hull.area());
        let half = convex_hull_2d(&pts[..=n / 2])?.area();
        monotone.record(half - hull.area());
    }
    Ok(vec![psi_area, com_inside, com_area, monotone])
}

/// Rows plus `(n, max radius)` pairs.
type StabilityOutcome = (Vec<CheckRow>, Vec<(usize, f64)>);

fn stability(cfg: &SuiteConfig) -> Result<StabilityOutcome> {
    if cfg.n_max < 1000 {
        return Err(invalid("the stability suite needs n_max ≥ 1000"));
    }
    let mut ns = vec![1000];
    let mut n = 10_000;
    while n < cfg.n_max {
        ns.push(n);
        n *= 10;
    }
    if *ns.last().expect("non-empty") != cfg.n_max {
        ns.push(cfg.n_max);
    }
    let model = IncrementModel::standard_gaussian(vec![1.0, 0.0])?;
    let radii = permutation_stability_probe(&model, &ns, cfg.k, cfg.permutations, cfg.seed)?;
    let mut row = CheckRow::new(
        "permutation-stability",
        "max radius of ℋₙ Δ ℋₙ^π does not grow with n",
        0.0,
    );
    let base = radii[0];
    row.record(radii.last().copied().unwrap_or(0.0) - (1.0 + cfg.slack) * base);
    Ok((vec![row], ns.into_iter().zip(radii).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            functions: 100,
            polygons: 30,
            paths: 5,
            path_len: 2000,
            n_max: 10_000,
            ..Default::default()
        }
    }

    #[test]
    fn small_suites_pass() {
        for s in Suite::ALL {
            let r = run_suite(s, &small()).unwrap();
            for row in &r.rows {
                assert!(row.passed(), "{}: {row:?}", s.name());
            }
        }
    }

    #[test]
    fn suite_names_parse() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn elementary_symmetric_small_cases() {
        assert_eq!(elementary_symmetric(&[1.0, 2.0, 3.0], 2), 11.0);
        assert_eq!(elementary_symmetric(&[1.0, 2.0, 3.0], 3), 6.0);
    }

    #[test]
    fn failing_cases_are_counted() {
        let mut row = CheckRow::new("x", "x", 1e-3);
        row.record(0.0);
        row.record(0.5);
        row.record(f64::NAN);
        assert_eq!((row.cases, row.failures), (3, 2));
        assert!(!row.passed());
    }
}
