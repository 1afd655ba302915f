use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::Serialize;

use hull_lil::checks::{run_suite, Suite, SuiteConfig, SuiteReport};
use hull_lil::func::{f_a_family, f_star};
use hull_lil::geom::{convex_hull_2d, convex_hull_volume_3d, intrinsic_volumes_2d, Point2};
use hull_lil::io::{write_curve_csv, write_pl_csv, write_trace_csv, write_walk_csv};
use hull_lil::lil::{estimate_limsup, Functional, LilSpec, LilSummary, Regime, LAMBDA_2, V_2};
use hull_lil::varopt::{
    maximize_area_drift, maximize_area_drift_from, maximize_area_zero_drift,
    maximize_area_zero_drift_from, maximize_com_area, maximize_com_area_from, semicircle,
    theta_bound_from_family, verify_planar_optimum, Argmax, OptResult, OptimizerConfig, TracePoint,
    BEST_KNOWN_A,
};
use hull_lil::walk::{centre_of_mass, generate_replica, WalkPath};

use crate::args::{Init, LilArgs, Problem, SimulateArgs, VariationalArgs, VerifyArgs};
use crate::model::{build_model, parse_list, parse_u64_list};

/// How a command that ran to completion ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// Completed, but a convergence or verification flag is set.
    Flagged,
}

impl Outcome {
    fn flagged_if(bad: bool) -> Self {
        if bad {
            Outcome::Flagged
        } else {
            Outcome::Success
        }
    }
}

fn prepare(dir: &Path) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let f = File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(BufWriter::new(f))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn display(path: &Path) -> String {
    path.to_string_lossy().into_owned()
}

#[derive(Serialize)]
struct HullReport {
    vertices: usize,
    v1: f64,
    area: f64,
    diameter: f64,
}

#[derive(Serialize)]
struct SimulateOutput {
    model: &'static str,
    dim: usize,
    drift: Vec<f64>,
    n: usize,
    seed: u64,
    replica: u64,
    end: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hull: Option<HullReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    com_hull_area: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    hull_volume: Option<f64>,
    walk_csv_path: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    com_csv_path: Option<String>,
}

fn planar(points: &[Vec<f64>]) -> Vec<Point2<f64>> {
    points.iter().map(|p| Point2::new(p[0], p[1])).collect()
}

pub fn simulate(a: &SimulateArgs) -> Result<Outcome> {
    let model = build_model(&a.model, 2)?;
    prepare(&a.out_dir)?;
    let path = generate_replica(&model, a.n, a.seed, a.replica);
    let walk_csv = a.out_dir.join("walk.csv");
    write_walk_csv(create(&walk_csv)?, &path)?;
    let com = a.com.then(|| centre_of_mass(&path));
    let com_csv = match &com {
        Some(g) => {
            let p = a.out_dir.join("com.csv");
            let com_path = WalkPath::from_points(model.clone(), g, a.seed)?;
            write_walk_csv(create(&p)?, &com_path)?;
            Some(p)
        }
        None => None,
    };
    let (hull, com_hull_area, hull_volume) = match model.dim() {
        2 => {
            let h = convex_hull_2d(&path.points_2d()?)?;
            let report = HullReport {
                vertices: h.len(),
                v1: intrinsic_volumes_2d(&h).get(1),
                area: h.area(),
                diameter: h.diameter(),
            };
            let com_area = match &com {
                Some(g) => Some(convex_hull_2d(&planar(g))?.area()),
                None => None,
            };
            (Some(report), com_area, None)
        }
        3 => {
            let pts: Vec<[f64; 3]> = path.points().map(|p| [p[0], p[1], p[2]]).collect();
            (None, None, Some(convex_hull_volume_3d(&pts)))
        }
        _ => (None, None, None),
    };
    let out = SimulateOutput {
        model: model.kind().name(),
        dim: model.dim(),
        drift: model.drift().to_vec(),
        n: a.n,
        seed: a.seed,
        replica: a.replica,
        end: path.end().to_vec(),
        hull,
        com_hull_area,
        hull_volume,
        walk_csv_path: display(&walk_csv),
        com_csv_path: com_csv.as_deref().map(display),
    };
    write_json(&a.out_dir.join("simulate.json"), &out)?;
    println!("walk of {} steps written to {}", a.n, walk_csv.display());
    Ok(Outcome::Success)
}

#[derive(Serialize)]
struct FamilyOutput {
    best_a: f64,
    t0: Option<f64>,
    theta_bound: f64,
    integral: f64,
    scanned: usize,
    scan_csv_path: String,
}

#[derive(Serialize)]
struct PlanarCheck {
    x: f64,
    gamma_target: f64,
    gamma: f64,
    area: f64,
    expected_area: f64,
    scaling_error: f64,
    passed: bool,
}

#[derive(Serialize)]
struct VariationalOutput {
    problem: &'static str,
    #[serde(rename = "N")]
    n: usize,
    restarts: usize,
    seed: u64,
    value: f64,
    bound_type: &'static str,
    known_value: Option<f64>,
    trace: Vec<TracePoint>,
    converged: bool,
    iterations: usize,
    argmax_csv_path: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    family: Option<FamilyOutput>,
    #[serde(skip_serializing_if = "Option::is_none")]
    checks: Option<Vec<PlanarCheck>>,
}

/// Tolerance of the parabola checks at the default grid.
const FSTAR_TOL: f64 = 1e-4;

fn problem_name(p: Problem) -> &'static str {
    match p {
        Problem::Lambda2 => "lambda2",
        Problem::ThetaFamily => "theta-family",
        Problem::ThetaAscent => "theta-ascent",
        Problem::V2 => "v2",
        Problem::VerifyFstar => "verify-fstar",
    }
}

fn write_argmax(path: &Path, argmax: &Argmax) -> Result<()> {
    match argmax {
        Argmax::Function(f) => write_pl_csv(create(path)?, f)?,
        Argmax::Curve(c) => write_curve_csv(create(path)?, c)?,
    }
    Ok(())
}

fn family_parameters(a: &VariationalArgs) -> Result<Vec<f64>> {
    if let Some(list) = &a.a {
        return parse_list(list);
    }
    if a.a_step.is_nan() || a.a_step <= 0.0 || a.a_max < a.a_min {
        bail!("need a-step > 0 and a-min ≤ a-max");
    }
    let count = ((a.a_max - a.a_min) / a.a_step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| a.a_min + i as f64 * a.a_step).collect())
}

pub fn variational(a: &VariationalArgs) -> Result<Outcome> {
    let name = problem_name(a.problem);
    let default_grid = match a.problem {
        Problem::ThetaFamily => 100_000,
        Problem::VerifyFstar => 2000,
        _ => 512,
    };
    let cfg = OptimizerConfig {
        grid_n: a.grid.unwrap_or(default_grid),
        restarts: a.restarts,
        max_iter: a.max_iter,
        tolerance: a.tolerance,
        surgery: !a.no_surgery,
        seed: a.seed,
        ..Default::default()
    };
    prepare(&a.out_dir)?;
    let argmax_csv = a.out_dir.join(format!("{name}_argmax.csv"));
    let n = cfg.grid_n;
    let single = |res: OptResult, known_value: Option<f64>, restarts: usize| VariationalOutput {
        problem: name,
        n,
        restarts,
        seed: a.seed,
        value: res.value,
        bound_type: "lower",
        known_value,
        trace: res.trace,
        converged: res.converged,
        iterations: res.iterations,
        argmax_csv_path: display(&argmax_csv),
        family: None,
        checks: None,
    };
    let (out, flagged) = match a.problem {
        Problem::Lambda2 | Problem::V2 | Problem::ThetaAscent => {
            let known = a.init == Init::Known;
            let res = match a.problem {
                Problem::Lambda2 if known => maximize_area_drift_from(&cfg, &f_star(1.0, 1.0, n)?)?,
                Problem::Lambda2 => maximize_area_drift(&cfg)?,
                Problem::V2 if known => maximize_area_zero_drift_from(&cfg, &semicircle(n))?,
                Problem::V2 => maximize_area_zero_drift(&cfg)?,
                _ if known => maximize_com_area_from(&cfg, &f_a_family(BEST_KNOWN_A, n)?.0)?,
                _ => maximize_com_area(&cfg)?,
            };
            write_argmax(&argmax_csv, &res.argmax)?;
            let target = match a.problem {
                Problem::Lambda2 => Some(LAMBDA_2),
                Problem::V2 => Some(V_2),
                _ => None,
            };
            let restarts = if known { 1 } else { cfg.restarts };
            let flagged = !res.converged;
            (single(res, target, restarts), flagged)
        }
        Problem::ThetaFamily => {
            cfg.validate()?;
            let params = family_parameters(a)?;
            let report = theta_bound_from_family(&params, n)?;
            write_argmax(&argmax_csv, &report.result.argmax)?;
            let scan_csv = a.out_dir.join(format!("{name}_scan.csv"));
            let mut w = csv::Writer::from_writer(create(&scan_csv)?);
            w.write_record(["a", "area"])?;
            for (p, area) in &report.scan {
                w.serialize((p, area))?;
            }
            w.flush()?;
            let mut out = single(report.result, None, 0);
            out.family = Some(FamilyOutput {
                best_a: report.best_a,
                t0: report.t0,
                theta_bound: report.theta_bound,
                integral: report.integral,
                scanned: report.scan.len(),
                scan_csv_path: display(&scan_csv),
            });
            (out, false)
        }
        Problem::VerifyFstar => {
            let mut checks = Vec::new();
            for pair in a.pairs.split(',') {
                let Some((x, g)) = pair.split_once(':') else {
                    bail!("pairs are written x:γ, got '{pair}'");
                };
                let (x, g): (f64, f64) = (x.trim().parse()?, g.trim().parse()?);
                let r = verify_planar_optimum(x, g, n)?;
                checks.push(PlanarCheck {
                    x,
                    gamma_target: g,
                    gamma: r.gamma,
                    area: r.area,
                    expected_area: r.expected_area,
                    scaling_error: r.scaling_error,
                    passed: r.gamma_error() <= FSTAR_TOL * g.max(1.0)
                        && r.area_error() <= FSTAR_TOL * r.expected_area.max(1.0)
                        && r.scaling_error <= 1e-12,
                });
            }
            let first = checks.first().context("no pairs given")?;
            let f = f_star(first.x, first.gamma_target, n)?;
            write_pl_csv(create(&argmax_csv)?, &f)?;
            let flagged = checks.iter().any(|c| !c.passed);
            let out = VariationalOutput {
                problem: name,
                n,
                restarts: 0,
                seed: a.seed,
                value: first.area,
                bound_type: "lower",
                known_value: Some(first.expected_area),
                trace: vec![TracePoint { n, value: first.area }],
                converged: true,
                iterations: 0,
                argmax_csv_path: display(&argmax_csv),
                family: None,
                checks: Some(checks),
            };
            (out, flagged)
        }
    };
    write_json(&a.out_dir.join(format!("{name}.json")), &out)?;
    println!("{name}: value {} at N = {}", out.value, out.n);
    if let Some(f) = &out.family {
        println!("best a {} theta bound {} t0 {:?}", f.best_a, f.theta_bound, f.t0);
    }
    Ok(Outcome::flagged_if(flagged))
}

pub fn lil(a: &LilArgs) -> Result<Outcome> {
    let functional: Functional = a.functional.parse()?;
    let default_dim = if functional == Functional::Volume { 3 } else { 2 };
    let model = build_model(&a.model, default_dim)?;
    let regime = if a.model.zero_drift {
        Regime::ZeroDrift
    } else if !model.has_drift() {
        bail!("the drift regime needs a non-zero --drift; pass --zero-drift for a centred walk");
    } else {
        Regime::Drift
    };
    let spec = LilSpec::new(functional, regime, model)?;
    let checkpoints = match &a.checkpoints {
        Some(s) => parse_u64_list(s)?,
        None => Vec::new(),
    };
    prepare(&a.out_dir)?;
    let trace = estimate_limsup(&spec, a.nmax, &checkpoints, a.replicas, a.seed)?;
    write_trace_csv(create(&a.out_dir.join("trace.csv"))?, &trace)?;
    let summary = LilSummary::new(&spec, a.nmax, &trace);
    write_json(&a.out_dir.join("summary.json"), &summary)?;
    println!(
        "{} ({}) merged max at n = {}: {}; known constant: {}",
        functional.name(),
        regime.name(),
        trace.checkpoints().last().copied().unwrap_or(0),
        trace.final_max().unwrap_or(f64::NAN),
        summary
            .constant_theoretical
            .map_or_else(|| "none".to_string(), |c| c.to_string())
    );
    Ok(Outcome::Success)
}

fn print_report(r: &SuiteReport) {
    println!("suite {} (seed {})", r.suite.name(), r.seed);
    for row in &r.rows {
        println!(
            "  {}  {:<30} {:>6} cases  {:>3} failed  worst {:>10.3e}  {}",
            if row.passed() { "PASS" } else { "FAIL" },
            row.name,
            row.cases,
            row.failures,
            row.worst,
            row.statement
        );
    }
    for (n, radius) in &r.radii {
        println!("  n = {n:>9}  max radius {radius}");
    }
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome> {
    let suite: Suite = a.suite.parse()?;
    let cfg = SuiteConfig {
        functions: a.functions,
        polygons: a.polygons,
        paths: a.paths,
        path_len: a.path_len,
        k: a.k,
        n_max: a.nmax,
        permutations: a.permutations,
        slack: a.slack,
        seed: a.seed,
    };
    prepare(&a.out_dir)?;
    let report = run_suite(suite, &cfg)?;
    print_report(&report);
    if suite == Suite::Stability {
        let path: PathBuf = a.out_dir.join("stability_radii.csv");
        let mut w = csv::Writer::from_writer(create(&path)?);
        w.write_record(["n", "radius"])?;
        for row in &report.radii {
            w.serialize(row)?;
        }
        w.flush()?;
    }
    write_json(&a.out_dir.join(format!("verify_{}.json", suite.name())), &report)?;
    Ok(Outcome::flagged_if(!report.passed()))
}
