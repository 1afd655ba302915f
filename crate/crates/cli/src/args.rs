use std::ffi::OsString;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "hull-lil", version, about = "Hull-area variational problems and iterated-logarithm experiments")]
#[command(args_override_self = true)]
pub struct Cli {
    /// Worker threads; falls back to HULL_LIL_THREADS, then to all cores.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// JSON object of flag values for the chosen subcommand; flags given on the
    /// command line take precedence.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate one walk, export it and report its hull.
    Simulate(SimulateArgs),
    /// Solve one of the planar variational problems.
    Variational(VariationalArgs),
    /// Estimate normalised running maxima of a hull functional.
    Lil(LilArgs),
    /// Run a named invariant suite.
    Verify(VerifyArgs),
}

impl Command {
    pub const NAMES: [&'static str; 4] = ["simulate", "variational", "lil", "verify"];
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    #[arg(long, default_value = "gaussian")]
    pub model: String,
    /// Mean increment, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    pub drift: Option<String>,
    /// Use a walk without drift.
    #[arg(long)]
    pub zero_drift: bool,
    /// Covariance: `I` or a row-major comma list.
    #[arg(long, default_value = "I")]
    pub sigma: String,
    /// Dimension when neither the drift nor the covariance fixes it.
    #[arg(long)]
    pub dim: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 0)]
    pub replica: u64,
    /// Also export the centre-of-mass process.
    #[arg(long)]
    pub com: bool,
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    Lambda2,
    ThetaFamily,
    ThetaAscent,
    V2,
    VerifyFstar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Init {
    Random,
    /// The known optimiser: the parabola, the `f_a` family member, or the semicircle.
    Known,
}

#[derive(Debug, Args)]
pub struct VariationalArgs {
    #[arg(long, value_enum)]
    pub problem: Problem,
    /// Grid cells; defaults to 512, or 100000 for the family scan and 2000 for
    /// the parabola check.
    #[arg(long)]
    pub grid: Option<usize>,
    #[arg(long, default_value_t = 8)]
    pub restarts: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 20_000)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub tolerance: f64,
    /// Disable the shape surgeries between ascents.
    #[arg(long)]
    pub no_surgery: bool,
    #[arg(long, value_enum, default_value = "random")]
    pub init: Init,
    #[arg(long, default_value_t = 3.5)]
    pub a_min: f64,
    #[arg(long, default_value_t = 4.5)]
    pub a_max: f64,
    #[arg(long, default_value_t = 0.001)]
    pub a_step: f64,
    /// Explicit family parameters, comma separated; overrides the range.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Parabola checks as `x:γ` pairs, comma separated.
    #[arg(long, default_value = "1:1,4:1,2:3")]
    pub pairs: String,
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct LilArgs {
    #[arg(long)]
    pub functional: String,
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 1_000_000)]
    pub nmax: u64,
    #[arg(long, default_value_t = 50)]
    pub replicas: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Comma-separated checkpoints; defaults to a geometric grid.
    #[arg(long)]
    pub checkpoints: Option<String>,
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub suite: String,
    #[arg(long, default_value_t = 1000)]
    pub functions: usize,
    #[arg(long, default_value_t = 200)]
    pub polygons: usize,
    #[arg(long, default_value_t = 100)]
    pub paths: usize,
    #[arg(long, default_value_t = 10_000)]
    pub path_len: usize,
    #[arg(long, default_value_t = 5)]
    pub k: usize,
    #[arg(long, default_value_t = 100_000)]
    pub nmax: usize,
    #[arg(long, default_value_t = 20)]
    pub permutations: usize,
    #[arg(long, default_value_t = 0.1)]
    pub slack: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = "out")]
    pub out_dir: PathBuf,
}

/// Inserts the flags from a `--config` file right after the subcommand name,
/// so that later command-line flags override them.
pub fn expand_config(argv: Vec<OsString>) -> Result<Vec<OsString>> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let text = std::fs::read_to_string(&path)
        .with_context(|| format!("cannot read config file {}", path.display()))?;
    let value: serde_json::Value =
        serde_json::from_str(&text).with_context(|| format!("config file {} is not JSON", path.display()))?;
    let Some(map) = value.as_object() else {
        bail!("config file must hold a JSON object");
    };
    let mut flags = Vec::new();
    for (key, v) in map {
        let flag = OsString::from(format!("--{}", key.replace('_', "-")));
        match v {
            serde_json::Value::Bool(true) => flags.push(flag),
            serde_json::Value::Bool(false) | serde_json::Value::Null => {}
            serde_json::Value::Array(items) => {
                let joined: Vec<String> = items.iter().map(scalar_text).collect::<Result<_>>()?;
                flags.push(flag);
                flags.push(joined.join(",").into());
            }
            other => {
                flags.push(flag);
                flags.push(scalar_text(other)?.into());
            }
        }
    }
    let at = argv
        .iter()
        .position(|a| Command::NAMES.iter().any(|n| a == n))
        .context("config file given without a subcommand")?;
    let mut out = argv[..=at].to_vec();
    out.extend(flags);
    out.extend_from_slice(&argv[at + 1..]);
    Ok(out)
}

fn scalar_text(v: &serde_json::Value) -> Result<String> {
    match v {
        serde_json::Value::String(s) => Ok(s.clone()),
        serde_json::Value::Number(n) => Ok(n.to_string()),
        serde_json::Value::Bool(b) => Ok(b.to_string()),
        _ => bail!("config values must be scalars or arrays of scalars"),
    }
}

fn config_path(argv: &[OsString]) -> Option<PathBuf> {
    let mut it = argv.iter();
    while let Some(a) = it.next() {
        let s = a.to_string_lossy();
        if s == "--config" {
            return it.next().map(PathBuf::from);
        }
        if let Some(rest) = s.strip_prefix("--config=") {
            return Some(PathBuf::from(rest));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn os(v: &[&str]) -> Vec<OsString> {
        v.iter().map(OsString::from).collect()
    }

    #[test]
    fn config_flags_precede_command_line_flags() {
        let dir = std::env::temp_dir().join(format!("hull-lil-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c.json");
        std::fs::write(&path, r#"{"problem": "lambda2", "grid": 64, "restarts": 2, "no_surgery": true, "pairs": ["1:1", "2:3"]}"#).unwrap();
        let argv = os(&["hull-lil", "--config", path.to_str().unwrap(), "variational", "--grid", "128"]);
        let expanded = expand_config(argv).unwrap();
        let cli = Cli::try_parse_from(expanded).unwrap();
        let Command::Variational(v) = cli.command else {
            panic!("wrong subcommand")
        };
        assert_eq!(v.grid, Some(128));
        assert_eq!(v.restarts, 2);
        assert!(v.no_surgery);
        assert_eq!(v.pairs, "1:1,2:3");
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn no_config_is_a_no_op() {
        let argv = os(&["hull-lil", "verify", "--suite", "steiner"]);
        assert_eq!(expand_config(argv.clone()).unwrap(), argv);
    }
}
