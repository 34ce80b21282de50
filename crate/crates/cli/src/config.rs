//! Run configuration: command-line flags layered over an optional flat
//! `key = value` file layered over defaults.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "wavesym",
    version,
    about = "Multiplicity and eigenline analysis of 2x2 symmetric symbols"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Singular radii, transversality and windings of σ_{m,n} on the sphere.
    Sphere(Flags),
    /// Winding of the kernel line along the unit singular circle of σ_{m,n}.
    Winding(Flags),
    /// Singular radii of σ_{m,n}.
    Zset(Flags),
    /// Singular directions and sheets of a crystal's Fresnel surface.
    Fresnel(Flags),
    /// Glued eigenline surface of a crystal with its critical points.
    Eigenline(Flags),
    /// Torus-knot type and polyline of a multiplicity curve.
    Knots(Flags),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Sphere(_) => "sphere",
            Command::Winding(_) => "winding",
            Command::Zset(_) => "zset",
            Command::Fresnel(_) => "fresnel",
            Command::Eigenline(_) => "eigenline",
            Command::Knots(_) => "knots",
        }
    }

    pub fn flags(&self) -> &Flags {
        match self {
            Command::Sphere(f)
            | Command::Winding(f)
            | Command::Zset(f)
            | Command::Fresnel(f)
            | Command::Eigenline(f)
            | Command::Knots(f) => f,
        }
    }
}

/// Flags shared by every subcommand; each one may also come from the config
/// file under the same name without the leading dashes.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    #[arg(long)]
    pub m: Option<String>,
    #[arg(long)]
    pub n: Option<String>,
    /// Dielectric eigenvalues `a,b,c`.
    #[arg(long, allow_hyphen_values = true)]
    pub epsilon: Option<String>,
    /// Chart grid cells per axis.
    #[arg(long)]
    pub grid: Option<String>,
    /// Icosphere subdivision level.
    #[arg(long)]
    pub subdiv: Option<String>,
    #[arg(long = "tube-radius")]
    pub tube_radius: Option<String>,
    #[arg(long)]
    pub collar: Option<String>,
    /// Bisection residual for contour crossings, relative to the field scale.
    #[arg(long = "tol-contour")]
    pub tol_contour: Option<String>,
    /// Absolute bisection tolerance for singular radii.
    #[arg(long = "tol-root")]
    pub tol_root: Option<String>,
    /// Kernel winding for `knots`.
    #[arg(long, allow_hyphen_values = true)]
    pub winding: Option<String>,
    /// JSON report path (stdout if absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long = "out-obj")]
    pub out_obj: Option<PathBuf>,
    #[arg(long = "out-csv")]
    pub out_csv: Option<PathBuf>,
    /// Flat `key = value` file; flags take precedence.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

const KEYS: [&str; 13] = [
    "m",
    "n",
    "epsilon",
    "grid",
    "subdiv",
    "tube-radius",
    "collar",
    "tol-contour",
    "tol-root",
    "winding",
    "out",
    "out-obj",
    "out-csv",
];

/// Fully resolved parameters of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub m: Option<usize>,
    pub n: Option<usize>,
    pub epsilon: [f64; 3],
    pub grid: usize,
    pub subdiv: u32,
    pub tube_radius: f64,
    pub collar: f64,
    pub tol_contour: f64,
    pub tol_root: f64,
    pub winding: Option<i64>,
    pub out: Option<PathBuf>,
    pub out_obj: Option<PathBuf>,
    pub out_csv: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            m: None,
            n: None,
            epsilon: [2.0, 2.5, 3.0],
            grid: 256,
            subdiv: 3,
            tube_radius: 0.1,
            collar: 0.05,
            tol_contour: 1e-10,
            tol_root: 1e-15,
            winding: None,
            out: None,
            out_obj: None,
            out_csv: None,
        }
    }
}

/// Parse a config file: one `key = value` per line, `#` starts a comment.
pub fn read_config_file(path: &Path) -> Result<BTreeMap<String, String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
    parse_config(&text)
}

pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| CliError::Validation(format!("config line {}: expected key = value", lineno + 1)))?;
        let key = key.trim().replace('_', "-");
        if !KEYS.contains(&key.as_str()) {
            return Err(CliError::Validation(format!(
                "config line {}: unknown key `{key}`",
                lineno + 1
            )));
        }
        map.insert(key, value.trim().to_string());
    }
    Ok(map)
}

fn parse<T: std::str::FromStr>(key: &str, raw: &str) -> Result<T, CliError> {
    raw.trim()
        .parse()
        .map_err(|_| CliError::Validation(format!("invalid value `{raw}` for {key}")))
}

fn positive(key: &str, raw: &str) -> Result<f64, CliError> {
    let x: f64 = parse(key, raw)?;
    if x.is_finite() && x > 0.0 {
        Ok(x)
    } else {
        Err(CliError::Validation(format!(
            "{key} must be positive and finite, got {raw}"
        )))
    }
}

impl RunConfig {
    /// Merge flags over the config file over defaults and validate.
    pub fn resolve(flags: &Flags) -> Result<Self, CliError> {
        let mut values = match &flags.config {
            Some(p) => read_config_file(p)?,
            None => BTreeMap::new(),
        };
        let from_flags: [(&str, Option<String>); 13] = [
            ("m", flags.m.clone()),
            ("n", flags.n.clone()),
            ("epsilon", flags.epsilon.clone()),
            ("grid", flags.grid.clone()),
            ("subdiv", flags.subdiv.clone()),
            ("tube-radius", flags.tube_radius.clone()),
            ("collar", flags.collar.clone()),
            ("tol-contour", flags.tol_contour.clone()),
            ("tol-root", flags.tol_root.clone()),
            ("winding", flags.winding.clone()),
            ("out", flags.out.as_ref().map(|p| p.display().to_string())),
            ("out-obj", flags.out_obj.as_ref().map(|p| p.display().to_string())),
            ("out-csv", flags.out_csv.as_ref().map(|p| p.display().to_string())),
        ];
        for (k, v) in from_flags {
            if let Some(v) = v {
                values.insert(k.to_string(), v);
            }
        }
        Self::from_map(&values)
    }

    pub fn from_map(values: &BTreeMap<String, String>) -> Result<Self, CliError> {
        let mut cfg = RunConfig::default();
        for (key, raw) in values {
            match key.as_str() {
                "m" => {
                    let m: usize = parse(key, raw)?;
                    if m > 2 {
                        return Err(CliError::Validation(format!("m must be in 0..=2, got {m}")));
                    }
                    cfg.m = Some(m);
                }
                "n" => {
                    let n: usize = parse(key, raw)?;
                    if n > 6 {
                        return Err(CliError::Validation(format!("n must be in 0..=6, got {n}")));
                    }
                    cfg.n = Some(n);
                }
                "epsilon" => {
                    let parts: Vec<&str> = raw.split(',').collect();
                    if parts.len() != 3 {
                        return Err(CliError::Validation(format!("epsilon needs three values, got `{raw}`")));
                    }
                    for (slot, p) in cfg.epsilon.iter_mut().zip(parts) {
                        *slot = positive(key, p)?;
                    }
                }
                "grid" => {
                    cfg.grid = parse(key, raw)?;
                    if cfg.grid < 16 {
                        return Err(CliError::Validation(format!(
                            "grid must be at least 16, got {}",
                            cfg.grid
                        )));
                    }
                }
                "subdiv" => {
                    cfg.subdiv = parse(key, raw)?;
                    if !(2..=7).contains(&cfg.subdiv) {
                        return Err(CliError::Validation(format!(
                            "subdiv must be in 2..=7, got {}",
                            cfg.subdiv
                        )));
                    }
                }
                "tube-radius" => cfg.tube_radius = positive(key, raw)?,
                "collar" => cfg.collar = positive(key, raw)?,
                "tol-contour" => cfg.tol_contour = positive(key, raw)?,
                "tol-root" => cfg.tol_root = positive(key, raw)?,
                "winding" => cfg.winding = Some(parse(key, raw)?),
                "out" => cfg.out = Some(PathBuf::from(raw)),
                "out-obj" => cfg.out_obj = Some(PathBuf::from(raw)),
                "out-csv" => cfg.out_csv = Some(PathBuf::from(raw)),
                other => return Err(CliError::Validation(format!("unknown key `{other}`"))),
            }
        }
        Ok(cfg)
    }

    /// `(m, n)`, both required.
    pub fn mn(&self) -> Result<(usize, usize), CliError> {
        match (self.m, self.n) {
            (Some(m), Some(n)) => Ok((m, n)),
            _ => Err(CliError::Validation("--m and --n are required".into())),
        }
    }
}
