//! One function per subcommand. Each returns the JSON report; side artifacts
//! are written to the paths in the config.

use std::f64::consts::TAU;
use std::path::Path;

use serde_json::{json, Value};
use wavesym_core::eigenline::{build_eigenline_manifold, eigenline_report, EigenlineOptions};
use wavesym_core::fresnel::{fresnel_mesh, fresnel_report, singular_directions, Crystal};
use wavesym_core::multiplicity::{analyze_field, knot_type, ContourOptions};
use wavesym_core::report::{fmt17, to_value};
use wavesym_core::sphere::{analyze_mn, chart_field, sigma_mn, transversality_h, z_set_with, SphereOptions};
use wavesym_core::Vec3;

use crate::config::RunConfig;
use crate::CliError;

fn write_artifact(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn json<T: serde::Serialize>(value: &T) -> Result<Value, CliError> {
    to_value(value).map_err(|e| CliError::Io(e.to_string()))
}

fn contour(cfg: &RunConfig) -> ContourOptions {
    ContourOptions {
        residual_tol: cfg.tol_contour,
    }
}

pub fn zset(cfg: &RunConfig) -> Result<Value, CliError> {
    let (m, n) = cfg.mn()?;
    let zs = z_set_with(m, n, cfg.tol_root)?;
    Ok(json!({
        "m": m,
        "n": n,
        "radii": json(&zs.radii)?,
        "includes_zero": zs.includes_zero,
        "includes_infinity": zs.includes_infinity,
    }))
}

pub fn sphere(cfg: &RunConfig) -> Result<Value, CliError> {
    let (m, n) = cfg.mn()?;
    let opts = SphereOptions {
        grid: cfg.grid,
        contour: contour(cfg),
        root_tol: cfg.tol_root,
    };
    let report = analyze_mn(m, n, &opts)?;
    if let Some(path) = &cfg.out_csv {
        let rmax = report.radii.iter().fold(1.0_f64, |a, r| a.max(r.r));
        let field = chart_field(sigma_mn(m, n)?, 1.5 * rmax, cfg.grid)?;
        let analysis = analyze_field(&field, &opts.contour)?;
        write_artifact(path, &analysis.polyline_csv(&field))?;
    }
    json(&report)
}

pub fn winding(cfg: &RunConfig) -> Result<Value, CliError> {
    let (m, n) = cfg.mn()?;
    let tr = transversality_h(m, n)?;
    let field = chart_field(sigma_mn(m, n)?, 2.0, cfg.grid)?;
    let analysis = analyze_field(&field, &contour(cfg))?;
    if let Some(path) = &cfg.out_csv {
        write_artifact(path, &analysis.polyline_csv(&field))?;
    }
    // the unit circle is the closed curve of mean radius nearest 1
    let (hx, _) = field.spacing();
    let unit = analysis
        .curves
        .iter()
        .enumerate()
        .filter(|(_, c)| c.closed && (c.mean_radius() - 1.0).abs() < 2.0 * hx)
        .min_by(|a, b| {
            (a.1.mean_radius() - 1.0)
                .abs()
                .total_cmp(&(b.1.mean_radius() - 1.0).abs())
        })
        .map(|(i, _)| i);
    let comp = unit.and_then(|i| analysis.components[i].as_ref());
    if tr.transversal && comp.is_none() {
        return Err(wavesym_core::Error::ContourMismatch(1.0).into());
    }
    Ok(json!({
        "m": m,
        "n": n,
        "transversal": tr.transversal,
        "winding": comp.map(|c| c.winding),
        "knot": comp.map(|c| [c.knot.p, c.knot.q]),
        "connected": comp.map(|c| c.connected),
        "curves": json(&analysis.reports)?,
    }))
}

pub fn fresnel(cfg: &RunConfig) -> Result<Value, CliError> {
    let [a, b, c] = cfg.epsilon;
    let crystal = Crystal::new(a, b, c)?;
    let mesh = fresnel_mesh(&crystal, cfg.subdiv)?;
    let report = fresnel_report(&crystal, &mesh)?;
    if let Some(path) = &cfg.out_obj {
        write_artifact(path, &mesh.to_obj())?;
    }
    json(&report)
}

pub fn eigenline(cfg: &RunConfig) -> Result<Value, CliError> {
    let [a, b, c] = cfg.epsilon;
    let crystal = Crystal::new(a, b, c)?;
    let points: Vec<Vec3> = singular_directions(&crystal)?.iter().map(|d| Vec3::from(d.x)).collect();
    let opts = EigenlineOptions {
        subdivisions: cfg.subdiv,
        tube_radius: cfg.tube_radius,
        collar: cfg.collar,
    };
    let section = crystal.section();
    let manifold = build_eigenline_manifold(&section, &points, &opts)?;
    let report = eigenline_report(&manifold, &section)?;
    if let Some(path) = &cfg.out_obj {
        write_artifact(path, &manifold.to_obj())?;
    }
    json(&report)
}

/// Samples per strand in the knot polyline.
const KNOT_SAMPLES: usize = 256;
/// Core and tube radii of the embedding torus.
const TORUS: (f64, f64) = (2.0, 1.0);

pub fn knots(cfg: &RunConfig) -> Result<Value, CliError> {
    let winding = match (cfg.winding, cfg.m, cfg.n) {
        (Some(w), _, _) => w,
        (None, Some(m), Some(n)) => n as i64 - m as i64,
        _ => return Err(CliError::Validation("knots needs --winding or both --m and --n".into())),
    };
    let knot = knot_type(winding);
    if let Some(path) = &cfg.out_csv {
        let mut out = String::from("strand,theta,phi,x,y,z\n");
        for (s, strand) in knot.polyline(KNOT_SAMPLES).iter().enumerate() {
            for &[theta, phi] in strand {
                let rho = TORUS.0 + TORUS.1 * phi.cos();
                let xyz = [rho * theta.cos(), rho * theta.sin(), TORUS.1 * phi.sin()];
                out.push_str(&format!(
                    "{s},{},{},{},{},{}\n",
                    fmt17(theta),
                    fmt17(phi),
                    fmt17(xyz[0]),
                    fmt17(xyz[1]),
                    fmt17(xyz[2])
                ));
            }
        }
        write_artifact(path, &out)?;
    }
    Ok(json!({
        "winding": winding,
        "p": knot.p,
        "q": knot.q,
        "components": knot.components,
        "connected": knot.connected,
        "strand_period": if knot.connected { 2.0 * TAU } else { TAU },
    }))
}
