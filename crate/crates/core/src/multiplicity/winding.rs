//! Lifting line fields along closed curves.

use std::f64::consts::{FRAC_PI_4, PI};

use super::MultiplicityComponent;
use crate::error::{Error, Result};
use crate::sym2::line_angle_delta;

/// Largest accepted jump (after reduction mod π) between consecutive samples
/// of a lifted line angle; larger jumps mean the polyline is too coarse.
pub const LIFT_MAX_STEP: f64 = FRAC_PI_4;

/// Largest accepted distance of the half-turn count from an integer.
pub const WINDING_RESIDUAL: f64 = 0.1;

/// Continuous lift of a sequence of line angles, choosing each increment in
/// `(-π/2, π/2]`. Also returns the vertex and size of the largest increment.
pub fn lift_line_angles(raw: &[f64]) -> (Vec<f64>, Option<(usize, f64)>) {
    let mut out = Vec::with_capacity(raw.len());
    let mut worst: Option<(usize, f64)> = None;
    if let Some(&a0) = raw.first() {
        out.push(a0);
        for k in 1..raw.len() {
            let d = line_angle_delta(raw[k - 1], raw[k]);
            if worst.is_none_or(|(_, w)| d.abs() > w.abs()) {
                worst = Some((k, d));
            }
            out.push(out[k - 1] + d);
        }
    }
    (out, worst)
}

/// Number of half-turns of the kernel line along the closed base curve.
pub fn winding_number(component: &MultiplicityComponent) -> Result<i64> {
    if !component.base.closed {
        return Err(Error::OpenCurve);
    }
    let angles = &component.kernel_angles;
    let value = match (angles.first(), angles.last()) {
        (Some(a), Some(b)) => (b - a) / PI,
        _ => 0.0,
    };
    let m = value.round();
    if (value - m).abs() >= WINDING_RESIDUAL {
        return Err(Error::WindingResidual {
            value,
            tol: WINDING_RESIDUAL,
        });
    }
    Ok(m as i64)
}
