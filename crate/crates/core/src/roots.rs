//! Bracketed bisection.

/// Bisect a sign change of `f` on `[lo, hi]`.
///
/// Returns `None` when the endpoints do not bracket a root. Iterates until the
/// bracket is no wider than `tol` or cannot be split further in floating point.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, mut lo: f64, mut hi: f64, tol: f64) -> Option<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Some(lo);
    }
    if fhi == 0.0 {
        return Some(hi);
    }
    if flo.signum() == fhi.signum() {
        return None;
    }
    for _ in 0..2100 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= tol {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return Some(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// All roots of `f` found by scanning the sorted `grid` for sign changes and
/// bisecting each bracket. Grid points where `f` is exactly zero are roots.
pub fn scan_roots<F: FnMut(f64) -> f64>(mut f: F, grid: &[f64], tol: f64) -> Vec<f64> {
    let values: Vec<f64> = grid.iter().map(|&x| f(x)).collect();
    let mut roots = Vec::new();
    for i in 0..grid.len() {
        if values[i] == 0.0 {
            roots.push(grid[i]);
            continue;
        }
        if i + 1 < grid.len() && values[i + 1] != 0.0 && values[i].signum() != values[i + 1].signum() {
            if let Some(r) = bisect(&mut f, grid[i], grid[i + 1], tol) {
                roots.push(r);
            }
        }
    }
    roots
}
